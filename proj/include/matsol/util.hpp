// Small shared utilities: timers, peak memory, deterministic parallel ranges.
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace matsol {

class WallTimer {
public:
  WallTimer() : start_(clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_;
};

// Peak resident set size of the current process in bytes, 0 if unavailable.
std::uint64_t peak_rss_bytes();

// Thrown when a configured memory budget is exceeded.  If a checkpoint was
// written before bailing out, `checkpoint_path` names it.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what, std::string path = {})
      : std::runtime_error(what), checkpoint_path(std::move(path)) {}
  std::string checkpoint_path;
};

// Splits [0, count) into at most `threads` contiguous chunks and runs
// fn(chunk_index, begin, end) on each.  Chunk boundaries depend only on
// (count, threads), so any output gathered per chunk and concatenated in
// chunk order is deterministic.
void parallel_chunks(std::uint64_t count, unsigned threads,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn);

}  // namespace matsol
