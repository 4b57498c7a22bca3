#include "matsol/util.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>

namespace matsol {

std::uint64_t peak_rss_bytes() {
  std::FILE* f = std::fopen("/proc/self/status", "r");
  if (!f) return 0;
  char line[256];
  std::uint64_t kb = 0;
  while (std::fgets(line, sizeof line, f)) {
    if (std::strncmp(line, "VmHWM:", 6) == 0) {
      std::sscanf(line + 6, "%lu", &kb);
      break;
    }
  }
  std::fclose(f);
  return kb * 1024;
}

void parallel_chunks(std::uint64_t count, unsigned threads,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  if (threads == 0) threads = 1;
  threads = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1));
  if (threads <= 1) {
    fn(0, 0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::vector<std::exception_ptr> errs(threads);
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t b = std::min<std::uint64_t>(count, t * chunk);
    const std::uint64_t e = std::min<std::uint64_t>(count, b + chunk);
    pool.emplace_back([&fn, &errs, t, b, e] {
      try {
        fn(t, b, e);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errs)
    if (err) std::rethrow_exception(err);
}

}  // namespace matsol
