// Sparse matrices over F_p in coordinate form, plus the text interchange
// format: a header line "rows cols p", one "i j v" line per entry with
// 1-based indices, and a "0 0 0" terminator line.  Files ending in .gz are
// read and written gzip-compressed.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matsol/dense_mat.hpp"
#include "matsol/fp.hpp"

namespace matsol::linalg {

struct Triplet {
  std::uint32_t r = 0;
  std::uint32_t c = 0;
  fp_t v = 0;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

struct SparseMatFp {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t p = 2;
  std::vector<Triplet> entries;

  SparseMatFp() = default;
  SparseMatFp(std::uint32_t r, std::uint32_t c, std::uint32_t prime)
      : rows(r), cols(c), p(prime) {}

  std::uint64_t nnz() const { return entries.size(); }

  // Sorts by (row, col), merges duplicates mod p and drops zeros.
  void canonicalize();

  void add(std::uint32_t r, std::uint32_t c, fp_t v) {
    if (v != 0) entries.push_back({r, c, v});
  }
};

void save_triples(const SparseMatFp& m, const std::string& path);
SparseMatFp load_triples(const std::string& path);

// Streaming writer for matrices too large to hold in memory; emits the same
// text format as save_triples.  Entries must be pre-reduced mod p; zeros are
// skipped.  The terminator is written by close() (or the destructor).
class TripleWriter {
 public:
  TripleWriter(const std::string& path, std::uint64_t rows, std::uint64_t cols,
               std::uint32_t p);
  ~TripleWriter();
  TripleWriter(const TripleWriter&) = delete;
  TripleWriter& operator=(const TripleWriter&) = delete;

  void add(std::uint64_t r, std::uint64_t c, fp_t v);
  std::uint64_t written() const { return written_; }
  void close();

 private:
  void emit(const char* line, std::size_t len);
  void* gz_ = nullptr;    // gzFile when the path ends in .gz
  void* file_ = nullptr;  // FILE* otherwise
  std::uint64_t written_ = 0;
  bool closed_ = false;
};

// Dense copy for small matrices (throws above `max_cells` entries).
DenseMatFp to_dense(const SparseMatFp& m, std::uint64_t max_cells = std::uint64_t(1) << 28);

}  // namespace matsol::linalg
