#include "matsol/sparse_mat.hpp"

#include <zlib.h>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace matsol::linalg {

void SparseMatFp::canonicalize() {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    std::uint32_t r = entries[i].r, c = entries[i].c;
    std::uint32_t sum = 0;
    while (i < entries.size() && entries[i].r == r && entries[i].c == c)
      sum = (sum + entries[i++].v) % p;
    if (sum != 0) entries[out++] = {r, c, static_cast<fp_t>(sum)};
  }
  entries.resize(out);
}

namespace {

// Line-oriented writer/reader that treats .gz paths transparently.
class LineSink {
public:
  LineSink(const std::string& path) {
    gz_ = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
    if (gz_) {
      gzf_ = gzopen(path.c_str(), "wb");
      if (!gzf_) throw std::runtime_error("cannot open for writing: " + path);
    } else {
      f_ = std::fopen(path.c_str(), "wb");
      if (!f_) throw std::runtime_error("cannot open for writing: " + path);
    }
  }
  ~LineSink() {
    if (gzf_) gzclose(gzf_);
    if (f_) std::fclose(f_);
  }
  void write(const char* buf, int len) {
    if (gz_) {
      if (gzwrite(gzf_, buf, len) != len) throw std::runtime_error("gzwrite failed");
    } else {
      if (std::fwrite(buf, 1, len, f_) != std::size_t(len))
        throw std::runtime_error("fwrite failed");
    }
  }

private:
  bool gz_ = false;
  gzFile gzf_ = nullptr;
  std::FILE* f_ = nullptr;
};

class LineSource {
public:
  LineSource(const std::string& path) : path_(path) {
    gzf_ = gzopen(path.c_str(), "rb");  // gzopen reads plain files as well
    if (!gzf_) throw std::runtime_error("cannot open for reading: " + path);
  }
  ~LineSource() { gzclose(gzf_); }

  // Returns false at end of input.
  bool next_line(std::string& out) {
    out.clear();
    char buf[512];
    for (;;) {
      if (!gzgets(gzf_, buf, sizeof buf)) return !out.empty();
      out += buf;
      if (!out.empty() && out.back() == '\n') {
        out.pop_back();
        return true;
      }
    }
  }
  const std::string& path() const { return path_; }

private:
  std::string path_;
  gzFile gzf_;
};

[[noreturn]] void parse_fail(const std::string& path, std::uint64_t lineno,
                             const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
}

}  // namespace

void save_triples(const SparseMatFp& m, const std::string& path) {
  LineSink sink(path);
  char buf[96];
  int len = std::snprintf(buf, sizeof buf, "%u %u %u\n", m.rows, m.cols, m.p);
  sink.write(buf, len);
  for (const Triplet& t : m.entries) {
    len = std::snprintf(buf, sizeof buf, "%u %u %u\n", t.r + 1, t.c + 1, unsigned(t.v));
    sink.write(buf, len);
  }
  sink.write("0 0 0\n", 6);
}

SparseMatFp load_triples(const std::string& path) {
  LineSource src(path);
  std::string line;
  std::uint64_t lineno = 0;

  auto next_content_line = [&]() -> bool {
    while (src.next_line(line)) {
      ++lineno;
      std::size_t i = line.find_first_not_of(" \t\r");
      if (i == std::string::npos) continue;  // blank
      return true;
    }
    return false;
  };

  if (!next_content_line()) parse_fail(path, lineno, "missing header line");
  SparseMatFp m;
  {
    unsigned long long r, c, p;
    char extra;
    int n = std::sscanf(line.c_str(), "%llu %llu %llu %c", &r, &c, &p, &extra);
    if (n != 3) parse_fail(path, lineno, "malformed header, expected 'rows cols p'");
    if (p < 2 || p > 255 || !is_prime_u32(std::uint32_t(p)))
      parse_fail(path, lineno, "p is not a prime in [2, 255]");
    if (r > 0xffffffffULL || c > 0xffffffffULL)
      parse_fail(path, lineno, "dimensions exceed 32 bits");
    m.rows = std::uint32_t(r);
    m.cols = std::uint32_t(c);
    m.p = std::uint32_t(p);
  }

  bool terminated = false;
  while (next_content_line()) {
    unsigned long long i, j, v;
    char extra;
    int n = std::sscanf(line.c_str(), "%llu %llu %llu %c", &i, &j, &v, &extra);
    if (n != 3) parse_fail(path, lineno, "malformed entry, expected 'i j v'");
    if (i == 0 && j == 0 && v == 0) {
      terminated = true;
      break;
    }
    if (i == 0 || j == 0) parse_fail(path, lineno, "entry indices are 1-based");
    if (i > m.rows || j > m.cols) parse_fail(path, lineno, "entry index out of range");
    if (v == 0 || v >= m.p) parse_fail(path, lineno, "residue out of range [1, p)");
    m.entries.push_back({std::uint32_t(i - 1), std::uint32_t(j - 1), fp_t(v)});
  }
  if (!terminated) parse_fail(path, lineno, "missing '0 0 0' terminator");
  if (next_content_line()) parse_fail(path, lineno, "content after terminator");
  m.canonicalize();
  return m;
}

TripleWriter::TripleWriter(const std::string& path, std::uint64_t rows, std::uint64_t cols,
                           std::uint32_t p) {
  const bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (gz) {
    gz_ = gzopen(path.c_str(), "wb");
    if (!gz_) throw std::runtime_error("cannot open for writing: " + path);
  } else {
    file_ = std::fopen(path.c_str(), "wb");
    if (!file_) throw std::runtime_error("cannot open for writing: " + path);
  }
  char buf[96];
  int len = std::snprintf(buf, sizeof buf, "%" PRIu64 " %" PRIu64 " %u\n", rows, cols, p);
  emit(buf, std::size_t(len));
}

TripleWriter::~TripleWriter() {
  try {
    close();
  } catch (...) {
    // Destructor swallows write errors; call close() to observe them.
  }
}

void TripleWriter::emit(const char* line, std::size_t len) {
  if (gz_) {
    if (gzwrite(static_cast<gzFile>(gz_), line, unsigned(len)) != int(len))
      throw std::runtime_error("gzwrite failed");
  } else if (file_) {
    if (std::fwrite(line, 1, len, static_cast<std::FILE*>(file_)) != len)
      throw std::runtime_error("fwrite failed");
  }
}

void TripleWriter::add(std::uint64_t r, std::uint64_t c, fp_t v) {
  if (v == 0) return;
  char buf[96];
  int len = std::snprintf(buf, sizeof buf, "%" PRIu64 " %" PRIu64 " %u\n", r + 1, c + 1,
                          unsigned(v));
  emit(buf, std::size_t(len));
  ++written_;
}

void TripleWriter::close() {
  if (closed_) return;
  closed_ = true;
  emit("0 0 0\n", 6);
  if (gz_) {
    gzclose(static_cast<gzFile>(gz_));
    gz_ = nullptr;
  }
  if (file_) {
    std::fclose(static_cast<std::FILE*>(file_));
    file_ = nullptr;
  }
}

DenseMatFp to_dense(const SparseMatFp& m, std::uint64_t max_cells) {
  const std::uint64_t cells = std::uint64_t(m.rows) * m.cols;
  if (cells > max_cells)
    throw std::runtime_error("to_dense: matrix too large to densify");
  DenseMatFp d(m.rows, m.cols, m.p);
  const Fp fp(m.p);
  for (const Triplet& t : m.entries)
    d.at(t.r, t.c) = fp.add(d.at(t.r, t.c), t.v);
  return d;
}

}  // namespace matsol::linalg
