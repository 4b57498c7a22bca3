#include "matsol/wiedemann.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace matsol::linalg {

namespace {

// Berlekamp-Massey over F_p.  Returns the connection polynomial
// c = (1, c_1, ..., c_L) of the shortest LFSR generating `s`.
std::vector<fp_t> berlekamp_massey(const std::vector<fp_t>& s, const Fp& fp) {
  std::vector<fp_t> c{1}, b{1};
  std::uint32_t l = 0, m = 1;
  fp_t bb = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    std::int64_t acc = s[n];
    for (std::uint32_t i = 1; i <= l; ++i)
      acc += std::int64_t(c[i]) * s[n - i];
    const fp_t d = fp.reduce(acc);
    if (d == 0) {
      ++m;
    } else if (2 * l <= n) {
      std::vector<fp_t> t = c;
      const fp_t coef = fp.mul(d, fp.inv(bb));
      if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
      for (std::size_t i = 0; i < b.size(); ++i)
        c[i + m] = fp.sub(c[i + m], fp.mul(coef, b[i]));
      l = std::uint32_t(n + 1 - l);
      b = std::move(t);
      bb = d;
      m = 1;
    } else {
      const fp_t coef = fp.mul(d, fp.inv(bb));
      if (c.size() < b.size() + m) c.resize(b.size() + m, 0);
      for (std::size_t i = 0; i < b.size(); ++i)
        c[i + m] = fp.sub(c[i + m], fp.mul(coef, b[i]));
      ++m;
    }
  }
  c.resize(l + 1, 0);
  return c;
}

}  // namespace

std::uint64_t wiedemann_rank_estimate(const SparseMatFp& m, const WiedemannOptions& opts) {
  const Fp fp(m.p);
  const std::uint32_t nr = m.rows, nc = m.cols;
  if (nr == 0 || nc == 0 || m.entries.empty()) return 0;

  std::mt19937_64 rng(opts.seed);
  auto rand_nonzero = [&] { return fp_t(1 + rng() % (m.p - 1)); };
  auto rand_any = [&] { return fp_t(rng() % m.p); };

  std::uint64_t best = 0;
  for (unsigned trial = 0; trial < opts.trials; ++trial) {
    std::vector<fp_t> d1(nc), d2(nr), d3(nc), u(nc), v(nc);
    for (auto& x : d1) x = rand_nonzero();
    for (auto& x : d2) x = rand_nonzero();
    for (auto& x : d3) x = rand_nonzero();
    for (auto& x : u) x = rand_any();
    for (auto& x : v) x = rand_any();

    // w <- B w with B = D1 A^T D2 A D3, accumulated in 64-bit lanes.
    std::vector<fp_t> w = v;
    std::vector<std::int64_t> t1(nr), t2(nc);
    std::vector<fp_t> scaled(nc);
    auto apply = [&](std::vector<fp_t>& x) {
      for (std::uint32_t j = 0; j < nc; ++j) scaled[j] = fp.mul(x[j], d3[j]);
      std::fill(t1.begin(), t1.end(), 0);
      for (const Triplet& e : m.entries) t1[e.r] += std::int64_t(e.v) * scaled[e.c];
      for (std::uint32_t i = 0; i < nr; ++i)
        t1[i] = fp.mul(fp.reduce(t1[i]), d2[i]);
      std::fill(t2.begin(), t2.end(), 0);
      for (const Triplet& e : m.entries) t2[e.c] += std::int64_t(e.v) * t1[e.r];
      for (std::uint32_t j = 0; j < nc; ++j)
        x[j] = fp.mul(fp.reduce(t2[j]), d1[j]);
    };

    const std::size_t len = 2 * std::size_t(std::min(nr, nc)) + 2;
    std::vector<fp_t> seq(len);
    for (std::size_t k = 0; k < len; ++k) {
      std::int64_t acc = 0;
      for (std::uint32_t j = 0; j < nc; ++j) acc += std::int64_t(u[j]) * w[j];
      seq[k] = fp.reduce(acc);
      if (k + 1 < len) apply(w);
    }

    const std::vector<fp_t> c = berlekamp_massey(seq, fp);
    const std::uint64_t deg = c.size() - 1;
    const bool divisible_by_x = deg > 0 && c[deg] == 0;
    const std::uint64_t est = deg - (divisible_by_x ? 1 : 0);
    best = std::max(best, est);
  }
  return best;
}

}  // namespace matsol::linalg
