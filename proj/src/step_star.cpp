#include "matsol/step_star.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace matsol::graph {

namespace {

// Inverse of a square matrix over F_p via [M | I] reduction; throws if
// singular.
linalg::DenseMatFp dense_inverse(const linalg::DenseMatFp& m) {
  const std::uint32_t d = m.rows;
  linalg::DenseMatFp aug(d, 2 * d, m.p);
  for (std::uint32_t i = 0; i < d; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, d + i) = 1;
  }
  const auto pivots = linalg::rref_in_place(aug);
  if (pivots.size() != d || (d > 0 && pivots.back() != d - 1))
    throw std::domain_error("matrix not invertible");
  linalg::DenseMatFp inv(d, d, m.p);
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t j = 0; j < d; ++j) inv.at(i, j) = aug.at(i, d + j);
  return inv;
}

}  // namespace

StepStarBasis::StepStarBasis(std::uint32_t n, std::uint32_t p)
    : n_(n), p_(p), dim_(2 * n * n - n), fp_(p), tour_(build_tournament(n)) {
  const std::uint32_t m = 2 * n + 1;
  if (p != 0 && m % p == 0)
    throw std::domain_error("star dual degenerate: p divides 2n+1");

  const auto cycles = fundamental_cycle_basis(tour_.base);
  if (cycles.size() != dim_)
    throw std::logic_error("unexpected cycle space dimension");

  // Evaluation matrix of the step-star basis functionals on the cycles.
  eval_ = linalg::DenseMatFp(dim_, dim_, p);
  for (std::uint32_t a = 0; a < dim_; ++a) {
    const IntChain& z = cycles[a];
    for (std::uint32_t b = 0; b + 1 < dim_; ++b)
      eval_.at(a, b) = fp_.reduce(z[b]);  // unit functional at edge id b
    std::int64_t star = 0;
    for (std::uint32_t i = 0; i < m; ++i) star += z[tour_.edge_id(n, i)];
    eval_.at(a, dim_ - 1) = fp_.reduce(star);
  }
  eval_inv_ = dense_inverse(eval_);

  // Expansion of every edge dual: solve P x = (evaluations of e*_color).
  exp_flat_.assign(std::size_t(colors()) * dim_, 0);
  for (std::uint32_t color = 0; color < colors(); ++color) {
    linalg::fp_t* out = exp_flat_.data() + std::size_t(color) * dim_;
    for (std::uint32_t j = 0; j < dim_; ++j) {
      std::int64_t acc = 0;
      for (std::uint32_t a = 0; a < dim_; ++a)
        acc += std::int64_t(eval_inv_.at(j, a)) * fp_.reduce(cycles[a][color]);
      out[j] = fp_.reduce(acc);
    }
  }
}

std::uint64_t StepStarBasis::vertex_count() const {
  std::uint64_t count = 1;
  for (std::uint32_t j = 0; j < dim_; ++j) {
    if (count > std::uint64_t(-1) / p_)
      throw std::overflow_error("vertex count exceeds 64 bits");
    count *= p_;
  }
  return count;
}

std::vector<linalg::fp_t> StepStarBasis::to_cycle_coords(const linalg::fp_t* v) const {
  std::vector<linalg::fp_t> y(dim_, 0);
  for (std::uint32_t a = 0; a < dim_; ++a) {
    std::int64_t acc = 0;
    for (std::uint32_t b = 0; b < dim_; ++b)
      acc += std::int64_t(eval_.at(a, b)) * v[b];
    y[a] = fp_.reduce(acc);
  }
  return y;
}

std::vector<linalg::fp_t> StepStarBasis::from_cycle_coords(
    const std::vector<linalg::fp_t>& y) const {
  std::vector<linalg::fp_t> v(dim_, 0);
  for (std::uint32_t a = 0; a < dim_; ++a) {
    std::int64_t acc = 0;
    for (std::uint32_t b = 0; b < dim_; ++b)
      acc += std::int64_t(eval_inv_.at(a, b)) * y[b];
    v[a] = fp_.reduce(acc);
  }
  return v;
}

const StepStarBasis& step_star_basis(std::uint32_t n, std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>,
                  std::unique_ptr<StepStarBasis>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, p}];
  if (!slot) slot = std::make_unique<StepStarBasis>(n, p);
  return *slot;
}

}  // namespace matsol::graph
