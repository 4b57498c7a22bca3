#include "matsol/dense_mat.hpp"

#include <stdexcept>

namespace matsol::linalg {

std::vector<std::uint32_t> rref_in_place(DenseMatFp& m) {
  const Fp fp(m.p);
  std::vector<std::uint32_t> pivots;
  std::uint32_t row = 0;
  for (std::uint32_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::uint32_t pr = row;
    while (pr < m.rows && m.at(pr, col) == 0) ++pr;
    if (pr == m.rows) continue;
    if (pr != row)
      for (std::uint32_t j = col; j < m.cols; ++j)
        std::swap(m.at(row, j), m.at(pr, j));
    const fp_t piv_inv = fp.inv(m.at(row, col));
    if (piv_inv != 1)
      for (std::uint32_t j = col; j < m.cols; ++j)
        m.at(row, j) = fp.mul(m.at(row, j), piv_inv);
    for (std::uint32_t i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      const fp_t f = m.at(i, col);
      if (f == 0) continue;
      for (std::uint32_t j = col; j < m.cols; ++j)
        m.at(i, j) = fp.sub(m.at(i, j), fp.mul(f, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::uint64_t dense_rank(DenseMatFp m) { return rref_in_place(m).size(); }

std::vector<std::vector<fp_t>> dense_kernel(DenseMatFp m) {
  const Fp fp(m.p);
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<fp_t>> basis;
  for (std::uint32_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<fp_t> v(m.cols, 0);
    v[free] = 1;
    for (std::uint32_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = fp.neg(m.at(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

DenseRankKernel dense_rank_and_kernel(DenseMatFp m) {
  const Fp fp(m.p);
  const auto pivots = rref_in_place(m);
  DenseRankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::uint32_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<fp_t> v(m.cols, 0);
    v[free] = 1;
    for (std::uint32_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = fp.neg(m.at(r, free));
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<fp_t>> dense_solve(DenseMatFp m, const std::vector<fp_t>& rhs) {
  if (rhs.size() != m.rows) throw std::invalid_argument("dense_solve: rhs size mismatch");
  DenseMatFp aug(m.rows, m.cols + 1, m.p);
  for (std::uint32_t i = 0; i < m.rows; ++i) {
    for (std::uint32_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = rhs[i];
  }
  const auto pivots = rref_in_place(aug);
  for (std::uint32_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == m.cols) return std::nullopt;  // pivot in the rhs column
  std::vector<fp_t> x(m.cols, 0);
  for (std::uint32_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = aug.at(r, m.cols);
  return x;
}

}  // namespace matsol::linalg
