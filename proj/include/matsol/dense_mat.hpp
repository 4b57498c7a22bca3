// Dense matrices over F_p with row reduction, kernel and solve.  This is the
// reference implementation the sparse engine is tested against; it is meant
// for small systems, not for the symmetrized matrices.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matsol/fp.hpp"

namespace matsol::linalg {

struct DenseMatFp {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint32_t p = 2;
  std::vector<fp_t> a;  // row-major, rows*cols entries in [0, p)

  DenseMatFp() = default;
  DenseMatFp(std::uint32_t r, std::uint32_t c, std::uint32_t prime)
      : rows(r), cols(c), p(prime), a(std::size_t(r) * c, 0) {}

  fp_t& at(std::uint32_t i, std::uint32_t j) { return a[std::size_t(i) * cols + j]; }
  fp_t at(std::uint32_t i, std::uint32_t j) const { return a[std::size_t(i) * cols + j]; }
};

// Reduces M to reduced row echelon form in place.  Returns the pivot column
// of each pivot row; the rank is the number of pivots.
std::vector<std::uint32_t> rref_in_place(DenseMatFp& m);

std::uint64_t dense_rank(DenseMatFp m);

// Basis of the right kernel {x : Mx = 0}, one vector per non-pivot column.
std::vector<std::vector<fp_t>> dense_kernel(DenseMatFp m);

struct DenseRankKernel {
  std::uint64_t rank = 0;
  std::vector<std::vector<fp_t>> kernel;
};
DenseRankKernel dense_rank_and_kernel(DenseMatFp m);

// One solution of Mx = rhs, or nullopt when inconsistent.  Free variables
// are set to zero.
std::optional<std::vector<fp_t>> dense_solve(DenseMatFp m, const std::vector<fp_t>& rhs);

}  // namespace matsol::linalg
