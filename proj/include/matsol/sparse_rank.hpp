// Exact rank of sparse matrices over F_p by structured Gaussian elimination.
//
// Pivots are chosen by Markowitz cost (nnz_row - 1) * (nnz_col - 1), ties
// broken by lowest (row, col).  When the active submatrix becomes dense or
// small the engine switches to a dense finish (bit-packed for p = 2).
//
// "Passive" rows ride along: they are reduced by every pivot but never
// pivoted themselves.  After elimination their successive independence gives
// the cumulative ranks of the matrix extended by those rows one at a time,
// all in a single factorization.
//
// An optional right-hand side turns the run into an affine solve with
// back-substitution over the frozen pivot rows.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matsol/sparse_mat.hpp"
#include "matsol/util.hpp"

namespace matsol::linalg {

struct RankOptions {
  // Switch to the dense finish when the active submatrix is denser than this.
  double dense_switch_density = 0.20;
  // Never build a dense block larger than this many bytes.
  std::uint64_t dense_cap_bytes = std::uint64_t(512) << 20;
  // Switch to dense as soon as the smaller active dimension drops below this
  // (subject to the byte cap).
  std::uint32_t dense_min_dim = 512;
  // How many row-count buckets past the first candidate the pivot search
  // scans before settling.
  int bucket_span = 8;
  // Approximate working-set budget; 0 means unlimited.  On breach the state
  // is checkpointed to `checkpoint_path` (if set) and BudgetExceeded thrown.
  std::uint64_t mem_budget_bytes = 0;
  std::string checkpoint_path;
};

struct RankReport {
  std::uint64_t rank = 0;
  // cumulative_ranks[k] = rank of the matrix extended by passive rows 0..k.
  std::vector<std::uint64_t> cumulative_ranks;
  bool rhs_consistent = true;
  std::optional<std::vector<fp_t>> solution;
  std::uint64_t sparse_pivots = 0;
  std::uint64_t dense_pivots = 0;
  std::uint64_t peak_entries = 0;
};

struct EliminationExtras {
  // Each passive row is a dense vector of length m.cols.
  std::vector<std::vector<fp_t>> passive_rows;
  // Right-hand side of length m.rows; when set, a solution of Mx = rhs is
  // reconstructed (not supported across checkpoint resume).
  std::optional<std::vector<fp_t>> rhs;
};

RankReport eliminate(const SparseMatFp& m, const EliminationExtras& extras,
                     const RankOptions& opts = {});

std::uint64_t sparse_rank(const SparseMatFp& m, const RankOptions& opts = {});

// One solution of Mx = rhs over F_p, or nullopt when inconsistent.
std::optional<std::vector<fp_t>> sparse_solve(const SparseMatFp& m,
                                              const std::vector<fp_t>& rhs,
                                              const RankOptions& opts = {});

// Continues an elimination that was checkpointed on budget breach.  Returns
// the completed report for the original matrix (solutions unavailable).
RankReport resume_elimination(const std::string& checkpoint_path,
                              const RankOptions& opts = {});

}  // namespace matsol::linalg
