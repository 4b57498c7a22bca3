// Randomized black-box rank estimation (Wiedemann / Kaltofen-Saunders).
//
// The matrix is preconditioned as B = D1 A^T D2 A D3 with random nonzero
// diagonals, the Krylov sequence u^T B^k v is generated, and its minimal
// polynomial is found by Berlekamp-Massey.  The resulting estimate never
// exceeds rank(A) and equals it with high probability; the maximum over
// `trials` independent draws is returned.  Used as a cross-check for the
// elimination engine, not as the primary rank path.
#pragma once

#include <cstdint>

#include "matsol/sparse_mat.hpp"

namespace matsol::linalg {

struct WiedemannOptions {
  unsigned trials = 3;
  std::uint64_t seed = 0x5eedu;
};

std::uint64_t wiedemann_rank_estimate(const SparseMatFp& m,
                                      const WiedemannOptions& opts = {});

}  // namespace matsol::linalg
