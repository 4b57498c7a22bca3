// Per-prime obstruction probes and the resulting divisibility lower bound.
//
// For each prime the cheapest decisive method is chosen: a dense oracle for
// tiny Albanese graphs, a sparse existence check for medium ones, and the
// symmetrized pipeline for odd complete graphs in tournament orientation.
// Oversized symmetrized instances are gated behind `full_rank`; a gated or
// skipped probe contributes nothing to the bound.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matsol/graph.hpp"
#include "matsol/solver.hpp"

namespace matsol::dbound {

enum class Method { DenseOracle, SparseExistence, Symmetrized, Skipped };
const char* to_string(Method m);

struct ProbeOptions {
  bool full_rank = false;  // lift the symmetrized-size gate
  unsigned threads = 1;
  std::uint64_t mem_budget_bytes = 0;
  std::string checkpoint_dir;  // per-prime checkpoint files for the sym path
  // Method selection thresholds.
  std::uint64_t dense_row_cap = 4096;
  std::uint64_t dense_cost_cap = std::uint64_t(1) << 38;  // rows^2 * cols
  std::uint64_t sparse_cols_cap = 200000;                 // vertices * colors
  std::uint64_t sym_cols_gate = 1500000;                  // symmetrized matrix columns
};

struct PrimeProbe {
  std::uint32_t p = 2;
  Method method = Method::Skipped;
  bool obstructed = false;
  std::optional<bool> witness_exists;            // oracle methods
  std::optional<solver::Verdict> verdict;        // symmetrized method
  sym::SubgroupLabel subgroup = sym::SubgroupLabel::Triv;
  std::uint64_t fund_size = 0;
  solver::SymShape shape{};
  bool shape_estimated = false;  // orbit lower bound, domain not enumerated
  double seconds = 0;
  std::string note;
};

struct DBoundReport {
  std::uint64_t lower_bound = 1;  // product of obstructed primes
  std::vector<PrimeProbe> probes;
};

// Largest named subgroup of D_m x Z/2 with order coprime to p (m odd).
sym::SubgroupLabel largest_coprime_subgroup(std::uint32_t m, std::uint32_t p);

// True when g is exactly the rotational tournament on an odd number of
// vertices (same oriented edge set, any edge order); n receives its half.
bool is_rotational_tournament(const graph::OrientedGraph& g, std::uint32_t& n_out);

DBoundReport d_lower_bound(const graph::OrientedGraph& g, const std::vector<std::uint32_t>& primes,
                           const ProbeOptions& opts = {});

}  // namespace matsol::dbound
