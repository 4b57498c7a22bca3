// The symmetrized pipeline: for the regular tournament on m = 2n+1 vertices
// and a subgroup A of D_m x Z/2, assembles the weighted-boundary matrix of
// symmetrized edges restricted to a fundamental domain and decides the
// constant-profile question by rank comparison.
//
// Soundness of the restriction: a symmetrized chain is invariant under the
// unsigned action, the span of the 2n weightings is stable under pullback,
// and all 2n weightings are imposed at every canonical vertex, so vanishing
// of the weighted boundaries on the fundamental domain forces vanishing
// everywhere.  The appended row of a step class records the total mass of
// each averaged column (|A| mod p on columns of that class, 0 elsewhere),
// so row . x is the class mass of the expanded combination; a rank tie
// means every expressible solution has vanishing class masses.  For p
// coprime to |A| the columns span all invariant chains and a symmetrized
// constant-profile solution has class mass m * c != 0, so a tie on every
// class proves obstruction; when p divides |A| the mass rows vanish and the
// tie is reported as inconclusive instead.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "matsol/albanese.hpp"
#include "matsol/fund_domain.hpp"
#include "matsol/sparse_rank.hpp"

namespace matsol::solver {

enum class Verdict { Obstructed, CandidateSolution, Unknown };
const char* to_string(Verdict v);

struct SymShape {
  std::uint64_t rows = 0;  // 2n * F
  std::uint64_t cols = 0;  // (4n^2 + 2n) * F
};
SymShape sym_matrix_shape(std::uint32_t n, std::uint64_t fund_size);

struct SymEdgeTerm {
  sym::AlbEdge e;
  linalg::fp_t coeff = 0;
};

// sigma_A(e): the orbit sum over A of the underlying edges of g.e, with
// multiplicities reduced mod p.  Sorted by (tail, color), zeros dropped.
std::vector<SymEdgeTerm> sigma_average_edge(const sym::H1Action& act, sym::AlbEdge e);

// Column identities: col = (fund_index * colors + color) * 2 + incoming.
// Outgoing columns symmetrize the edge with tail at the canonical vertex,
// incoming columns the edge with head there; together they reach every edge
// orbit because the canonicalizing element may reverse orientation.
struct ColumnRef {
  std::uint64_t fund_index = 0;
  std::uint32_t color = 0;
  bool incoming = false;
};
ColumnRef column_ref(const graph::StepStarBasis& basis, std::uint64_t col);
std::uint64_t column_index(const graph::StepStarBasis& basis, const ColumnRef& ref);
sym::AlbEdge column_edge(const graph::StepStarBasis& basis, const sym::FundDomain& fund,
                         const ColumnRef& ref);

// The 2n weightings: coboundaries of vertices 1..2n of the tournament, as
// residue vectors indexed by color.
std::vector<std::vector<linalg::fp_t>> weight_vectors(const graph::StepStarBasis& basis);

struct AssembleOptions {
  unsigned threads = 1;
  std::uint32_t max_step = 0;  // indicator rows for classes 1..max_step; 0 = all n
  std::uint64_t mem_budget_bytes = 0;  // 0 = unlimited; assembly is not checkpointable
};

struct SymSystem {
  linalg::SparseMatFp matrix;                         // 2nF x (4n^2+2n)F
  std::vector<std::vector<linalg::fp_t>> indicators;  // dense mass rows per step class
};
SymSystem assemble_sym_matrix(const sym::H1Action& act, const sym::FundDomain& fund,
                              const AssembleOptions& opts = {});

struct SymOptions {
  std::uint32_t max_step = 0;  // step classes to test; 0 = all n
  unsigned threads = 1;
  linalg::RankOptions rank;    // elimination tuning, memory budget, checkpoint
};

struct SymResult {
  std::uint32_t n = 1, p = 2;
  sym::SubgroupLabel label = sym::SubgroupLabel::Triv;
  std::uint64_t group_order = 1;
  bool coprime = true;  // p does not divide |A|
  std::uint64_t fund_size = 0;
  SymShape shape;
  std::uint64_t nnz = 0;
  std::uint64_t rank = 0;                 // r
  std::vector<std::uint64_t> step_ranks;  // r^1..r^max_step (cumulative)
  Verdict verdict = Verdict::Unknown;
  linalg::RankReport report;
};

SymResult solve_symmetrized(std::uint32_t n, std::uint32_t p, sym::SubgroupLabel label,
                            const SymOptions& opts = {});
SymResult solve_symmetrized(const sym::H1Action& act, const sym::FundDomain& fund,
                            const SymOptions& opts = {});

// Witness extraction: appends all n indicator rows as equations with
// right-hand side 1 and solves.  Returns nullopt when the extended system
// is inconsistent or when the expanded chain fails to have constant nonzero
// profile; the latter is typical for subgroups that lack the full rotation
// group, whose orbit sums are not color-balanced within a step class.  A
// returned witness has been revalidated against the defining conditions on
// the full Cayley graph.
struct SymWitness {
  std::vector<SymEdgeTerm> chain;
  linalg::fp_t profile_value = 0;
};
std::optional<SymWitness> extract_witness(const sym::H1Action& act, const sym::FundDomain& fund,
                                          const SymOptions& opts = {});

// Condition (B) on the full Cayley graph: every weighting boundary of the
// chain vanishes.  Independent of the fundamental-domain restriction.
bool check_step_star_solution(const graph::StepStarBasis& basis,
                              const std::vector<SymEdgeTerm>& chain);

// Per-color coefficient sums.
std::vector<linalg::fp_t> step_star_profile(const graph::StepStarBasis& basis,
                                            const std::vector<SymEdgeTerm>& chain);

// Rewrites a chain on step-star vertex coordinates into the coordinates of
// an Albanese graph built from the fundamental cycle basis of the same
// tournament, for cross-checking against the generic matroid machinery.
matroid::SolutionChain to_matroid_chain(const graph::StepStarBasis& basis,
                                        const matroid::AlbaneseGraph& alb,
                                        const std::vector<SymEdgeTerm>& chain);

}  // namespace matsol::solver
