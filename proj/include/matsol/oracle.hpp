// Independent brute-force machinery for small instances: direct dense
// assembly of the defining conditions, chain symmetries induced by base
// graph automorphisms, and verdict cross-validation against the symmetrized
// pipeline.
//
// Everything here deliberately avoids the solver's clever paths; a
// disagreement between the two worlds is an error, not a judgment call, so
// cross_validate_verdict throws on one.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matsol/albanese.hpp"
#include "matsol/graph.hpp"
#include "matsol/solver.hpp"

namespace matsol::oracle {

// A symmetry of an Albanese graph induced by a vertex permutation of the
// base graph, optionally composed with global negation.  The digit map
// already includes the negation; edge_sign[c] is the traversal sign of the
// image of a color-c edge (+1 forward, -1 reversed).
struct ChainSymmetry {
  std::vector<std::uint32_t> color_perm;
  std::vector<int> edge_sign;
  linalg::DenseMatFp vertex_map;  // h x h over F_p
};

// vperm must be an automorphism of the underlying simple graph of g (edges
// may reverse orientation); throws std::invalid_argument otherwise.
ChainSymmetry chain_symmetry(const matroid::AlbaneseGraph& alb, const graph::OrientedGraph& g,
                             const std::vector<std::uint32_t>& vperm, bool iota);

// Image of a single edge: the underlying edge of the image arrow.
matroid::SolutionChain apply_unsigned(const matroid::AlbaneseGraph& alb, const ChainSymmetry& s,
                                      const matroid::SolutionChain& b);

matroid::SolutionChain symmetrize(const matroid::AlbaneseGraph& alb,
                                  const std::vector<ChainSymmetry>& group,
                                  const matroid::SolutionChain& b);

// All nv! vertex permutations of the complete graph (guarded to nv <= 8).
std::vector<std::vector<std::uint32_t>> complete_graph_automorphisms(std::uint32_t nv);

// Dense assembly of the defining conditions, kernel, and revalidation.
// Throws when the dense tableau would exceed max_cells.
std::vector<matroid::SolutionChain> brute_solution_space(const matroid::AlbaneseGraph& alb,
                                                         std::uint64_t max_cells = std::uint64_t(1)
                                                                                   << 26);

// Same, starting from a graph: builds the graphic matroid and its Albanese
// graph internally, then returns the kernel dimension with a basis.
struct BruteSolutions {
  std::uint64_t dimension = 0;
  std::vector<matroid::SolutionChain> basis;
};
BruteSolutions brute_solutions(const graph::OrientedGraph& g, std::uint32_t p,
                               std::uint64_t max_cells = std::uint64_t(1) << 26);

// Dense search for a constant nonzero profile witness.
std::optional<std::pair<matroid::SolutionChain, linalg::fp_t>> brute_constant_profile(
    const matroid::AlbaneseGraph& alb, std::uint64_t max_cells = std::uint64_t(1) << 26);

// Symmetrization audit on K_{2n+1}: for every kernel basis element b and
// every element of the subgroup, checks that
//   (i)   the transformed chain is again a solution with permuted profile,
//   (ii)  the full orbit sum of b is a solution,
//   (iii) if b has constant profile, the orbit sum's profile is |A| times it.
// Violations are reported as human-readable strings; an empty list means the
// equivariance claims hold on this instance.
struct SymmetrizationReport {
  std::uint64_t group_order = 0;
  std::uint64_t solutions_checked = 0;
  std::vector<std::string> violations;
};
SymmetrizationReport check_symmetrization(std::uint32_t n, std::uint32_t p,
                                          sym::SubgroupLabel label,
                                          std::uint64_t max_cells = std::uint64_t(1) << 26);

// The tournament's matroid world: realization, fundamental cycle kernel
// basis, and the Albanese graph built from it (colors in tournament edge
// order, so step-star chains bridge over losslessly).
struct TournamentWorld {
  matroid::RegularMatroid mat;
  matroid::IntMat kernel;  // fundamental cycle basis, h x S
  matroid::AlbaneseGraph albanese;
};
TournamentWorld tournament_world(std::uint32_t n, std::uint32_t p);

struct CrossReport {
  solver::SymResult sym;
  bool oracle_exists = false;
  bool oracle_dense = false;     // dense path (vs sparse affine solve)
  bool solver_witness = false;   // extract_witness produced a validated chain
  bool bridged_witness = false;  // that chain also validates in the matroid world
};

// Runs both worlds on K_{2n+1} and enforces the agreement rules:
//   solver Obstructed        => oracle finds nothing
//   oracle witness + coprime => solver reports CandidateSolution
//   validated solver witness => oracle finds a witness
// Throws std::logic_error on any violation.
CrossReport cross_validate_verdict(std::uint32_t n, std::uint32_t p, sym::SubgroupLabel label,
                                   const solver::SymOptions& opts = {});

}  // namespace matsol::oracle
