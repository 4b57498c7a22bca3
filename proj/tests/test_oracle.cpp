#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <matsol/albanese.hpp>
#include <matsol/graph.hpp>
#include <matsol/oracle.hpp>
#include <matsol/solver.hpp>

using namespace matsol;
using linalg::fp_t;

TEST_CASE("brute solution spaces on the smallest graphs") {
  oracle::BruteSolutions k3 = oracle::brute_solutions(graph::complete_graph(3), 2);
  CHECK(k3.dimension >= 1);
  CHECK(k3.basis.size() == k3.dimension);

  oracle::BruteSolutions k4 = oracle::brute_solutions(graph::complete_graph(4), 2);
  CHECK(k4.dimension == 31);

  matroid::RegularMatroid k4m = matroid::graphic_matroid(graph::complete_graph(4));
  matroid::AlbaneseGraph alb = matroid::build_albanese(k4m, 2);
  for (const auto& b : k4.basis) CHECK(matroid::is_solution(alb, b));
}

TEST_CASE("brute constant-profile witnesses match the sparse search") {
  matroid::RegularMatroid k4 = matroid::graphic_matroid(graph::complete_graph(4));
  matroid::AlbaneseGraph a42 = matroid::build_albanese(k4, 2);
  auto w = oracle::brute_constant_profile(a42);
  REQUIRE(w.has_value());
  CHECK(w->second != 0);
  CHECK(matroid::is_solution(a42, w->first));
  for (fp_t x : matroid::color_profile(a42, w->first)) CHECK(x == w->second);

  // K5 at p = 2: no witness on either path.
  matroid::RegularMatroid k5 = matroid::graphic_matroid(graph::complete_graph(5));
  matroid::AlbaneseGraph a52 = matroid::build_albanese(k5, 2);
  CHECK_FALSE(oracle::brute_constant_profile(a52).has_value());

  // K5 at p = 3: witness exists and revalidates.
  matroid::AlbaneseGraph a53 = matroid::build_albanese(k5, 3);
  auto w53 = oracle::brute_constant_profile(a53);
  REQUIRE(w53.has_value());
  CHECK(matroid::is_solution(a53, w53->first));
  for (fp_t x : matroid::color_profile(a53, w53->first)) CHECK(x == w53->second);
}

TEST_CASE("chain symmetries act on solutions") {
  oracle::TournamentWorld world = oracle::tournament_world(2, 3);
  const matroid::AlbaneseGraph& alb = world.albanese;
  const graph::OrientedGraph g = graph::build_tournament(2).base;

  // Rotation by one vertex, reflection, and each composed with negation.
  std::vector<std::uint32_t> rot(5), refl(5);
  for (std::uint32_t i = 0; i < 5; ++i) {
    rot[i] = (i + 1) % 5;
    refl[i] = (5 - i) % 5;
  }
  auto sols = oracle::brute_solution_space(alb);
  REQUIRE(!sols.empty());
  for (bool iota : {false, true}) {
    for (const auto& vperm : {rot, refl}) {
      oracle::ChainSymmetry s = oracle::chain_symmetry(alb, g, vperm, iota);
      for (std::size_t i = 0; i < std::min<std::size_t>(sols.size(), 8); ++i) {
        matroid::SolutionChain img = oracle::apply_unsigned(alb, s, sols[i]);
        CHECK(matroid::is_solution(alb, img));
        // The profile permutes along the color permutation.
        auto p0 = matroid::color_profile(alb, sols[i]);
        auto p1 = matroid::color_profile(alb, img);
        for (std::uint32_t c = 0; c < alb.colors(); ++c) CHECK(p1[s.color_perm[c]] == p0[c]);
      }
    }
  }

  // The identity permutation with iota fixes every profile (negation reverses
  // arrows but the unsigned image keeps coefficient sums).
  std::vector<std::uint32_t> id(5);
  for (std::uint32_t i = 0; i < 5; ++i) id[i] = i;
  oracle::ChainSymmetry inv = oracle::chain_symmetry(alb, g, id, true);
  for (std::size_t i = 0; i < std::min<std::size_t>(sols.size(), 8); ++i) {
    matroid::SolutionChain img = oracle::apply_unsigned(alb, inv, sols[i]);
    CHECK(matroid::is_solution(alb, img));
    CHECK(matroid::color_profile(alb, img) == matroid::color_profile(alb, sols[i]));
  }

  // Non-automorphisms are rejected.
  graph::OrientedGraph path;
  path.vertex_count = 3;
  path.edges = {{0, 1}, {1, 2}};
  matroid::RegularMatroid pm = matroid::graphic_matroid(path);
  matroid::AlbaneseGraph palb = matroid::build_albanese(pm, 2);
  CHECK_THROWS_AS(oracle::chain_symmetry(palb, path, {1, 0, 2}, false), std::invalid_argument);
}

TEST_CASE("symmetrization audit is clean where the theory says so") {
  for (auto [n, p, label] : {std::tuple{2u, 2u, sym::SubgroupLabel::DnZ2},
                             {2u, 3u, sym::SubgroupLabel::DnZ2},
                             {2u, 2u, sym::SubgroupLabel::Cn}}) {
    oracle::SymmetrizationReport rep = oracle::check_symmetrization(n, p, label);
    CHECK(rep.group_order == (label == sym::SubgroupLabel::Cn ? 5u : 20u));
    CHECK(rep.solutions_checked > 0);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("brute dimension is invariant under relabeling") {
  std::mt19937_64 rng(83);
  graph::OrientedGraph k4 = graph::complete_graph(4);
  const std::uint64_t base = oracle::brute_solutions(k4, 3).dimension;
  auto perms = oracle::complete_graph_automorphisms(4);
  REQUIRE(perms.size() == 24);
  for (int trial = 0; trial < 4; ++trial) {
    const auto& perm = perms[rng() % perms.size()];
    graph::OrientedGraph relabeled;
    relabeled.vertex_count = 4;
    for (auto [a, b] : k4.edges) relabeled.edges.push_back({perm[a], perm[b]});
    CHECK(oracle::brute_solutions(relabeled, 3).dimension == base);
  }
}

TEST_CASE("cross validation agrees in both directions") {
  // Degenerate subgroup at p = 2: solver says Unknown, oracle finds nothing,
  // and no contradiction is raised.
  oracle::CrossReport r22 = oracle::cross_validate_verdict(2, 2, sym::SubgroupLabel::DnZ2);
  CHECK(r22.sym.verdict == solver::Verdict::Unknown);
  CHECK_FALSE(r22.oracle_exists);
  CHECK_FALSE(r22.solver_witness);

  // Coprime case with a witness: ranks jump, witness extracted, both worlds
  // validate it.
  oracle::CrossReport r23 = oracle::cross_validate_verdict(2, 3, sym::SubgroupLabel::DnZ2);
  CHECK(r23.sym.verdict == solver::Verdict::CandidateSolution);
  CHECK(r23.oracle_exists);
  CHECK(r23.solver_witness);
  CHECK(r23.bridged_witness);

  // Obstructed coprime case: the oracle must come up empty.
  oracle::CrossReport rcn = oracle::cross_validate_verdict(2, 2, sym::SubgroupLabel::Cn);
  CHECK(rcn.sym.verdict == solver::Verdict::Obstructed);
  CHECK_FALSE(rcn.oracle_exists);
}
