#include <doctest.h>

#include <cstdint>
#include <random>
#include <stdexcept>

#include <matsol/albanese.hpp>
#include <matsol/dense_mat.hpp>
#include <matsol/graph.hpp>
#include <matsol/matroid.hpp>
#include <matsol/sparse_mat.hpp>

using namespace matsol;
using linalg::fp_t;

TEST_CASE("graphic matroid of K4") {
  matroid::RegularMatroid m = matroid::graphic_matroid(graph::complete_graph(4));
  CHECK(m.rank == 3);
  CHECK(m.size == 6);
  CHECK(m.minors_checked);
  REQUIRE(m.realization.size() == 3);
  // Columns are reduced incidence vectors: entry [v-1][e] = [head==v]-[tail==v].
  graph::OrientedGraph g = graph::complete_graph(4);
  for (std::uint32_t v = 1; v < 4; ++v)
    for (std::uint32_t e = 0; e < 6; ++e) {
      std::int64_t want = 0;
      if (g.edges[e].second == v) want += 1;
      if (g.edges[e].first == v) want -= 1;
      CHECK(m.realization[v - 1][e] == want);
    }
}

TEST_CASE("integer kernel annihilates the realization") {
  matroid::RegularMatroid m = matroid::graphic_matroid(graph::complete_graph(5));
  matroid::IntMat ker = matroid::integer_kernel_basis(m.realization, m.size);
  CHECK(ker.size() == m.size - m.rank);
  for (const auto& y : ker) {
    REQUIRE(y.size() == m.size);
    for (const auto& row : m.realization) {
      std::int64_t dot = 0;
      for (std::uint32_t j = 0; j < m.size; ++j) dot += row[j] * y[j];
      CHECK(dot == 0);
    }
  }
}

TEST_CASE("cographic dual complements the rank") {
  for (std::uint32_t nv : {4u, 5u}) {
    matroid::RegularMatroid m = matroid::graphic_matroid(graph::complete_graph(nv));
    matroid::RegularMatroid d = matroid::dual_matroid(m);
    CHECK(d.size == m.size);
    CHECK(d.rank + m.rank == m.size);
    CHECK(d.minors_checked);
    // Dual rows annihilate the primal realization.
    for (const auto& y : d.realization)
      for (const auto& row : m.realization) {
        std::int64_t dot = 0;
        for (std::uint32_t j = 0; j < m.size; ++j) dot += row[j] * y[j];
        CHECK(dot == 0);
      }
  }
}

TEST_CASE("disconnected graphs drop one vertex per component") {
  graph::OrientedGraph g;  // two disjoint triangles
  g.vertex_count = 6;
  g.edges = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  matroid::RegularMatroid m = matroid::graphic_matroid(g);
  CHECK(m.rank == 4);  // V - #components
  CHECK(m.size == 6);
  CHECK(m.note.find("component") != std::string::npos);
}

TEST_CASE("regular matroid validation rejects bad realizations") {
  // A 2x2 minor of determinant 2 is not totally unimodular.
  matroid::IntMat bad = {{1, 1}, {-1, 1}};
  CHECK_THROWS_AS(matroid::make_regular_matroid(bad), std::invalid_argument);
  // Row-deficient input.
  matroid::IntMat flat = {{1, 1}, {1, 1}};
  CHECK_THROWS_AS(matroid::make_regular_matroid(flat), std::invalid_argument);
}

TEST_CASE("albanese graph of K4 at p = 2") {
  matroid::RegularMatroid m = matroid::graphic_matroid(graph::complete_graph(4));
  matroid::AlbaneseGraph alb = matroid::build_albanese(m, 2);
  CHECK(alb.vertex_count() == 8);  // 2^(6-3)
  CHECK(alb.colors() == 6);
  CHECK(alb.h() == 3);
  CHECK(alb.u_basis().size() == 3);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t v = rng() % alb.vertex_count();
    const std::uint32_t c = std::uint32_t(rng() % alb.colors());
    const std::uint64_t w = alb.step(v, c, +1);
    CHECK(alb.step(w, c, -1) == v);
    // Stepping adds the generator digits.
    auto dv = alb.unpack(v);
    const auto& g = alb.gen(c);
    for (std::uint32_t j = 0; j < alb.h(); ++j) dv[j] = alb.field().add(dv[j], g[j]);
    CHECK(alb.pack(dv) == w);
  }
}

TEST_CASE("albanese sizes and the vertex cap") {
  matroid::RegularMatroid k5 = matroid::graphic_matroid(graph::complete_graph(5));
  CHECK(matroid::build_albanese(k5, 3).vertex_count() == 729);  // 3^6
  matroid::RegularMatroid k7 = matroid::graphic_matroid(graph::complete_graph(7));
  CHECK_THROWS_AS(matroid::build_albanese(k7, 3), std::invalid_argument);  // 3^15 > 2^20
}

TEST_CASE("solution space of K3 at p = 2") {
  matroid::RegularMatroid m = matroid::graphic_matroid(graph::complete_graph(3));
  matroid::AlbaneseGraph alb = matroid::build_albanese(m, 2);
  CHECK(alb.vertex_count() == 2);

  auto sols = matroid::solution_space(alb);
  // Cross-check the dimension by rank-nullity on the constraint system.
  linalg::SparseMatFp sys = matroid::solution_constraints(alb);
  CHECK(sys.rows == alb.u_basis().size() * alb.vertex_count());
  CHECK(sys.cols == alb.vertex_count() * alb.colors());
  CHECK(sols.size() == sys.cols - linalg::dense_rank(linalg::to_dense(sys)));

  for (const auto& s : sols) {
    CHECK(matroid::is_solution(alb, s));
    // Independent re-check of (B): for every u in the basis of U_p, the
    // u-weighted boundary (coeff * u[color] flowing tail -> head) vanishes
    // at every vertex.
    for (const auto& u : alb.u_basis()) {
      std::vector<fp_t> bdry(alb.vertex_count(), 0);
      for (auto [key, coeff] : s.coeff) {
        const std::uint64_t tail = matroid::SolutionChain::key_tail(key);
        const std::uint32_t color = matroid::SolutionChain::key_color(key);
        const std::uint64_t head = alb.step(tail, color, +1);
        const fp_t w = alb.field().mul(u[color], coeff);
        bdry[head] = alb.field().add(bdry[head], w);
        bdry[tail] = alb.field().sub(bdry[tail], w);
      }
      for (fp_t x : bdry) CHECK(x == 0);
    }
  }
}

TEST_CASE("color profile sums coefficients per color") {
  matroid::RegularMatroid m = matroid::graphic_matroid(graph::complete_graph(4));
  matroid::AlbaneseGraph alb = matroid::build_albanese(m, 3);
  matroid::SolutionChain b;
  b.p = 3;
  b.add(0, 2, 1);
  b.add(5, 2, 2);
  b.add(3, 4, 1);
  b.add(3, 4, 2);  // accumulates to 0 and the slot empties
  auto prof = matroid::color_profile(alb, b);
  REQUIRE(prof.size() == 6);
  CHECK(prof[2] == 0);  // 1 + 2 mod 3
  CHECK(prof[4] == 0);
  CHECK(b.coeff.count(matroid::SolutionChain::key(3, 4)) == 0);
  b.add(1, 5, 2);
  CHECK(matroid::color_profile(alb, b)[5] == 2);
  CHECK_FALSE(b.empty());
}

TEST_CASE("constant profile witnesses exist exactly where the search says") {
  // K4 at p = 2 has a witness; K5 at p = 2 does not (the profile equations
  // force 0); K5 at p = 3 has one.
  matroid::RegularMatroid k4 = matroid::graphic_matroid(graph::complete_graph(4));
  matroid::AlbaneseGraph a42 = matroid::build_albanese(k4, 2);
  auto w42 = matroid::constant_profile_witness(a42);
  REQUIRE(w42.has_value());
  CHECK(matroid::is_solution(a42, w42->first));
  auto prof = matroid::color_profile(a42, w42->first);
  for (fp_t x : prof) CHECK(x == w42->second);
  CHECK(w42->second != 0);
  CHECK(matroid::constant_profile_witness_exists(a42));

  matroid::RegularMatroid k5 = matroid::graphic_matroid(graph::complete_graph(5));
  matroid::AlbaneseGraph a52 = matroid::build_albanese(k5, 2);
  CHECK_FALSE(matroid::constant_profile_witness(a52).has_value());
  CHECK_FALSE(matroid::constant_profile_witness_exists(a52));
}
