#include "matsol/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace matsol::oracle {

using linalg::fp_t;

ChainSymmetry chain_symmetry(const matroid::AlbaneseGraph& alb, const graph::OrientedGraph& g,
                             const std::vector<std::uint32_t>& vperm, bool iota) {
  const std::uint32_t S = alb.colors();
  if (g.edges.size() != S)
    throw std::invalid_argument("chain_symmetry: graph and albanese disagree on colors");
  if (vperm.size() != g.vertex_count)
    throw std::invalid_argument("chain_symmetry: permutation has wrong length");

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> lookup;
  for (std::uint32_t c = 0; c < S; ++c) lookup[g.edges[c]] = c;

  ChainSymmetry s;
  s.color_perm.resize(S);
  s.edge_sign.resize(S);
  for (std::uint32_t c = 0; c < S; ++c) {
    const auto [a, b] = g.edges[c];
    const std::uint32_t pa = vperm[a], pb = vperm[b];
    auto fwd = lookup.find({pa, pb});
    auto rev = lookup.find({pb, pa});
    if (fwd != lookup.end()) {
      s.color_perm[c] = fwd->second;
      s.edge_sign[c] = iota ? -1 : +1;
    } else if (rev != lookup.end()) {
      s.color_perm[c] = rev->second;
      s.edge_sign[c] = iota ? +1 : -1;
    } else {
      throw std::invalid_argument("chain_symmetry: not a graph automorphism");
    }
  }

  // Digit map: M gen[c] = sign_c gen[perm[c]] for the permutation part;
  // solve from an invertible column subset, then verify every column.
  const std::uint32_t h = alb.h();
  const linalg::Fp& fp = alb.field();
  // Select h independent generator columns by incremental elimination.
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t c = 0; c < S && chosen.size() < h; ++c) {
    linalg::DenseMatFp trial(std::uint32_t(chosen.size()) + 1, h, alb.p());
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::uint32_t j = 0; j < h; ++j) trial.at(std::uint32_t(i), j) = alb.gen(chosen[i])[j];
    for (std::uint32_t j = 0; j < h; ++j) trial.at(std::uint32_t(chosen.size()), j) = alb.gen(c)[j];
    if (linalg::dense_rank(trial) == chosen.size() + 1) chosen.push_back(c);
  }
  if (chosen.size() != h) throw std::logic_error("chain_symmetry: generators do not span");

  // M = B A^{-1} where A has the chosen generators as columns and B their
  // signed images; row r of M solves A^T x = (row r of B).
  linalg::DenseMatFp a_t(h, h, alb.p());
  for (std::uint32_t i = 0; i < h; ++i)
    for (std::uint32_t j = 0; j < h; ++j) a_t.at(i, j) = alb.gen(chosen[i])[j];

  s.vertex_map = linalg::DenseMatFp(h, h, alb.p());
  for (std::uint32_t r = 0; r < h; ++r) {
    // Row r of M: solve A^T x = (row r of B), where B's column i is the
    // signed image of chosen generator i; its row r collects coordinate r.
    std::vector<fp_t> rhs(h, 0);
    for (std::uint32_t i = 0; i < h; ++i) {
      const std::uint32_t c = chosen[i];
      const fp_t val = alb.gen(s.color_perm[c])[r];
      rhs[i] = s.edge_sign[c] > 0 ? val : fp.sub(0, val);
    }
    auto x = linalg::dense_solve(a_t, rhs);
    if (!x) throw std::logic_error("chain_symmetry: digit map solve failed");
    for (std::uint32_t j = 0; j < h; ++j) s.vertex_map.at(r, j) = (*x)[j];
  }

  // No separate negation step: edge_sign already carries the global sign
  // flip, so the solved map is the full vertex action.

  // Verify M gen[c] = sign_c gen[perm[c]] on every color (sign includes the
  // global flip).
  for (std::uint32_t c = 0; c < S; ++c) {
    for (std::uint32_t i = 0; i < h; ++i) {
      std::int64_t acc = 0;
      for (std::uint32_t j = 0; j < h; ++j)
        acc += std::int64_t(s.vertex_map.at(i, j)) * alb.gen(c)[j];
      fp_t lhs = fp.reduce(acc);
      fp_t rhs = alb.gen(s.color_perm[c])[i];
      if (s.edge_sign[c] < 0) rhs = fp.sub(0, rhs);
      if (lhs != rhs) throw std::logic_error("chain_symmetry: digit map fails verification");
    }
  }
  return s;
}

namespace {

std::uint64_t map_vertex(const matroid::AlbaneseGraph& alb, const ChainSymmetry& s,
                         std::uint64_t key) {
  const std::uint32_t h = alb.h();
  const linalg::Fp& fp = alb.field();
  std::vector<fp_t> d = alb.unpack(key);
  std::vector<fp_t> out(h, 0);
  for (std::uint32_t i = 0; i < h; ++i) {
    std::int64_t acc = 0;
    for (std::uint32_t j = 0; j < h; ++j) acc += std::int64_t(s.vertex_map.at(i, j)) * d[j];
    out[i] = fp.reduce(acc);
  }
  return alb.pack(out);
}

}  // namespace

matroid::SolutionChain apply_unsigned(const matroid::AlbaneseGraph& alb, const ChainSymmetry& s,
                                      const matroid::SolutionChain& b) {
  matroid::SolutionChain out;
  out.p = alb.p();
  for (const auto& [k, v] : b.coeff) {
    if (v == 0) continue;
    const std::uint64_t tail = matroid::SolutionChain::key_tail(k);
    const std::uint32_t c = matroid::SolutionChain::key_color(k);
    const std::uint32_t c2 = s.color_perm[c];
    std::uint64_t t2 = map_vertex(alb, s, tail);
    if (s.edge_sign[c] < 0) t2 = alb.step(t2, c2, -1);
    out.add(t2, c2, v);
  }
  return out;
}

matroid::SolutionChain symmetrize(const matroid::AlbaneseGraph& alb,
                                  const std::vector<ChainSymmetry>& group,
                                  const matroid::SolutionChain& b) {
  matroid::SolutionChain out;
  out.p = alb.p();
  for (const ChainSymmetry& s : group) {
    matroid::SolutionChain img = apply_unsigned(alb, s, b);
    for (const auto& [k, v] : img.coeff)
      out.add(matroid::SolutionChain::key_tail(k), matroid::SolutionChain::key_color(k), v);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> complete_graph_automorphisms(std::uint32_t nv) {
  if (nv > 8) throw std::invalid_argument("complete_graph_automorphisms: nv too large");
  std::vector<std::uint32_t> perm(nv);
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::vector<std::uint32_t>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

linalg::DenseMatFp brute_tableau(const matroid::AlbaneseGraph& alb, bool profile_rows,
                                 std::uint64_t max_cells) {
  const std::uint64_t V = alb.vertex_count();
  const std::uint32_t S = alb.colors();
  const std::uint32_t nu = std::uint32_t(alb.u_basis().size());
  const std::uint64_t rows = std::uint64_t(nu) * V + (profile_rows ? S : 0);
  const std::uint64_t cols = V * S;
  if (rows * cols > max_cells)
    throw std::invalid_argument("oracle: dense tableau exceeds the cell budget");
  linalg::DenseMatFp m(std::uint32_t(rows), std::uint32_t(cols), alb.p());
  const linalg::Fp& fp = alb.field();
  for (std::uint64_t tail = 0; tail < V; ++tail) {
    for (std::uint32_t s = 0; s < S; ++s) {
      const std::uint64_t head = alb.step(tail, s, +1);
      const std::uint32_t col = std::uint32_t(tail * S + s);
      for (std::uint32_t iu = 0; iu < nu; ++iu) {
        const fp_t w = alb.u_basis()[iu][s];
        if (w == 0) continue;
        std::uint32_t rh = std::uint32_t(iu * V + head);
        std::uint32_t rt = std::uint32_t(iu * V + tail);
        m.at(rh, col) = fp.add(m.at(rh, col), w);
        m.at(rt, col) = fp.sub(m.at(rt, col), w);
      }
      if (profile_rows) {
        std::uint32_t rp = std::uint32_t(nu * V + s);
        m.at(rp, col) = fp.add(m.at(rp, col), 1);
      }
    }
  }
  return m;
}

matroid::SolutionChain chain_from_vector(const matroid::AlbaneseGraph& alb,
                                         const std::vector<fp_t>& x) {
  matroid::SolutionChain ch;
  ch.p = alb.p();
  const std::uint32_t S = alb.colors();
  for (std::uint64_t col = 0; col < x.size(); ++col)
    if (x[col] != 0) ch.add(col / S, std::uint32_t(col % S), x[col]);
  return ch;
}

}  // namespace

std::vector<matroid::SolutionChain> brute_solution_space(const matroid::AlbaneseGraph& alb,
                                                         std::uint64_t max_cells) {
  linalg::DenseMatFp m = brute_tableau(alb, false, max_cells);
  std::vector<std::vector<fp_t>> ker = linalg::dense_kernel(m);
  std::vector<matroid::SolutionChain> out;
  out.reserve(ker.size());
  for (const auto& vec : ker) {
    matroid::SolutionChain ch = chain_from_vector(alb, vec);
    if (!matroid::is_solution(alb, ch))
      throw std::logic_error("brute_solution_space: kernel vector failed revalidation");
    out.push_back(std::move(ch));
  }
  return out;
}

std::optional<std::pair<matroid::SolutionChain, fp_t>> brute_constant_profile(
    const matroid::AlbaneseGraph& alb, std::uint64_t max_cells) {
  linalg::DenseMatFp m = brute_tableau(alb, true, max_cells);
  const std::uint64_t V = alb.vertex_count();
  const std::uint32_t S = alb.colors();
  const std::uint32_t nu = std::uint32_t(alb.u_basis().size());
  for (std::uint32_t c = 1; c < alb.p(); ++c) {
    std::vector<fp_t> rhs(m.rows, 0);
    for (std::uint32_t s = 0; s < S; ++s) rhs[std::uint32_t(nu * V + s)] = fp_t(c);
    auto x = linalg::dense_solve(m, rhs);
    if (!x) continue;
    matroid::SolutionChain ch = chain_from_vector(alb, *x);
    if (!matroid::is_solution(alb, ch))
      throw std::logic_error("brute_constant_profile: solve output failed revalidation");
    std::vector<fp_t> prof = matroid::color_profile(alb, ch);
    for (fp_t v : prof)
      if (v != fp_t(c)) throw std::logic_error("brute_constant_profile: profile not constant");
    return std::make_pair(std::move(ch), fp_t(c));
  }
  return std::nullopt;
}

BruteSolutions brute_solutions(const graph::OrientedGraph& g, std::uint32_t p,
                               std::uint64_t max_cells) {
  matroid::RegularMatroid mat = matroid::graphic_matroid(g);
  matroid::AlbaneseGraph alb = matroid::build_albanese(mat, p);
  BruteSolutions out;
  out.basis = brute_solution_space(alb, max_cells);
  out.dimension = out.basis.size();
  return out;
}

SymmetrizationReport check_symmetrization(std::uint32_t n, std::uint32_t p,
                                          sym::SubgroupLabel label, std::uint64_t max_cells) {
  TournamentWorld world = tournament_world(n, p);
  const matroid::AlbaneseGraph& alb = world.albanese;
  const graph::TournamentGraph tour = graph::build_tournament(n);
  const std::uint32_t m = 2 * n + 1;
  const linalg::Fp& fp = alb.field();

  sym::Subgroup sub = sym::make_subgroup(label, m);
  std::vector<ChainSymmetry> group;
  group.reserve(sub.order());
  for (std::size_t i = 0; i < sub.order(); ++i) {
    const sym::GroupElement g = sub.elements[i];
    std::vector<std::uint32_t> vperm(m);
    for (std::uint32_t v = 0; v < m; ++v)
      vperm[v] = g.refl ? (m + g.rot - v) % m : (v + g.rot) % m;
    group.push_back(chain_symmetry(alb, tour.base, vperm, g.iota));
  }

  SymmetrizationReport rep;
  rep.group_order = sub.order();
  std::vector<matroid::SolutionChain> basis = brute_solution_space(alb, max_cells);
  const fp_t order_mod_p = fp.reduce(std::int64_t(sub.order()));

  for (std::size_t bi = 0; bi < basis.size(); ++bi) {
    const matroid::SolutionChain& b = basis[bi];
    const std::vector<fp_t> prof = matroid::color_profile(alb, b);

    for (std::size_t gi = 0; gi < group.size(); ++gi) {
      matroid::SolutionChain img = apply_unsigned(alb, group[gi], b);
      if (!matroid::is_solution(alb, img)) {
        rep.violations.push_back("basis " + std::to_string(bi) + ", element " +
                                 std::to_string(gi) + ": transform is not a solution");
        continue;
      }
      const std::vector<fp_t> iprof = matroid::color_profile(alb, img);
      for (std::uint32_t c = 0; c < alb.colors(); ++c)
        if (iprof[group[gi].color_perm[c]] != prof[c]) {
          rep.violations.push_back("basis " + std::to_string(bi) + ", element " +
                                   std::to_string(gi) + ": profile does not permute");
          break;
        }
    }

    matroid::SolutionChain avg = symmetrize(alb, group, b);
    if (!matroid::is_solution(alb, avg))
      rep.violations.push_back("basis " + std::to_string(bi) + ": orbit sum is not a solution");
    bool constant = true;
    for (fp_t v : prof)
      if (v != prof[0]) constant = false;
    if (constant) {
      const fp_t expect = fp.mul(order_mod_p, prof[0]);
      const std::vector<fp_t> aprof = matroid::color_profile(alb, avg);
      for (fp_t v : aprof)
        if (v != expect) {
          rep.violations.push_back("basis " + std::to_string(bi) +
                                   ": orbit sum profile is not |A| times the profile");
          break;
        }
    }
    ++rep.solutions_checked;
  }
  return rep;
}

TournamentWorld tournament_world(std::uint32_t n, std::uint32_t p) {
  graph::TournamentGraph tour = graph::build_tournament(n);
  matroid::RegularMatroid mat = matroid::graphic_matroid(tour.base);
  std::vector<graph::IntChain> cycles = graph::fundamental_cycle_basis(tour.base);
  matroid::IntMat kernel;
  kernel.reserve(cycles.size());
  for (const auto& cyc : cycles) kernel.emplace_back(cyc.begin(), cyc.end());
  matroid::AlbaneseGraph alb =
      matroid::build_albanese_with_kernel(mat, kernel, p, std::uint64_t(1) << 62);
  return TournamentWorld{std::move(mat), std::move(kernel), std::move(alb)};
}

CrossReport cross_validate_verdict(std::uint32_t n, std::uint32_t p, sym::SubgroupLabel label,
                                   const solver::SymOptions& opts) {
  const graph::StepStarBasis& basis = graph::step_star_basis(n, p);
  sym::H1Action act(basis, sym::make_subgroup(label, basis.m()));
  sym::FundDomain fund = sym::enumerate_fundamental_domain(act, opts.threads);

  CrossReport rep;
  rep.sym = solver::solve_symmetrized(act, fund, opts);

  TournamentWorld world = tournament_world(n, p);
  const matroid::AlbaneseGraph& alb = world.albanese;
  const std::uint64_t V = alb.vertex_count();
  const std::uint32_t S = alb.colors();
  const std::uint64_t nu = alb.u_basis().size();
  // Dense when the cubic elimination cost stays tame.
  const std::uint64_t rows = nu * V + S, cols = std::uint64_t(V) * S;
  const bool dense_ok = rows <= 4096 && rows * rows * cols <= (std::uint64_t(1) << 38);
  std::optional<matroid::SolutionChain> oracle_chain;
  if (dense_ok) {
    rep.oracle_dense = true;
    auto w = brute_constant_profile(alb);
    if (w) oracle_chain = std::move(w->first);
  } else {
    auto w = matroid::constant_profile_witness(alb);
    if (w) oracle_chain = std::move(w->first);
  }
  rep.oracle_exists = oracle_chain.has_value();

  if (rep.sym.verdict == solver::Verdict::Obstructed && rep.oracle_exists)
    throw std::logic_error("cross_validate: solver obstructed but oracle found a witness");
  if (rep.oracle_exists && rep.sym.coprime &&
      rep.sym.verdict != solver::Verdict::CandidateSolution)
    throw std::logic_error("cross_validate: oracle witness invisible to coprime solver");

  const bool rotations = label == sym::SubgroupLabel::DnZ2 || label == sym::SubgroupLabel::Dn ||
                         label == sym::SubgroupLabel::CnZ2 || label == sym::SubgroupLabel::Cn;
  if (rep.sym.verdict == solver::Verdict::CandidateSolution && rotations) {
    auto w = solver::extract_witness(act, fund, opts);
    if (w) {
      rep.solver_witness = true;
      matroid::SolutionChain bridged = solver::to_matroid_chain(basis, alb, w->chain);
      if (!matroid::is_solution(alb, bridged))
        throw std::logic_error("cross_validate: bridged witness fails matroid validation");
      std::vector<fp_t> prof = matroid::color_profile(alb, bridged);
      for (fp_t v : prof)
        if (v != prof[0] || v == 0)
          throw std::logic_error("cross_validate: bridged witness profile not constant nonzero");
      rep.bridged_witness = true;
      if (!rep.oracle_exists)
        throw std::logic_error("cross_validate: validated solver witness but oracle found none");
    }
  }
  return rep;
}

}  // namespace matsol::oracle
