#include "matsol/d_bound.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "matsol/albanese.hpp"
#include "matsol/fund_domain.hpp"
#include "matsol/matroid.hpp"
#include "matsol/oracle.hpp"
#include "matsol/util.hpp"

namespace matsol::dbound {

const char* to_string(Method m) {
  switch (m) {
    case Method::DenseOracle: return "dense-oracle";
    case Method::SparseExistence: return "sparse-existence";
    case Method::Symmetrized: return "symmetrized";
    case Method::Skipped: return "skipped";
  }
  return "skipped";
}

sym::SubgroupLabel largest_coprime_subgroup(std::uint32_t m, std::uint32_t p) {
  const std::uint64_t orders[] = {4ull * m, 2ull * m, 2ull * m, m, 2, 1};
  const sym::SubgroupLabel labels[] = {sym::SubgroupLabel::DnZ2, sym::SubgroupLabel::Dn,
                                       sym::SubgroupLabel::CnZ2, sym::SubgroupLabel::Cn,
                                       sym::SubgroupLabel::Z2, sym::SubgroupLabel::Triv};
  for (int i = 0; i < 6; ++i)
    if (orders[i] % p != 0) return labels[i];
  return sym::SubgroupLabel::Triv;
}

bool is_rotational_tournament(const graph::OrientedGraph& g, std::uint32_t& n_out) {
  const std::uint32_t m = g.vertex_count;
  if (m < 3 || m % 2 == 0) return false;
  const std::uint32_t n = (m - 1) / 2;
  if (g.edges.size() != std::size_t(m) * n) return false;
  std::set<std::pair<std::uint32_t, std::uint32_t>> have(g.edges.begin(), g.edges.end());
  if (have.size() != g.edges.size()) return false;
  for (std::uint32_t k = 1; k <= n; ++k)
    for (std::uint32_t i = 0; i < m; ++i)
      if (!have.count({i, (i + k) % m})) return false;
  n_out = n;
  return true;
}

namespace {

// p^h saturated at 2^62.
std::uint64_t pow_sat(std::uint32_t p, std::uint32_t h) {
  std::uint64_t v = 1;
  const std::uint64_t cap = std::uint64_t(1) << 62;
  for (std::uint32_t i = 0; i < h; ++i) {
    if (v > cap / p) return cap;
    v *= p;
  }
  return v;
}

PrimeProbe probe_prime(const graph::OrientedGraph& g, std::uint32_t p,
                       const ProbeOptions& opts) {
  PrimeProbe probe;
  probe.p = p;
  WallTimer timer;

  matroid::RegularMatroid mat = matroid::graphic_matroid(g);
  const std::uint32_t S = std::uint32_t(mat.size);
  const std::uint32_t h = std::uint32_t(mat.size - mat.rank);
  const std::uint64_t V = pow_sat(p, h);
  const std::uint64_t nu = mat.rank;

  std::uint32_t n = 0;
  const bool tournament = is_rotational_tournament(g, n);

  // Tier 1: dense oracle.
  const std::uint64_t dense_rows = nu * V + S;
  if (V < (std::uint64_t(1) << 62) && dense_rows <= opts.dense_row_cap &&
      dense_rows * dense_rows <= opts.dense_cost_cap / std::max<std::uint64_t>(1, V * S)) {
    matroid::AlbaneseGraph alb = matroid::build_albanese(mat, p, V);
    auto w = oracle::brute_constant_profile(alb);
    probe.method = Method::DenseOracle;
    probe.witness_exists = w.has_value();
    probe.obstructed = !w.has_value();
    probe.seconds = timer.seconds();
    return probe;
  }

  // Tier 2: sparse existence.
  if (V < (std::uint64_t(1) << 62) && V * S <= opts.sparse_cols_cap) {
    matroid::AlbaneseGraph alb = matroid::build_albanese(mat, p, V);
    const bool exists = matroid::constant_profile_witness_exists(alb);
    probe.method = Method::SparseExistence;
    probe.witness_exists = exists;
    probe.obstructed = !exists;
    probe.note = "existence by rank comparison";
    probe.seconds = timer.seconds();
    return probe;
  }

  // Tier 3: symmetrized pipeline, only for rotational tournaments with a
  // valid step-star basis.
  if (tournament && (2 * n + 1) % p != 0) {
    const std::uint32_t m = 2 * n + 1;
    probe.method = Method::Symmetrized;
    probe.subgroup = largest_coprime_subgroup(m, p);
    sym::Subgroup sub = sym::make_subgroup(probe.subgroup, m);
    const std::uint32_t dim = 2 * n * n - n;
    const std::uint64_t orbit_lb =
        (pow_sat(p, dim) + sub.order() - 1) / sub.order();
    solver::SymShape est = solver::sym_matrix_shape(n, orbit_lb);
    if (est.cols > opts.sym_cols_gate && !opts.full_rank) {
      probe.shape = est;
      probe.shape_estimated = true;
      probe.note = "gated: symmetrized matrix too large, rerun with full-rank enabled";
      probe.seconds = timer.seconds();
      return probe;
    }

    const graph::StepStarBasis& basis = graph::step_star_basis(n, p);
    sym::H1Action act(basis, sub);
    sym::FundDomain fund =
        sym::enumerate_fundamental_domain(act, opts.threads, opts.mem_budget_bytes);
    probe.fund_size = fund.size();
    probe.shape = solver::sym_matrix_shape(n, fund.size());
    if (probe.shape.cols > opts.sym_cols_gate && !opts.full_rank) {
      probe.note = "gated: symmetrized matrix too large, rerun with full-rank enabled";
      probe.seconds = timer.seconds();
      return probe;
    }

    solver::SymOptions sopts;
    sopts.threads = opts.threads;
    sopts.rank.mem_budget_bytes = opts.mem_budget_bytes;
    if (!opts.checkpoint_dir.empty())
      sopts.rank.checkpoint_path =
          opts.checkpoint_dir + "/sym-p" + std::to_string(p) + ".ckpt";
    solver::SymResult res = solver::solve_symmetrized(act, fund, sopts);
    probe.verdict = res.verdict;
    probe.obstructed = res.verdict == solver::Verdict::Obstructed;
    if (res.verdict == solver::Verdict::Unknown && !res.coprime)
      probe.note = "group order not coprime to p";
    probe.seconds = timer.seconds();
    return probe;
  }

  probe.method = Method::Skipped;
  if (tournament && (2 * n + 1) % p == 0)
    probe.note = "star dual degenerate and instance exceeds oracle budgets";
  else if (tournament)
    probe.note = "instance exceeds oracle budgets";
  else
    probe.note = "not a rotational tournament and instance exceeds oracle budgets";
  probe.seconds = timer.seconds();
  return probe;
}

}  // namespace

DBoundReport d_lower_bound(const graph::OrientedGraph& g, const std::vector<std::uint32_t>& primes,
                           const ProbeOptions& opts) {
  std::vector<std::uint32_t> ps = primes;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (std::uint32_t p : ps)
    if (p < 2 || p > 255 || !linalg::is_prime_u32(p))
      throw std::invalid_argument("d_lower_bound: probe values must be primes in [2, 255]");

  DBoundReport rep;
  for (std::uint32_t p : ps) {
    PrimeProbe probe = probe_prime(g, p, opts);
    if (probe.obstructed) rep.lower_bound *= p;
    rep.probes.push_back(std::move(probe));
  }
  return rep;
}

}  // namespace matsol::dbound
