#include "matsol/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <stdexcept>

#include "matsol/util.hpp"

namespace matsol::solver {

using linalg::fp_t;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "obstructed";
    case Verdict::CandidateSolution: return "candidate-solution";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

SymShape sym_matrix_shape(std::uint32_t n, std::uint64_t fund_size) {
  SymShape s;
  s.rows = std::uint64_t(2) * n * fund_size;
  s.cols = std::uint64_t(4 * n * n + 2 * n) * fund_size;
  return s;
}

std::vector<SymEdgeTerm> sigma_average_edge(const sym::H1Action& act, sym::AlbEdge e) {
  const graph::StepStarBasis& basis = act.basis();
  const std::uint32_t dim = basis.dim();
  std::vector<fp_t> in(dim), out(dim);
  basis.unpack(e.tail, in.data());

  std::vector<SymEdgeTerm> acc;
  acc.reserve(act.subgroup().order());
  for (std::size_t i = 0; i < act.subgroup().order(); ++i) {
    const auto& t = act.tables(i);
    act.act_coords(i, in.data(), out.data());
    const std::uint32_t c2 = t.color_map[e.color];
    if (t.negate) basis.step_raw(out.data(), c2, -1);
    acc.push_back({{basis.pack(out.data()), c2}, 1});
  }
  std::sort(acc.begin(), acc.end(), [](const SymEdgeTerm& a, const SymEdgeTerm& b) {
    return a.e.tail != b.e.tail ? a.e.tail < b.e.tail : a.e.color < b.e.color;
  });
  std::vector<SymEdgeTerm> merged;
  const linalg::Fp& fp = basis.field();
  for (const SymEdgeTerm& term : acc) {
    if (!merged.empty() && merged.back().e == term.e)
      merged.back().coeff = fp.add(merged.back().coeff, term.coeff);
    else
      merged.push_back(term);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const SymEdgeTerm& t) { return t.coeff == 0; }),
               merged.end());
  return merged;
}

ColumnRef column_ref(const graph::StepStarBasis& basis, std::uint64_t col) {
  ColumnRef r;
  r.incoming = (col & 1) != 0;
  std::uint64_t vc = col >> 1;
  r.color = std::uint32_t(vc % basis.colors());
  r.fund_index = vc / basis.colors();
  return r;
}

std::uint64_t column_index(const graph::StepStarBasis& basis, const ColumnRef& ref) {
  return (ref.fund_index * basis.colors() + ref.color) * 2 + (ref.incoming ? 1 : 0);
}

sym::AlbEdge column_edge(const graph::StepStarBasis& basis, const sym::FundDomain& fund,
                         const ColumnRef& ref) {
  sym::AlbEdge e{fund.verts[ref.fund_index], ref.color};
  if (ref.incoming) {
    std::vector<fp_t> v(basis.dim());
    basis.unpack(e.tail, v.data());
    basis.step_raw(v.data(), ref.color, -1);
    e.tail = basis.pack(v.data());
  }
  return e;
}

std::vector<std::vector<fp_t>> weight_vectors(const graph::StepStarBasis& basis) {
  std::vector<graph::Cochain> cob = graph::coboundary_basis(basis.tournament().base, basis.p());
  std::vector<std::vector<fp_t>> w;
  w.reserve(cob.size());
  for (auto& c : cob) w.push_back(std::move(c.c));
  return w;
}

SymSystem assemble_sym_matrix(const sym::H1Action& act, const sym::FundDomain& fund,
                              const AssembleOptions& opts) {
  const graph::StepStarBasis& basis = act.basis();
  const std::uint32_t n = basis.n();
  const std::uint32_t colors = basis.colors();
  const std::uint32_t dim = basis.dim();
  const std::uint64_t F = fund.size();
  const std::uint32_t ms = opts.max_step == 0 ? n : std::min(opts.max_step, n);
  const linalg::Fp& fp = basis.field();
  const std::vector<std::vector<fp_t>> weights = weight_vectors(basis);
  const std::uint32_t nw = std::uint32_t(weights.size());  // 2n

  SymShape shape = sym_matrix_shape(n, F);
  if (shape.cols > std::numeric_limits<std::uint32_t>::max() ||
      shape.rows > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("assemble_sym_matrix: shape exceeds 32-bit indexing");
  SymSystem sys;
  sys.matrix = linalg::SparseMatFp(std::uint32_t(shape.rows), std::uint32_t(shape.cols),
                                   basis.p());
  sys.indicators.assign(ms, std::vector<fp_t>(shape.cols, 0));

  const unsigned threads = std::max(1u, opts.threads);
  std::vector<std::vector<linalg::Triplet>> chunk_entries(threads);
  std::atomic<std::uint64_t> entries_total{0};

  parallel_chunks(F, threads, [&](unsigned chunk, std::uint64_t fbeg,
                                        std::uint64_t fend) {
    std::vector<linalg::Triplet>& ent = chunk_entries[chunk];
    std::vector<fp_t> vbuf(dim), out(dim);
    std::uint64_t reported = 0;
    for (std::uint64_t f = fbeg; f < fend; ++f) {
      if (opts.mem_budget_bytes != 0 && (f & 1023) == 0) {
        entries_total += ent.size() - reported;
        reported = ent.size();
        // Vector growth roughly doubles capacity, hence the slack factor.
        if (entries_total.load() * 2 * sizeof(linalg::Triplet) > opts.mem_budget_bytes)
          throw BudgetExceeded("matrix assembly exceeded memory budget (not checkpointable)",
                               "");
      }
      for (std::uint32_t c = 0; c < colors; ++c) {
        for (int dir = 0; dir < 2; ++dir) {
          ColumnRef ref{f, c, dir == 1};
          const std::uint64_t col = column_index(basis, ref);
          const sym::AlbEdge e = column_edge(basis, fund, ref);
          const std::vector<SymEdgeTerm> sigma = sigma_average_edge(act, e);
          for (const SymEdgeTerm& term : sigma) {
            basis.unpack(term.e.tail, vbuf.data());
            auto tidx = fund.index_of(term.e.tail);
            basis.step_raw(vbuf.data(), term.e.color, +1);
            auto hidx = fund.index_of(basis.pack(vbuf.data()));
            if (!tidx && !hidx) continue;
            for (std::uint32_t k = 0; k < nw; ++k) {
              const fp_t w = weights[k][term.e.color];
              if (w == 0) continue;
              const fp_t wt = fp.mul(w, term.coeff);
              if (hidx)
                ent.push_back({std::uint32_t(std::uint64_t(k) * F + *hidx),
                               std::uint32_t(col), wt});
              if (tidx)
                ent.push_back({std::uint32_t(std::uint64_t(k) * F + *tidx),
                               std::uint32_t(col), fp.sub(0, wt)});
            }
          }
          const std::uint32_t cls = basis.tournament().step_of_edge(c);
          if (cls <= ms) {
            // Row value = total mass of the averaged chain, so that
            // row . x is the class mass of the expanded combination.
            // Equals |A| mod p on every column of the class.
            fp_t mass = 0;
            for (const SymEdgeTerm& term : sigma) mass = fp.add(mass, term.coeff);
            sys.indicators[cls - 1][col] = mass;
          }
        }
      }
    }
  });

  std::size_t total = 0;
  for (const auto& v : chunk_entries) total += v.size();
  sys.matrix.entries.reserve(total);
  for (auto& v : chunk_entries) {
    sys.matrix.entries.insert(sys.matrix.entries.end(), v.begin(), v.end());
    v.clear();
    v.shrink_to_fit();
  }
  sys.matrix.canonicalize();
  return sys;
}

SymResult solve_symmetrized(const sym::H1Action& act, const sym::FundDomain& fund,
                            const SymOptions& opts) {
  const graph::StepStarBasis& basis = act.basis();
  const std::uint32_t n = basis.n();
  const std::uint32_t ms = opts.max_step == 0 ? n : std::min(opts.max_step, n);

  SymResult res;
  res.n = n;
  res.p = basis.p();
  res.label = act.subgroup().label;
  res.group_order = act.subgroup().order();
  res.coprime = res.group_order % res.p != 0;
  res.fund_size = fund.size();
  res.shape = sym_matrix_shape(n, fund.size());

  AssembleOptions aopts;
  aopts.threads = opts.threads;
  aopts.max_step = ms;
  aopts.mem_budget_bytes = opts.rank.mem_budget_bytes;
  SymSystem sys = assemble_sym_matrix(act, fund, aopts);
  res.nnz = sys.matrix.entries.size();

  linalg::EliminationExtras extras;
  extras.passive_rows = std::move(sys.indicators);
  res.report = linalg::eliminate(sys.matrix, extras, opts.rank);
  res.rank = res.report.rank;
  res.step_ranks = res.report.cumulative_ranks;

  if (!res.step_ranks.empty() && res.step_ranks[0] == res.rank + 1)
    res.verdict = Verdict::CandidateSolution;
  else if (!res.step_ranks.empty() && res.step_ranks[0] == res.rank)
    res.verdict = res.coprime ? Verdict::Obstructed : Verdict::Unknown;
  else
    res.verdict = Verdict::Unknown;
  return res;
}

SymResult solve_symmetrized(std::uint32_t n, std::uint32_t p, sym::SubgroupLabel label,
                            const SymOptions& opts) {
  const graph::StepStarBasis& basis = graph::step_star_basis(n, p);
  sym::H1Action act(basis, sym::make_subgroup(label, basis.m()));
  sym::FundDomain fund =
      sym::enumerate_fundamental_domain(act, opts.threads, opts.rank.mem_budget_bytes);
  return solve_symmetrized(act, fund, opts);
}

std::optional<SymWitness> extract_witness(const sym::H1Action& act, const sym::FundDomain& fund,
                                          const SymOptions& opts) {
  const graph::StepStarBasis& basis = act.basis();
  const std::uint32_t n = basis.n();
  const linalg::Fp& fp = basis.field();

  AssembleOptions aopts;
  aopts.threads = opts.threads;
  aopts.max_step = n;
  aopts.mem_budget_bytes = opts.rank.mem_budget_bytes;
  SymSystem sys = assemble_sym_matrix(act, fund, aopts);

  // Extended system: mass of every step class equals 1.
  linalg::SparseMatFp ext = sys.matrix;
  ext.rows += n;
  for (std::uint32_t k = 0; k < n; ++k)
    for (std::uint64_t col = 0; col < ext.cols; ++col)
      if (sys.indicators[k][col] != 0)
        ext.add(sys.matrix.rows + k, col, sys.indicators[k][col]);
  ext.canonicalize();
  std::vector<fp_t> rhs(ext.rows, 0);
  for (std::uint32_t k = 0; k < n; ++k) rhs[sys.matrix.rows + k] = 1;

  auto x = linalg::sparse_solve(ext, rhs, opts.rank);
  if (!x) return std::nullopt;

  // Expand the column combination into an explicit chain.
  std::map<std::pair<std::uint64_t, std::uint32_t>, fp_t> chain;
  for (std::uint64_t col = 0; col < x->size(); ++col) {
    const fp_t xc = (*x)[col];
    if (xc == 0) continue;
    const ColumnRef ref = column_ref(basis, col);
    const sym::AlbEdge e = column_edge(basis, fund, ref);
    for (const SymEdgeTerm& term : sigma_average_edge(act, e)) {
      auto key = std::make_pair(term.e.tail, term.e.color);
      fp_t& slot = chain[key];
      slot = fp.add(slot, fp.mul(xc, term.coeff));
    }
  }
  SymWitness w;
  for (const auto& [key, v] : chain)
    if (v != 0) w.chain.push_back({{key.first, key.second}, v});
  if (w.chain.empty()) return std::nullopt;

  // The restriction to the fundamental domain is provably complete for
  // invariant chains, so a linear-algebra solution that fails the full
  // defining conditions indicates a bug rather than an unlucky input.
  if (!check_step_star_solution(basis, w.chain))
    throw std::logic_error("extract_witness: chain fails the defining conditions");
  std::vector<fp_t> prof = step_star_profile(basis, w.chain);
  for (fp_t v : prof)
    if (v != prof[0]) return std::nullopt;
  if (prof[0] == 0) return std::nullopt;
  w.profile_value = prof[0];
  return w;
}

bool check_step_star_solution(const graph::StepStarBasis& basis,
                              const std::vector<SymEdgeTerm>& chain) {
  const linalg::Fp& fp = basis.field();
  const std::vector<std::vector<fp_t>> weights = weight_vectors(basis);
  std::vector<fp_t> vbuf(basis.dim());
  for (const auto& w : weights) {
    std::map<std::uint64_t, fp_t> bdry;
    for (const SymEdgeTerm& term : chain) {
      if (term.coeff == 0) continue;
      const fp_t wt = fp.mul(term.coeff, w[term.e.color]);
      if (wt == 0) continue;
      basis.unpack(term.e.tail, vbuf.data());
      basis.step_raw(vbuf.data(), term.e.color, +1);
      const std::uint64_t head = basis.pack(vbuf.data());
      fp_t& h = bdry[head];
      h = fp.add(h, wt);
      fp_t& t = bdry[term.e.tail];
      t = fp.sub(t, wt);
    }
    for (const auto& [vert, val] : bdry)
      if (val != 0) return false;
  }
  return true;
}

std::vector<fp_t> step_star_profile(const graph::StepStarBasis& basis,
                                    const std::vector<SymEdgeTerm>& chain) {
  std::vector<fp_t> prof(basis.colors(), 0);
  const linalg::Fp& fp = basis.field();
  for (const SymEdgeTerm& term : chain)
    prof[term.e.color] = fp.add(prof[term.e.color], term.coeff);
  return prof;
}

matroid::SolutionChain to_matroid_chain(const graph::StepStarBasis& basis,
                                        const matroid::AlbaneseGraph& alb,
                                        const std::vector<SymEdgeTerm>& chain) {
  if (alb.p() != basis.p() || alb.colors() != basis.colors())
    throw std::invalid_argument("to_matroid_chain: graphs disagree on p or colors");
  matroid::SolutionChain out;
  out.p = basis.p();
  std::vector<fp_t> vbuf(basis.dim());
  for (const SymEdgeTerm& term : chain) {
    if (term.coeff == 0) continue;
    basis.unpack(term.e.tail, vbuf.data());
    std::vector<fp_t> cyc = basis.to_cycle_coords(vbuf.data());
    if (cyc.size() != alb.h())
      throw std::invalid_argument("to_matroid_chain: dimension mismatch");
    out.add(alb.pack(cyc), term.e.color, term.coeff);
  }
  return out;
}

}  // namespace matsol::solver
