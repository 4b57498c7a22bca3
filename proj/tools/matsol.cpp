// Command-line front end: fundamental domains, the symmetrized
// constant-profile test, brute-force oracle runs, divisibility lower
// bounds, and matrix export.
//
// Exit codes: 0 verdict/result reached, 2 invalid input, 3 budget
// exceeded (checkpoint path printed when one was written).

#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "matsol/d_bound.hpp"
#include "matsol/fund_domain.hpp"
#include "matsol/oracle.hpp"
#include "matsol/solver.hpp"
#include "matsol/util.hpp"

using json = nlohmann::ordered_json;
using namespace matsol;

namespace {

std::string with_commas(std::uint64_t v) {
  std::string s = std::to_string(v);
  for (int i = int(s.size()) - 3; i > 0; i -= 3) s.insert(std::size_t(i), ",");
  return s;
}

// "512m", "4g", "123456"; empty or "0" means unlimited.
std::uint64_t parse_mem(const std::string& s) {
  if (s.empty()) return 0;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad memory size: " + s);
  }
  std::uint64_t mult = 1;
  if (pos < s.size()) {
    if (pos + 1 != s.size()) throw std::invalid_argument("bad memory size: " + s);
    switch (s[pos]) {
      case 'k': case 'K': mult = std::uint64_t(1) << 10; break;
      case 'm': case 'M': mult = std::uint64_t(1) << 20; break;
      case 'g': case 'G': mult = std::uint64_t(1) << 30; break;
      default: throw std::invalid_argument("bad memory size suffix: " + s);
    }
  }
  return std::uint64_t(v) * mult;
}

graph::OrientedGraph graph_from_spec(const std::string& spec) {
  if ((spec.size() > 1) && (spec[0] == 'k' || spec[0] == 'K') &&
      spec.find_first_not_of("0123456789", 1) == std::string::npos) {
    const unsigned long nv = std::stoul(spec.substr(1));
    if (nv < 1 || nv > 64) throw std::invalid_argument("complete graph size out of range: " + spec);
    if (nv % 2 == 1 && nv >= 3)
      return graph::build_tournament(std::uint32_t((nv - 1) / 2)).base;
    return graph::complete_graph(std::uint32_t(nv));
  }
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open graph file: " + spec);
  std::uint32_t nv = 0;
  std::uint64_t ne = 0;
  if (!(in >> nv >> ne)) throw std::invalid_argument(spec + ": expected header 'V E'");
  graph::OrientedGraph g;
  g.vertex_count = nv;
  g.edges.reserve(ne);
  for (std::uint64_t i = 0; i < ne; ++i) {
    std::uint32_t t, h;
    if (!(in >> t >> h)) throw std::invalid_argument(spec + ": short edge list");
    if (t >= nv || h >= nv) throw std::invalid_argument(spec + ": edge endpoint out of range");
    g.edges.emplace_back(t, h);
  }
  return g;
}

sym::SubgroupLabel subgroup_from_name(const std::string& name) {
  auto label = sym::parse_subgroup(name);
  if (!label || *label == sym::SubgroupLabel::Custom)
    throw std::invalid_argument("unknown subgroup label: " + name +
                                " (expected DnZ2, Dn, CnZ2, Cn, Z2 or Triv)");
  return *label;
}

void check_pm(std::uint32_t p, std::uint32_t m) {
  if (!linalg::is_prime_u32(p) || p > 255)
    throw std::invalid_argument("p must be a prime in [2, 255]");
  if (m < 3 || m % 2 == 0) throw std::invalid_argument("m must be odd and at least 3");
}

void write_report(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << j.dump(2) << "\n";
}

json shape_json(const solver::SymShape& s) {
  return json{{"rows", s.rows}, {"cols", s.cols}};
}

// Flags shared by every subcommand.
struct CommonOpts {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string mem_budget;
  std::string checkpoint_dir;
  std::string report_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--threads", o.threads, "worker thread count")
      ->envname("MATSOL_THREADS");
  cmd->add_option("--mem-budget", o.mem_budget,
                  "memory budget (bytes, k/m/g suffix; 0 = unlimited)")
      ->envname("MATSOL_MEM_BUDGET");
  cmd->add_option("--checkpoint-dir", o.checkpoint_dir,
                  "directory for elimination checkpoints")
      ->envname("MATSOL_CHECKPOINT_DIR");
  cmd->add_option("--report", o.report_path, "write a JSON report here")
      ->envname("MATSOL_REPORT");
}

// ---- test-colorless ---------------------------------------------------------

struct TestColorlessOpts {
  CommonOpts common;
  std::uint32_t p = 2;
  std::uint32_t m = 5;
  std::string subgroup = "DnZ2";
  std::uint32_t max_step = 0;
  bool full_rank = false;
  std::string resume;
  std::uint64_t cols_gate = 1500000;
};

int run_test_colorless(const TestColorlessOpts& o) {
  const std::uint64_t budget = parse_mem(o.common.mem_budget);

  if (!o.resume.empty()) {
    linalg::RankOptions ropts;
    ropts.mem_budget_bytes = budget;
    if (!o.common.checkpoint_dir.empty())
      ropts.checkpoint_path = o.common.checkpoint_dir + "/test-colorless-resume.ckpt";
    WallTimer timer;
    linalg::RankReport rep = linalg::resume_elimination(o.resume, ropts);
    json j;
    j["command"] = "test-colorless";
    j["resumed_from"] = o.resume;
    j["r"] = rep.rank;
    j["step_ranks"] = rep.cumulative_ranks;
    j["wall_seconds"] = timer.seconds();
    j["peak_rss_bytes"] = peak_rss_bytes();
    std::printf("resumed %s: r = %s\n", o.resume.c_str(), with_commas(rep.rank).c_str());
    for (std::size_t s = 0; s < rep.cumulative_ranks.size(); ++s)
      std::printf("r^%zu = %s\n", s + 1, with_commas(rep.cumulative_ranks[s]).c_str());
    write_report(o.common.report_path, j);
    return 0;
  }

  check_pm(o.p, o.m);
  const std::uint32_t n = (o.m - 1) / 2;
  const sym::SubgroupLabel label = subgroup_from_name(o.subgroup);
  std::printf("m = %u (2n+1 with n = %u); note that some pseudocode conventions "
              "use the name n for the vertex count itself\n", o.m, n);

  WallTimer timer;
  const graph::StepStarBasis& basis = graph::step_star_basis(n, o.p);
  sym::H1Action act(basis, sym::make_subgroup(label, o.m));
  sym::FundDomain fund = sym::enumerate_fundamental_domain(act, o.common.threads, budget);
  const double enum_seconds = timer.seconds();
  const solver::SymShape shape = solver::sym_matrix_shape(n, fund.size());
  const bool coprime = act.subgroup().order() % o.p != 0;

  std::printf("p = %u, subgroup %s (order %zu), |V_fund| = %s\n", o.p,
              sym::to_string(label), act.subgroup().order(),
              with_commas(fund.size()).c_str());
  std::printf("matrix shape %s x %s\n", with_commas(shape.rows).c_str(),
              with_commas(shape.cols).c_str());

  json j;
  j["command"] = "test-colorless";
  j["p"] = o.p;
  j["m"] = o.m;
  j["n"] = n;
  j["subgroup"] = sym::to_string(label);
  j["group_order"] = act.subgroup().order();
  j["coprime"] = coprime;
  j["v_fund"] = fund.size();
  j["shape"] = shape_json(shape);
  std::vector<std::string> warnings;
  if (!coprime)
    warnings.push_back("subgroup order shares a factor with p; a rank tie is inconclusive");

  const bool rank_gated = !o.full_rank && shape.cols > o.cols_gate;
  if (rank_gated) {
    warnings.push_back("rank phase skipped: matrix has " + with_commas(shape.cols) +
                       " columns; rerun with --full-rank to compute ranks");
    j["rank_computed"] = false;
    j["warnings"] = warnings;
    j["threads"] = o.common.threads;
    j["enumeration_seconds"] = enum_seconds;
    j["wall_seconds"] = timer.seconds();
    j["peak_rss_bytes"] = peak_rss_bytes();
    std::printf("rank phase skipped (use --full-rank); shape reported above\n");
    write_report(o.common.report_path, j);
    return 0;
  }

  solver::SymOptions sopts;
  sopts.threads = o.common.threads;
  sopts.max_step = o.max_step;
  sopts.rank.mem_budget_bytes = budget;
  if (!o.common.checkpoint_dir.empty())
    sopts.rank.checkpoint_path = o.common.checkpoint_dir + "/test-colorless-p" +
                                 std::to_string(o.p) + "-m" + std::to_string(o.m) + "-" +
                                 sym::to_string(label) + ".ckpt";
  solver::SymResult res = solver::solve_symmetrized(act, fund, sopts);

  j["rank_computed"] = true;
  j["nnz"] = res.nnz;
  j["r"] = res.rank;
  j["step_ranks"] = res.step_ranks;
  j["verdict"] = solver::to_string(res.verdict);

  std::printf("r = %s", with_commas(res.rank).c_str());
  for (std::size_t s = 0; s < res.step_ranks.size(); ++s)
    std::printf(", r^%zu = %s", s + 1, with_commas(res.step_ranks[s]).c_str());
  std::printf("\nverdict: %s\n", solver::to_string(res.verdict));

  if (res.verdict == solver::Verdict::CandidateSolution) {
    // A jump alone certifies only a nonzero step-1 total; existence needs a
    // validated witness.
    std::optional<solver::SymWitness> wit = solver::extract_witness(act, fund, sopts);
    j["witness_validated"] = wit.has_value();
    if (wit) {
      j["witness_profile_value"] = wit->profile_value;
      j["witness_support"] = wit->chain.size();
      std::printf("witness: validated, constant profile %u, support %zu edges\n",
                  unsigned(wit->profile_value), wit->chain.size());
    } else {
      warnings.push_back("rank jump but no validated constant-profile witness; "
                         "existence remains uncertified");
      std::printf("witness: none validated\n");
    }
  }

  j["warnings"] = warnings;
  j["threads"] = o.common.threads;
  j["enumeration_seconds"] = enum_seconds;
  j["wall_seconds"] = timer.seconds();
  j["peak_rss_bytes"] = peak_rss_bytes();
  for (const std::string& w : warnings) std::printf("warning: %s\n", w.c_str());
  write_report(o.common.report_path, j);
  return 0;
}

// ---- fundamental-domain -----------------------------------------------------

struct FundDomainOpts {
  CommonOpts common;
  std::uint32_t p = 2;
  std::uint32_t m = 5;
  std::string subgroup = "DnZ2";
  std::string export_path;
};

int run_fundamental_domain(const FundDomainOpts& o) {
  check_pm(o.p, o.m);
  const std::uint32_t n = (o.m - 1) / 2;
  const sym::SubgroupLabel label = subgroup_from_name(o.subgroup);
  const std::uint64_t budget = parse_mem(o.common.mem_budget);
  std::printf("m = %u (2n+1 with n = %u); note that some pseudocode conventions "
              "use the name n for the vertex count itself\n", o.m, n);

  WallTimer timer;
  const graph::StepStarBasis& basis = graph::step_star_basis(n, o.p);
  sym::H1Action act(basis, sym::make_subgroup(label, o.m));

  std::uint64_t count = 0;
  if (o.export_path.empty()) {
    count = sym::count_fundamental_domain(act, o.common.threads);
  } else {
    sym::FundDomain fund = sym::enumerate_fundamental_domain(act, o.common.threads, budget);
    count = fund.size();
    sym::save_fund_domain(fund, o.export_path);
    std::printf("wrote %s\n", o.export_path.c_str());
  }

  std::printf("p = %u, subgroup %s: |V_fund| = %s\n", o.p, sym::to_string(label),
              with_commas(count).c_str());
  json j;
  j["command"] = "fundamental-domain";
  j["p"] = o.p;
  j["m"] = o.m;
  j["n"] = n;
  j["subgroup"] = sym::to_string(label);
  j["group_order"] = act.subgroup().order();
  j["v_fund"] = count;
  if (!o.export_path.empty()) j["export"] = o.export_path;
  j["threads"] = o.common.threads;
  j["wall_seconds"] = timer.seconds();
  j["peak_rss_bytes"] = peak_rss_bytes();
  write_report(o.common.report_path, j);
  return 0;
}

// ---- oracle -------------------------------------------------------------------

struct OracleOpts {
  CommonOpts common;
  std::string graph_spec = "k4";
  std::uint32_t p = 2;
  std::uint64_t vertex_cap = std::uint64_t(1) << 20;
  std::uint64_t dense_cells = std::uint64_t(1) << 26;
};

int run_oracle(const OracleOpts& o) {
  if (!linalg::is_prime_u32(o.p) || o.p > 255)
    throw std::invalid_argument("p must be a prime in [2, 255]");
  WallTimer timer;
  graph::OrientedGraph g = graph_from_spec(o.graph_spec);
  matroid::RegularMatroid mat = matroid::graphic_matroid(g);
  matroid::AlbaneseGraph alb = matroid::build_albanese(mat, o.p, o.vertex_cap);

  json j;
  j["command"] = "oracle";
  j["graph"] = o.graph_spec;
  j["p"] = o.p;
  j["ground_size"] = mat.size;
  j["rank"] = mat.rank;
  j["albanese_vertices"] = alb.vertex_count();

  // Dense only while the cubic elimination cost stays tame.
  const std::uint64_t rows = std::uint64_t(alb.u_basis().size()) * alb.vertex_count() +
                             alb.colors();
  const std::uint64_t cols = alb.vertex_count() * alb.colors();
  const bool dense_ok = rows <= 4096 && rows * rows * cols <= (std::uint64_t(1) << 38);
  std::optional<std::pair<matroid::SolutionChain, linalg::fp_t>> witness;
  if (dense_ok) {
    std::vector<matroid::SolutionChain> basis = oracle::brute_solution_space(alb, o.dense_cells);
    j["dimension"] = basis.size();
    std::printf("solution space dimension = %zu\n", basis.size());
    witness = oracle::brute_constant_profile(alb, o.dense_cells);
    j["method"] = "dense";
  } else {
    witness = matroid::constant_profile_witness(alb);
    j["method"] = "sparse";
  }
  j["witness_exists"] = witness.has_value();
  if (witness) {
    j["witness_value"] = witness->second;
    j["witness_support"] = witness->first.coeff.size();
    std::printf("constant-profile witness exists (profile value %u, support %zu)\n",
                unsigned(witness->second), witness->first.coeff.size());
  } else {
    std::printf("no constant nonzero profile solution: p = %u divides d(G)\n", o.p);
  }
  j["wall_seconds"] = timer.seconds();
  j["peak_rss_bytes"] = peak_rss_bytes();
  write_report(o.common.report_path, j);
  return 0;
}

// ---- d-bound ------------------------------------------------------------------

struct DBoundOpts {
  CommonOpts common;
  std::string graph_spec = "k5";
  std::vector<std::uint32_t> primes;
  bool full_rank = false;
};

int run_d_bound(const DBoundOpts& o) {
  WallTimer timer;
  graph::OrientedGraph g = graph_from_spec(o.graph_spec);

  std::vector<std::uint32_t> primes = o.primes;
  if (primes.empty()) {
    // Only primes below the matroid rank can divide the invariant.
    matroid::RegularMatroid mat = matroid::graphic_matroid(g);
    for (std::uint32_t q = 2; q < mat.rank; ++q)
      if (linalg::is_prime_u32(q)) primes.push_back(q);
    if (primes.empty()) {
      std::printf("rank %u admits no candidate primes; d lower bound = 1\n", mat.rank);
      json j;
      j["command"] = "d-bound";
      j["graph"] = o.graph_spec;
      j["primes"] = primes;
      j["lower_bound"] = 1;
      j["probes"] = json::array();
      j["wall_seconds"] = timer.seconds();
      write_report(o.common.report_path, j);
      return 0;
    }
  }

  dbound::ProbeOptions popts;
  popts.full_rank = o.full_rank;
  popts.threads = o.common.threads;
  popts.mem_budget_bytes = parse_mem(o.common.mem_budget);
  popts.checkpoint_dir = o.common.checkpoint_dir;
  dbound::DBoundReport rep = dbound::d_lower_bound(g, primes, popts);

  json j;
  j["command"] = "d-bound";
  j["graph"] = o.graph_spec;
  j["primes"] = primes;
  j["lower_bound"] = rep.lower_bound;
  json probes = json::array();
  for (const dbound::PrimeProbe& pr : rep.probes) {
    json pj;
    pj["p"] = pr.p;
    pj["method"] = dbound::to_string(pr.method);
    pj["obstructed"] = pr.obstructed;
    if (pr.witness_exists) pj["witness_exists"] = *pr.witness_exists;
    if (pr.verdict) pj["verdict"] = solver::to_string(*pr.verdict);
    if (pr.method == dbound::Method::Symmetrized) {
      pj["subgroup"] = sym::to_string(pr.subgroup);
      pj["fund_size"] = pr.fund_size;
      pj["shape"] = shape_json(pr.shape);
      pj["shape_estimated"] = pr.shape_estimated;
    }
    pj["seconds"] = pr.seconds;
    if (!pr.note.empty()) pj["note"] = pr.note;
    probes.push_back(std::move(pj));
    std::printf("p = %u: %s%s%s\n", pr.p,
                pr.obstructed ? "obstructed" : "not obstructed",
                pr.note.empty() ? "" : "; ", pr.note.c_str());
  }
  j["probes"] = std::move(probes);
  j["wall_seconds"] = timer.seconds();
  j["peak_rss_bytes"] = peak_rss_bytes();
  std::printf("d lower bound = %s\n", with_commas(rep.lower_bound).c_str());
  write_report(o.common.report_path, j);
  return 0;
}

// ---- export-matrix ------------------------------------------------------------

struct ExportOpts {
  CommonOpts common;
  std::uint32_t p = 2;
  std::uint32_t m = 5;
  std::string subgroup = "Triv";
  std::string export_path;
};

int run_export_matrix(const ExportOpts& o) {
  check_pm(o.p, o.m);
  if (o.export_path.empty()) throw std::invalid_argument("--export <path> is required");
  const std::uint32_t n = (o.m - 1) / 2;
  const sym::SubgroupLabel label = subgroup_from_name(o.subgroup);
  const std::uint64_t budget = parse_mem(o.common.mem_budget);

  WallTimer timer;
  const graph::StepStarBasis& basis = graph::step_star_basis(n, o.p);
  sym::H1Action act(basis, sym::make_subgroup(label, o.m));
  sym::FundDomain fund = sym::enumerate_fundamental_domain(act, o.common.threads, budget);
  const solver::SymShape shape = solver::sym_matrix_shape(n, fund.size());

  const std::vector<std::vector<linalg::fp_t>> weights = solver::weight_vectors(basis);
  const linalg::Fp& fp = basis.field();
  const std::uint64_t F = fund.size();
  const std::uint32_t colors = basis.colors();

  linalg::TripleWriter writer(o.export_path, shape.rows, shape.cols, o.p);
  std::vector<linalg::fp_t> vbuf(basis.dim());
  std::vector<std::pair<std::uint64_t, linalg::fp_t>> colent;
  for (std::uint64_t f = 0; f < F; ++f) {
    for (std::uint32_t c = 0; c < colors; ++c) {
      for (int dir = 0; dir < 2; ++dir) {
        solver::ColumnRef ref{f, c, dir == 1};
        const std::uint64_t col = solver::column_index(basis, ref);
        const sym::AlbEdge e = solver::column_edge(basis, fund, ref);
        colent.clear();
        for (const solver::SymEdgeTerm& term : solver::sigma_average_edge(act, e)) {
          basis.unpack(term.e.tail, vbuf.data());
          auto tidx = fund.index_of(term.e.tail);
          basis.step_raw(vbuf.data(), term.e.color, +1);
          auto hidx = fund.index_of(basis.pack(vbuf.data()));
          if (!tidx && !hidx) continue;
          for (std::uint32_t k = 0; k < std::uint32_t(weights.size()); ++k) {
            const linalg::fp_t w = weights[k][term.e.color];
            if (w == 0) continue;
            const linalg::fp_t wt = fp.mul(w, term.coeff);
            if (hidx) colent.emplace_back(std::uint64_t(k) * F + *hidx, wt);
            if (tidx) colent.emplace_back(std::uint64_t(k) * F + *tidx, fp.sub(0, wt));
          }
        }
        std::sort(colent.begin(), colent.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < colent.size();) {
          const std::uint64_t row = colent[i].first;
          linalg::fp_t acc = 0;
          while (i < colent.size() && colent[i].first == row)
            acc = fp.add(acc, colent[i++].second);
          writer.add(row, col, acc);
        }
      }
    }
  }
  writer.close();

  std::printf("wrote %s: shape %s x %s, %s entries\n", o.export_path.c_str(),
              with_commas(shape.rows).c_str(), with_commas(shape.cols).c_str(),
              with_commas(writer.written()).c_str());
  json j;
  j["command"] = "export-matrix";
  j["p"] = o.p;
  j["m"] = o.m;
  j["n"] = n;
  j["subgroup"] = sym::to_string(label);
  j["v_fund"] = F;
  j["shape"] = shape_json(shape);
  j["entries"] = writer.written();
  j["export"] = o.export_path;
  j["wall_seconds"] = timer.seconds();
  j["peak_rss_bytes"] = peak_rss_bytes();
  write_report(o.common.report_path, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph/matroid obstruction toolkit"};
  app.require_subcommand(1);

  TestColorlessOpts tc;
  CLI::App* tc_cmd = app.add_subcommand(
      "test-colorless", "symmetrized constant-profile test on the odd tournament");
  tc_cmd->add_option("--p", tc.p, "prime modulus")->envname("MATSOL_P");
  tc_cmd->add_option("--m", tc.m, "tournament vertex count (odd, = 2n+1)")
      ->envname("MATSOL_M");
  tc_cmd->add_option("--subgroup", tc.subgroup, "DnZ2, Dn, CnZ2, Cn, Z2 or Triv")
      ->envname("MATSOL_SUBGROUP");
  tc_cmd->add_option("--max-step", tc.max_step, "test step classes 1..s only (0 = all)")
      ->envname("MATSOL_MAX_STEP");
  tc_cmd->add_flag("--full-rank", tc.full_rank, "run the rank phase even on huge matrices")
      ->envname("MATSOL_FULL_RANK");
  tc_cmd->add_option("--resume", tc.resume, "resume elimination from a checkpoint file");
  add_common(tc_cmd, tc.common);

  FundDomainOpts fd;
  CLI::App* fd_cmd =
      app.add_subcommand("fundamental-domain", "enumerate canonical Cayley vertices");
  fd_cmd->add_option("--p", fd.p, "prime modulus")->envname("MATSOL_P");
  fd_cmd->add_option("--m", fd.m, "tournament vertex count (odd, = 2n+1)")
      ->envname("MATSOL_M");
  fd_cmd->add_option("--subgroup", fd.subgroup, "DnZ2, Dn, CnZ2, Cn, Z2 or Triv")
      ->envname("MATSOL_SUBGROUP");
  fd_cmd->add_option("--export", fd.export_path, "write the domain as a binary dump")
      ->envname("MATSOL_EXPORT");
  add_common(fd_cmd, fd.common);

  OracleOpts orc;
  CLI::App* orc_cmd =
      app.add_subcommand("oracle", "brute-force solution space on the full Albanese graph");
  orc_cmd->add_option("--graph", orc.graph_spec, "kN for a complete graph, or an edge file")
      ->envname("MATSOL_GRAPH");
  orc_cmd->add_option("--p", orc.p, "prime modulus")->envname("MATSOL_P");
  orc_cmd->add_option("--vertex-cap", orc.vertex_cap, "refuse Albanese graphs above this");
  add_common(orc_cmd, orc.common);

  DBoundOpts db;
  CLI::App* db_cmd =
      app.add_subcommand("d-bound", "divisibility lower bound from per-prime probes");
  db_cmd->add_option("--graph", db.graph_spec, "kN for a complete graph, or an edge file")
      ->envname("MATSOL_GRAPH");
  db_cmd->add_option("--primes", db.primes, "primes to probe (default: all below the rank)")
      ->delimiter(',');
  db_cmd->add_flag("--full-rank", db.full_rank, "run oversized symmetrized probes anyway")
      ->envname("MATSOL_FULL_RANK");
  add_common(db_cmd, db.common);

  ExportOpts ex;
  CLI::App* ex_cmd =
      app.add_subcommand("export-matrix", "stream the symmetrized matrix to triple format");
  ex_cmd->add_option("--p", ex.p, "prime modulus")->envname("MATSOL_P");
  ex_cmd->add_option("--m", ex.m, "tournament vertex count (odd, = 2n+1)")
      ->envname("MATSOL_M");
  ex_cmd->add_option("--subgroup", ex.subgroup, "DnZ2, Dn, CnZ2, Cn, Z2 or Triv")
      ->envname("MATSOL_SUBGROUP");
  ex_cmd->add_option("--export", ex.export_path, "output path (.gz for compression)")
      ->envname("MATSOL_EXPORT");
  add_common(ex_cmd, ex.common);

  try {
    app.parse(argc, argv);
    if (tc_cmd->parsed()) return run_test_colorless(tc);
    if (fd_cmd->parsed()) return run_fundamental_domain(fd);
    if (orc_cmd->parsed()) return run_oracle(orc);
    if (db_cmd->parsed()) return run_d_bound(db);
    if (ex_cmd->parsed()) return run_export_matrix(ex);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    if (!e.checkpoint_path.empty())
      std::fprintf(stderr, "checkpoint written: %s\n", e.checkpoint_path.c_str());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
