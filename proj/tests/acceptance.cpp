// Acceptance gate: runs one check per acceptance criterion and prints a
// single PASS/FAIL/SKIP line for each.  The exit code is the number of
// failed criteria, so the binary doubles as a ctest entry.
//
// argv[1] is the path to the CLI binary; criteria that specify command-line
// behaviour shell out to it, everything else runs in-process.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <matsol/albanese.hpp>
#include <matsol/dense_mat.hpp>
#include <matsol/fund_domain.hpp>
#include <matsol/graph.hpp>
#include <matsol/group.hpp>
#include <matsol/matroid.hpp>
#include <matsol/oracle.hpp>
#include <matsol/solver.hpp>
#include <matsol/sparse_rank.hpp>

using namespace matsol;
using linalg::fp_t;
using sym::GroupElement;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int g_failures = 0;

void report(int crit, bool pass, const std::string& detail, double secs) {
  std::printf("criterion %d: %s - %s (%.1fs)\n", crit, pass ? "PASS" : "FAIL", detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void report_skip(int crit, const std::string& detail) {
  std::printf("criterion %d: SKIP - %s\n", crit, detail.c_str());
  std::fflush(stdout);
}

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run_cli(const std::string& bin, const std::string& args) {
  CliResult res;
  const std::string cmd = "'" + bin + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int rc = pclose(pipe);
  res.status = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  return res;
}

// Reads the comma-grouped integer following `prefix` in `text`.
std::optional<std::uint64_t> parse_after(const std::string& text, const std::string& prefix) {
  const std::size_t at = text.find(prefix);
  if (at == std::string::npos) return std::nullopt;
  std::uint64_t v = 0;
  bool any = false;
  for (std::size_t i = at + prefix.size(); i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      v = v * 10 + std::uint64_t(c - '0');
      any = true;
    } else if (c != ',') {
      break;
    }
  }
  if (!any) return std::nullopt;
  return v;
}

graph::StepStarCoords coords_from_digits(std::initializer_list<const char*> blocks) {
  graph::StepStarCoords v;
  for (const char* s : blocks)
    for (; *s; ++s) v.c.push_back(fp_t(*s - '0'));
  return v;
}

graph::StepStarCoords random_vertex(const graph::StepStarBasis& b, std::mt19937_64& rng) {
  graph::StepStarCoords v;
  v.c.resize(b.dim());
  for (auto& x : v.c) x = fp_t(rng() % b.p());
  return v;
}

// ---- criterion 1: fundamental domain count via the CLI --------------------

std::uint64_t g_fund_count_37 = 0;  // shared with criterion 3

void criterion_1(const std::string& bin) {
  Timer t;
  CliResult r = run_cli(bin, "fundamental-domain --p 3 --m 7 --subgroup DnZ2");
  auto count = parse_after(r.out, "|V_fund| = ");
  const bool ok = r.status == 0 && count && *count == 517570;
  if (count) g_fund_count_37 = *count;
  report(1, ok,
         ok ? "fundamental domain (p=3, m=7, DnZ2) has 517,570 canonical vertices"
            : "expected |V_fund| = 517,570; got exit " + std::to_string(r.status) + ", count " +
                  (count ? std::to_string(*count) : std::string("unparsed")),
         t.seconds());
}

// ---- criterion 2: worked lexicographic reduction ---------------------------

void criterion_2() {
  Timer t;
  const graph::StepStarBasis& b = graph::step_star_basis(3, 3);
  sym::H1Action act(b, sym::make_subgroup(sym::SubgroupLabel::DnZ2, 7));
  const graph::StepStarCoords v = coords_from_digits({"1200220", "2200111", "1"});
  const graph::StepStarCoords want = coords_from_digits({"0011021", "0022211", "2"});

  sym::LexReduction red = sym::lex_reduce(act, v);
  double best = 1e9;
  for (int rep = 0; rep < 100; ++rep) {
    Timer one;
    red = sym::lex_reduce(act, v);
    best = std::min(best, one.seconds());
  }

  bool ok = red.canonical == want && red.stabilizer.order() == 1;
  // Witness must act like rotation by 2 composed with the involution.
  const GroupElement expect{2, 0, 1};
  ok = ok && sym::act_on_h1(b, red.witness, v) == want;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50 && ok; ++i) {
    graph::StepStarCoords w = random_vertex(b, rng);
    ok = sym::act_on_h1(b, red.witness, w) == sym::act_on_h1(b, expect, w);
  }
  const bool fast = best < 1e-3;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "lex_reduce reproduces the worked example, witness acts as (rot^2, iota), "
                "trivial stabilizer, %.0f us best of 100",
                best * 1e6);
  report(2, ok && fast, detail, t.seconds());
}

// ---- criterion 3: matrix shape from the shape law --------------------------

void criterion_3() {
  Timer t;
  std::uint64_t count = g_fund_count_37;
  if (count == 0) {
    const graph::StepStarBasis& b = graph::step_star_basis(3, 3);
    sym::H1Action act(b, sym::make_subgroup(sym::SubgroupLabel::DnZ2, 7));
    count = sym::count_fundamental_domain(act);
  }
  solver::SymShape shape = solver::sym_matrix_shape(3, count);
  const bool ok = shape.rows == 3105420 && shape.cols == 21737940;
  report(3, ok,
         ok ? "shape law gives 3,105,420 x 21,737,940 for (p=3, m=7, DnZ2) without assembly"
            : "unexpected shape " + std::to_string(shape.rows) + " x " +
                  std::to_string(shape.cols),
         t.seconds());
}

// ---- criterion 4: K5 / p=2 obstruction across subgroups --------------------

void criterion_4() {
  Timer t;
  std::string why;
  bool ok = true;

  auto tie = [&](sym::SubgroupLabel label, solver::Verdict want, const char* name) {
    solver::SymResult r = solver::solve_symmetrized(2, 2, label, {});
    for (std::uint64_t rs : r.step_ranks)
      if (rs != r.rank) {
        ok = false;
        why += std::string(name) + " rank not tied; ";
      }
    if (r.verdict != want) {
      ok = false;
      why += std::string(name) + " verdict " + solver::to_string(r.verdict) + "; ";
    }
    return r;
  };
  // The mass rows of the full group vanish at p = 2 (|A| = 20), so its tie is
  // reported inconclusive; the coprime subgroups certify the obstruction.
  tie(sym::SubgroupLabel::DnZ2, solver::Verdict::Unknown, "DnZ2");
  tie(sym::SubgroupLabel::Cn, solver::Verdict::Obstructed, "Cn");
  tie(sym::SubgroupLabel::Triv, solver::Verdict::Obstructed, "Triv");

  matroid::RegularMatroid k5 = matroid::graphic_matroid(graph::complete_graph(5));
  matroid::AlbaneseGraph alb = matroid::build_albanese(k5, 2);
  if (matroid::constant_profile_witness(alb).has_value()) {
    ok = false;
    why += "oracle found a witness; ";
  }

  const double secs = t.seconds();
  if (secs >= 10.0) {
    ok = false;
    why += "over the 10 s budget; ";
  }
  report(4, ok,
         ok ? "K5/p=2: ranks tie for DnZ2, Cn, Triv; obstruction certified by the coprime "
              "subgroups and confirmed by the oracle"
            : why,
         secs);
}

// ---- criterion 5: existence at K5 / p=3 and K4 / p=2 -----------------------

void criterion_5() {
  Timer t;
  std::string why;
  bool ok = true;

  matroid::RegularMatroid k5 = matroid::graphic_matroid(graph::complete_graph(5));
  matroid::AlbaneseGraph a53 = matroid::build_albanese(k5, 3);
  auto w53 = matroid::constant_profile_witness(a53);
  if (!w53 || w53->second == 0 || !matroid::is_solution(a53, w53->first)) {
    ok = false;
    why += "no validated K5/p=3 oracle witness; ";
  }

  matroid::RegularMatroid k4 = matroid::graphic_matroid(graph::complete_graph(4));
  matroid::AlbaneseGraph a42 = matroid::build_albanese(k4, 2);
  auto w42 = matroid::constant_profile_witness(a42);
  if (!w42 || w42->second == 0 || !matroid::is_solution(a42, w42->first)) {
    ok = false;
    why += "no validated K4/p=2 oracle witness; ";
  }

  const graph::StepStarBasis& b = graph::step_star_basis(2, 3);
  sym::H1Action act(b, sym::make_subgroup(sym::SubgroupLabel::DnZ2, 5));
  sym::FundDomain fund = sym::enumerate_fundamental_domain(act);
  solver::SymResult r = solver::solve_symmetrized(act, fund, {});
  if (r.step_ranks.empty() || r.step_ranks[0] != r.rank + 1 ||
      r.verdict != solver::Verdict::CandidateSolution) {
    ok = false;
    why += "K5/p=3 rank jump missing; ";
  }
  std::optional<solver::SymWitness> wit = solver::extract_witness(act, fund, {});
  if (!wit || wit->profile_value == 0 || !solver::check_step_star_solution(b, wit->chain)) {
    ok = false;
    why += "extract_witness did not validate; ";
  } else {
    for (fp_t x : solver::step_star_profile(b, wit->chain))
      if (x != wit->profile_value) {
        ok = false;
        why += "witness profile not constant; ";
        break;
      }
  }

  const double secs = t.seconds();
  if (secs >= 30.0) {
    ok = false;
    why += "over the 30 s budget; ";
  }
  report(5, ok,
         ok ? "oracle witnesses on K5/p=3 and K4/p=2; solver rank jump r^1 = r + 1 with a "
              "validated extracted witness"
            : why,
         secs);
}

// ---- criterion 6: K7 / p=2 / Cn obstruction via the CLI ---------------------

void criterion_6(const std::string& bin) {
  Timer t;
  CliResult r = run_cli(bin, "test-colorless --p 2 --m 7 --subgroup Cn --full-rank");
  const bool ok = r.status == 0 && r.out.find("verdict: obstructed") != std::string::npos;
  report(6, ok,
         ok ? "K7/p=2 with subgroup Cn is obstructed (2^15-vertex Albanese graph)"
            : "CLI exit " + std::to_string(r.status) + "; verdict line missing",
         t.seconds());
}

// ---- criterion 7: full-scale reproduction (opt-in) --------------------------

void criterion_7(const std::string& bin) {
  const char* env = std::getenv("MATSOL_ACCEPT_FULL_SCALE");
  if (!env || std::strcmp(env, "1") != 0) {
    report_skip(7,
                "full-scale (p=3, m=7, DnZ2) rank reproduction; set MATSOL_ACCEPT_FULL_SCALE=1 "
                "to run (reproduction target; reference cost 132,396 s / 114 GB)");
    return;
  }
  Timer t;
  CliResult r = run_cli(bin, "test-colorless --p 3 --m 7 --subgroup DnZ2 --full-rank");
  bool ok = r.status == 0;
  for (const char* key : {"\nr = ", "r^1 = ", "r^2 = ", "r^3 = "}) {
    auto v = parse_after(r.out, key);
    ok = ok && v && *v == 3060117;
  }
  report(7, ok,
         ok ? "full-scale ranks r = r^1 = r^2 = r^3 = 3,060,117"
            : "expected all four ranks 3,060,117; CLI exit " + std::to_string(r.status),
         t.seconds());
}

// ---- criterion 8: property battery ------------------------------------------

struct Battery {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;

  void expect(bool cond, const char* what) {
    ++checks;
    if (!cond) {
      ++failures;
      if (failures <= 10) std::printf("  criterion 8 violation: %s\n", what);
    }
  }
};

void battery_group_laws(Battery& bt) {
  for (auto [n, p] : {std::pair{1u, 2u}, {2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}}) {
    const graph::StepStarBasis& b = graph::step_star_basis(n, p);
    const std::uint32_t m = b.m();
    sym::Subgroup full = sym::make_subgroup(sym::SubgroupLabel::DnZ2, m);
    std::vector<graph::StepStarCoords> verts;
    if (b.vertex_count() <= 729) {
      for (std::uint64_t key = 0; key < b.vertex_count(); ++key) verts.push_back(b.unpack(key));
    } else {
      std::mt19937_64 rng(n * 7 + p);
      for (int i = 0; i < 200; ++i) verts.push_back(random_vertex(b, rng));
    }
    for (GroupElement g : full.elements)
      for (GroupElement h : full.elements) {
        const GroupElement gh = sym::compose(m, g, h);
        bt.expect(sym::chi(gh) == sym::chi(g) * sym::chi(h), "chi is not a homomorphism");
        bool all = true;
        for (const auto& v : verts)
          all = all &&
                sym::act_on_h1(b, gh, v) == sym::act_on_h1(b, g, sym::act_on_h1(b, h, v));
        bt.expect(all, "action does not compose");
      }
  }
}

void battery_lex(Battery& bt) {
  for (auto [n, p] : {std::pair{2u, 3u}, {3u, 2u}}) {
    const graph::StepStarBasis& b = graph::step_star_basis(n, p);
    sym::Subgroup sub = sym::make_subgroup(sym::SubgroupLabel::DnZ2, b.m());
    sym::H1Action act(b, sub);
    std::mt19937_64 rng(n + p);
    for (int trial = 0; trial < 5000; ++trial) {
      graph::StepStarCoords v = random_vertex(b, rng);
      sym::LexReduction red = sym::lex_reduce(act, v);
      bt.expect(sym::act_on_h1(b, red.witness, v) == red.canonical, "witness equation fails");
      bt.expect(sym::lex_reduce(act, red.canonical).canonical == red.canonical,
                "reduction is not idempotent");
      const GroupElement g = sub.elements[rng() % sub.order()];
      bt.expect(sym::lex_reduce(act, sym::act_on_h1(b, g, v)).canonical == red.canonical,
                "reduction is not orbit-constant");
    }
  }
}

void battery_orbit_stabilizer(Battery& bt) {
  const sym::SubgroupLabel labels[] = {sym::SubgroupLabel::DnZ2, sym::SubgroupLabel::Dn,
                                       sym::SubgroupLabel::CnZ2, sym::SubgroupLabel::Cn,
                                       sym::SubgroupLabel::Z2,   sym::SubgroupLabel::Triv};
  for (auto [n, p] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    const graph::StepStarBasis& b = graph::step_star_basis(n, p);
    for (sym::SubgroupLabel label : labels) {
      sym::Subgroup sub = sym::make_subgroup(label, b.m());
      sym::H1Action act(b, sub);
      sym::FundDomain fd = sym::enumerate_fundamental_domain(act);
      std::uint64_t covered = 0;
      bool divides = true;
      for (std::size_t i = 0; i < fd.size(); ++i) {
        divides = divides && fd.stab_order[i] >= 1 && sub.order() % fd.stab_order[i] == 0;
        covered += sub.order() / fd.stab_order[i];
      }
      bt.expect(divides, "stabilizer order does not divide the group order");
      bt.expect(covered == b.vertex_count(), "orbit-stabilizer sum misses vertices");
    }
  }
}

void battery_sigma_equivariance(Battery& bt) {
  const graph::StepStarBasis& b = graph::step_star_basis(3, 5);
  sym::H1Action act(b, sym::make_subgroup(sym::SubgroupLabel::DnZ2, 7));
  const linalg::Fp& fp = b.field();
  std::mt19937_64 rng(85);
  for (int trial = 0; trial < 1000; ++trial) {
    sym::AlbEdge e{rng() % b.vertex_count(), std::uint32_t(rng() % b.colors())};
    auto sigma = solver::sigma_average_edge(act, e);
    const GroupElement g = act.subgroup().elements[rng() % act.subgroup().order()];
    std::map<std::pair<std::uint64_t, std::uint32_t>, fp_t> pushed, direct;
    for (const auto& term : sigma) {
      auto [img, sign] = sym::act_on_edge(b, g, term.e);
      (void)sign;
      auto& slot = pushed[{img.tail, img.color}];
      slot = fp.add(slot, term.coeff);
    }
    std::erase_if(pushed, [](const auto& kv) { return kv.second == 0; });
    auto [ge, gs] = sym::act_on_edge(b, g, e);
    (void)gs;
    for (const auto& term : solver::sigma_average_edge(act, ge))
      direct[{term.e.tail, term.e.color}] = term.coeff;
    bt.expect(pushed == direct, "sigma is not equivariant");
  }
}

void battery_surjection(Battery& bt) {
  for (auto label : {sym::SubgroupLabel::Cn, sym::SubgroupLabel::Triv}) {
    const graph::StepStarBasis& b = graph::step_star_basis(2, 2);
    sym::H1Action act(b, sym::make_subgroup(label, 5));
    sym::FundDomain fund = sym::enumerate_fundamental_domain(act);
    solver::SymSystem sys = solver::assemble_sym_matrix(act, fund);
    linalg::DenseMatFp dense(std::uint32_t(sys.matrix.rows), std::uint32_t(sys.matrix.cols), 2);
    for (const auto& tr : sys.matrix.entries) dense.at(tr.r, tr.c) = tr.v;
    const linalg::Fp& fp = b.field();
    for (const auto& x : linalg::dense_kernel(dense)) {
      std::map<std::pair<std::uint64_t, std::uint32_t>, fp_t> acc;
      for (std::uint64_t col = 0; col < x.size(); ++col) {
        if (x[col] == 0) continue;
        sym::AlbEdge e = solver::column_edge(b, fund, solver::column_ref(b, col));
        for (const auto& term : solver::sigma_average_edge(act, e)) {
          auto& slot = acc[{term.e.tail, term.e.color}];
          slot = fp.add(slot, fp.mul(x[col], term.coeff));
        }
      }
      std::vector<solver::SymEdgeTerm> chain;
      for (const auto& [ec, v] : acc)
        if (v != 0) chain.push_back({{ec.first, ec.second}, v});
      bt.expect(solver::check_step_star_solution(b, chain),
                "kernel vector does not expand to a solution");
    }
  }
}

void battery_rank_agreement(Battery& bt) {
  std::mt19937_64 rng(86);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::uint32_t rows = 1 + std::uint32_t(rng() % 28);
      const std::uint32_t cols = 1 + std::uint32_t(rng() % 28);
      linalg::SparseMatFp m(rows, cols, p);
      linalg::DenseMatFp d(rows, cols, p);
      const int fill = 1 + int(rng() % (rows * cols));
      for (int k = 0; k < fill; ++k) {
        const std::uint32_t r = std::uint32_t(rng() % rows);
        const std::uint32_t c = std::uint32_t(rng() % cols);
        const fp_t v = fp_t(rng() % p);
        m.add(r, c, v);
        linalg::Fp fp(p);
        d.at(r, c) = fp.add(d.at(r, c), v);
      }
      m.canonicalize();
      bt.expect(linalg::sparse_rank(m) == linalg::dense_rank(d),
                "sparse rank disagrees with dense rank");
    }
  }
}

void battery_monotonicity(Battery& bt) {
  const sym::SubgroupLabel labels[] = {sym::SubgroupLabel::DnZ2, sym::SubgroupLabel::Dn,
                                       sym::SubgroupLabel::CnZ2, sym::SubgroupLabel::Cn,
                                       sym::SubgroupLabel::Z2,   sym::SubgroupLabel::Triv};
  for (auto [n, p] : {std::pair{2u, 2u}, {2u, 3u}}) {
    for (sym::SubgroupLabel label : labels) {
      solver::SymResult r = solver::solve_symmetrized(n, p, label, {});
      std::uint64_t prev = r.rank;
      bool mono = true;
      for (std::uint64_t rs : r.step_ranks) {
        mono = mono && rs >= prev && rs <= prev + 1;
        prev = rs;
      }
      bt.expect(mono, "step ranks move by more than one");
      if (!r.coprime)
        bt.expect(r.verdict == solver::Verdict::Unknown,
                  "non-coprime instance did not stay inconclusive");
    }
  }
}

void criterion_8() {
  Timer t;
  Battery bt;
  battery_group_laws(bt);
  battery_lex(bt);
  battery_orbit_stabilizer(bt);
  battery_sigma_equivariance(bt);
  battery_surjection(bt);
  battery_rank_agreement(bt);
  battery_monotonicity(bt);
  char detail[128];
  std::snprintf(detail, sizeof detail, "property battery: %llu checks, %llu failures",
                (unsigned long long)bt.checks, (unsigned long long)bt.failures);
  report(8, bt.failures == 0, detail, t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
    return 64;
  }
  const std::string bin = argv[1];

  try {
    criterion_1(bin);
  } catch (const std::exception& e) {
    report(1, false, std::string("exception: ") + e.what(), 0.0);
  }
  try {
    criterion_2();
  } catch (const std::exception& e) {
    report(2, false, std::string("exception: ") + e.what(), 0.0);
  }
  try {
    criterion_3();
  } catch (const std::exception& e) {
    report(3, false, std::string("exception: ") + e.what(), 0.0);
  }
  try {
    criterion_4();
  } catch (const std::exception& e) {
    report(4, false, std::string("exception: ") + e.what(), 0.0);
  }
  try {
    criterion_5();
  } catch (const std::exception& e) {
    report(5, false, std::string("exception: ") + e.what(), 0.0);
  }
  try {
    criterion_6(bin);
  } catch (const std::exception& e) {
    report(6, false, std::string("exception: ") + e.what(), 0.0);
  }
  try {
    criterion_7(bin);
  } catch (const std::exception& e) {
    report(7, false, std::string("exception: ") + e.what(), 0.0);
  }
  try {
    criterion_8();
  } catch (const std::exception& e) {
    report(8, false, std::string("exception: ") + e.what(), 0.0);
  }

  std::printf("%d of 8 criteria failed\n", g_failures);
  return g_failures;
}
