#include "matsol/fund_domain.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "matsol/util.hpp"

namespace matsol::sym {

LexReduction lex_reduce(const H1Action& act, const graph::StepStarCoords& v) {
  const auto& basis = act.basis();
  const std::uint32_t dim = basis.dim();
  if (v.c.size() != dim) throw std::invalid_argument("lex_reduce: bad coordinate size");
  const auto& elems = act.subgroup().elements;

  std::vector<linalg::fp_t> best(v.c), cur(dim);
  std::size_t best_idx = 0;  // identity is element 0 of every named subgroup
  for (std::size_t e = 0; e < elems.size(); ++e) {
    act.act_coords(e, v.c.data(), cur.data());
    if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(), best.end())) {
      best = cur;
      best_idx = e;
    }
  }

  LexReduction out;
  out.canonical.c = best;
  out.witness = elems[best_idx];

  // Stabilizer of the canonical form: elements fixing it.
  out.stabilizer.label = SubgroupLabel::Custom;
  out.stabilizer.m = act.subgroup().m;
  for (std::size_t e = 0; e < elems.size(); ++e) {
    act.act_coords(e, best.data(), cur.data());
    if (cur == best) out.stabilizer.elements.push_back(elems[e]);
  }
  return out;
}

namespace {

// Scans keys [begin, end) and reports each canonical vertex with its
// stabilizer order via `emit`.  Runs the odometer over coordinate digits so
// unpacking is amortized O(1) per key.
template <typename Emit>
void scan_range(const H1Action& act, std::uint64_t begin, std::uint64_t end, Emit&& emit) {
  const auto& basis = act.basis();
  const std::uint32_t dim = basis.dim();
  const std::uint32_t p = basis.p();
  const std::size_t nelems = act.subgroup().elements.size();

  std::vector<linalg::fp_t> v(dim);
  basis.unpack(begin, v.data());
  std::vector<linalg::fp_t> neg_table(p);
  for (std::uint32_t x = 0; x < p; ++x) neg_table[x] = x ? linalg::fp_t(p - x) : 0;

  for (std::uint64_t key = begin; key < end; ++key) {
    // Compare act(g, v) with v lazily; reject as soon as some g is smaller.
    bool canonical = true;
    std::uint32_t stab = 1;  // identity
    for (std::size_t e = 1; e < nelems && canonical; ++e) {
      const auto& t = act.tables(e);
      const std::uint16_t* src = t.coord_src.data();
      std::uint32_t j = 0;
      if (!t.negate) {
        for (; j < dim; ++j) {
          const linalg::fp_t tv = v[src[j]];
          if (tv != v[j]) {
            if (tv < v[j]) canonical = false;
            break;
          }
        }
      } else {
        for (; j < dim; ++j) {
          const linalg::fp_t tv = neg_table[v[src[j]]];
          if (tv != v[j]) {
            if (tv < v[j]) canonical = false;
            break;
          }
        }
      }
      if (j == dim) ++stab;
    }
    if (canonical) emit(key, std::uint8_t(stab));

    // Odometer increment (key order equals lexicographic coordinate order).
    for (std::uint32_t d = dim; d-- > 0;) {
      if (++v[d] < p) break;
      v[d] = 0;
    }
  }
}

}  // namespace

std::optional<std::uint32_t> FundDomain::index_of(std::uint64_t packed) const {
  auto it = std::lower_bound(verts.begin(), verts.end(), packed);
  if (it == verts.end() || *it != packed) return std::nullopt;
  return std::uint32_t(it - verts.begin());
}

std::uint64_t count_fundamental_domain(const H1Action& act, unsigned threads) {
  const std::uint64_t total = act.basis().vertex_count();
  std::atomic<std::uint64_t> count{0};
  parallel_chunks(total, threads, [&](unsigned, std::uint64_t b, std::uint64_t e) {
    std::uint64_t local = 0;
    scan_range(act, b, e, [&](std::uint64_t, std::uint8_t) { ++local; });
    count += local;
  });
  return count.load();
}

FundDomain enumerate_fundamental_domain(const H1Action& act, unsigned threads,
                                        std::uint64_t mem_budget_bytes) {
  const auto& basis = act.basis();
  const std::uint64_t total = basis.vertex_count();

  FundDomain f;
  f.p = basis.p();
  f.n = basis.n();
  f.label = act.subgroup().label;

  std::uint64_t expect = 0;
  if (mem_budget_bytes > 0) {
    // Two-pass mode: count first, admit only if the table fits.
    expect = count_fundamental_domain(act, threads);
    const std::uint64_t need = expect * (sizeof(std::uint64_t) + 1);
    if (need > mem_budget_bytes)
      throw BudgetExceeded("fundamental domain of " + std::to_string(expect) +
                           " vertices needs " + std::to_string(need) +
                           " bytes, over the configured budget");
  }

  if (threads <= 1) {
    if (expect) {
      f.verts.reserve(expect);
      f.stab_order.reserve(expect);
    }
    scan_range(act, 0, total, [&](std::uint64_t key, std::uint8_t stab) {
      f.verts.push_back(key);
      f.stab_order.push_back(stab);
    });
    return f;
  }

  struct Chunk {
    std::vector<std::uint64_t> verts;
    std::vector<std::uint8_t> stab;
  };
  std::vector<Chunk> chunks(threads);
  parallel_chunks(total, threads, [&](unsigned t, std::uint64_t b, std::uint64_t e) {
    scan_range(act, b, e, [&](std::uint64_t key, std::uint8_t stab) {
      chunks[t].verts.push_back(key);
      chunks[t].stab.push_back(stab);
    });
  });
  for (auto& ch : chunks) {
    f.verts.insert(f.verts.end(), ch.verts.begin(), ch.verts.end());
    f.stab_order.insert(f.stab_order.end(), ch.stab.begin(), ch.stab.end());
  }
  return f;
}

void save_fund_domain(const FundDomain& f, const std::string& path) {
  std::FILE* fh = std::fopen(path.c_str(), "wb");
  if (!fh) throw std::runtime_error("cannot write fundamental domain dump: " + path);
  const char magic[8] = {'M', 'S', 'F', 'D', '1', 0, 0, 0};
  std::uint32_t head[3] = {f.p, f.n, std::uint32_t(f.label)};
  std::uint64_t count = f.size();
  bool ok = std::fwrite(magic, 1, 8, fh) == 8 &&
            std::fwrite(head, sizeof head, 1, fh) == 1 &&
            std::fwrite(&count, sizeof count, 1, fh) == 1;
  if (ok && count)
    ok = std::fwrite(f.verts.data(), sizeof(std::uint64_t), count, fh) == count &&
         std::fwrite(f.stab_order.data(), 1, count, fh) == count;
  std::fclose(fh);
  if (!ok) throw std::runtime_error("short write on fundamental domain dump: " + path);
}

FundDomain load_fund_domain(const std::string& path) {
  std::FILE* fh = std::fopen(path.c_str(), "rb");
  if (!fh) throw std::runtime_error("cannot read fundamental domain dump: " + path);
  char magic[8];
  std::uint32_t head[3];
  std::uint64_t count = 0;
  FundDomain f;
  bool ok = std::fread(magic, 1, 8, fh) == 8 &&
            std::memcmp(magic, "MSFD1\0\0\0", 8) == 0 &&
            std::fread(head, sizeof head, 1, fh) == 1 &&
            std::fread(&count, sizeof count, 1, fh) == 1;
  if (ok) {
    f.p = head[0];
    f.n = head[1];
    f.label = SubgroupLabel(head[2]);
    f.verts.resize(count);
    f.stab_order.resize(count);
    if (count)
      ok = std::fread(f.verts.data(), sizeof(std::uint64_t), count, fh) == count &&
           std::fread(f.stab_order.data(), 1, count, fh) == count;
  }
  std::fclose(fh);
  if (!ok) throw std::runtime_error("malformed fundamental domain dump: " + path);
  return f;
}

}  // namespace matsol::sym
