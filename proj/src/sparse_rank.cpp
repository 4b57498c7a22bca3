#include "matsol/sparse_rank.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace matsol::linalg {

namespace {

constexpr std::uint32_t kNoRow = 0xffffffffu;
constexpr std::uint32_t kMaxBucket = 4096;   // rows with more nnz share one bucket
constexpr std::uint32_t kMaxScanRows = 192;  // pivot-search work cap per step

struct Row {
  std::vector<std::pair<std::uint32_t, fp_t>> e;  // sorted by column
  fp_t rhs = 0;
  enum class State : std::uint8_t { Active, Pivot, Zero } state = State::Active;

  bool has(std::uint32_t c) const {
    auto it = std::lower_bound(e.begin(), e.end(), c,
                               [](const auto& a, std::uint32_t col) { return a.first < col; });
    return it != e.end() && it->first == c;
  }
  fp_t value_at(std::uint32_t c) const {
    auto it = std::lower_bound(e.begin(), e.end(), c,
                               [](const auto& a, std::uint32_t col) { return a.first < col; });
    return (it != e.end() && it->first == c) ? it->second : fp_t(0);
  }
};

struct Checkpoint {
  std::uint32_t p = 2;
  std::uint32_t ncols = 0;
  std::uint64_t pivots_done = 0;
  SparseMatFp remainder;
  std::vector<std::vector<fp_t>> passive;
};

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write checkpoint: " + path);
  std::fprintf(f, "matsol-rank-checkpoint 1\n");
  std::fprintf(f, "p %u\ncols %u\npivots_done %llu\n", ck.p, ck.ncols,
               (unsigned long long)ck.pivots_done);
  std::fprintf(f, "rows %u nnz %llu\n", ck.remainder.rows,
               (unsigned long long)ck.remainder.entries.size());
  for (const Triplet& t : ck.remainder.entries)
    std::fprintf(f, "%u %u %u\n", t.r, t.c, unsigned(t.v));
  std::fprintf(f, "passive %zu\n", ck.passive.size());
  for (const auto& row : ck.passive) {
    std::uint64_t nnz = 0;
    for (fp_t v : row) nnz += v != 0;
    std::fprintf(f, "prow %llu\n", (unsigned long long)nnz);
    for (std::uint32_t c = 0; c < row.size(); ++c)
      if (row[c] != 0) std::fprintf(f, "%u %u\n", c, unsigned(row[c]));
  }
  std::fprintf(f, "end\n");
  std::fclose(f);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot read checkpoint: " + path);
  Checkpoint ck;
  char magic[64];
  int version = 0;
  if (std::fscanf(f, "%63s %d", magic, &version) != 2 ||
      std::strcmp(magic, "matsol-rank-checkpoint") != 0 || version != 1) {
    std::fclose(f);
    throw std::runtime_error("not a rank checkpoint: " + path);
  }
  unsigned long long pivots = 0, nnz = 0, npassive = 0;
  std::uint32_t nrows = 0;
  bool ok = std::fscanf(f, " p %u cols %u pivots_done %llu rows %u nnz %llu", &ck.p,
                        &ck.ncols, &pivots, &nrows, &nnz) == 5;
  if (ok) {
    ck.pivots_done = pivots;
    ck.remainder.rows = nrows;
    ck.remainder.cols = ck.ncols;
    ck.remainder.p = ck.p;
    ck.remainder.entries.reserve(nnz);
    for (std::uint64_t i = 0; ok && i < nnz; ++i) {
      std::uint32_t r, c;
      unsigned v;
      ok = std::fscanf(f, "%u %u %u", &r, &c, &v) == 3;
      if (ok) ck.remainder.entries.push_back({r, c, fp_t(v)});
    }
  }
  ok = ok && std::fscanf(f, " passive %llu", &npassive) == 1;
  for (std::uint64_t q = 0; ok && q < npassive; ++q) {
    unsigned long long pn = 0;
    ok = std::fscanf(f, " prow %llu", &pn) == 1;
    std::vector<fp_t> row(ck.ncols, 0);
    for (std::uint64_t i = 0; ok && i < pn; ++i) {
      std::uint32_t c;
      unsigned v;
      ok = std::fscanf(f, "%u %u", &c, &v) == 2;
      if (ok) row[c] = fp_t(v);
    }
    if (ok) ck.passive.push_back(std::move(row));
  }
  std::fclose(f);
  if (!ok) throw std::runtime_error("truncated rank checkpoint: " + path);
  return ck;
}

class Elimination {
public:
  Elimination(const SparseMatFp& m, const EliminationExtras& extras, const RankOptions& opts,
              std::uint64_t pivots_base)
      : fp_(m.p),
        opts_(opts),
        ncols_(m.cols),
        pivots_base_(pivots_base),
        solving_(extras.rhs.has_value()) {
    SparseMatFp canon = m;
    canon.canonicalize();
    rows_.resize(m.rows);
    if (solving_) {
      if (extras.rhs->size() != m.rows)
        throw std::invalid_argument("eliminate: rhs length mismatch");
      for (std::uint32_t i = 0; i < m.rows; ++i) rows_[i].rhs = (*extras.rhs)[i];
    }
    for (const Triplet& t : canon.entries) rows_[t.r].e.emplace_back(t.c, t.v);
    passive_ = extras.passive_rows;
    for (const auto& pr : passive_)
      if (pr.size() != m.cols)
        throw std::invalid_argument("eliminate: passive row length mismatch");

    col_count_.assign(ncols_, 0);
    col_rows_.resize(ncols_);
    col_alive_.assign(ncols_, 1);
    for (std::uint32_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r].e) {
        ++col_count_[c];
        col_rows_[c].push_back(r);
      }
    nonzero_cols_ = 0;
    for (std::uint32_t c = 0; c < ncols_; ++c) nonzero_cols_ += col_count_[c] > 0;

    bucket_head_.assign(kMaxBucket + 1, kNoRow);
    row_next_.assign(rows_.size(), kNoRow);
    row_prev_.assign(rows_.size(), kNoRow);
    pivot_col_of_.assign(rows_.size(), 0);
    active_rows_ = 0;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].e.empty()) {
        rows_[r].state = Row::State::Zero;
        if (rows_[r].rhs != 0) rhs_consistent_ = false;
      } else {
        ++active_rows_;
        entries_stored_ += rows_[r].e.size();
        nnz_active_ += rows_[r].e.size();
        bucket_insert(r);
      }
    }
    peak_entries_ = entries_stored_;
  }

  RankReport run() {
    while (active_rows_ > 0 && nonzero_cols_ > 0) {
      check_budget();
      if (should_go_dense()) break;
      auto [pr, pc] = pick_pivot();
      if (pr == kNoRow) break;
      do_pivot(pr, pc);
    }
    if (active_rows_ > 0 && nonzero_cols_ > 0) dense_finish();

    RankReport rep;
    rep.sparse_pivots = sparse_pivots_;
    rep.dense_pivots = dense_pivots_;
    rep.rank = pivots_base_ + sparse_pivots_ + dense_pivots_;
    rep.peak_entries = peak_entries_;
    rep.rhs_consistent = rhs_consistent_;
    passive_cumulative(rep);
    if (solving_) {
      if (rhs_consistent_)
        rep.solution = back_substitute();
      else
        rep.solution = std::nullopt;
    }
    return rep;
  }

private:
  // ---- row buckets, keyed by nnz ----------------------------------------

  static std::uint32_t bidx(std::size_t nnz) {
    return std::uint32_t(std::min<std::size_t>(nnz, kMaxBucket));
  }

  void bucket_insert(std::uint32_t r) {
    const std::uint32_t b = bidx(rows_[r].e.size());
    row_prev_[r] = kNoRow;
    row_next_[r] = bucket_head_[b];
    if (bucket_head_[b] != kNoRow) row_prev_[bucket_head_[b]] = r;
    bucket_head_[b] = r;
    if (b < bucket_floor_) bucket_floor_ = b;
  }

  void bucket_remove(std::uint32_t r, std::size_t old_nnz) {
    const std::uint32_t b = bidx(old_nnz);
    if (row_prev_[r] != kNoRow)
      row_next_[row_prev_[r]] = row_next_[r];
    else
      bucket_head_[b] = row_next_[r];
    if (row_next_[r] != kNoRow) row_prev_[row_next_[r]] = row_prev_[r];
    row_prev_[r] = row_next_[r] = kNoRow;
  }

  // ---- pivot selection ----------------------------------------------------

  std::pair<std::uint32_t, std::uint32_t> pick_pivot() {
    while (bucket_floor_ <= kMaxBucket && bucket_head_[bucket_floor_] == kNoRow)
      ++bucket_floor_;
    if (bucket_floor_ > kMaxBucket) return {kNoRow, 0};

    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    std::uint32_t best_row = kNoRow, best_col = 0;
    std::uint32_t scanned = 0;
    std::uint32_t first_candidate_bucket = 0;
    bool have = false;

    for (std::uint32_t b = bucket_floor_; b <= kMaxBucket; ++b) {
      if (have && (best_cost == 0 ||
                   b > first_candidate_bucket + std::uint32_t(opts_.bucket_span) ||
                   scanned >= kMaxScanRows))
        break;
      for (std::uint32_t r = bucket_head_[b]; r != kNoRow; r = row_next_[r]) {
        const std::size_t rn = rows_[r].e.size();
        for (const auto& [c, v] : rows_[r].e) {
          const std::uint64_t cost = std::uint64_t(rn - 1) * (col_count_[c] - 1);
          if (cost < best_cost ||
              (cost == best_cost && (r < best_row || (r == best_row && c < best_col)))) {
            best_cost = cost;
            best_row = r;
            best_col = c;
            if (!have) {
              have = true;
              first_candidate_bucket = b;
            }
          }
        }
        ++scanned;
        if (have && (best_cost == 0 || scanned >= kMaxScanRows)) break;
      }
    }
    return {best_row, best_col};
  }

  // ---- elimination step ---------------------------------------------------

  void do_pivot(std::uint32_t pr, std::uint32_t pc) {
    Row& prow = rows_[pr];
    const fp_t pv = prow.value_at(pc);
    assert(pv != 0);
    const fp_t pv_inv = fp_.inv(pv);

    // Rows to update: active rows other than the pivot with an entry at pc.
    std::vector<std::uint32_t> victims;
    victims.reserve(col_rows_[pc].size());
    for (std::uint32_t r : col_rows_[pc])
      if (r != pr && rows_[r].state == Row::State::Active && rows_[r].has(pc))
        victims.push_back(r);
    std::sort(victims.begin(), victims.end());
    victims.erase(std::unique(victims.begin(), victims.end()), victims.end());

    // Freeze the pivot row first so column counts reflect its removal.
    bucket_remove(pr, prow.e.size());
    prow.state = Row::State::Pivot;
    --active_rows_;
    nnz_active_ -= prow.e.size();
    for (const auto& [c, v] : prow.e) {
      if (--col_count_[c] == 0) --nonzero_cols_;
    }
    col_alive_[pc] = 0;
    col_rows_[pc].clear();
    col_rows_[pc].shrink_to_fit();
    pivot_order_.push_back(pr);
    pivot_col_of_[pr] = pc;

    for (std::uint32_t r : victims) {
      const fp_t f = fp_.mul(rows_[r].value_at(pc), pv_inv);
      axpy_row(r, prow, f);
    }
    for (auto& pass : passive_) {
      const fp_t f0 = pass[pc];
      if (f0 == 0) continue;
      const fp_t f = fp_.mul(f0, pv_inv);
      for (const auto& [c, v] : prow.e) pass[c] = fp_.sub(pass[c], fp_.mul(f, v));
    }
    ++sparse_pivots_;
  }

  // target -= f * src, with all bookkeeping.  src is a frozen pivot row.
  void axpy_row(std::uint32_t tgt_id, const Row& src, fp_t f) {
    Row& tgt = rows_[tgt_id];
    const std::size_t old_nnz = tgt.e.size();
    scratch_.clear();
    scratch_.reserve(old_nnz + src.e.size());
    auto ti = tgt.e.begin(), te = tgt.e.end();
    auto si = src.e.begin(), se = src.e.end();
    while (ti != te || si != se) {
      if (si == se || (ti != te && ti->first < si->first)) {
        scratch_.push_back(*ti++);
      } else if (ti == te || si->first < ti->first) {
        const fp_t nv = fp_.neg(fp_.mul(f, si->second));
        if (nv != 0) {
          scratch_.emplace_back(si->first, nv);
          if (++col_count_[si->first] == 1) ++nonzero_cols_;
          col_rows_[si->first].push_back(tgt_id);
          // Compaction must wait: it tests rows_[tgt_id].has(column), and the
          // merged entries are still in scratch_ at this point.
          if (col_rows_[si->first].size() > 8 + std::size_t(4) * col_count_[si->first])
            compact_queue_.push_back(si->first);
        }
        ++si;
      } else {  // same column
        const fp_t nv = fp_.sub(ti->second, fp_.mul(f, si->second));
        if (nv != 0) {
          scratch_.emplace_back(ti->first, nv);
        } else {
          if (--col_count_[ti->first] == 0) --nonzero_cols_;
        }
        ++ti;
        ++si;
      }
    }
    bucket_remove(tgt_id, old_nnz);
    entries_stored_ += scratch_.size();
    entries_stored_ -= old_nnz;
    nnz_active_ += scratch_.size();
    nnz_active_ -= old_nnz;
    tgt.e.swap(scratch_);
    tgt.rhs = fp_.sub(tgt.rhs, fp_.mul(f, src.rhs));
    if (tgt.e.empty()) {
      tgt.state = Row::State::Zero;
      tgt.e.shrink_to_fit();
      --active_rows_;
      if (tgt.rhs != 0) rhs_consistent_ = false;
    } else {
      bucket_insert(tgt_id);
    }
    for (std::uint32_t c : compact_queue_) maybe_compact(c);
    compact_queue_.clear();
    peak_entries_ = std::max(peak_entries_, entries_stored_);
  }

  void maybe_compact(std::uint32_t c) {
    auto& lst = col_rows_[c];
    if (lst.size() <= 8 + std::size_t(4) * col_count_[c]) return;
    std::vector<std::uint32_t> keep;
    keep.reserve(col_count_[c]);
    for (std::uint32_t r : lst)
      if (rows_[r].state == Row::State::Active && rows_[r].has(c)) keep.push_back(r);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    lst.swap(keep);
  }

  // ---- budget -------------------------------------------------------------

  std::uint64_t working_bytes() const {
    std::uint64_t col_lists = 0;
    // entries: 8 bytes each in row storage; column lists 4 bytes per slot.
    // This is an estimate of the dominant allocations, not an exact census.
    for (const auto& l : col_rows_) col_lists += l.capacity();
    return entries_stored_ * 8 + col_lists * 4 + passive_.size() * std::uint64_t(ncols_);
  }

  void check_budget() {
    if (opts_.mem_budget_bytes == 0) return;
    if ((sparse_pivots_ & 63) != 0) return;  // cheap periodic check
    if (working_bytes() <= opts_.mem_budget_bytes) return;
    std::string path;
    if (!opts_.checkpoint_path.empty()) {
      Checkpoint ck;
      ck.p = fp_.p();
      ck.ncols = ncols_;
      ck.pivots_done = pivots_base_ + sparse_pivots_;
      ck.remainder.p = fp_.p();
      ck.remainder.cols = ncols_;
      std::uint32_t nr = 0;
      for (std::uint32_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].state != Row::State::Active) continue;
        for (const auto& [c, v] : rows_[r].e) ck.remainder.entries.push_back({nr, c, v});
        ++nr;
      }
      ck.remainder.rows = nr;
      ck.passive = passive_;
      save_checkpoint(opts_.checkpoint_path, ck);
      path = opts_.checkpoint_path;
    }
    throw BudgetExceeded("rank computation exceeded memory budget after " +
                             std::to_string(pivots_base_ + sparse_pivots_) + " pivots",
                         path);
  }

  // ---- dense finish ---------------------------------------------------------

  bool should_go_dense() const {
    const std::uint64_t ar = active_rows_, ac = nonzero_cols_;
    if (ar == 0 || ac == 0) return false;
    const bool bits = fp_.p() == 2;
    const std::uint64_t bytes =
        bits ? (ar + passive_.size()) * ((ac + 2 + 63) / 64) * 8 : (ar + passive_.size()) * (ac + 2);
    if (bytes > opts_.dense_cap_bytes) return false;
    if (std::min(ar, ac) <= opts_.dense_min_dim) return true;
    return double(nnz_active_) >= opts_.dense_switch_density * double(ar) * double(ac);
  }

  void dense_finish() {
    // Tripwire for column-list bookkeeping bugs: a live entry at a dead
    // column means some pivot step missed a row, which silently corrupts
    // ranks; fail loudly instead.
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].state != Row::State::Active) continue;
      for (const auto& [c, v] : rows_[r].e)
        if (!col_alive_[c] || col_count_[c] == 0 || v == 0)
          throw std::logic_error("eliminate: stale column bookkeeping detected");
    }
    // Columns that still matter: alive with active entries, or carrying
    // passive residue.
    std::vector<std::uint32_t> cols;
    {
      std::vector<char> need(ncols_, 0);
      for (std::uint32_t c = 0; c < ncols_; ++c)
        if (col_alive_[c] && col_count_[c] > 0) need[c] = 1;
      for (const auto& pass : passive_)
        for (std::uint32_t c = 0; c < ncols_; ++c)
          if (pass[c] != 0) need[c] = 1;
      for (std::uint32_t c = 0; c < ncols_; ++c)
        if (need[c]) cols.push_back(c);
    }
    const std::uint32_t dc = std::uint32_t(cols.size());
    dense_cols_ = cols;
    col_to_dense_.assign(ncols_, 0xffffffffu);
    for (std::uint32_t j = 0; j < dc; ++j) col_to_dense_[cols[j]] = j;

    std::vector<std::uint32_t> drow_src;  // originating sparse row of each dense row
    for (std::uint32_t r = 0; r < rows_.size(); ++r)
      if (rows_[r].state == Row::State::Active) drow_src.push_back(r);

    if (fp_.p() == 2)
      dense_finish_bits(drow_src, dc);
    else
      dense_finish_bytes(drow_src, dc);

    // Release the sparse active rows; pivot rows stay for back-substitution.
    for (std::uint32_t r : drow_src) {
      rows_[r].state = Row::State::Zero;
      rows_[r].e.clear();
      rows_[r].e.shrink_to_fit();
    }
    active_rows_ = 0;
  }

  void dense_finish_bytes(const std::vector<std::uint32_t>& drow_src, std::uint32_t dc) {
    const std::uint32_t width = dc + (solving_ ? 1 : 0);
    std::vector<std::vector<fp_t>> d(drow_src.size(), std::vector<fp_t>(width, 0));
    for (std::size_t i = 0; i < drow_src.size(); ++i) {
      const Row& row = rows_[drow_src[i]];
      for (const auto& [c, v] : row.e) d[i][col_to_dense_[c]] = v;
      if (solving_) d[i][dc] = row.rhs;
    }
    std::vector<std::vector<fp_t>> pd(passive_.size(), std::vector<fp_t>(dc, 0));
    for (std::size_t q = 0; q < passive_.size(); ++q)
      for (std::uint32_t j = 0; j < dc; ++j) pd[q][j] = passive_[q][dense_cols_[j]];

    std::size_t prow = 0;
    for (std::uint32_t col = 0; col < dc && prow < d.size(); ++col) {
      std::size_t pr = prow;
      while (pr < d.size() && d[pr][col] == 0) ++pr;
      if (pr == d.size()) continue;
      std::swap(d[prow], d[pr]);
      const fp_t inv = fp_.inv(d[prow][col]);
      if (inv != 1)
        for (std::uint32_t j = col; j < width; ++j) d[prow][j] = fp_.mul(d[prow][j], inv);
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (i == prow) continue;
        const fp_t f = d[i][col];
        if (f == 0) continue;
        for (std::uint32_t j = col; j < width; ++j)
          d[i][j] = fp_.sub(d[i][j], fp_.mul(f, d[prow][j]));
      }
      for (auto& pq : pd) {
        const fp_t f = pq[col];
        if (f == 0) continue;
        for (std::uint32_t j = col; j < dc; ++j) pq[j] = fp_.sub(pq[j], fp_.mul(f, d[prow][j]));
      }
      dense_pivot_cols_.push_back(dense_cols_[col]);
      ++dense_pivots_;
      ++prow;
    }
    // Pivot rhs is read only after the sweep: later pivots keep reducing
    // earlier pivot rows, so values captured mid-loop would be stale.
    if (solving_)
      for (std::size_t k = 0; k < prow; ++k) dense_pivot_rhs_.push_back(d[k][dc]);
    for (std::size_t i = prow; i < d.size(); ++i)
      if (solving_ && d[i][dc] != 0) rhs_consistent_ = false;
    for (std::size_t q = 0; q < passive_.size(); ++q) {
      auto& full = passive_[q];
      std::fill(full.begin(), full.end(), 0);
      for (std::uint32_t j = 0; j < dc; ++j) full[dense_cols_[j]] = pd[q][j];
    }
  }

  void dense_finish_bits(const std::vector<std::uint32_t>& drow_src, std::uint32_t dc) {
    const std::uint32_t nbits = dc + (solving_ ? 1 : 0);
    const std::uint32_t words = (nbits + 63) / 64;
    auto get = [](const std::vector<std::uint64_t>& row, std::uint32_t j) {
      return (row[j >> 6] >> (j & 63)) & 1;
    };
    auto set = [](std::vector<std::uint64_t>& row, std::uint32_t j) {
      row[j >> 6] |= std::uint64_t(1) << (j & 63);
    };
    std::vector<std::vector<std::uint64_t>> d(drow_src.size(),
                                              std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < drow_src.size(); ++i) {
      const Row& row = rows_[drow_src[i]];
      for (const auto& [c, v] : row.e) set(d[i], col_to_dense_[c]);
      if (solving_ && row.rhs) set(d[i], dc);
    }
    std::vector<std::vector<std::uint64_t>> pd(passive_.size(),
                                               std::vector<std::uint64_t>(words, 0));
    for (std::size_t q = 0; q < passive_.size(); ++q)
      for (std::uint32_t j = 0; j < dc; ++j)
        if (passive_[q][dense_cols_[j]]) set(pd[q], j);

    std::size_t prow = 0;
    for (std::uint32_t col = 0; col < dc && prow < d.size(); ++col) {
      std::size_t pr = prow;
      while (pr < d.size() && !get(d[pr], col)) ++pr;
      if (pr == d.size()) continue;
      std::swap(d[prow], d[pr]);
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (i != prow && get(d[i], col))
          for (std::uint32_t w = col >> 6; w < words; ++w) d[i][w] ^= d[prow][w];
      }
      for (auto& pq : pd) {
        if (get(pq, col))
          for (std::uint32_t w = col >> 6; w < words; ++w) pq[w] ^= d[prow][w];
      }
      dense_pivot_cols_.push_back(dense_cols_[col]);
      ++dense_pivots_;
      ++prow;
    }
    // Same ordering caveat as the byte variant: read rhs after the sweep.
    if (solving_)
      for (std::size_t k = 0; k < prow; ++k)
        dense_pivot_rhs_.push_back(fp_t(get(d[k], dc)));
    for (std::size_t i = prow; i < d.size(); ++i)
      if (solving_ && get(d[i], dc)) rhs_consistent_ = false;
    for (std::size_t q = 0; q < passive_.size(); ++q) {
      auto& full = passive_[q];
      std::fill(full.begin(), full.end(), 0);
      for (std::uint32_t j = 0; j < dc; ++j)
        if (get(pd[q], j)) full[dense_cols_[j]] = 1;
    }
  }

  // ---- passive cumulative ranks -------------------------------------------

  void passive_cumulative(RankReport& rep) {
    // Passive rows are already reduced modulo the full row space.  Count
    // successive independence, reducing each one by the survivors before it.
    struct Lead {
      std::uint32_t col;
      std::vector<fp_t>* row;
    };
    std::vector<Lead> kept;
    std::uint64_t extra = 0;
    for (auto& pass : passive_) {
      for (const Lead& k : kept) {
        const fp_t f = pass[k.col];
        if (f == 0) continue;
        for (std::uint32_t c = k.col; c < ncols_; ++c)
          pass[c] = fp_.sub(pass[c], fp_.mul(f, (*k.row)[c]));
      }
      std::uint32_t lead = ncols_;
      for (std::uint32_t c = 0; c < ncols_; ++c)
        if (pass[c] != 0) {
          lead = c;
          break;
        }
      if (lead != ncols_) {
        const fp_t inv = fp_.inv(pass[lead]);
        if (inv != 1)
          for (std::uint32_t c = lead; c < ncols_; ++c) pass[c] = fp_.mul(pass[c], inv);
        kept.push_back({lead, &pass});
        ++extra;
      }
      rep.cumulative_ranks.push_back(rep.rank + extra);
    }
  }

  // ---- solve ----------------------------------------------------------------

  std::vector<fp_t> back_substitute() {
    std::vector<fp_t> x(ncols_, 0);
    for (std::size_t k = 0; k < dense_pivot_cols_.size(); ++k)
      x[dense_pivot_cols_[k]] = dense_pivot_rhs_[k];
    for (auto it = pivot_order_.rbegin(); it != pivot_order_.rend(); ++it) {
      const Row& row = rows_[*it];
      const std::uint32_t pc = pivot_col_of_[*it];
      std::int64_t acc = row.rhs;
      fp_t pv = 0;
      for (const auto& [c, v] : row.e) {
        if (c == pc) {
          pv = v;
          continue;
        }
        acc -= std::int64_t(v) * x[c];
      }
      x[pc] = fp_.mul(fp_.reduce(acc), fp_.inv(pv));
    }
    return x;
  }

  // ---- members ----------------------------------------------------------------

  Fp fp_;
  RankOptions opts_;
  std::uint32_t ncols_;
  std::uint64_t pivots_base_;
  bool solving_;

  std::vector<Row> rows_;
  std::vector<std::vector<fp_t>> passive_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<char> col_alive_;

  std::vector<std::uint32_t> bucket_head_;
  std::vector<std::uint32_t> row_next_, row_prev_;
  std::uint32_t bucket_floor_ = 0;

  std::uint64_t active_rows_ = 0;
  std::uint64_t nonzero_cols_ = 0;
  std::uint64_t nnz_active_ = 0;
  std::uint64_t entries_stored_ = 0;
  std::uint64_t peak_entries_ = 0;
  std::uint64_t sparse_pivots_ = 0;
  std::uint64_t dense_pivots_ = 0;
  bool rhs_consistent_ = true;

  std::vector<std::uint32_t> pivot_order_;
  std::vector<std::uint32_t> pivot_col_of_;  // indexed by row id
  std::vector<std::uint32_t> dense_cols_;
  std::vector<std::uint32_t> col_to_dense_;
  std::vector<std::uint32_t> dense_pivot_cols_;
  std::vector<fp_t> dense_pivot_rhs_;

  std::vector<std::pair<std::uint32_t, fp_t>> scratch_;
  std::vector<std::uint32_t> compact_queue_;
};

}  // namespace

RankReport eliminate(const SparseMatFp& m, const EliminationExtras& extras,
                     const RankOptions& opts) {
  Elimination e(m, extras, opts, 0);
  return e.run();
}

std::uint64_t sparse_rank(const SparseMatFp& m, const RankOptions& opts) {
  return eliminate(m, {}, opts).rank;
}

std::optional<std::vector<fp_t>> sparse_solve(const SparseMatFp& m,
                                              const std::vector<fp_t>& rhs,
                                              const RankOptions& opts) {
  EliminationExtras ex;
  ex.rhs = rhs;
  RankReport rep = eliminate(m, ex, opts);
  return rep.solution;
}

RankReport resume_elimination(const std::string& checkpoint_path, const RankOptions& opts) {
  Checkpoint ck = load_checkpoint(checkpoint_path);
  EliminationExtras ex;
  ex.passive_rows = std::move(ck.passive);
  Elimination e(ck.remainder, ex, opts, ck.pivots_done);
  return e.run();
}

}  // namespace matsol::linalg
