#include "matsol/matroid.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace matsol::matroid {

namespace {

// Integer row echelon by Euclidean elimination; returns the rank.  Operates
// on the matrix in place with unimodular row operations only.
std::uint32_t echelon_in_place(IntMat& a, std::uint32_t ncols, std::uint32_t limit_cols) {
  const std::size_t nrows = a.size();
  std::uint32_t r = 0;
  for (std::uint32_t col = 0; col < limit_cols && r < nrows; ++col) {
    for (;;) {
      std::size_t best = nrows;
      for (std::size_t i = r; i < nrows; ++i)
        if (a[i][col] != 0 &&
            (best == nrows || std::llabs(a[i][col]) < std::llabs(a[best][col])))
          best = i;
      if (best == nrows) break;  // column exhausted
      std::swap(a[r], a[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < nrows; ++i) {
        if (a[i][col] == 0) continue;
        const std::int64_t q = a[i][col] / a[r][col];
        if (q != 0)
          for (std::uint32_t j = 0; j < ncols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][col] != 0) clean = false;  // remainder left, another round
      }
      if (clean) {
        ++r;
        break;
      }
    }
  }
  return r;
}

std::int64_t det_int(IntMat m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  std::int64_t prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t sw = k + 1;
      while (sw < n && m[sw][k] == 0) ++sw;
      if (sw == n) return 0;
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

}  // namespace

IntMat integer_kernel_basis(const IntMat& x, std::uint32_t ncols) {
  const std::uint32_t g = std::uint32_t(x.size());
  // Rows of [X^T | I]; unimodular row operations preserve the row lattice,
  // and rows with vanishing X^T part exactly span the kernel lattice.
  IntMat work(ncols, std::vector<std::int64_t>(g + ncols, 0));
  for (std::uint32_t j = 0; j < ncols; ++j) {
    for (std::uint32_t i = 0; i < g; ++i) work[j][i] = x[i][j];
    work[j][g + j] = 1;
  }
  const std::uint32_t r = echelon_in_place(work, g + ncols, g);
  IntMat kernel;
  for (std::uint32_t i = r; i < ncols; ++i)
    kernel.emplace_back(work[i].begin() + g, work[i].end());
  return kernel;
}

std::uint32_t integer_rank(IntMat x) {
  const std::uint32_t ncols = x.empty() ? 0 : std::uint32_t(x[0].size());
  return echelon_in_place(x, ncols, ncols);
}

RegularMatroid make_regular_matroid(IntMat realization, std::uint32_t minor_check_limit) {
  RegularMatroid r;
  r.rank = std::uint32_t(realization.size());
  r.size = realization.empty() ? 0 : std::uint32_t(realization[0].size());
  for (const auto& row : realization)
    if (row.size() != r.size)
      throw std::invalid_argument("make_regular_matroid: ragged realization");
  if (integer_rank(realization) != r.rank)
    throw std::invalid_argument("make_regular_matroid: realization rows are dependent");

  if (r.size <= minor_check_limit && r.rank > 0) {
    // All maximal minors must lie in {-1, 0, +1}, with at least one unit.
    std::vector<std::uint32_t> pick(r.rank);
    for (std::uint32_t i = 0; i < r.rank; ++i) pick[i] = i;
    bool any_unit = false;
    for (;;) {
      IntMat sub(r.rank, std::vector<std::int64_t>(r.rank));
      for (std::uint32_t i = 0; i < r.rank; ++i)
        for (std::uint32_t j = 0; j < r.rank; ++j) sub[i][j] = realization[i][pick[j]];
      const std::int64_t d = det_int(std::move(sub));
      if (d < -1 || d > 1)
        throw std::invalid_argument(
            "make_regular_matroid: maximal minor outside {-1,0,+1}");
      if (d != 0) any_unit = true;
      // next combination
      std::int32_t i = std::int32_t(r.rank) - 1;
      while (i >= 0 && pick[i] == r.size - r.rank + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (std::uint32_t j = i + 1; j < r.rank; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!any_unit)
      throw std::invalid_argument("make_regular_matroid: no unimodular maximal minor");
    r.minors_checked = true;
  } else if (r.rank > 0) {
    r.note = "realization trusted (size above minor-check limit)";
  }
  r.realization = std::move(realization);
  return r;
}

RegularMatroid graphic_matroid(const graph::OrientedGraph& g) {
  // One deleted row per connected component.
  std::vector<std::int32_t> comp(g.vertex_count, -1);
  std::vector<std::vector<std::uint32_t>> adj(g.vertex_count);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::uint32_t ncomp = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < g.vertex_count; ++s) {
    if (comp[s] >= 0) continue;
    stack.push_back(s);
    comp[s] = std::int32_t(ncomp);
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t v : adj[u])
        if (comp[v] < 0) {
          comp[v] = std::int32_t(ncomp);
          stack.push_back(v);
        }
    }
    ++ncomp;
  }

  // Row index per vertex, skipping the smallest vertex of each component.
  std::vector<std::int32_t> row_of(g.vertex_count, -1);
  std::vector<char> root_seen(ncomp, 0);
  std::uint32_t nrows = 0;
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) {
    if (!root_seen[comp[v]]) {
      root_seen[comp[v]] = 1;
      continue;
    }
    row_of[v] = std::int32_t(nrows++);
  }

  if (nrows == 0) {  // edgeless or loops-only graph: the rank-0 matroid
    RegularMatroid r;
    r.rank = 0;
    r.size = std::uint32_t(g.edges.size());
    r.minors_checked = true;
    return r;
  }

  IntMat inc(nrows, std::vector<std::int64_t>(g.edges.size(), 0));
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    auto [t, h] = g.edges[e];
    if (row_of[h] >= 0) inc[row_of[h]][e] += 1;
    if (row_of[t] >= 0) inc[row_of[t]][e] -= 1;
  }
  RegularMatroid r = make_regular_matroid(std::move(inc));
  if (ncomp > 1) {
    if (!r.note.empty()) r.note += "; ";
    r.note += "graph has " + std::to_string(ncomp) +
              " components; matroid is their direct sum";
  }
  return r;
}

RegularMatroid dual_matroid(const RegularMatroid& r) {
  IntMat kernel = integer_kernel_basis(r.realization, r.size);
  RegularMatroid d = make_regular_matroid(std::move(kernel));
  if (d.rank != r.size - r.rank)
    throw std::logic_error("dual_matroid: kernel dimension mismatch");
  return d;
}

RegularMatroid load_realization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open realization file: " + path);
  std::uint32_t rows, cols;
  if (!(in >> rows >> cols))
    throw std::runtime_error(path + ": malformed header, expected 'rows cols'");
  IntMat m(rows, std::vector<std::int64_t>(cols));
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j)
      if (!(in >> m[i][j]))
        throw std::runtime_error(path + ": short entry list");
  return make_regular_matroid(std::move(m));
}

}  // namespace matsol::matroid
