#include "matsol/graph.hpp"

#include <queue>
#include <stdexcept>

namespace matsol::graph {

OrientedGraph complete_graph(std::uint32_t nv) {
  OrientedGraph g;
  g.vertex_count = nv;
  for (std::uint32_t i = 0; i < nv; ++i)
    for (std::uint32_t j = i + 1; j < nv; ++j) g.edges.emplace_back(i, j);
  return g;
}

namespace {

// Parents of a BFS tree rooted at 0: parent edge id per vertex, kNone for
// the root.  Returns empty when the graph is disconnected.
constexpr std::uint32_t kNone = 0xffffffffu;

struct BfsTree {
  std::vector<std::uint32_t> parent_edge;  // edge id into the tree, per vertex
  bool connected = false;
};

BfsTree bfs_tree(const OrientedGraph& g) {
  BfsTree t;
  if (g.vertex_count == 0) return t;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(g.vertex_count);
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    adj[u].emplace_back(v, e);
    adj[v].emplace_back(u, e);
  }
  t.parent_edge.assign(g.vertex_count, kNone);
  std::vector<char> seen(g.vertex_count, 0);
  std::queue<std::uint32_t> q;
  q.push(0);
  seen[0] = 1;
  std::uint32_t visited = 1;
  while (!q.empty()) {
    std::uint32_t u = q.front();
    q.pop();
    for (auto [v, e] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      t.parent_edge[v] = e;
      ++visited;
      q.push(v);
    }
  }
  t.connected = visited == g.vertex_count;
  return t;
}

}  // namespace

bool is_connected(const OrientedGraph& g) {
  if (g.vertex_count == 0) return true;
  return bfs_tree(g).connected;
}

TournamentGraph build_tournament(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("build_tournament: n must be positive");
  TournamentGraph t;
  t.n = n;
  const std::uint32_t m = 2 * n + 1;
  t.base.vertex_count = m;
  t.base.edges.reserve(std::size_t(m) * n);
  for (std::uint32_t k = 1; k <= n; ++k)
    for (std::uint32_t i = 0; i < m; ++i) t.base.edges.emplace_back(i, (i + k) % m);
  return t;
}

std::vector<Cochain> coboundary_basis(const OrientedGraph& g, std::uint32_t p) {
  if (!is_connected(g))
    throw std::invalid_argument("coboundary_basis: graph is disconnected");
  const linalg::Fp fp(p);
  std::vector<Cochain> basis;
  basis.reserve(g.vertex_count ? g.vertex_count - 1 : 0);
  for (std::uint32_t v = 1; v < g.vertex_count; ++v) {
    Cochain w;
    w.c.assign(g.edges.size(), 0);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
      std::int32_t val = 0;
      if (g.edges[e].second == v) val += 1;  // head
      if (g.edges[e].first == v) val -= 1;   // tail
      w.c[e] = fp.reduce(val);
    }
    basis.push_back(std::move(w));
  }
  return basis;
}

std::vector<IntChain> fundamental_cycle_basis(const OrientedGraph& g) {
  BfsTree t = bfs_tree(g);
  if (!t.connected)
    throw std::invalid_argument("fundamental_cycle_basis: graph is disconnected");
  std::vector<char> in_tree(g.edges.size(), 0);
  for (std::uint32_t v = 1; v < g.vertex_count; ++v)
    if (t.parent_edge[v] != kNone) in_tree[t.parent_edge[v]] = 1;

  // Path from each vertex to the root as a signed edge chain.
  auto path_to_root = [&](std::uint32_t v, IntChain& chain, std::int8_t sgn) {
    while (t.parent_edge[v] != kNone) {
      const std::uint32_t e = t.parent_edge[v];
      auto [a, b] = g.edges[e];
      if (b == v) {  // edge points towards v: traversing v -> parent goes against it
        chain[e] -= sgn;
        v = a;
      } else {
        chain[e] += sgn;
        v = b;
      }
    }
  };

  std::vector<IntChain> cycles;
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    if (in_tree[e]) continue;
    IntChain z(g.edges.size(), 0);
    auto [u, v] = g.edges[e];
    z[e] = 1;                 // the defining edge, forward
    path_to_root(v, z, +1);   // head down to root
    path_to_root(u, z, -1);   // minus tail down to root
    cycles.push_back(std::move(z));
  }
  return cycles;
}

}  // namespace matsol::graph
