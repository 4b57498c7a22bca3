// Oriented graphs, the regular tournament on an odd number of vertices, and
// the chain-level bases attached to them: coboundaries of vertex indicators
// and fundamental cycles of a spanning tree.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "matsol/fp.hpp"

namespace matsol::graph {

struct OrientedGraph {
  std::uint32_t vertex_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (tail, head)

  std::uint32_t edge_count() const { return std::uint32_t(edges.size()); }
};

// Complete graph on nv vertices, edges (i, j) for i < j in lexicographic
// order, oriented low to high.
OrientedGraph complete_graph(std::uint32_t nv);

bool is_connected(const OrientedGraph& g);

// The regular tournament on m = 2n+1 vertices: vertex i beats i+1, ..., i+n
// (mod m).  Edges are ordered step-major: edge id (k-1)*m + i is
// (i, i+k mod m), the i-th edge of step k.
struct TournamentGraph {
  std::uint32_t n = 1;
  OrientedGraph base;

  std::uint32_t m() const { return 2 * n + 1; }
  std::uint32_t edge_count() const { return m() * n; }
  std::uint32_t edge_id(std::uint32_t step, std::uint32_t i) const {
    return (step - 1) * m() + i;
  }
  std::uint32_t step_of_edge(std::uint32_t id) const { return id / m() + 1; }
  std::uint32_t tail_of_edge(std::uint32_t id) const { return id % m(); }
  std::uint32_t head_of_edge(std::uint32_t id) const {
    return (id % m() + step_of_edge(id)) % m();
  }
};

TournamentGraph build_tournament(std::uint32_t n);

// A cochain on the edges of a graph with coefficients in F_p.
struct Cochain {
  std::vector<linalg::fp_t> c;  // one residue per edge
};

// The coboundaries delta(1_v) for v = 1..V-1 (vertex 0 omitted); these span
// the image of delta.  Throws std::invalid_argument on disconnected input.
std::vector<Cochain> coboundary_basis(const OrientedGraph& g, std::uint32_t p);

// An integer chain on the edges, entries in {-1, 0, +1}.
using IntChain = std::vector<std::int8_t>;

// Fundamental cycles of a BFS spanning tree rooted at vertex 0, one per
// non-tree edge, each oriented along its defining edge.  Throws on
// disconnected input.
std::vector<IntChain> fundamental_cycle_basis(const OrientedGraph& g);

}  // namespace matsol::graph
