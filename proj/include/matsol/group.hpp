// The symmetry group D_m x Z/2 of the regular tournament on m = 2n+1
// vertices, its named subgroups, and their action on H^1 in step-star
// coordinates.
//
// An element (rot, refl, iota) acts on vertices of K_m by
// i -> (-1)^refl * i + rot; iota does not move vertices but negates H^1 and
// reverses every Cayley edge.  The sign character chi = (-1)^(refl+iota) is
// an integer sign (+1/-1), not a field element: it controls orientation
// bookkeeping and is meaningful even when p = 2.
//
// Composition is chosen so that act(compose(g, h), v) = act(g, act(h, v))
// while keeping the classical pullback formulas for the action on edge
// duals; concretely the vertex map of compose(g, h) is (map of h) followed
// by (map of g) under pullback, i.e. pi_h . pi_g pointwise.
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "matsol/step_star.hpp"

namespace matsol::sym {

struct GroupElement {
  std::uint16_t rot = 0;
  std::uint8_t refl = 0;
  std::uint8_t iota = 0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

inline int chi(GroupElement g) { return (g.refl ^ g.iota) ? -1 : +1; }

GroupElement compose(std::uint32_t m, GroupElement g, GroupElement h);
GroupElement inverse(std::uint32_t m, GroupElement g);

enum class SubgroupLabel { DnZ2, Dn, CnZ2, Cn, Z2, Triv, Custom };

const char* to_string(SubgroupLabel label);
std::optional<SubgroupLabel> parse_subgroup(std::string_view name);

struct Subgroup {
  SubgroupLabel label = SubgroupLabel::Triv;
  std::uint32_t m = 3;
  std::vector<GroupElement> elements;  // ascending (rot, refl, iota)

  std::size_t order() const { return elements.size(); }
};

Subgroup make_subgroup(SubgroupLabel label, std::uint32_t m);

// Action of an arbitrary element on a vertex of the Cayley graph.
graph::StepStarCoords act_on_h1(const graph::StepStarBasis& basis, GroupElement g,
                                const graph::StepStarCoords& v);

// Image color and its sign under the edge-dual transport
// L_g e*_c = chi(g) e*_{color_image}.
std::uint32_t color_image(const graph::StepStarBasis& basis, GroupElement g,
                          std::uint32_t color);

// An oriented Cayley edge: tail -> tail + e*_color, tail packed.
struct AlbEdge {
  std::uint64_t tail = 0;
  std::uint32_t color = 0;
  friend bool operator==(const AlbEdge&, const AlbEdge&) = default;
};

// The image of an oriented edge under g, as an underlying edge plus the
// traversal sign (+1 forward, -1 reversed).
std::pair<AlbEdge, int> act_on_edge(const graph::StepStarBasis& basis, GroupElement g,
                                    AlbEdge e);

// Precomputed per-element permutation tables binding a basis to a subgroup.
// act(g, v)[j] = (+/-) v[coord_src[j]]; the sign is -1 iff negate.
class H1Action {
public:
  H1Action(const graph::StepStarBasis& basis, Subgroup sub);

  const graph::StepStarBasis& basis() const { return *basis_; }
  const Subgroup& subgroup() const { return sub_; }

  struct Tables {
    std::vector<std::uint16_t> coord_src;  // dim entries
    std::vector<std::uint32_t> color_map;  // colors entries
    bool negate = false;
  };
  const Tables& tables(std::size_t elem) const { return tables_[elem]; }

  void act_coords(std::size_t elem, const linalg::fp_t* in, linalg::fp_t* out) const;

private:
  const graph::StepStarBasis* basis_;
  Subgroup sub_;
  std::vector<Tables> tables_;
};

}  // namespace matsol::sym
