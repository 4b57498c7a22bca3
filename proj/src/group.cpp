#include "matsol/group.hpp"

#include <stdexcept>
#include <string>

namespace matsol::sym {

GroupElement compose(std::uint32_t m, GroupElement g, GroupElement h) {
  GroupElement r;
  const std::uint32_t a_g = g.rot, a_h = h.rot;
  r.rot = std::uint16_t(h.refl ? (a_h + m - a_g % m) % m : (a_h + a_g) % m);
  r.refl = g.refl ^ h.refl;
  r.iota = g.iota ^ h.iota;
  return r;
}

GroupElement inverse(std::uint32_t m, GroupElement g) {
  GroupElement r = g;
  if (!g.refl) r.rot = std::uint16_t((m - g.rot % m) % m);
  return r;
}

const char* to_string(SubgroupLabel label) {
  switch (label) {
    case SubgroupLabel::DnZ2: return "DnZ2";
    case SubgroupLabel::Dn: return "Dn";
    case SubgroupLabel::CnZ2: return "CnZ2";
    case SubgroupLabel::Cn: return "Cn";
    case SubgroupLabel::Z2: return "Z2";
    case SubgroupLabel::Triv: return "Triv";
    case SubgroupLabel::Custom: return "Custom";
  }
  return "?";
}

std::optional<SubgroupLabel> parse_subgroup(std::string_view name) {
  if (name == "DnZ2") return SubgroupLabel::DnZ2;
  if (name == "Dn") return SubgroupLabel::Dn;
  if (name == "CnZ2") return SubgroupLabel::CnZ2;
  if (name == "Cn") return SubgroupLabel::Cn;
  if (name == "Z2") return SubgroupLabel::Z2;
  if (name == "Triv") return SubgroupLabel::Triv;
  return std::nullopt;
}

Subgroup make_subgroup(SubgroupLabel label, std::uint32_t m) {
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("make_subgroup: m must be odd and at least 3");
  Subgroup s;
  s.label = label;
  s.m = m;
  const bool rots = label == SubgroupLabel::DnZ2 || label == SubgroupLabel::Dn ||
                    label == SubgroupLabel::CnZ2 || label == SubgroupLabel::Cn;
  const bool refls = label == SubgroupLabel::DnZ2 || label == SubgroupLabel::Dn;
  const bool iotas = label == SubgroupLabel::DnZ2 || label == SubgroupLabel::CnZ2 ||
                     label == SubgroupLabel::Z2;
  for (std::uint32_t a = 0; a < (rots ? m : 1); ++a)
    for (std::uint8_t f = 0; f <= (refls ? 1 : 0); ++f)
      for (std::uint8_t t = 0; t <= (iotas ? 1 : 0); ++t)
        s.elements.push_back({std::uint16_t(a), f, t});
  return s;
}

namespace {

// Coordinate source index: act(g, v)[j] = sign * v[src(j)].
std::uint32_t coord_src(std::uint32_t n, std::uint32_t m, GroupElement g, std::uint32_t j) {
  const std::uint32_t dim = 2 * n * n - n;
  if (j == dim - 1) return j;  // star coefficient
  const std::uint32_t kb = j / m;       // block index, step k = kb + 1
  const std::uint32_t pos = j % m;
  const std::uint32_t k = kb + 1;
  std::uint32_t src;
  if (!g.refl)
    src = (pos + g.rot) % m;
  else
    src = (std::uint32_t(g.rot) + 2 * m - pos - k) % m;
  return kb * m + src;
}

}  // namespace

graph::StepStarCoords act_on_h1(const graph::StepStarBasis& basis, GroupElement g,
                                const graph::StepStarCoords& v) {
  const std::uint32_t dim = basis.dim(), m = basis.m(), n = basis.n();
  graph::StepStarCoords out;
  out.c.resize(dim);
  const bool neg = chi(g) < 0;
  for (std::uint32_t j = 0; j < dim; ++j) {
    const linalg::fp_t val = v.c[coord_src(n, m, g, j)];
    out.c[j] = neg ? basis.field().neg(val) : val;
  }
  return out;
}

std::uint32_t color_image(const graph::StepStarBasis& basis, GroupElement g,
                          std::uint32_t color) {
  const std::uint32_t m = basis.m();
  const std::uint32_t k = color / m + 1;
  const std::uint32_t i = color % m;
  std::uint32_t img;
  if (!g.refl)
    img = (i + m - g.rot % m) % m;
  else
    img = (std::uint32_t(g.rot) + 2 * m - i - k) % m;
  return (k - 1) * m + img;
}

std::pair<AlbEdge, int> act_on_edge(const graph::StepStarBasis& basis, GroupElement g,
                                    AlbEdge e) {
  graph::StepStarCoords tail = basis.unpack(e.tail);
  graph::StepStarCoords moved = act_on_h1(basis, g, tail);
  const std::uint32_t c2 = color_image(basis, g, e.color);
  if (chi(g) > 0) return {{basis.pack(moved), c2}, +1};
  basis.h1_step(moved, c2, -1);
  return {{basis.pack(moved), c2}, -1};
}

H1Action::H1Action(const graph::StepStarBasis& basis, Subgroup sub)
    : basis_(&basis), sub_(std::move(sub)) {
  if (sub_.m != basis.m())
    throw std::invalid_argument("H1Action: subgroup and basis disagree on m");
  const std::uint32_t dim = basis.dim(), m = basis.m(), n = basis.n();
  tables_.resize(sub_.elements.size());
  for (std::size_t i = 0; i < sub_.elements.size(); ++i) {
    const GroupElement g = sub_.elements[i];
    Tables& t = tables_[i];
    t.negate = chi(g) < 0;
    t.coord_src.resize(dim);
    for (std::uint32_t j = 0; j < dim; ++j)
      t.coord_src[j] = std::uint16_t(coord_src(n, m, g, j));
    t.color_map.resize(basis.colors());
    for (std::uint32_t c = 0; c < basis.colors(); ++c)
      t.color_map[c] = color_image(basis, g, c);
  }
}

void H1Action::act_coords(std::size_t elem, const linalg::fp_t* in,
                          linalg::fp_t* out) const {
  const Tables& t = tables_[elem];
  const std::uint32_t dim = basis_->dim();
  const std::uint32_t p = basis_->p();
  if (!t.negate) {
    for (std::uint32_t j = 0; j < dim; ++j) out[j] = in[t.coord_src[j]];
  } else {
    for (std::uint32_t j = 0; j < dim; ++j) {
      const linalg::fp_t v = in[t.coord_src[j]];
      out[j] = v ? linalg::fp_t(p - v) : 0;
    }
  }
}

}  // namespace matsol::sym
