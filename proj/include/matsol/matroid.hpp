// Regular matroids presented by integer realizations, graphic matroids of
// oriented graphs, and cographic duals via integer kernel bases.
//
// A realization is a g x S integer matrix of full row rank g whose columns
// generate Z^g and whose column lattice is saturated; at desk scale this is
// certified by checking that every maximal minor lies in {-1, 0, +1}, which
// also witnesses regularity.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matsol/graph.hpp"

namespace matsol::matroid {

using IntMat = std::vector<std::vector<std::int64_t>>;

// Basis of {y : X y = 0} over the integers, as rows.  The result is a basis
// of the full (saturated) kernel lattice.
IntMat integer_kernel_basis(const IntMat& x, std::uint32_t ncols);

std::uint32_t integer_rank(IntMat x);

struct RegularMatroid {
  std::uint32_t rank = 0;  // g
  std::uint32_t size = 0;  // |S|
  IntMat realization;      // g rows, size columns
  bool minors_checked = false;
  std::string note;  // construction remarks (trusted realization, merges, ...)
};

// Wraps and validates a realization.  Maximal-minor certification runs when
// size <= minor_check_limit; larger matroids are accepted with a
// "realization trusted" note.
RegularMatroid make_regular_matroid(IntMat realization, std::uint32_t minor_check_limit = 20);

// Graphic matroid M(G) via the reduced incidence matrix (one vertex row
// deleted per connected component).  Loops become zero columns.
RegularMatroid graphic_matroid(const graph::OrientedGraph& g);

// Cographic dual: realization rows form an integer kernel basis of the
// primal realization.
RegularMatroid dual_matroid(const RegularMatroid& r);

// Text import: header "rows cols", then row-major integer entries.
RegularMatroid load_realization(const std::string& path);

}  // namespace matsol::matroid
