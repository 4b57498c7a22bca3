// The mod-p Albanese graph of a regular matroid: the Cayley graph of
// F_p^S / U_p on the images of the coordinate vectors, together with the
// solution-space machinery (kernel of the constraint system, color
// profiles, constant-profile witnesses).
//
// Vertices are coordinatized by an integer kernel basis Y of the
// realization: the class of x is Y x mod p, so a vertex is a base-p packed
// string of h = |S| - g digits.  Colors are the matroid elements; the edge
// (v, s) joins v to v + gen[s].
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "matsol/dense_mat.hpp"
#include "matsol/matroid.hpp"
#include "matsol/sparse_mat.hpp"

namespace matsol::matroid {

class AlbaneseGraph {
public:
  AlbaneseGraph(std::uint32_t p, std::uint32_t h, std::uint32_t colors);

  std::uint32_t p() const { return p_; }
  std::uint32_t h() const { return h_; }
  std::uint32_t colors() const { return colors_; }
  std::uint64_t vertex_count() const { return vcount_; }
  const linalg::Fp& field() const { return fp_; }

  // Digits of the generator attached to color s (the class of e_s).
  const std::vector<linalg::fp_t>& gen(std::uint32_t s) const { return gen_[s]; }
  // Basis of U_p (row space of the realization mod p).
  const std::vector<std::vector<linalg::fp_t>>& u_basis() const { return u_rows_; }

  std::uint64_t pack(const std::vector<linalg::fp_t>& digits) const;
  std::vector<linalg::fp_t> unpack(std::uint64_t key) const;
  // Head of the edge with tail `key` and the given color (sign +1), or the
  // tail of the edge pointing at `key` (sign -1).
  std::uint64_t step(std::uint64_t key, std::uint32_t color, int sign) const;

  std::vector<std::vector<linalg::fp_t>> gen_;      // colors x h
  std::vector<std::vector<linalg::fp_t>> u_rows_;   // basis of U_p, length colors each

private:
  std::uint32_t p_, h_, colors_;
  std::uint64_t vcount_;
  linalg::Fp fp_;
};

// Builds the Albanese graph of R with vertex coordinates given by the
// integer kernel basis of its realization.  Throws std::invalid_argument
// when p^h exceeds `vertex_cap` (such instances belong to the symmetrized
// pipeline).
AlbaneseGraph build_albanese(const RegularMatroid& r, std::uint32_t p,
                             std::uint64_t vertex_cap = std::uint64_t(1) << 20);

// Same, with a caller-supplied kernel basis (rows of Y).
AlbaneseGraph build_albanese_with_kernel(const RegularMatroid& r, const IntMat& kernel_rows,
                                         std::uint32_t p, std::uint64_t vertex_cap);

// A 1-chain on the Albanese graph: coefficient per (tail vertex, color).
struct SolutionChain {
  std::uint32_t p = 2;
  std::unordered_map<std::uint64_t, linalg::fp_t> coeff;  // key = (tail << 8) | color

  static std::uint64_t key(std::uint64_t tail, std::uint32_t color) {
    return (tail << 8) | color;
  }
  static std::uint64_t key_tail(std::uint64_t k) { return k >> 8; }
  static std::uint32_t key_color(std::uint64_t k) { return std::uint32_t(k & 0xff); }

  void add(std::uint64_t tail, std::uint32_t color, linalg::fp_t v);
  bool empty() const;  // true when all coefficients vanish
};

// Checks conditions (A) and (B) of the solution definition: (A) holds by
// construction of the per-color keying; (B) requires the u-weighted boundary
// to vanish for every u in U_p, verified on the stored basis.
bool is_solution(const AlbaneseGraph& alb, const SolutionChain& b);

// Sum of coefficients per color.
std::vector<linalg::fp_t> color_profile(const AlbaneseGraph& alb, const SolutionChain& b);

// The full constraint system: one row per (u basis element, vertex), one
// column per (vertex, color).
linalg::SparseMatFp solution_constraints(const AlbaneseGraph& alb);

// Basis of the solution space via a dense kernel; every returned chain is
// re-validated with is_solution before being returned.  Throws when the
// constraint system exceeds `max_dense_cells`.
std::vector<SolutionChain> solution_space(const AlbaneseGraph& alb,
                                          std::uint64_t max_dense_cells = std::uint64_t(1)
                                                                          << 26);

// Searches for a chain whose color profile is constant and nonzero, looping
// over the profile value c in F_p*.  Uses the sparse affine solver, so it
// scales to larger instances than solution_space.
std::optional<std::pair<SolutionChain, linalg::fp_t>> constant_profile_witness(
    const AlbaneseGraph& alb);

// Existence-only variant (no chain reconstruction) via rank comparison.
bool constant_profile_witness_exists(const AlbaneseGraph& alb);

}  // namespace matsol::matroid
