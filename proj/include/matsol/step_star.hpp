// Step-star coordinates on H^1(K_m, F_p) for the regular tournament on
// m = 2n+1 vertices.
//
// The basis consists of the edge duals e*_{i,i+k} for steps k = 1..n-1
// (n-1 blocks of m coordinates, block k at offset (k-1)*m) followed by one
// star functional s* = sum_i e*_{i,i+n}, for a total of 2n^2 - n
// coordinates.  The basis is valid exactly when p does not divide m.
#pragma once

#include <cstdint>
#include <vector>

#include "matsol/dense_mat.hpp"
#include "matsol/graph.hpp"

namespace matsol::graph {

struct StepStarCoords {
  std::vector<linalg::fp_t> c;  // length 2n^2 - n

  friend bool operator==(const StepStarCoords&, const StepStarCoords&) = default;
};

class StepStarBasis {
public:
  // Throws std::domain_error("star dual degenerate") when p divides 2n+1.
  StepStarBasis(std::uint32_t n, std::uint32_t p);

  std::uint32_t n() const { return n_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return 2 * n_ + 1; }
  std::uint32_t dim() const { return dim_; }
  std::uint32_t colors() const { return m() * n_; }
  const TournamentGraph& tournament() const { return tour_; }
  const linalg::Fp& field() const { return fp_; }

  // Expansion of the edge dual e*_color in step-star coordinates; for colors
  // of step < n this is a unit vector.
  const linalg::fp_t* expansion(std::uint32_t color) const {
    return exp_flat_.data() + std::size_t(color) * dim_;
  }

  // v <- v + sign * e*_color  (sign is +1 or -1)
  void h1_step(StepStarCoords& v, std::uint32_t color, int sign) const {
    step_raw(v.c.data(), color, sign);
  }
  void step_raw(linalg::fp_t* v, std::uint32_t color, int sign) const {
    const linalg::fp_t* e = expansion(color);
    if (sign >= 0)
      for (std::uint32_t j = 0; j < dim_; ++j) v[j] = fp_.add(v[j], e[j]);
    else
      for (std::uint32_t j = 0; j < dim_; ++j) v[j] = fp_.sub(v[j], e[j]);
  }

  // Big-endian base-p packing: coordinate 0 is the most significant digit,
  // so packed order equals lexicographic order on coordinate strings.
  std::uint64_t pack(const linalg::fp_t* v) const {
    std::uint64_t key = 0;
    for (std::uint32_t j = 0; j < dim_; ++j) key = key * p_ + v[j];
    return key;
  }
  std::uint64_t pack(const StepStarCoords& v) const { return pack(v.c.data()); }
  void unpack(std::uint64_t key, linalg::fp_t* v) const {
    for (std::uint32_t j = dim_; j-- > 0;) {
      v[j] = linalg::fp_t(key % p_);
      key /= p_;
    }
  }
  StepStarCoords unpack(std::uint64_t key) const {
    StepStarCoords v;
    v.c.resize(dim_);
    unpack(key, v.c.data());
    return v;
  }

  // p^dim; throws std::overflow_error when it does not fit in 64 bits.
  std::uint64_t vertex_count() const;

  // Change of basis to evaluation coordinates against the fundamental cycle
  // basis of the tournament (and back).
  std::vector<linalg::fp_t> to_cycle_coords(const linalg::fp_t* v) const;
  std::vector<linalg::fp_t> from_cycle_coords(const std::vector<linalg::fp_t>& y) const;

private:
  std::uint32_t n_, p_, dim_;
  linalg::Fp fp_;
  TournamentGraph tour_;
  std::vector<linalg::fp_t> exp_flat_;          // colors() * dim
  linalg::DenseMatFp eval_;                     // P: basis evaluated on cycles
  linalg::DenseMatFp eval_inv_;                 // P^{-1}
};

// Process-wide cache keyed by (n, p).
const StepStarBasis& step_star_basis(std::uint32_t n, std::uint32_t p);

}  // namespace matsol::graph
