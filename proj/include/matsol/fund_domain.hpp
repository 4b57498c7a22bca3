// Lexicographic fundamental domains for subgroup actions on the Cayley
// vertex set F_p^(2n^2-n).
//
// A vertex is canonical when no group element maps it to a lexicographically
// smaller coordinate string (blocks in step order, star coefficient last).
// Stagewise minimization over the orbit equals plain lexicographic
// minimization of the concatenated string, which is what is implemented.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matsol/group.hpp"

namespace matsol::sym {

struct LexReduction {
  graph::StepStarCoords canonical;
  GroupElement witness;  // first minimizer in (rot, refl, iota) order
  Subgroup stabilizer;   // stabilizer of the canonical form inside A
};

LexReduction lex_reduce(const H1Action& act, const graph::StepStarCoords& v);

struct FundDomain {
  std::uint32_t p = 2;
  std::uint32_t n = 1;
  SubgroupLabel label = SubgroupLabel::Triv;
  std::vector<std::uint64_t> verts;      // packed canonical vertices, ascending
  std::vector<std::uint8_t> stab_order;  // |Stab_A(v)| per vertex

  std::uint64_t size() const { return verts.size(); }
  std::optional<std::uint32_t> index_of(std::uint64_t packed) const;
};

// Full enumeration; deterministic for any thread count.  When
// mem_budget_bytes > 0 a counting pass runs first and BudgetExceeded is
// thrown if the table would not fit.
FundDomain enumerate_fundamental_domain(const H1Action& act, unsigned threads = 1,
                                        std::uint64_t mem_budget_bytes = 0);

// Streaming count without storing vertices.
std::uint64_t count_fundamental_domain(const H1Action& act, unsigned threads = 1);

void save_fund_domain(const FundDomain& f, const std::string& path);
FundDomain load_fund_domain(const std::string& path);

}  // namespace matsol::sym
