#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ebc/scenario.hpp"

namespace ebc {

// Universe {0..n-1} and a collection of nonempty subsets, each sorted
// ascending. Files use 1-based element numbers.
struct HittingInstance {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> sets;

  std::size_t k() const noexcept { return sets.size(); }
  // Throws BadParams for an empty collection, an empty set or an element
  // outside the universe. Sorts and deduplicates every set.
  void normalize();
};

struct HittingSolution {
  std::vector<std::size_t> elements;  // ascending, 0-based
  bool optimal = false;

  std::size_t size() const noexcept { return elements.size(); }
};

bool hits_all(const HittingInstance& inst, const std::vector<std::size_t>& elements);

// Repeatedly takes the element lying in the most sets not yet hit; ties go to
// the lowest element.
HittingSolution greedy_hitting(const HittingInstance& inst);

inline constexpr std::uint64_t kDefaultHittingBudget = 1'000'000;

// Minimum hitting set by branch and bound. Throws BudgetExceeded once more
// than `budget` search nodes have been expanded. Among optimal sets, the
// greedy solution is returned when it is already optimal.
HittingSolution exact_hitting(const HittingInstance& inst, std::uint64_t budget = kDefaultHittingBudget);

// Enumerates subsets by increasing size, lexicographically within a size.
// Throws TooLarge for n > 20.
HittingSolution oracle_min_hitting(const HittingInstance& inst);

// Sets are the supports of the given 0/1 rows. Throws ZeroRow on a zero row.
HittingInstance instance_from_btilde(const std::vector<std::vector<std::uint8_t>>& rows);
HittingInstance instance_from_scenario(const Scenario& s);

// One user per set with the single-row basis B_k = characteristic vector of
// the set; its sparsity number equals the minimum hitting set size when
// q >= K.
Scenario sparsity_instance_from_hitting(const HittingInstance& inst, const Field& field);

// File format: "N K" then K lines of 1-based elements.
HittingInstance read_hitting(std::istream& in);
void write_hitting(std::ostream& out, const HittingInstance& inst);

}  // namespace ebc
