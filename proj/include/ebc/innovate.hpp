#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ebc/hitting.hpp"
#include "ebc/scenario.hpp"

namespace ebc {

// Per-user flags: B_k·x != 0.
std::vector<bool> is_innovative(std::span<const Elem> x, const Scenario& s);
// Same flags from rank comparison against C_k.
std::vector<bool> is_innovative_rank(std::span<const Elem> x, const Scenario& s);
std::size_t innovative_count(std::span<const Elem> x, const Scenario& s);
bool innovative_to_all(std::span<const Elem> x, const Scenario& s);

// Assigns x_1..x_L so that every form is nonzero. Throws TooManyForms when
// K > q and ZeroRow for a zero form.
Vec sequential_assignment(const LinearForms& forms);

// For each user, the first row of B_k with a nonzero entry in `support`.
Matrix rows_meeting(const Scenario& s, const std::vector<std::size_t>& support);

// Minimum-weight innovative vector: exact hitting set on the b̃_k, then
// sequential assignment on the restricted rows. Requires q >= K.
Vec oh_generate(const Scenario& s, std::uint64_t budget = kDefaultHittingBudget);
// Same with the greedy hitting set.
Vec gh_generate(const Scenario& s);

// Solves bhat·x = 1 restricted to the columns in `support`, after deleting
// the equations that become inconsistent during forward elimination. Free
// variables are zero. Throws EmptySupport for an empty support.
Vec sbes(const Matrix& bhat, const std::vector<std::size_t>& support);
Vec gh_sbes(const Scenario& s);
Vec fh_sbes(const Scenario& s);

// Lexicographically smallest innovative vector (x_1 most significant), or
// nullopt when none exists. Throws TooLarge when q^N > 1e7.
std::optional<Vec> brute_force_innovative(const Scenario& s);

struct SparsityResult {
  std::size_t omega = 0;
  Vec witness;
};

// Minimum Hamming weight over innovative vectors, scanning weights upward.
// Throws EmptyInnovativeSet when none exists and TooLarge when the number of
// candidates to scan exceeds 1e7.
SparsityResult brute_force_sparsity(const Scenario& s);

}  // namespace ebc
