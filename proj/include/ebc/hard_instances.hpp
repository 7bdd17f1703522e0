#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ebc/rng.hpp"
#include "ebc/scenario.hpp"

namespace ebc {

// K = q+1 users with C_k = [e_1..e_{N-2}; u_k], where each u_k is the
// lexicographically smallest vector outside every earlier V + <u_i>. The
// union of the row spaces is all of GF(q)^N, so no innovative vector exists.
Scenario gen_appendix_a(const Field& field, std::size_t n);

// 3-CNF with variables 1..vars; literal +v / -v.
struct Cnf {
  std::size_t vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

struct SatReduction {
  std::vector<Matrix> b_matrices;  // B_1..B_m, B_{m+1}, then the extra rows for q > 2
  Scenario scenario;
};

// N = vars + 1. Clause i gives B_i with one row per literal: e_v for +v and
// e_v - e_N for -v. B_{m+1} = e_N. For q > 2, one extra single-row user
// a·e_v - e_N per variable v and each a outside {0, 1}. The formula is
// satisfiable iff the scenario has an innovative vector.
SatReduction reduce_3sat(const Cnf& cnf, const Field& field);

// Satisfying assignment (index 0 unused) by enumeration, or nullopt.
std::optional<std::vector<bool>> brute_force_sat(const Cnf& cnf);
bool satisfies(const Cnf& cnf, const std::vector<bool>& assignment);

// Three distinct variables per clause, each negated with probability 1/2.
Cnf random_3cnf(std::size_t vars, std::size_t clauses, Rng& rng);

// K users, each holding r_k < N uniform random vectors (r_k uniform, rows
// reduced to an independent set).
Scenario random_scenario(const Field& field, std::size_t n, std::size_t k, Rng& rng);

// DIMACS "p cnf" subset: three literals per clause, each clause ending in 0.
Cnf read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Cnf& cnf);

}  // namespace ebc
