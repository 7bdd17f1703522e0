#include "ebc/hard_instances.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>

#include "text_io.hpp"

namespace ebc {

Scenario gen_appendix_a(const Field& field, std::size_t n) {
  if (n < 2) throw BadParams("appendix-a construction needs N >= 2");
  Matrix v(field, n - 2, n);
  for (std::size_t i = 0; i + 2 < n; ++i) v(i, i) = 1;

  std::vector<Matrix> covered;  // V + <u_i> for the vectors chosen so far
  const std::size_t users = field.order() + 1;
  const Elem top = static_cast<Elem>(field.order() - 1);
  Vec x(n, 0);
  while (covered.size() < users) {
    std::size_t i = n;
    while (i > 0 && x[i - 1] == top) x[--i] = 0;
    if (i == 0) throw BadParams("appendix-a construction ran out of vectors");
    ++x[i - 1];

    if (in_row_space(x, v)) continue;
    bool fresh = true;
    for (const auto& c : covered)
      if (in_row_space(x, c)) {
        fresh = false;
        break;
      }
    if (!fresh) continue;
    Matrix c = v;
    c.append_row(x);
    covered.push_back(std::move(c));
  }

  Scenario s{field, n, {}};
  for (const auto& c : covered) s.add(UserState::from_received(c));
  return s;
}

SatReduction reduce_3sat(const Cnf& cnf, const Field& field) {
  const std::size_t n = cnf.vars + 1;
  const Elem minus_one = field.neg(1);
  SatReduction red;
  red.scenario = Scenario{field, n, {}};

  auto add = [&](Matrix b) {
    red.scenario.add(UserState::from_basis(b));
    red.b_matrices.push_back(std::move(b));
  };

  for (const auto& clause : cnf.clauses) {
    Matrix b(field, 0, n);
    for (int lit : clause) {
      const auto var = static_cast<std::size_t>(std::abs(lit));
      if (var < 1 || var > cnf.vars) throw BadParams("literal " + std::to_string(lit) + " out of range");
      Vec row(n, 0);
      row[var - 1] = 1;
      if (lit < 0) row[n - 1] = minus_one;
      b.append_row(row);
    }
    add(std::move(b));
  }

  Matrix last(field, 1, n);
  last(0, n - 1) = 1;
  add(std::move(last));

  // For q > 2 these force every x_v / x_N into {0, 1}.
  for (std::size_t var = 0; var < cnf.vars; ++var)
    for (unsigned a = 2; a < field.order(); ++a) {
      Matrix e(field, 1, n);
      e(0, var) = static_cast<Elem>(a);
      e(0, n - 1) = minus_one;
      add(std::move(e));
    }
  return red;
}

bool satisfies(const Cnf& cnf, const std::vector<bool>& assignment) {
  for (const auto& clause : cnf.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool val = assignment[static_cast<std::size_t>(std::abs(lit))];
      if (lit > 0 ? val : !val) sat = true;
    }
    if (!sat) return false;
  }
  return true;
}

std::optional<std::vector<bool>> brute_force_sat(const Cnf& cnf) {
  if (cnf.vars > 30) throw TooLarge("SAT enumeration limited to 30 variables");
  std::vector<bool> a(cnf.vars + 1, false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cnf.vars); ++mask) {
    for (std::size_t v = 1; v <= cnf.vars; ++v) a[v] = (mask >> (v - 1)) & 1u;
    if (satisfies(cnf, a)) return a;
  }
  return std::nullopt;
}

Cnf random_3cnf(std::size_t vars, std::size_t clauses, Rng& rng) {
  if (vars < 3) throw BadParams("random 3-CNF needs at least 3 variables");
  Cnf cnf{vars, {}};
  for (std::size_t c = 0; c < clauses; ++c) {
    std::array<int, 3> clause{};
    for (std::size_t i = 0; i < 3; ++i) {
      int v;
      do v = static_cast<int>(rng.below(vars)) + 1;
      while ((i > 0 && std::abs(clause[0]) == v) || (i > 1 && std::abs(clause[1]) == v));
      clause[i] = rng.below(2) ? -v : v;
    }
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

Scenario random_scenario(const Field& field, std::size_t n, std::size_t k, Rng& rng) {
  Scenario s{field, n, {}};
  while (s.k() < k) {
    const auto r = static_cast<std::size_t>(rng.below(n));
    Matrix c(field, r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = static_cast<Elem>(rng.below(field.order()));
    s.add(UserState::from_received(c));
  }
  return s;
}

Cnf read_dimacs(std::istream& in) {
  detail::LineReader reader(in);
  std::vector<std::string> t;
  do t = reader.expect("problem line");
  while (t[0] == "c");
  if (t.size() != 4 || t[0] != "p" || t[1] != "cnf") reader.fail("expected 'p cnf <vars> <clauses>'");
  Cnf cnf;
  cnf.vars = reader.number<std::size_t>(t[2]);
  const auto m = reader.number<std::size_t>(t[3]);
  std::vector<int> lits;
  while (cnf.clauses.size() < m) {
    t = reader.expect("clause");
    if (t[0] == "c") continue;
    for (const auto& tok : t) {
      const int lit = reader.number<int>(tok);
      if (lit == 0) {
        if (lits.size() != 3) reader.fail("clause must have exactly 3 literals");
        cnf.clauses.push_back({lits[0], lits[1], lits[2]});
        lits.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::abs(lit)) > cnf.vars) reader.fail("literal " + tok + " out of range");
      lits.push_back(lit);
    }
  }
  if (!lits.empty()) reader.fail("unterminated clause");
  return cnf;
}

void write_dimacs(std::ostream& out, const Cnf& cnf) {
  out << "p cnf " << cnf.vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
}

}  // namespace ebc
