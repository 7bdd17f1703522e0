#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// here avoid the library's elimination code on purpose.

#include <cstdint>
#include <set>
#include <vector>

#include "ebc/hard_instances.hpp"
#include "ebc/innovate.hpp"
#include "ebc/rng.hpp"

namespace ebc::test {

inline Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng.below(f.order()));
  return m;
}

inline Vec random_vec(const Field& f, std::size_t n, Rng& rng) {
  Vec v(n);
  for (auto& x : v) x = static_cast<Elem>(rng.below(f.order()));
  return v;
}

inline Matrix rows_of(const Field& f, std::size_t cols, std::vector<Vec> rows) {
  return Matrix::from_rows(f, cols, rows);
}

// Carry-less product reduced modulo poly, bit by bit.
inline unsigned clmul_mod(unsigned a, unsigned b, unsigned poly, unsigned m) {
  unsigned prod = 0;
  for (unsigned i = 0; i < m; ++i)
    if ((b >> i) & 1u) prod ^= a << i;
  for (int bit = 2 * static_cast<int>(m) - 2; bit >= static_cast<int>(m); --bit)
    if ((prod >> bit) & 1u) prod ^= poly << (bit - static_cast<int>(m));
  return prod;
}

// Every linear combination of the rows of c (q^r of them, r small).
inline std::set<Vec> span_of(const Matrix& c) {
  const Field& f = c.field();
  std::set<Vec> out{Vec(c.cols(), 0)};
  for (std::size_t i = 0; i < c.rows(); ++i) {
    std::set<Vec> next;
    for (const auto& v : out)
      for (unsigned a = 0; a < f.order(); ++a) {
        Vec w = v;
        for (std::size_t j = 0; j < c.cols(); ++j) w[j] = f.add(w[j], f.mul(static_cast<Elem>(a), c(i, j)));
        next.insert(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

inline std::size_t rank_by_span(const Matrix& c) {
  std::size_t size = span_of(c).size(), r = 0;
  while (size > 1) {
    size /= c.field().order();
    ++r;
  }
  return r;
}

inline Scenario scenario_from_bases(const Field& f, std::size_t n, const std::vector<std::vector<Vec>>& bases) {
  Scenario s{f, n, {}};
  for (const auto& b : bases) s.add(UserState::from_basis(Matrix::from_rows(f, n, b)));
  return s;
}

inline Scenario scenario_from_received(const Field& f, std::size_t n, const std::vector<std::vector<Vec>>& cs) {
  Scenario s{f, n, {}};
  for (const auto& c : cs) s.add(UserState::from_received(Matrix::from_rows(f, n, c)));
  return s;
}

// Innovative means outside the span of what the user holds.
inline bool innovative_by_span(const Vec& x, const Scenario& s) {
  for (const auto& u : s.users)
    if (span_of(u.received()).count(x)) return false;
  return true;
}

// Smallest weight over all innovative vectors, by full enumeration.
inline std::size_t omega_by_enumeration(const Scenario& s) {
  const unsigned q = s.field.order();
  Vec x(s.n, 0);
  std::size_t best = s.n + 1;
  for (;;) {
    std::size_t i = 0;
    while (i < s.n && x[i] == q - 1) x[i++] = 0;
    if (i == s.n) break;
    ++x[i];
    const std::size_t w = hamming_weight(x);
    if (w < best && innovative_by_span(x, s)) best = w;
  }
  return best;
}

// Each user holds every uncoded packet with probability 0.7 plus `coded`
// random combinations, as after the uncoded phase of a broadcast.
inline Scenario broadcast_scenario(const Field& f, std::size_t n, std::size_t k, std::size_t coded, Rng& rng) {
  Scenario s{f, n, {}};
  while (s.k() < k) {
    Matrix c(f, 0, n);
    for (std::size_t j = 0; j < n; ++j)
      if (rng.below(10) < 7) {
        Vec e(n, 0);
        e[j] = 1;
        c.append_row(e);
      }
    for (std::size_t i = 0; i < coded; ++i) c.append_row(random_vec(f, n, rng));
    auto u = UserState::from_received(c);
    if (!u.finished()) s.add(std::move(u));
  }
  return s;
}

inline double harmonic(std::size_t n) {
  double h = 0;
  for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

inline HittingInstance random_hitting(std::size_t n, std::size_t k, Rng& rng) {
  HittingInstance inst;
  inst.n = n;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> s;
    for (std::size_t e = 0; e < n; ++e)
      if (rng.below(3) == 0) s.push_back(e);
    if (s.empty()) s.push_back(rng.below(n));
    inst.sets.push_back(s);
  }
  inst.normalize();
  return inst;
}

// Users that already hold some packets, over GF(3).
inline Scenario example4() {
  const Field f(3);
  return scenario_from_bases(f, 4, {{{1, 2, 0, 1}, {1, 1, 0, 0}}, {{0, 2, 1, 0}}, {{0, 0, 1, 1}, {1, 0, 0, 2}}});
}

inline Matrix example5_bhat() {
  return Matrix::from_rows(Field(2), 5, {{1, 1, 0, 1, 0}, {1, 1, 1, 0, 1}, {1, 0, 0, 1, 1}, {0, 0, 1, 0, 0}});
}

inline Scenario example5() {
  const Matrix b = example5_bhat();
  Scenario s{b.field(), 5, {}};
  for (std::size_t i = 0; i < b.rows(); ++i) s.add(UserState::from_basis(b.select_rows(std::vector{i})));
  return s;
}

// Three users holding uncoded packets whose complements are disjoint.
inline Scenario example2(unsigned q = 3) {
  const Field f(q);
  return scenario_from_received(f, 4,
                                {{{1, 0, 0, 0}, {0, 1, 0, 0}},
                                 {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                                 {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
}

inline HittingInstance example3() { return HittingInstance{5, {{0, 1, 2}, {1, 2, 3}, {3, 4}}}; }

}  // namespace ebc::test
