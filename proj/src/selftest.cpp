#include <functional>
#include <ostream>
#include <string>

#include "ebc/cli.hpp"
#include "ebc/hard_instances.hpp"
#include "ebc/innovate.hpp"

namespace ebc {

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng.below(f.order()));
  return m;
}

Vec random_vec(const Field& f, std::size_t n, Rng& rng) {
  Vec v(n);
  for (auto& x : v) x = static_cast<Elem>(rng.below(f.order()));
  return v;
}

bool field_axioms() {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 11u, 13u, 16u}) {
    const Field f(q);
    for (unsigned a = 0; a < q; ++a) {
      const auto ea = static_cast<Elem>(a);
      if (f.add(ea, 0) != ea || f.mul(ea, 1) != ea || f.add(ea, f.neg(ea)) != 0) return false;
      if (a != 0 && f.mul(ea, f.inv(ea)) != 1) return false;
      for (unsigned b = 0; b < q; ++b) {
        const auto eb = static_cast<Elem>(b);
        if (f.add(ea, eb) != f.add(eb, ea) || f.mul(ea, eb) != f.mul(eb, ea)) return false;
        if (f.mul(ea, eb) != f.mul_reference(ea, eb)) return false;
        for (unsigned c = 0; c < q; ++c) {
          const auto ec = static_cast<Elem>(c);
          if (f.mul(ea, f.add(eb, ec)) != f.add(f.mul(ea, eb), f.mul(ea, ec))) return false;
          if (f.mul(f.mul(ea, eb), ec) != f.mul(ea, f.mul(eb, ec))) return false;
          if (f.add(f.add(ea, eb), ec) != f.add(ea, f.add(eb, ec))) return false;
        }
      }
    }
  }
  return true;
}

bool gf256_tables() {
  const Field f(256);
  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b)
      if (f.mul(static_cast<Elem>(a), static_cast<Elem>(b)) != f.mul_reference(static_cast<Elem>(a), static_cast<Elem>(b)))
        return false;
  return f.mul(0x02, 0x80) == 0x1D;
}

bool null_space_duality(Rng& rng) {
  for (unsigned q : {2u, 3u, 256u})
    for (int t = 0; t < 40; ++t) {
      const Field f(q);
      const std::size_t n = 1 + rng.below(8);
      const Matrix c = random_matrix(f, rng.below(n + 2), n, rng);
      const Matrix b = null_space_basis(c);
      if (rank(c) + rank(b) != n || !(c * b.transpose()).is_zero()) return false;
      const Vec x = random_vec(f, n, rng);
      if (in_row_space(x, c) != in_row_space_dual(x, c)) return false;
    }
  return true;
}

bool tracker_matches_batch(Rng& rng) {
  for (unsigned q : {2u, 5u, 256u})
    for (int t = 0; t < 20; ++t) {
      const Field f(q);
      const std::size_t n = 2 + rng.below(7);
      NullTracker tr(f, n);
      for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
        Vec w = random_vec(f, n, rng);
        if (tr.is_innovative(w) == in_row_space(w, tr.received())) return false;
        tr.try_update(w);
        if (!(tr.c_tilde() * tr.b_tilde() == Matrix::identity(f, n))) return false;
      }
    }
  return true;
}

bool sparse_matches_dense(Rng& rng) {
  for (unsigned q : {2u, 256u})
    for (int t = 0; t < 30; ++t) {
      const Field f(q);
      const std::size_t n = 2 + rng.below(10);
      Matrix a(f, n + rng.below(3), n);
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (int e = 0; e < 3; ++e) a(i, rng.below(n)) = static_cast<Elem>(rng.below(q));
      const Matrix rhs = random_matrix(f, a.rows(), 1, rng);
      const auto d = solve_dense(a, rhs);
      const auto s = solve_sparse(a, rhs, 3);
      if (d.has_value() != s.has_value()) return false;
      if (d && !(d->x == s->x)) return false;
    }
  return true;
}

bool sa_property(Rng& rng) {
  for (int t = 0; t < 200; ++t) {
    const Field f(rng.below(2) ? 7 : 8);
    const std::size_t k = 1 + rng.below(f.order());
    const std::size_t l = 1 + rng.below(6);
    LinearForms forms{Matrix(f, 0, l)};
    while (forms.coeffs.rows() < k) {
      Vec r = random_vec(f, l, rng);
      if (hamming_weight(r) > 0) forms.coeffs.append_row(r);
    }
    const Vec x = sequential_assignment(forms);
    for (auto v : forms.coeffs.apply(x))
      if (v == 0) return false;
  }
  return true;
}

bool hitting_exact_vs_oracle(Rng& rng) {
  for (int t = 0; t < 100; ++t) {
    HittingInstance inst;
    inst.n = 1 + rng.below(10);
    const std::size_t k = 1 + rng.below(8);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> s;
      for (std::size_t e = 0; e < inst.n; ++e)
        if (rng.below(3) == 0) s.push_back(e);
      if (s.empty()) s.push_back(rng.below(inst.n));
      inst.sets.push_back(s);
    }
    inst.normalize();
    const auto ex = exact_hitting(inst);
    if (!hits_all(inst, ex.elements) || ex.size() != oracle_min_hitting(inst).size()) return false;
  }
  return true;
}

bool oh_gh_vs_brute(Rng& rng) {
  for (int t = 0; t < 40; ++t) {
    const Field f(t % 2 ? 5 : 8);
    const std::size_t n = 2 + rng.below(4);
    const std::size_t k = 1 + rng.below(4);
    const Scenario s = random_scenario(f, n, k, rng);
    const auto omega = brute_force_sparsity(s).omega;
    const Vec oh = oh_generate(s);
    const Vec gh = gh_generate(s);
    if (!innovative_to_all(oh, s) || !innovative_to_all(gh, s)) return false;
    if (hamming_weight(oh) != omega || hamming_weight(gh) < omega) return false;
  }
  return true;
}

bool reductions(Rng& rng) {
  for (unsigned q : {2u, 3u}) {
    const Field f(q);
    if (brute_force_innovative(gen_appendix_a(f, 3))) return false;
    for (int t = 0; t < 20; ++t) {
      const Cnf cnf = random_3cnf(3 + rng.below(4), 1 + rng.below(10), rng);
      const bool sat = brute_force_sat(cnf).has_value();
      if (sat != brute_force_innovative(reduce_3sat(cnf, f).scenario).has_value()) return false;
    }
  }
  return true;
}

}  // namespace

int run_selftest(std::ostream& out) {
  Rng rng(20240601);
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"field axioms q<=16", field_axioms},
      {"GF(256) tables vs carry-less product", gf256_tables},
      {"null space duality", [&] { return null_space_duality(rng); }},
      {"tracker vs batch membership", [&] { return tracker_matches_batch(rng); }},
      {"sparse vs dense solver", [&] { return sparse_matches_dense(rng); }},
      {"sequential assignment", [&] { return sa_property(rng); }},
      {"exact hitting vs oracle", [&] { return hitting_exact_vs_oracle(rng); }},
      {"OH/GH vs brute-force sparsity", [&] { return oh_gh_vs_brute(rng); }},
      {"hard-instance round trips", [&] { return reductions(rng); }},
  };
  int failures = 0;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    failures += !ok;
  }
  return failures;
}

}  // namespace ebc
