#include "ebc/innovate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ebc {

namespace {

bool nonzero_product(const Matrix& b, std::span<const Elem> x) {
  const Field& f = b.field();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (x[j] != 0 && b(i, j) != 0) acc = f.add(acc, f.mul(x[j], b(i, j)));
    if (acc != 0) return true;
  }
  return false;
}

void check_length(std::span<const Elem> x, const Scenario& s) {
  if (x.size() != s.n)
    throw DimensionMismatch("vector of length " + std::to_string(x.size()) + " for N = " + std::to_string(s.n));
}

}  // namespace

std::vector<bool> is_innovative(std::span<const Elem> x, const Scenario& s) {
  check_length(x, s);
  std::vector<bool> flags;
  for (const auto& u : s.users) flags.push_back(nonzero_product(u.basis(), x));
  return flags;
}

std::vector<bool> is_innovative_rank(std::span<const Elem> x, const Scenario& s) {
  check_length(x, s);
  std::vector<bool> flags;
  for (const auto& u : s.users) flags.push_back(!in_row_space(x, u.received()));
  return flags;
}

std::size_t innovative_count(std::span<const Elem> x, const Scenario& s) {
  const auto flags = is_innovative(x, s);
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

bool innovative_to_all(std::span<const Elem> x, const Scenario& s) { return innovative_count(x, s) == s.k(); }

Vec sequential_assignment(const LinearForms& forms) {
  forms.validate();
  const Matrix& a = forms.coeffs;
  const Field& f = a.field();
  const std::size_t k = forms.k();
  const std::size_t l = forms.l();
  if (k > f.order())
    throw TooManyForms(std::to_string(k) + " forms exceed field order " + std::to_string(f.order()));

  Vec x(l, 0);
  for (std::size_t col = 0; col < l; ++col) {
    std::size_t nz = 0;
    for (std::size_t i = 0; i < k; ++i) nz += a(i, col) != 0;
    if (nz == k) {
      x[col] = 1;
      return x;
    }
  }

  Vec partial(k, 0);
  for (std::size_t t = 0; t < l; ++t) {
    bool placed = false;
    for (unsigned v = 0; v < f.order() && !placed; ++v) {
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i)
        if (a(i, t) != 0) ok = f.mul_add(partial[i], a(i, t), static_cast<Elem>(v)) != 0;
      if (!ok) continue;
      x[t] = static_cast<Elem>(v);
      if (v != 0)
        for (std::size_t i = 0; i < k; ++i)
          if (a(i, t) != 0) partial[i] = f.mul_add(partial[i], a(i, t), x[t]);
      placed = true;
    }
    if (!placed) throw EmptyInnovativeSet();
  }
  return x;
}

Matrix rows_meeting(const Scenario& s, const std::vector<std::size_t>& support) {
  Matrix out(s.field, 0, s.n);
  for (std::size_t k = 0; k < s.k(); ++k) {
    const Matrix& b = s.users[k].basis();
    std::size_t i = 0;
    for (; i < b.rows(); ++i)
      if (std::any_of(support.begin(), support.end(), [&](std::size_t j) { return b(i, j) != 0; })) break;
    if (i == b.rows())
      throw BadParams("no basis row of user " + std::to_string(k + 1) + " meets the chosen support");
    out.append_row(b.row(i));
  }
  return out;
}

namespace {

Vec assign_on_support(const Scenario& s, const std::vector<std::size_t>& support) {
  const Matrix bhat = rows_meeting(s, support);
  LinearForms forms{bhat.select_columns(support)};
  const Vec y = sequential_assignment(forms);
  Vec x(s.n, 0);
  for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = y[i];
  return x;
}

}  // namespace

Vec oh_generate(const Scenario& s, std::uint64_t budget) {
  if (s.k() == 0) return Vec(s.n, 0);
  return assign_on_support(s, exact_hitting(instance_from_scenario(s), budget).elements);
}

Vec gh_generate(const Scenario& s) {
  if (s.k() == 0) return Vec(s.n, 0);
  return assign_on_support(s, greedy_hitting(instance_from_scenario(s)).elements);
}

Vec sbes(const Matrix& bhat, const std::vector<std::size_t>& support) {
  if (support.empty()) throw EmptySupport();
  const Field& f = bhat.field();
  const std::size_t m = support.size();

  // Restrict to the support and append the all-one right-hand side.
  Matrix q(f, bhat.rows(), m + 1);
  for (std::size_t i = 0; i < bhat.rows(); ++i) {
    for (std::size_t j = 0; j < m; ++j) q(i, j) = bhat(i, support[j]);
    q(i, m) = 1;
  }

  // Forward elimination; pivot row is the lowest-index candidate.
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < q.rows(); ++c) {
    std::size_t p = r;
    while (p < q.rows() && q(p, c) == 0) ++p;
    if (p == q.rows()) continue;
    q.swap_rows(r, p);
    const Elem scale = f.inv(q(r, c));
    if (scale != 1)
      for (std::size_t j = c; j <= m; ++j) q(r, j) = f.mul(scale, q(r, j));
    for (std::size_t i = r + 1; i < q.rows(); ++i) {
      const Elem factor = q(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j <= m; ++j) q(i, j) = f.sub(q(i, j), f.mul(factor, q(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  // Rows past the last pivot are zero or read 0 = c; drop them.
  q.truncate_rows(r);

  // Back substitution to reduced form.
  for (std::size_t pr = r; pr-- > 0;) {
    const std::size_t c = pivots[pr];
    for (std::size_t i = 0; i < pr; ++i) {
      const Elem factor = q(i, c);
      if (factor == 0) continue;
      for (std::size_t j = c; j <= m; ++j) q(i, j) = f.sub(q(i, j), f.mul(factor, q(pr, j)));
    }
  }

  Vec x(bhat.cols(), 0);
  for (std::size_t i = 0; i < r; ++i) x[support[pivots[i]]] = q(i, m);
  return x;
}

Vec gh_sbes(const Scenario& s) {
  if (s.k() == 0) return Vec(s.n, 0);
  const auto h = greedy_hitting(instance_from_scenario(s)).elements;
  return sbes(rows_meeting(s, h), h);
}

Vec fh_sbes(const Scenario& s) {
  if (s.k() == 0) return Vec(s.n, 0);
  std::vector<std::size_t> all(s.n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return sbes(rows_meeting(s, all), all);
}

namespace {

constexpr double kEnumerationLimit = 1e7;

bool innovative_for_all(const Scenario& s, std::span<const Elem> x) {
  for (const auto& u : s.users)
    if (!nonzero_product(u.basis(), x)) return false;
  return true;
}

}  // namespace

std::optional<Vec> brute_force_innovative(const Scenario& s) {
  const double total = std::pow(static_cast<double>(s.field.order()), static_cast<double>(s.n));
  if (total > kEnumerationLimit)
    throw TooLarge("q^N = " + std::to_string(total) + " exceeds the enumeration limit");
  Vec x(s.n, 0);
  const Elem top = static_cast<Elem>(s.field.order() - 1);
  while (true) {
    if (innovative_for_all(s, x)) return x;
    // Increment with x_N varying fastest.
    std::size_t i = s.n;
    while (i > 0 && x[i - 1] == top) x[--i] = 0;
    if (i == 0) return std::nullopt;
    ++x[i - 1];
  }
}

SparsityResult brute_force_sparsity(const Scenario& s) {
  const unsigned q = s.field.order();
  const std::size_t n = s.n;
  const std::size_t max_w = q >= s.k() ? std::min(n, s.k()) : n;
  double candidates = 0;
  double binom = 1;
  for (std::size_t w = 1; w <= max_w; ++w) {
    binom = binom * static_cast<double>(n - w + 1) / static_cast<double>(w);
    candidates += binom * std::pow(q - 1.0, static_cast<double>(w));
  }
  if (candidates > kEnumerationLimit)
    throw TooLarge(std::to_string(candidates) + " candidate vectors exceed the enumeration limit");

  if (s.k() == 0) return {0, Vec(n, 0)};

  for (std::size_t w = 1; w <= n; ++w) {
    std::vector<std::size_t> comb(w);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    while (true) {
      std::vector<Elem> vals(w, 1);
      while (true) {
        Vec x(n, 0);
        for (std::size_t i = 0; i < w; ++i) x[comb[i]] = vals[i];
        if (innovative_for_all(s, x)) return {w, std::move(x)};
        std::size_t i = w;
        while (i > 0 && vals[i - 1] == q - 1) vals[--i] = 1;
        if (i == 0) break;
        ++vals[i - 1];
      }
      std::size_t i = w;
      while (i > 0 && comb[i - 1] == n - w + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < w; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  throw EmptyInnovativeSet();
}

}  // namespace ebc
