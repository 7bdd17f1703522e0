#include <doctest.h>

#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "ebc/codes.hpp"
#include "support.hpp"

using namespace ebc;

namespace {

bool consistent(const EncodedPacket& p, const Matrix& sources) {
  const Field& f = sources.field();
  for (std::size_t s = 0; s < sources.cols(); ++s) {
    Elem acc = 0;
    for (std::size_t i = 0; i < sources.rows(); ++i) acc = f.add(acc, f.mul(p.coeffs[i], sources(i, s)));
    if (acc != p.payload[s]) return false;
  }
  return true;
}

EncodedPacket xor_of(const Matrix& src, std::vector<std::size_t> idx) {
  Vec c(src.rows(), 0);
  for (auto i : idx) c[i] = 1;
  return make_packet(c, src);
}

}  // namespace

TEST_CASE("robust soliton goldens") {
  const RobustSoliton rs(32, 0.1, 0.1);
  CHECK(rs.r() == doctest::Approx(3.263055113749212).epsilon(1e-12));
  CHECK(rs.spike() == 10);
  const auto& mu = rs.pmf();
  CHECK(mu[1] == doctest::Approx(0.08104106869116519).epsilon(1e-12));
  CHECK(mu[2] == doctest::Approx(0.33517695590151475).epsilon(1e-12));
  CHECK(mu[3] == doctest::Approx(0.12206414813015146).epsilon(1e-12));
  CHECK(mu[9] == doctest::Approx(0.015341260425669224).epsilon(1e-12));
  CHECK(mu[10] == doctest::Approx(0.22295254426207325).epsilon(1e-12));
  CHECK(mu[11] == doctest::Approx(0.005530208498410457).epsilon(1e-12));
  CHECK(mu[32] == doctest::Approx(0.000613228764944708).epsilon(1e-12));
}

TEST_CASE("robust soliton normalisation") {
  for (std::size_t n : {1u, 2u, 7u, 32u, 100u, 1000u}) {
    const RobustSoliton rs(n, 0.1, 0.1);
    const double total = std::accumulate(rs.pmf().begin(), rs.pmf().end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : rs.pmf()) CHECK(v >= 0.0);
  }
  CHECK_THROWS_AS(RobustSoliton(0, 0.1, 0.1), BadParams);
  CHECK_THROWS_AS(RobustSoliton(8, 0.0, 0.1), BadParams);
  CHECK_THROWS_AS(RobustSoliton(8, 0.1, 1.0), BadParams);
}

TEST_CASE("LT degree histogram matches the distribution") {
  const std::size_t n = 32;
  const RobustSoliton rs(n, 0.1, 0.1);
  Rng rng(61);
  const Matrix src = random_sources(Field(2), n, 1, rng);
  std::vector<double> count(n + 1, 0.0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto p = lt_encode(src, rs, rng);
    count[hamming_weight(p.coeffs)] += 1;
    if (i < 200) REQUIRE(consistent(p, src));
  }
  // pool sparse tail cells so every expected count is at least 5
  double chi2 = 0, obs = 0, exp = 0;
  int cells = 0;
  for (std::size_t d = 1; d <= n; ++d) {
    obs += count[d];
    exp += rs.pmf()[d] * draws;
    if (exp >= 5 || d == n) {
      chi2 += (obs - exp) * (obs - exp) / exp;
      obs = exp = 0;
      ++cells;
    }
  }
  CHECK(cells > 5);
  const boost::math::chi_squared dist(cells - 1);
  CHECK(chi2 < boost::math::quantile(dist, 0.99));
}

TEST_CASE("forced LT degree") {
  Rng rng(62);
  const Matrix src = random_sources(Field(2), 10, 2, rng);
  const auto p = lt_encode_degree(src, 1, rng);
  CHECK(hamming_weight(p.coeffs) == 1);
  const auto j = support(p.coeffs).front();
  CHECK(p.payload == src.row_vec(j));
  for (std::size_t d = 1; d <= 10; ++d) CHECK(hamming_weight(lt_encode_degree(src, d, rng).coeffs) == d);
}

TEST_CASE("belief propagation") {
  Rng rng(63);
  const Matrix src = random_sources(Field(2), 3, 2, rng);
  std::vector<EncodedPacket> singles;
  for (std::size_t i = 0; i < 3; ++i) singles.push_back(xor_of(src, {i}));
  auto r = lt_bp_decode(singles, 3, 2);
  CHECK(r.complete);
  CHECK(r.sources == src);

  r = lt_bp_decode({xor_of(src, {0}), xor_of(src, {0, 1})}, 3, 2);
  CHECK_FALSE(r.complete);
  CHECK(r.decoded == std::vector<bool>{true, true, false});
  CHECK(r.sources.row_vec(1) == src.row_vec(1));

  r = lt_bp_decode({xor_of(src, {0, 1}), xor_of(src, {1, 2}), xor_of(src, {0, 2})}, 3, 2);
  CHECK_FALSE(r.complete);
  CHECK(r.decoded == std::vector<bool>{false, false, false});
}

TEST_CASE("RLNC weights concentrate") {
  Rng rng(64);
  const Matrix src = random_sources(Field(256), 64, 1, rng);
  double total = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = rlnc_encode(src, rng);
    total += static_cast<double>(hamming_weight(p.coeffs));
    if (i < 100) REQUIRE(consistent(p, src));
  }
  CHECK(total / 10000 == doctest::Approx(64.0 * 255 / 256).epsilon(0.01));

  Rng r2(65);
  const Matrix bin = random_sources(Field(2), 16, 1, r2);
  double ones = 0;
  for (int i = 0; i < 4000; ++i) ones += static_cast<double>(hamming_weight(rlnc_encode(bin, r2).coeffs));
  CHECK(ones / (4000.0 * 16) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("chunked encoder") {
  Rng rng(66);
  const Matrix src = random_sources(Field(256), 32, 1, rng);
  for (int i = 0; i < 10000; ++i) {
    const auto p = chunked_encode(src, 8, rng);
    const auto sup = support(p.coeffs);
    REQUIRE(sup.size() <= 8);
    if (!sup.empty()) REQUIRE(sup.front() / 8 == sup.back() / 8);
    if (i < 100) REQUIRE(consistent(p, src));
  }
  for (int i = 0; i < 100; ++i) CHECK(hamming_weight(chunked_encode(src, 1, rng).coeffs) <= 1);
  CHECK_THROWS_AS(chunked_encode(src, 5, rng), BadParams);
}

TEST_CASE("encoders are deterministic given the stream") {
  Rng a(67), b(67);
  const Matrix src = random_sources(Field(256), 16, 1, a);
  random_sources(Field(256), 16, 1, b);
  CHECK(rlnc_encode(src, a).coeffs == rlnc_encode(src, b).coeffs);
  CHECK(chunked_encode(src, 4, a).coeffs == chunked_encode(src, 4, b).coeffs);
}

TEST_CASE("IDNC maximum weight vertex search") {
  Rng rng(68);
  const Matrix src = random_sources(Field(2), 2, 1, rng);
  auto p = idnc_mwvs_encode({{true, false}}, {0.3}, src);
  CHECK(p.coeffs == Vec{0, 1});

  // each user holds what the other wants
  p = idnc_mwvs_encode({{true, false}, {false, true}}, {0.3, 0.3}, src);
  CHECK(p.coeffs == Vec{1, 1});
  CHECK(consistent(p, src));

  CHECK_THROWS_AS(idnc_mwvs_encode({{true, true}}, {0.3}, src), BadParams);

  Rng r2(69);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + r2.below(10), k = 1 + r2.below(8);
    const Matrix s = random_sources(Field(2), n, 1, r2);
    std::vector<std::vector<bool>> has(k, std::vector<bool>(n));
    std::vector<double> pe(k, 0.3);
    bool any = false;
    for (auto& h : has)
      for (std::size_t j = 0; j < n; ++j) {
        h[j] = r2.below(2);
        any |= !h[j];
      }
    if (!any) continue;
    const auto pk = idnc_mwvs_encode(has, pe, s);
    REQUIRE(hamming_weight(pk.coeffs) <= std::min(k, n));
    REQUIRE(hamming_weight(pk.coeffs) >= 1);
    // at least one user decodes a packet it wants from it
    bool helps = false;
    for (const auto& h : has) {
      std::size_t unknown = 0;
      for (auto j : support(pk.coeffs)) unknown += !h[j];
      helps |= unknown == 1;
    }
    REQUIRE(helps);
  }
}

TEST_CASE("Gaussian and sparse decoding") {
  Rng rng(70);
  const Field f(256);
  const Matrix src = random_sources(f, 12, 3, rng);
  std::vector<EncodedPacket> rx;
  for (int i = 0; i < 12; ++i) rx.push_back(rlnc_encode(src, rng));
  const auto full = ge_decode(f, rx, 12, 3);
  REQUIRE(rank(test::rows_of(f, 12, [&] {
            std::vector<Vec> v;
            for (const auto& p : rx) v.push_back(p.coeffs);
            return v;
          }())) == 12);
  CHECK(full.complete);
  CHECK(full.sources == src);
  rx.pop_back();
  CHECK_FALSE(ge_decode(f, rx, 12, 3).complete);

  for (int t = 0; t < 200; ++t) {
    const Field g(t % 2 ? 2 : 256);
    const std::size_t n = 2 + rng.below(10);
    const Matrix s = random_sources(g, n, 1, rng);
    std::vector<EncodedPacket> pk;
    const std::size_t m = n - 1 + rng.below(4);
    for (std::size_t i = 0; i < m; ++i) pk.push_back(rng.below(3) == 0 ? rlnc_encode(s, rng) : chunked_encode(s, 1, rng));
    for (std::size_t i = 0; i < n / 2; ++i) pk.push_back(make_packet([&] {
                                                      Vec c(n, 0);
                                                      c[rng.below(n)] = 1;
                                                      c[rng.below(n)] = 1;
                                                      return c;
                                                    }(), s));
    std::size_t w = 1;
    for (const auto& p : pk) w = std::max(w, hamming_weight(p.coeffs));
    const auto d = ge_decode(g, pk, n, 1);
    const auto sp = sparse_decode(g, pk, n, 1, w);
    REQUIRE(d.complete == sp.complete);
    if (d.complete) {
      REQUIRE(d.sources == s);
      REQUIRE(sp.sources == s);
    }
  }
}
