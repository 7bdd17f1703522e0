#include "ebc/codes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace ebc {

Matrix random_sources(const Field& field, std::size_t n, std::size_t len, Rng& rng) {
  Matrix s(field, n, len);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < len; ++j) s(i, j) = static_cast<Elem>(rng.below(field.order()));
  return s;
}

EncodedPacket make_packet(Vec coeffs, const Matrix& sources) {
  if (coeffs.size() != sources.rows()) throw DimensionMismatch("encoding vector length differs from N");
  const Field& f = sources.field();
  Vec payload(sources.cols(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < payload.size(); ++j) payload[j] = f.mul_add(payload[j], coeffs[i], sources(i, j));
  }
  return {std::move(coeffs), std::move(payload)};
}

RobustSoliton::RobustSoliton(std::size_t n, double c, double delta) : n_(n) {
  if (n < 1 || !(c > 0) || !(delta > 0 && delta < 1)) throw BadParams("robust soliton needs N >= 1, c > 0, 0 < delta < 1");
  const double nd = static_cast<double>(n);
  r_ = c * std::log(nd / delta) * std::sqrt(nd);
  if (!(r_ > 0)) throw BadParams("robust soliton parameter R is not positive");
  spike_ = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(nd / r_)));
  spike_ = std::max<std::size_t>(spike_, 1);

  pmf_.assign(n + 1, 0.0);
  for (std::size_t d = 1; d <= n; ++d) {
    const double dd = static_cast<double>(d);
    const double rho = d == 1 ? 1.0 / nd : 1.0 / (dd * (dd - 1.0));
    double tau = 0.0;
    if (d < spike_)
      tau = r_ / (dd * nd);
    else if (d == spike_)
      tau = std::max(0.0, r_ * std::log(r_ / delta) / nd);
    pmf_[d] = rho + tau;
  }
  const double beta = std::accumulate(pmf_.begin(), pmf_.end(), 0.0);
  cdf_.assign(n + 1, 0.0);
  for (std::size_t d = 1; d <= n; ++d) {
    pmf_[d] /= beta;
    cdf_[d] = cdf_[d - 1] + pmf_[d];
  }
  cdf_[n] = 1.0;
}

std::size_t RobustSoliton::sample(Rng& rng) const {
  const double u = rng.unit();
  const auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), u);
  return std::min<std::size_t>(n_, static_cast<std::size_t>(it - cdf_.begin()));
}

EncodedPacket lt_encode_degree(const Matrix& sources, std::size_t degree, Rng& rng) {
  const std::size_t n = sources.rows();
  if (degree < 1 || degree > n) throw BadParams("LT degree out of range");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Vec coeffs(n, 0);
  for (std::size_t i = 0; i < degree; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
    coeffs[idx[i]] = 1;
  }
  return make_packet(std::move(coeffs), sources);
}

EncodedPacket lt_encode(const Matrix& sources, const RobustSoliton& dist, Rng& rng) {
  if (sources.field().order() != 2) throw BadParams("LT coding is defined over GF(2)");
  return lt_encode_degree(sources, dist.sample(rng), rng);
}

EncodedPacket rlnc_encode(const Matrix& sources, Rng& rng) {
  const unsigned q = sources.field().order();
  Vec coeffs(sources.rows());
  for (auto& c : coeffs) c = static_cast<Elem>(rng.below(q));
  return make_packet(std::move(coeffs), sources);
}

EncodedPacket chunked_encode(const Matrix& sources, std::size_t c, Rng& rng) {
  const std::size_t n = sources.rows();
  if (c == 0 || n % c != 0)
    throw BadParams("chunk size " + std::to_string(c) + " does not divide N = " + std::to_string(n));
  const unsigned q = sources.field().order();
  const std::size_t chunk = static_cast<std::size_t>(rng.below(n / c));
  Vec coeffs(n, 0);
  for (std::size_t i = chunk * c; i < (chunk + 1) * c; ++i) coeffs[i] = static_cast<Elem>(rng.below(q));
  return make_packet(std::move(coeffs), sources);
}

EncodedPacket idnc_mwvs_encode(const std::vector<std::vector<bool>>& has, const std::vector<double>& p,
                               const Matrix& sources) {
  const std::size_t n = sources.rows();
  if (has.size() != p.size()) throw DimensionMismatch("one erasure probability per user expected");

  struct Vertex {
    std::size_t user;
    std::size_t packet;
  };
  std::vector<Vertex> verts;
  std::vector<double> t(has.size(), 0.0);
  for (std::size_t i = 0; i < has.size(); ++i) {
    if (has[i].size() != n) throw DimensionMismatch("reception map length differs from N");
    const auto missing = static_cast<std::size_t>(std::count(has[i].begin(), has[i].end(), false));
    t[i] = static_cast<double>(missing) / (1.0 - p[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (!has[i][j]) verts.push_back({i, j});
  }
  if (verts.empty()) throw BadParams("no user is missing a packet");

  const std::size_t nv = verts.size();
  std::vector<std::uint8_t> adj(nv * nv, 0);
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = a + 1; b < nv; ++b) {
      const auto& u = verts[a];
      const auto& v = verts[b];
      if (u.user == v.user) continue;
      const bool link = u.packet == v.packet || (has[u.user][v.packet] && has[v.user][u.packet]);
      adj[a * nv + b] = adj[b * nv + a] = link;
    }

  std::vector<std::size_t> cand(nv);
  std::iota(cand.begin(), cand.end(), std::size_t{0});
  std::vector<bool> in_packet(n, false);
  while (!cand.empty()) {
    std::size_t best = cand.front();
    double best_w = -1.0;
    for (auto a : cand) {
      double s = 0.0;
      for (auto b : cand)
        if (adj[a * nv + b]) s += t[verts[b].user];
      const double w = t[verts[a].user] * s;
      if (w > best_w) {
        best_w = w;
        best = a;
      }
    }
    in_packet[verts[best].packet] = true;
    std::erase_if(cand, [&](std::size_t b) { return b == best || !adj[best * nv + b]; });
  }

  Vec coeffs(n, 0);
  for (std::size_t j = 0; j < n; ++j) coeffs[j] = in_packet[j];
  return make_packet(std::move(coeffs), sources);
}

DecodeResult lt_bp_decode(const std::vector<EncodedPacket>& received, std::size_t n, std::size_t len) {
  const Field gf2;
  DecodeResult res{false, Matrix(gf2, n, len), std::vector<bool>(n, false)};
  std::vector<Vec> coeffs;
  std::vector<Vec> payloads;
  std::vector<std::size_t> degree;
  std::vector<std::vector<std::size_t>> holders(n);
  std::deque<std::size_t> ready;
  for (const auto& pk : received) {
    if (pk.coeffs.size() != n || pk.payload.size() != len) throw DimensionMismatch("packet shape differs from N/len");
    const std::size_t id = coeffs.size();
    coeffs.push_back(pk.coeffs);
    payloads.push_back(pk.payload);
    degree.push_back(hamming_weight(pk.coeffs));
    for (std::size_t j = 0; j < n; ++j)
      if (pk.coeffs[j]) holders[j].push_back(id);
    if (degree.back() == 1) ready.push_back(id);
  }

  std::size_t found = 0;
  while (!ready.empty() && found < n) {
    const std::size_t id = ready.front();
    ready.pop_front();
    if (degree[id] != 1) continue;
    const auto j = static_cast<std::size_t>(
        std::find_if(coeffs[id].begin(), coeffs[id].end(), [](Elem v) { return v != 0; }) - coeffs[id].begin());
    if (res.decoded[j]) continue;
    res.decoded[j] = true;
    ++found;
    std::copy(payloads[id].begin(), payloads[id].end(), res.sources.row(j).begin());
    for (auto other : holders[j]) {
      if (other == id || coeffs[other][j] == 0) continue;
      coeffs[other][j] = 0;
      for (std::size_t s = 0; s < len; ++s) payloads[other][s] = gf2.sub(payloads[other][s], res.sources(j, s));
      if (--degree[other] == 1) ready.push_back(other);
    }
    coeffs[id][j] = 0;
    degree[id] = 0;
  }
  res.complete = found == n;
  return res;
}

namespace {

DecodeResult from_solution(const Field& field, std::size_t n, std::size_t len,
                           const std::optional<LinearSolution>& sol) {
  DecodeResult res{false, Matrix(field, n, len), std::vector<bool>(n, false)};
  if (!sol || sol->rank < n) return res;
  res.complete = true;
  res.sources = sol->x;
  res.decoded.assign(n, true);
  return res;
}

void stack(const Field& field, const std::vector<EncodedPacket>& received, std::size_t n, std::size_t len, Matrix& a,
           Matrix& b) {
  a = Matrix(field, 0, n);
  b = Matrix(field, 0, len);
  for (const auto& pk : received) {
    a.append_row(pk.coeffs);
    b.append_row(pk.payload);
  }
}

}  // namespace

DecodeResult ge_decode(const Field& field, const std::vector<EncodedPacket>& received, std::size_t n,
                       std::size_t len) {
  Matrix a, b;
  stack(field, received, n, len, a, b);
  return from_solution(field, n, len, solve_dense(a, b));
}

DecodeResult sparse_decode(const Field& field, const std::vector<EncodedPacket>& received, std::size_t n,
                           std::size_t len, std::size_t w) {
  Matrix a, b;
  stack(field, received, n, len, a, b);
  return from_solution(field, n, len, solve_sparse(a, b, w));
}

}  // namespace ebc
