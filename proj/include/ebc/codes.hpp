#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ebc/matrix.hpp"
#include "ebc/rng.hpp"

namespace ebc {

struct EncodedPacket {
  Vec coeffs;   // encoding vector, length N
  Vec payload;  // Σ coeffs_i · P_i
};

// N source packets of `len` uniform symbols each, one per row.
Matrix random_sources(const Field& field, std::size_t n, std::size_t len, Rng& rng);

// Computes the payload of the given encoding vector.
EncodedPacket make_packet(Vec coeffs, const Matrix& sources);

class RobustSoliton {
 public:
  // R = c·ln(N/δ)·√N; ρ(1) = 1/N, ρ(d) = 1/(d(d-1)); τ(d) = R/(dN) below
  // ⌈N/R⌉ and R·ln(R/δ)/N at ⌈N/R⌉ (index clamped to N, value to >= 0).
  // Throws BadParams unless N >= 1, c > 0 and 0 < δ < 1.
  RobustSoliton(std::size_t n, double c, double delta);

  std::size_t n() const noexcept { return n_; }
  double r() const noexcept { return r_; }
  std::size_t spike() const noexcept { return spike_; }
  // pmf()[d] for d = 1..N; index 0 is unused and zero.
  const std::vector<double>& pmf() const noexcept { return pmf_; }
  const std::vector<double>& cdf() const noexcept { return cdf_; }

  std::size_t sample(Rng& rng) const;

 private:
  std::size_t n_;
  double r_;
  std::size_t spike_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

// GF(2) packet over d distinct uniformly chosen sources, d ~ μ.
EncodedPacket lt_encode(const Matrix& sources, const RobustSoliton& dist, Rng& rng);
EncodedPacket lt_encode_degree(const Matrix& sources, std::size_t degree, Rng& rng);

// Coefficients i.i.d. uniform over the field, zero included.
EncodedPacket rlnc_encode(const Matrix& sources, Rng& rng);
// A uniformly chosen chunk of c consecutive sources, uniform coefficients
// inside it. Throws BadParams unless c divides N.
EncodedPacket chunked_encode(const Matrix& sources, std::size_t c, Rng& rng);

// Maximum weight vertex search over the IDNC graph. has[i][j] tells whether
// user i holds packet j; users holding everything are ignored. p[i] is the
// erasure probability towards user i. Throws BadParams when nobody misses a
// packet.
EncodedPacket idnc_mwvs_encode(const std::vector<std::vector<bool>>& has, const std::vector<double>& p,
                               const Matrix& sources);

struct DecodeResult {
  bool complete = false;
  Matrix sources;             // N × len; rows of undecoded packets are zero
  std::vector<bool> decoded;  // which sources are known
};

// Peeling decoder over GF(2): repeatedly resolve a degree-one packet and
// subtract it everywhere else.
DecodeResult lt_bp_decode(const std::vector<EncodedPacket>& received, std::size_t n, std::size_t len);

// Gaussian elimination on the stacked packets; incomplete iff rank < N.
DecodeResult ge_decode(const Field& field, const std::vector<EncodedPacket>& received, std::size_t n,
                       std::size_t len);
// Same through the sparsity-aware solver; w bounds the packet weights.
DecodeResult sparse_decode(const Field& field, const std::vector<EncodedPacket>& received, std::size_t n,
                           std::size_t len, std::size_t w);

}  // namespace ebc
