#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ebc/codes.hpp"
#include "ebc/hitting.hpp"
#include "ebc/null_tracker.hpp"
#include "ebc/op_count.hpp"

namespace ebc {

enum class Scheme { Lt, Rlnc, Chunked, Idnc, Oh, Gh, GhSbes, FhSbes };

// CLI names: lt, rlnc, chunked, idnc, oh, gh, gh-sbes, fh-sbes.
Scheme parse_scheme(std::string_view name);
std::string scheme_name(Scheme s);
// LT and IDNC work over GF(2) whatever field is configured.
bool binary_only(Scheme s);
// Schemes whose sender consumes per-slot feedback rather than final ACKs.
bool uses_slot_feedback(Scheme s);

// Receiver side of one user.
class Receiver {
 public:
  virtual ~Receiver() = default;

  // Returns true when the packet increased what the user knows.
  virtual bool receive(const EncodedPacket& p) = 0;
  virtual bool is_innovative(std::span<const Elem> coeffs) const = 0;
  virtual bool complete() const = 0;
  // Rank of the received vectors, or number of decoded packets for IDNC.
  virtual std::size_t knowledge() const = 0;
  // Recovers the sources from everything kept.
  virtual DecodeResult decode() const = 0;
  // Decoding work already spent while receiving (instant decoding).
  OpCounts receive_decode_ops() const noexcept { return receive_ops_; }

  // Cumulative feedback summaries. Linear receivers expose their kept
  // encoding vectors in arrival order, IDNC receivers their held packets.
  virtual const Matrix* rows() const { return nullptr; }
  virtual const std::vector<bool>* held() const { return nullptr; }

 protected:
  OpCounts receive_ops_;
};

// Keeps innovative packets only. Final decoding is dense elimination,
// per-chunk elimination (chunk > 0) or the sparse solver.
class LinearReceiver : public Receiver {
 public:
  enum class Decode { Dense, Chunked, Sparse };
  LinearReceiver(Field field, std::size_t n, std::size_t len, Decode mode, std::size_t chunk = 0);

  bool receive(const EncodedPacket& p) override;
  bool is_innovative(std::span<const Elem> coeffs) const override { return tracker_.is_innovative(coeffs); }
  bool complete() const override { return tracker_.complete(); }
  std::size_t knowledge() const override { return tracker_.rank(); }
  DecodeResult decode() const override;
  const Matrix* rows() const override { return &tracker_.received(); }

 private:
  Field field_;
  std::size_t n_, len_;
  Decode mode_;
  std::size_t chunk_;
  NullTracker tracker_;
  std::vector<EncodedPacket> kept_;
};

// Stores every LT packet and peels incrementally on supports to detect
// completion; decode() reruns belief propagation on the payloads.
class LtReceiver : public Receiver {
 public:
  LtReceiver(std::size_t n, std::size_t len);

  bool receive(const EncodedPacket& p) override;
  bool is_innovative(std::span<const Elem> coeffs) const override { return tracker_.is_innovative(coeffs); }
  bool complete() const override { return decoded_count_ == n_; }
  std::size_t knowledge() const override { return tracker_.rank(); }
  DecodeResult decode() const override { return lt_bp_decode(kept_, n_, len_); }

 private:
  void resolve(std::size_t j);

  std::size_t n_, len_;
  NullTracker tracker_;
  std::vector<EncodedPacket> kept_;
  std::vector<std::vector<std::size_t>> pending_;  // unknown indices per packet
  std::vector<std::vector<std::size_t>> holders_;  // packets waiting on index j
  std::vector<bool> decoded_;
  std::size_t decoded_count_ = 0;
};

// Instant decoding: a packet is used only when exactly one of its sources is
// unknown, otherwise dropped.
class IdncReceiver : public Receiver {
 public:
  IdncReceiver(std::size_t n, std::size_t len);

  bool receive(const EncodedPacket& p) override;
  bool is_innovative(std::span<const Elem> coeffs) const override;
  bool complete() const override { return count_ == n_; }
  std::size_t knowledge() const override { return count_; }
  DecodeResult decode() const override;
  const std::vector<bool>* held() const override { return &held_; }

 private:
  Field gf2_;
  std::size_t n_, len_;
  std::vector<bool> held_;
  Matrix payloads_;
  std::size_t count_ = 0;
};

// Sender side.
class Sender {
 public:
  virtual ~Sender() = default;
  virtual EncodedPacket next(Rng& rng) = 0;
  // Applies a cumulative summary; returns how many new rows or packets the
  // sender learned from it.
  virtual std::size_t on_feedback(std::size_t /*user*/, const Receiver& /*r*/) { return 0; }
  // Reliable decoded-ACK.
  virtual void on_finished(std::size_t /*user*/) {}
};

struct SenderParams {
  std::size_t k = 1;
  std::size_t chunk = 8;
  double lt_c = 0.1;
  double lt_delta = 0.1;
  std::vector<double> pe;  // per user, used by IDNC weights
  std::uint64_t hitting_budget = kDefaultHittingBudget;
};

std::unique_ptr<Sender> make_sender(Scheme s, const Matrix& sources, const SenderParams& params);
std::unique_ptr<Receiver> make_receiver(Scheme s, const Field& field, std::size_t n, std::size_t len,
                                        std::size_t chunk);

}  // namespace ebc
