#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ebc/hitting.hpp"
#include "ebc/op_count.hpp"
#include "ebc/schemes.hpp"

namespace ebc {

class Unreachable : public Error {
 public:
  using Error::Error;
};

struct SimConfig {
  std::size_t n = 32;
  std::size_t k = 40;
  unsigned q = 256;
  unsigned poly = 0;
  Scheme scheme = Scheme::Gh;
  std::vector<double> pe{0.3};  // one value for all users, or one per user
  double pe_up = 0.0;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  std::size_t payload_len = 1;
  std::size_t chunk_size = 8;
  double lt_c = 0.1;
  double lt_delta = 0.1;
  std::size_t max_slots = 0;  // 0 selects 50·N
  std::uint64_t hitting_budget = kDefaultHittingBudget;

  double pe_of(std::size_t user) const { return pe.size() == 1 ? pe.front() : pe.at(user); }
  // The field the scheme actually codes over.
  Field field() const;
  std::size_t slot_limit() const noexcept { return max_slots == 0 ? 50 * n : max_slots; }
  // Throws BadParams on any violated constraint.
  void validate() const;
};

// Erasure indicators for downlink and uplink. Seeded realizations hash
// (seed, slot, user), so two schemes run with the same seed see the same
// channel.
class ChannelRealization {
 public:
  ChannelRealization(std::uint64_t seed, std::vector<double> pe, double pe_up);
  // down[user][slot-1] tells whether the packet of that slot arrives; slots
  // past the end of a row arrive. The uplink is lossless unless `up` is
  // given in the same layout.
  static ChannelRealization from_pattern(std::vector<std::vector<bool>> down,
                                         std::vector<std::vector<bool>> up = {});

  bool downlink(std::size_t slot, std::size_t user) const;
  bool uplink(std::size_t slot, std::size_t user) const;

 private:
  ChannelRealization() = default;

  std::uint64_t seed_ = 0;
  std::vector<double> pe_;
  double pe_up_ = 0.0;
  std::optional<std::vector<std::vector<bool>>> down_;
  std::optional<std::vector<std::vector<bool>>> up_;
};

struct LowerBound {
  std::vector<std::size_t> per_user;  // min{τ : N_k(τ) = N}
  std::size_t overall = 0;
};

// Throws Unreachable when some user does not collect N packets within
// max_slots.
LowerBound lower_bound_of(const ChannelRealization& ch, std::size_t n, std::size_t k, std::size_t max_slots);

struct TrialMetrics {
  std::uint64_t seed = 0;
  std::size_t completion_time = 0;
  std::size_t lower_bound = 0;
  std::size_t slots_phase2 = 0;
  std::vector<std::size_t> user_delay;
  std::vector<std::size_t> user_bound;
  std::vector<std::size_t> weights;          // per phase-2 slot
  std::vector<std::size_t> innovative_hist;  // [c] = phase-2 packets innovative to c unfinished users
  std::size_t innovative_hits = 0;           // Σ innovative users over phase-2 slots
  std::size_t innovative_targets = 0;        // Σ unfinished users over phase-2 slots
  bool all_innovative = true;                // every phase-2 packet innovative to all unfinished users
  OpCounts encode_ops;
  OpCounts decode_ops;
  std::size_t resync_events = 0;
  bool max_slots_exceeded = false;

  double mean_weight() const;
  std::size_t max_weight() const;
  double innovative_frac() const;
};

TrialMetrics run_trial(const SimConfig& cfg, std::uint64_t trial_seed);
TrialMetrics run_trial(const SimConfig& cfg, std::uint64_t trial_seed, const ChannelRealization& channel);

}  // namespace ebc
