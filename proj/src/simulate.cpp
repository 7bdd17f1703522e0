#include "ebc/simulate.hpp"

#include <algorithm>
#include <numeric>

namespace ebc {

namespace {

enum Stream : std::uint64_t { kDownlink = 1, kUplink = 2, kSources = 3, kEncoder = 4 };

}  // namespace

Field SimConfig::field() const { return binary_only(scheme) ? Field() : Field(q, poly); }

void SimConfig::validate() const {
  if (n == 0 || k == 0) throw BadParams("N and K must be positive");
  if (pe.size() != 1 && pe.size() != k)
    throw BadParams("pe must hold one value or K = " + std::to_string(k) + " values");
  for (double p : pe)
    if (!(p >= 0.0 && p < 1.0)) throw BadParams("erasure probability must lie in [0, 1)");
  if (!(pe_up >= 0.0 && pe_up < 1.0)) throw BadParams("uplink erasure probability must lie in [0, 1)");
  if (payload_len == 0) throw BadParams("payload length must be positive");
  if (slot_limit() < n) throw BadParams("max_slots must be at least N");
  if (scheme == Scheme::Chunked && (chunk_size == 0 || n % chunk_size != 0))
    throw BadParams("chunk size " + std::to_string(chunk_size) + " does not divide N = " + std::to_string(n));
  const Field f = field();
  if ((scheme == Scheme::Oh || scheme == Scheme::Gh) && f.order() < k)
    throw BadParams(scheme_name(scheme) + " needs q >= K (q = " + std::to_string(f.order()) +
                    ", K = " + std::to_string(k) + ")");
  if (scheme == Scheme::Lt) RobustSoliton(n, lt_c, lt_delta);
}

ChannelRealization::ChannelRealization(std::uint64_t seed, std::vector<double> pe, double pe_up)
    : seed_(seed), pe_(std::move(pe)), pe_up_(pe_up) {}

ChannelRealization ChannelRealization::from_pattern(std::vector<std::vector<bool>> down,
                                                    std::vector<std::vector<bool>> up) {
  ChannelRealization ch;
  ch.down_ = std::move(down);
  if (!up.empty()) ch.up_ = std::move(up);
  return ch;
}

bool ChannelRealization::downlink(std::size_t slot, std::size_t user) const {
  if (down_) {
    const auto& row = down_->at(user);
    return slot > row.size() || row[slot - 1];
  }
  const double p = pe_.size() == 1 ? pe_.front() : pe_.at(user);
  return to_unit(hash_key(seed_, kDownlink, slot, user)) >= p;
}

bool ChannelRealization::uplink(std::size_t slot, std::size_t user) const {
  if (down_) {
    if (!up_) return true;
    const auto& row = up_->at(user);
    return slot > row.size() || row[slot - 1];
  }
  return to_unit(hash_key(seed_, kUplink, slot, user)) >= pe_up_;
}

LowerBound lower_bound_of(const ChannelRealization& ch, std::size_t n, std::size_t k, std::size_t max_slots) {
  LowerBound lb;
  for (std::size_t user = 0; user < k; ++user) {
    std::size_t got = 0;
    std::size_t slot = 0;
    while (got < n && slot < max_slots) got += ch.downlink(++slot, user);
    if (got < n)
      throw Unreachable("user " + std::to_string(user + 1) + " collects only " + std::to_string(got) +
                        " packets within " + std::to_string(max_slots) + " slots");
    lb.per_user.push_back(slot);
    lb.overall = std::max(lb.overall, slot);
  }
  return lb;
}

double TrialMetrics::mean_weight() const {
  if (weights.empty()) return 0.0;
  return static_cast<double>(std::accumulate(weights.begin(), weights.end(), std::size_t{0})) /
         static_cast<double>(weights.size());
}

std::size_t TrialMetrics::max_weight() const {
  return weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
}

double TrialMetrics::innovative_frac() const {
  if (innovative_targets == 0) return 1.0;
  return static_cast<double>(innovative_hits) / static_cast<double>(innovative_targets);
}

TrialMetrics run_trial(const SimConfig& cfg, std::uint64_t trial_seed) {
  std::vector<double> pe(cfg.k);
  for (std::size_t i = 0; i < cfg.k; ++i) pe[i] = cfg.pe_of(i);
  return run_trial(cfg, trial_seed, ChannelRealization(trial_seed, pe, cfg.pe_up));
}

TrialMetrics run_trial(const SimConfig& cfg, std::uint64_t trial_seed, const ChannelRealization& channel) {
  cfg.validate();
  const Field field = cfg.field();
  const std::size_t n = cfg.n;
  const std::size_t k = cfg.k;
  const std::size_t limit = cfg.slot_limit();

  Rng source_rng(hash_key(trial_seed, kSources));
  Rng encoder_rng(hash_key(trial_seed, kEncoder));
  const Matrix sources = random_sources(field, n, cfg.payload_len, source_rng);

  SenderParams params;
  params.k = k;
  params.chunk = cfg.chunk_size;
  params.lt_c = cfg.lt_c;
  params.lt_delta = cfg.lt_delta;
  params.hitting_budget = cfg.hitting_budget;
  for (std::size_t i = 0; i < k; ++i) params.pe.push_back(cfg.pe_of(i));
  auto sender = make_sender(cfg.scheme, sources, params);
  std::vector<std::unique_ptr<Receiver>> rx;
  for (std::size_t i = 0; i < k; ++i)
    rx.push_back(make_receiver(cfg.scheme, field, n, cfg.payload_len, cfg.chunk_size));
  const bool slot_feedback = uses_slot_feedback(cfg.scheme);

  TrialMetrics m;
  m.seed = trial_seed;
  m.user_delay.assign(k, 0);
  m.innovative_hist.assign(k + 1, 0);
  try {
    const LowerBound lb = lower_bound_of(channel, n, k, limit);
    m.lower_bound = lb.overall;
    m.user_bound = lb.per_user;
  } catch (const Unreachable&) {
    m.lower_bound = limit;
    m.user_bound.assign(k, limit);
  }

  std::vector<bool> done(k, false);
  std::size_t remaining = k;
  std::size_t slot = 0;
  while (remaining > 0 && slot < limit) {
    ++slot;
    EncodedPacket packet;
    if (slot <= n) {
      packet.coeffs.assign(n, 0);
      packet.coeffs[slot - 1] = 1;
      packet.payload = sources.row_vec(slot - 1);
    } else {
      OpMeter meter;
      packet = sender->next(encoder_rng);
      m.encode_ops += meter.elapsed();
      ++m.slots_phase2;
      m.weights.push_back(hamming_weight(packet.coeffs));
      std::size_t hits = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (!done[i]) hits += rx[i]->is_innovative(packet.coeffs);
      ++m.innovative_hist[hits];
      m.innovative_hits += hits;
      m.innovative_targets += remaining;
      if (hits != remaining) m.all_innovative = false;
    }

    std::vector<bool> gained(k, false);
    for (std::size_t i = 0; i < k; ++i) {
      if (done[i] || !channel.downlink(slot, i)) continue;
      gained[i] = rx[i]->receive(packet);
      if (!rx[i]->complete()) continue;
      done[i] = true;
      --remaining;
      m.user_delay[i] = slot;
      sender->on_finished(i);
      OpMeter meter;
      const DecodeResult res = rx[i]->decode();
      m.decode_ops += meter.elapsed();
      if (!res.complete || !(res.sources == sources))
        throw Error("user " + std::to_string(i + 1) + " failed to recover the sources");
    }

    if (slot_feedback)
      for (std::size_t i = 0; i < k; ++i) {
        if (done[i] || !channel.uplink(slot, i)) continue;
        OpMeter meter;
        const std::size_t synced = sender->on_feedback(i, *rx[i]);
        m.encode_ops += meter.elapsed();
        if (synced > (gained[i] ? 1u : 0u)) ++m.resync_events;
      }
  }

  for (const auto& r : rx) m.decode_ops += r->receive_decode_ops();
  m.completion_time = slot;
  m.max_slots_exceeded = remaining > 0;
  return m;
}

}  // namespace ebc
