#include "ebc/schemes.hpp"

#include <algorithm>

#include "ebc/innovate.hpp"

namespace ebc {

Scheme parse_scheme(std::string_view name) {
  if (name == "lt") return Scheme::Lt;
  if (name == "rlnc") return Scheme::Rlnc;
  if (name == "chunked") return Scheme::Chunked;
  if (name == "idnc") return Scheme::Idnc;
  if (name == "oh") return Scheme::Oh;
  if (name == "gh") return Scheme::Gh;
  if (name == "gh-sbes") return Scheme::GhSbes;
  if (name == "fh-sbes") return Scheme::FhSbes;
  throw BadParams("unknown scheme '" + std::string(name) + "'");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Lt: return "lt";
    case Scheme::Rlnc: return "rlnc";
    case Scheme::Chunked: return "chunked";
    case Scheme::Idnc: return "idnc";
    case Scheme::Oh: return "oh";
    case Scheme::Gh: return "gh";
    case Scheme::GhSbes: return "gh-sbes";
    case Scheme::FhSbes: return "fh-sbes";
  }
  return "?";
}

bool binary_only(Scheme s) { return s == Scheme::Lt || s == Scheme::Idnc; }

bool uses_slot_feedback(Scheme s) {
  return s == Scheme::Idnc || s == Scheme::Oh || s == Scheme::Gh || s == Scheme::GhSbes || s == Scheme::FhSbes;
}

// ---- receivers -------------------------------------------------------------

LinearReceiver::LinearReceiver(Field field, std::size_t n, std::size_t len, Decode mode, std::size_t chunk)
    : field_(field), n_(n), len_(len), mode_(mode), chunk_(chunk), tracker_(field, n) {
  if (mode_ == Decode::Chunked && (chunk_ == 0 || n_ % chunk_ != 0))
    throw BadParams("chunk size must divide N");
}

bool LinearReceiver::receive(const EncodedPacket& p) {
  OpMeter meter;
  const bool grew = tracker_.try_update(p.coeffs);
  receive_ops_ += meter.elapsed();
  if (!grew) return false;
  kept_.push_back(p);
  return true;
}

DecodeResult LinearReceiver::decode() const {
  if (mode_ == Decode::Dense) return ge_decode(field_, kept_, n_, len_);
  if (mode_ == Decode::Sparse) {
    std::size_t w = 1;
    for (const auto& p : kept_) w = std::max(w, hamming_weight(p.coeffs));
    return sparse_decode(field_, kept_, n_, len_, w);
  }

  DecodeResult res{true, Matrix(field_, n_, len_), std::vector<bool>(n_, false)};
  for (std::size_t base = 0; base < n_; base += chunk_) {
    Matrix a(field_, 0, chunk_);
    Matrix b(field_, 0, len_);
    for (const auto& p : kept_) {
      const auto first = std::find_if(p.coeffs.begin(), p.coeffs.end(), [](Elem v) { return v != 0; });
      const auto at = static_cast<std::size_t>(first - p.coeffs.begin());
      if (at < base || at >= base + chunk_) continue;
      a.append_row(std::span<const Elem>(p.coeffs).subspan(base, chunk_));
      b.append_row(p.payload);
    }
    const auto sol = solve_dense(a, b);
    if (!sol || sol->rank < chunk_) {
      res.complete = false;
      continue;
    }
    for (std::size_t i = 0; i < chunk_; ++i) {
      std::copy(sol->x.row(i).begin(), sol->x.row(i).end(), res.sources.row(base + i).begin());
      res.decoded[base + i] = true;
    }
  }
  return res;
}

LtReceiver::LtReceiver(std::size_t n, std::size_t len)
    : n_(n), len_(len), tracker_(Field(), n), holders_(n), decoded_(n, false) {}

void LtReceiver::resolve(std::size_t j) {
  std::vector<std::size_t> stack{j};
  while (!stack.empty()) {
    const std::size_t idx = stack.back();
    stack.pop_back();
    if (decoded_[idx]) continue;
    decoded_[idx] = true;
    ++decoded_count_;
    for (auto pk : holders_[idx]) {
      auto& unk = pending_[pk];
      std::erase(unk, idx);
      if (unk.size() == 1) stack.push_back(unk.front());
    }
    holders_[idx].clear();
  }
}

bool LtReceiver::receive(const EncodedPacket& p) {
  OpMeter meter;
  const bool grew = tracker_.try_update(p.coeffs);
  receive_ops_ += meter.elapsed();
  kept_.push_back(p);
  std::vector<std::size_t> unk;
  for (std::size_t j = 0; j < n_; ++j)
    if (p.coeffs[j] != 0 && !decoded_[j]) unk.push_back(j);
  if (unk.size() == 1) {
    pending_.emplace_back();
    resolve(unk.front());
  } else {
    const std::size_t id = pending_.size();
    for (auto j : unk) holders_[j].push_back(id);
    pending_.push_back(std::move(unk));
  }
  return grew;
}

IdncReceiver::IdncReceiver(std::size_t n, std::size_t len)
    : n_(n), len_(len), held_(n, false), payloads_(gf2_, n, len) {}

bool IdncReceiver::is_innovative(std::span<const Elem> coeffs) const {
  std::size_t unknown = 0;
  for (std::size_t j = 0; j < n_; ++j) unknown += coeffs[j] != 0 && !held_[j];
  return unknown == 1;
}

bool IdncReceiver::receive(const EncodedPacket& p) {
  if (!is_innovative(p.coeffs)) return false;
  OpMeter meter;
  std::size_t target = n_;
  Vec value = p.payload;
  for (std::size_t j = 0; j < n_; ++j) {
    if (p.coeffs[j] == 0) continue;
    if (!held_[j]) {
      target = j;
      continue;
    }
    for (std::size_t s = 0; s < len_; ++s) value[s] = gf2_.sub(value[s], payloads_(j, s));
  }
  std::copy(value.begin(), value.end(), payloads_.row(target).begin());
  held_[target] = true;
  ++count_;
  receive_ops_ += meter.elapsed();
  return true;
}

DecodeResult IdncReceiver::decode() const { return {complete(), payloads_, held_}; }

std::unique_ptr<Receiver> make_receiver(Scheme s, const Field& field, std::size_t n, std::size_t len,
                                        std::size_t chunk) {
  switch (s) {
    case Scheme::Lt: return std::make_unique<LtReceiver>(n, len);
    case Scheme::Idnc: return std::make_unique<IdncReceiver>(n, len);
    case Scheme::Rlnc: return std::make_unique<LinearReceiver>(field, n, len, LinearReceiver::Decode::Dense);
    case Scheme::Chunked:
      return std::make_unique<LinearReceiver>(field, n, len, LinearReceiver::Decode::Chunked, chunk);
    default: return std::make_unique<LinearReceiver>(field, n, len, LinearReceiver::Decode::Sparse);
  }
}

// ---- senders ---------------------------------------------------------------

namespace {

class LtSender : public Sender {
 public:
  LtSender(const Matrix& sources, const SenderParams& p)
      : sources_(sources), dist_(sources.rows(), p.lt_c, p.lt_delta) {}
  EncodedPacket next(Rng& rng) override { return lt_encode(sources_, dist_, rng); }

 private:
  const Matrix& sources_;
  RobustSoliton dist_;
};

class RlncSender : public Sender {
 public:
  explicit RlncSender(const Matrix& sources) : sources_(sources) {}
  EncodedPacket next(Rng& rng) override { return rlnc_encode(sources_, rng); }

 private:
  const Matrix& sources_;
};

class ChunkedSender : public Sender {
 public:
  ChunkedSender(const Matrix& sources, std::size_t c) : sources_(sources), c_(c) {}
  EncodedPacket next(Rng& rng) override { return chunked_encode(sources_, c_, rng); }

 private:
  const Matrix& sources_;
  std::size_t c_;
};

class IdncSender : public Sender {
 public:
  IdncSender(const Matrix& sources, const SenderParams& p)
      : sources_(sources),
        pe_(p.pe),
        held_(p.k, std::vector<bool>(sources.rows(), false)),
        finished_(p.k, false) {}

  EncodedPacket next(Rng&) override {
    std::vector<std::vector<bool>> has;
    std::vector<double> pe;
    for (std::size_t i = 0; i < held_.size(); ++i) {
      if (finished_[i]) continue;
      has.push_back(held_[i]);
      pe.push_back(pe_[i]);
    }
    return idnc_mwvs_encode(has, pe, sources_);
  }

  std::size_t on_feedback(std::size_t user, const Receiver& r) override {
    const auto* truth = r.held();
    std::size_t learned = 0;
    for (std::size_t j = 0; j < truth->size(); ++j)
      if ((*truth)[j] && !held_[user][j]) {
        held_[user][j] = true;
        ++learned;
      }
    return learned;
  }

  void on_finished(std::size_t user) override { finished_[user] = true; }

 private:
  const Matrix& sources_;
  std::vector<double> pe_;
  std::vector<std::vector<bool>> held_;
  std::vector<bool> finished_;
};

// OH, GH and the SBES variants: the sender mirrors every user's knowledge in
// a tracker fed by the feedback summaries.
class HittingSender : public Sender {
 public:
  HittingSender(Scheme scheme, const Matrix& sources, const SenderParams& p)
      : scheme_(scheme),
        sources_(sources),
        budget_(p.hitting_budget),
        belief_(p.k, NullTracker(sources.field(), sources.rows())),
        finished_(p.k, false) {}

  EncodedPacket next(Rng&) override {
    Scenario s{sources_.field(), sources_.rows(), {}};
    for (std::size_t i = 0; i < belief_.size(); ++i)
      if (!finished_[i]) s.add(UserState::from_tracker(belief_[i]));
    Vec x;
    switch (scheme_) {
      case Scheme::Oh: x = oh_generate(s, budget_); break;
      case Scheme::Gh: x = gh_generate(s); break;
      case Scheme::GhSbes: x = gh_sbes(s); break;
      default: x = fh_sbes(s); break;
    }
    return make_packet(std::move(x), sources_);
  }

  std::size_t on_feedback(std::size_t user, const Receiver& r) override {
    const Matrix* rows = r.rows();
    NullTracker& t = belief_[user];
    const std::size_t before = t.rank();
    for (std::size_t i = before; i < rows->rows(); ++i) t.update(rows->row(i));
    return t.rank() - before;
  }

  void on_finished(std::size_t user) override { finished_[user] = true; }

 private:
  Scheme scheme_;
  const Matrix& sources_;
  std::uint64_t budget_;
  std::vector<NullTracker> belief_;
  std::vector<bool> finished_;
};

}  // namespace

std::unique_ptr<Sender> make_sender(Scheme s, const Matrix& sources, const SenderParams& params) {
  switch (s) {
    case Scheme::Lt: return std::make_unique<LtSender>(sources, params);
    case Scheme::Rlnc: return std::make_unique<RlncSender>(sources);
    case Scheme::Chunked: return std::make_unique<ChunkedSender>(sources, params.chunk);
    case Scheme::Idnc: return std::make_unique<IdncSender>(sources, params);
    default: return std::make_unique<HittingSender>(s, sources, params);
  }
}

}  // namespace ebc
