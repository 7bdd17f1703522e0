#include "ebc/hitting.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include <boost/dynamic_bitset.hpp>

#include "text_io.hpp"

namespace ebc {

void HittingInstance::normalize() {
  if (sets.empty()) throw BadParams("hitting instance has no sets");
  for (auto& s : sets) {
    if (s.empty()) throw BadParams("hitting instance contains an empty set");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.back() >= n) throw BadParams("element " + std::to_string(s.back() + 1) + " outside universe");
  }
}

bool hits_all(const HittingInstance& inst, const std::vector<std::size_t>& elements) {
  std::vector<bool> in(inst.n, false);
  for (auto e : elements)
    if (e < inst.n) in[e] = true;
  return std::all_of(inst.sets.begin(), inst.sets.end(), [&](const auto& s) {
    return std::any_of(s.begin(), s.end(), [&](std::size_t e) { return in[e]; });
  });
}

HittingSolution greedy_hitting(const HittingInstance& inst) {
  HittingSolution sol;
  std::vector<bool> hit(inst.k(), false);
  std::size_t remaining = inst.k();
  while (remaining > 0) {
    std::vector<std::size_t> count(inst.n, 0);
    for (std::size_t i = 0; i < inst.k(); ++i)
      if (!hit[i])
        for (auto e : inst.sets[i]) ++count[e];
    const auto best = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
    if (count[best] == 0) throw BadParams("hitting instance contains an empty set");
    sol.elements.push_back(best);
    for (std::size_t i = 0; i < inst.k(); ++i)
      if (!hit[i] && std::binary_search(inst.sets[i].begin(), inst.sets[i].end(), best)) {
        hit[i] = true;
        --remaining;
      }
  }
  std::sort(sol.elements.begin(), sol.elements.end());
  return sol;
}

namespace {

using Bits = boost::dynamic_bitset<>;

class BranchAndBound {
 public:
  BranchAndBound(std::size_t n, std::uint64_t budget, std::vector<std::size_t> incumbent)
      : n_(n), budget_(budget), best_(std::move(incumbent)) {}

  void search(std::vector<Bits> sets, std::vector<std::size_t> chosen) {
    if (++nodes_ > budget_)
      throw BudgetExceeded("exact hitting set search exceeded " + std::to_string(budget_) + " nodes");

    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& s : sets)
        if (s.none()) return;
      if (force_unit_sets(sets, chosen)) {
        changed = true;
        continue;
      }
      if (chosen.size() >= best_.size()) return;
      changed = drop_dominated_sets(sets) | drop_dominated_elements(sets);
    }

    if (sets.empty()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + packing_bound(sets) >= best_.size()) return;

    // Branch on the smallest set; every solution contains one of its elements.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < sets.size(); ++i)
      if (sets[i].count() < sets[pick].count()) pick = i;
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (-frequency, element)
    for (auto e = sets[pick].find_first(); e != Bits::npos; e = sets[pick].find_next(e)) {
      std::size_t freq = 0;
      for (const auto& s : sets) freq += s.test(e);
      order.emplace_back(freq, e);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });

    for (const auto& [freq, e] : order) {
      std::vector<Bits> rest;
      for (const auto& s : sets)
        if (!s.test(e)) rest.push_back(s);
      auto next = chosen;
      next.push_back(e);
      search(std::move(rest), std::move(next));
      // Later branches exclude e.
      for (auto& s : sets) s.reset(e);
      if (sets[pick].none()) break;
    }
  }

  const std::vector<std::size_t>& best() const { return best_; }

 private:
  static bool force_unit_sets(std::vector<Bits>& sets, std::vector<std::size_t>& chosen) {
    for (const auto& s : sets) {
      if (s.count() != 1) continue;
      const auto e = s.find_first();
      chosen.push_back(e);
      std::erase_if(sets, [e](const Bits& t) { return t.test(e); });
      return true;
    }
    return false;
  }

  // A set containing another set is hit whenever the smaller one is.
  static bool drop_dominated_sets(std::vector<Bits>& sets) {
    std::vector<bool> drop(sets.size(), false);
    for (std::size_t a = 0; a < sets.size(); ++a) {
      if (drop[a]) continue;
      for (std::size_t b = 0; b < sets.size(); ++b) {
        if (a == b || drop[b]) continue;
        if (sets[a].is_subset_of(sets[b])) drop[b] = true;
      }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (!drop[i]) sets[w++] = std::move(sets[i]);
    const bool changed = w != sets.size();
    sets.resize(w);
    return changed;
  }

  // Element e can be replaced by f when every set holding e also holds f.
  bool drop_dominated_elements(std::vector<Bits>& sets) const {
    std::vector<Bits> inc(n_, Bits(sets.size()));
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (auto e = sets[i].find_first(); e != Bits::npos; e = sets[i].find_next(e)) inc[e].set(i);
    bool changed = false;
    std::vector<bool> gone(n_, false);
    for (std::size_t e = 0; e < n_; ++e) {
      if (inc[e].none()) continue;
      for (std::size_t f = 0; f < n_; ++f) {
        if (f == e || gone[f] || inc[f].none()) continue;
        if (!inc[e].is_subset_of(inc[f])) continue;
        if (inc[e] == inc[f] && f > e) continue;
        gone[e] = true;
        break;
      }
      if (gone[e]) {
        for (auto& s : sets) s.reset(e);
        changed = true;
      }
    }
    return changed;
  }

  // Number of pairwise disjoint sets picked smallest first.
  static std::size_t packing_bound(const std::vector<Bits>& sets) {
    std::vector<std::size_t> idx(sets.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return sets[a].count() < sets[b].count(); });
    Bits used(sets.front().size());
    std::size_t bound = 0;
    for (auto i : idx)
      if (!sets[i].intersects(used)) {
        used |= sets[i];
        ++bound;
      }
    return bound;
  }

  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace

HittingSolution exact_hitting(const HittingInstance& inst, std::uint64_t budget) {
  HittingSolution greedy = greedy_hitting(inst);
  std::vector<Bits> sets;
  for (const auto& s : inst.sets) {
    Bits b(inst.n);
    for (auto e : s) b.set(e);
    sets.push_back(std::move(b));
  }
  BranchAndBound bb(inst.n, budget, greedy.elements);
  bb.search(std::move(sets), {});
  HittingSolution sol{bb.best(), true};
  std::sort(sol.elements.begin(), sol.elements.end());
  return sol;
}

HittingSolution oracle_min_hitting(const HittingInstance& inst) {
  if (inst.n > 20) throw TooLarge("oracle hitting set limited to N <= 20, got " + std::to_string(inst.n));
  std::vector<std::uint32_t> masks;
  for (const auto& s : inst.sets) {
    std::uint32_t m = 0;
    for (auto e : s) m |= 1u << e;
    if (m == 0) throw BadParams("hitting instance contains an empty set");
    masks.push_back(m);
  }
  for (std::size_t size = 0; size <= inst.n; ++size) {
    std::vector<std::size_t> comb(size);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    while (true) {
      std::uint32_t pick = 0;
      for (auto e : comb) pick |= 1u << e;
      if (std::all_of(masks.begin(), masks.end(), [pick](std::uint32_t m) { return (m & pick) != 0; }))
        return {comb, true};
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && comb[i - 1] == inst.n - size + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  throw BadParams("hitting instance has no hitting set");
}

HittingInstance instance_from_btilde(const std::vector<std::vector<std::uint8_t>>& rows) {
  HittingInstance inst;
  inst.n = rows.empty() ? 0 : rows.front().size();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != inst.n) throw DimensionMismatch("support rows differ in length");
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < inst.n; ++j)
      if (rows[k][j]) s.push_back(j);
    if (s.empty()) throw ZeroRow("support row " + std::to_string(k + 1) + " is zero; that user is finished");
    inst.sets.push_back(std::move(s));
  }
  return inst;
}

HittingInstance instance_from_scenario(const Scenario& s) {
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& u : s.users) rows.push_back(u.btilde());
  HittingInstance inst = instance_from_btilde(rows);
  inst.n = s.n;
  return inst;
}

Scenario sparsity_instance_from_hitting(const HittingInstance& inst, const Field& field) {
  Scenario s{field, inst.n, {}};
  for (const auto& set : inst.sets) {
    Matrix b(field, 1, inst.n);
    for (auto e : set) b(0, e) = 1;
    s.add(UserState::from_basis(b));
  }
  return s;
}

HittingInstance read_hitting(std::istream& in) {
  detail::LineReader reader(in);
  auto head = reader.expect("hitting header");
  if (head.size() != 2) reader.fail("hitting header must be 'N K'");
  HittingInstance inst;
  inst.n = reader.number<std::size_t>(head[0]);
  const auto k = reader.number<std::size_t>(head[1]);
  for (std::size_t i = 0; i < k; ++i) {
    auto t = reader.expect("set line");
    std::vector<std::size_t> s;
    for (const auto& tok : t) {
      const auto e = reader.number<std::size_t>(tok);
      if (e < 1 || e > inst.n) reader.fail("element " + tok + " outside 1.." + std::to_string(inst.n));
      s.push_back(e - 1);
    }
    inst.sets.push_back(std::move(s));
  }
  try {
    inst.normalize();
  } catch (const BadParams& e) {
    reader.fail(e.what());
  }
  return inst;
}

void write_hitting(std::ostream& out, const HittingInstance& inst) {
  out << inst.n << ' ' << inst.k() << '\n';
  for (const auto& s : inst.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i] + 1;
    out << '\n';
  }
}

}  // namespace ebc
