#include "ebc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace ebc {

using nlohmann::json;

namespace {

template <class T>
T as(const json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw BadParams(std::string("bad value for '") + key + "'");
  }
}

std::vector<double> pe_values(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array() && !v.empty()) return as<std::vector<double>>(v, "pe");
  throw BadParams("pe must be a number or a nonempty list");
}

unsigned parse_poly(const json& v) {
  if (v.is_number_unsigned()) return v.get<unsigned>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      std::size_t used = 0;
      const auto p = std::stoul(s, &used, 16);
      if (used == s.size()) return static_cast<unsigned>(p);
    } catch (const std::exception&) {
    }
  }
  throw BadParams("poly must be an integer or a hex string");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string pe_text(const std::vector<double>& pe) {
  std::string s;
  for (std::size_t i = 0; i < pe.size(); ++i) s += (i ? ";" : "") + fmt(pe[i]);
  return s;
}

constexpr const char* kMetrics[] = {"completion_time", "lower_bound",    "slots_phase2",
                                    "mean_weight",     "max_weight",     "innovative_frac",
                                    "encode_ops",      "decode_ops",     "resync_events"};

std::vector<double> metric_values(const TrialMetrics& m) {
  return {static_cast<double>(m.completion_time),
          static_cast<double>(m.lower_bound),
          static_cast<double>(m.slots_phase2),
          m.mean_weight(),
          static_cast<double>(m.max_weight()),
          m.innovative_frac(),
          static_cast<double>(m.encode_ops.total()),
          static_cast<double>(m.decode_ops.total()),
          static_cast<double>(m.resync_events)};
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

SimConfig config_from_json(const json& j, SimConfig cfg) {
  if (!j.is_object()) throw BadParams("configuration must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "n" || key == "N") cfg.n = as<std::size_t>(v, "n");
    else if (key == "k" || key == "K") cfg.k = as<std::size_t>(v, "k");
    else if (key == "q") cfg.q = as<unsigned>(v, "q");
    else if (key == "poly") cfg.poly = parse_poly(v);
    else if (key == "scheme") cfg.scheme = parse_scheme(as<std::string>(v, "scheme"));
    else if (key == "pe") cfg.pe = pe_values(v);
    else if (key == "pe_up") cfg.pe_up = as<double>(v, "pe_up");
    else if (key == "trials") cfg.trials = as<std::size_t>(v, "trials");
    else if (key == "master_seed" || key == "seed") cfg.master_seed = as<std::uint64_t>(v, "master_seed");
    else if (key == "payload_len") cfg.payload_len = as<std::size_t>(v, "payload_len");
    else if (key == "chunk_size") cfg.chunk_size = as<std::size_t>(v, "chunk_size");
    else if (key == "lt_c") cfg.lt_c = as<double>(v, "lt_c");
    else if (key == "lt_delta") cfg.lt_delta = as<double>(v, "lt_delta");
    else if (key == "max_slots") cfg.max_slots = as<std::size_t>(v, "max_slots");
    else if (key == "hitting_budget") cfg.hitting_budget = as<std::uint64_t>(v, "hitting_budget");
    else throw BadParams("unknown configuration key '" + key + "'");
  }
  return cfg;
}

json config_to_json(const SimConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  j["k"] = cfg.k;
  j["q"] = cfg.q;
  if (cfg.poly != 0) j["poly"] = cfg.poly;
  j["scheme"] = scheme_name(cfg.scheme);
  j["pe"] = cfg.pe.size() == 1 ? json(cfg.pe.front()) : json(cfg.pe);
  j["pe_up"] = cfg.pe_up;
  j["trials"] = cfg.trials;
  j["master_seed"] = cfg.master_seed;
  j["payload_len"] = cfg.payload_len;
  j["chunk_size"] = cfg.chunk_size;
  j["lt_c"] = cfg.lt_c;
  j["lt_delta"] = cfg.lt_delta;
  j["max_slots"] = cfg.max_slots;
  j["hitting_budget"] = cfg.hitting_budget;
  return j;
}

std::vector<GridPoint> expand_grid(const GridSpec& g) {
  auto pick = [](const auto& axis, auto fallback) {
    using T = std::decay_t<decltype(fallback)>;
    return axis.empty() ? std::vector<T>{fallback} : std::vector<T>(axis.begin(), axis.end());
  };
  const auto schemes = pick(g.schemes, g.base.scheme);
  const auto qs = pick(g.qs, g.base.q);
  const auto ns = pick(g.ns, g.base.n);
  const auto ks = pick(g.ks, g.base.k);
  const auto pes = pick(g.pes, g.base.pe);
  const auto ups = pick(g.pe_ups, g.base.pe_up);
  const auto chunks = pick(g.chunks, g.base.chunk_size);

  // the downlink realization depends only on (N, K, pe), so every other axis
  // is compared on identical channels
  std::vector<GridPoint> out;
  for (auto q : qs)
    for (std::size_t ni = 0; ni < ns.size(); ++ni)
      for (std::size_t ki = 0; ki < ks.size(); ++ki)
        for (std::size_t pi = 0; pi < pes.size(); ++pi)
          for (auto up : ups)
            for (auto c : chunks)
              for (auto s : schemes) {
                GridPoint p{g.base, (ni * ks.size() + ki) * pes.size() + pi};
                p.cfg.q = q;
                p.cfg.n = ns[ni];
                p.cfg.k = ks[ki];
                p.cfg.pe = pes[pi];
                p.cfg.pe_up = up;
                p.cfg.chunk_size = c;
                p.cfg.scheme = s;
                out.push_back(std::move(p));
              }
  return out;
}

GridSpec grid_from_json(const json& j) {
  if (!j.is_object()) throw BadParams("sweep configuration must be a JSON object");
  json base = j;
  base.erase("grid");
  GridSpec g;
  g.base = config_from_json(base);
  if (!j.contains("grid")) return g;
  const json& grid = j.at("grid");
  if (!grid.is_object()) throw BadParams("'grid' must be an object");
  for (const auto& [key, v] : grid.items()) {
    const json list = v.is_array() ? v : json::array({v});
    for (const auto& item : list) {
      if (key == "scheme") g.schemes.push_back(parse_scheme(as<std::string>(item, "scheme")));
      else if (key == "q") g.qs.push_back(as<unsigned>(item, "q"));
      else if (key == "n" || key == "N") g.ns.push_back(as<std::size_t>(item, "n"));
      else if (key == "k" || key == "K") g.ks.push_back(as<std::size_t>(item, "k"));
      else if (key == "pe") g.pes.push_back(pe_values(item));
      else if (key == "pe_up") g.pe_ups.push_back(as<double>(item, "pe_up"));
      else if (key == "chunk_size") g.chunks.push_back(as<std::size_t>(item, "chunk_size"));
      else throw BadParams("unknown grid axis '" + key + "'");
    }
  }
  return g;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t channel_index, std::size_t trial) {
  return hash_key(master, 0x5EED, channel_index, trial);
}

unsigned thread_count_from_env() {
  unsigned n = 0;
  if (const char* env = std::getenv("EBC_THREADS")) {
    try {
      n = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw BadParams(std::string("EBC_THREADS must be a non-negative integer, got '") + env + "'");
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

std::vector<std::vector<TrialMetrics>> run_experiment(const std::vector<GridPoint>& points, unsigned threads) {
  std::vector<std::vector<TrialMetrics>> results(points.size());
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t p = 0; p < points.size(); ++p) {
    points[p].cfg.validate();
    results[p].resize(points[p].cfg.trials);
    for (std::size_t t = 0; t < points[p].cfg.trials; ++t) jobs.emplace_back(p, t);
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const auto [p, t] = jobs[i];
      try {
        const auto& pt = points[p];
        results[p][t] = run_trial(pt.cfg, trial_seed(pt.cfg.master_seed, pt.channel_index, t));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

void write_csv_header(std::ostream& out) {
  out << "scheme,q,N,K,pe,pe_up,trial,seed";
  for (const char* m : kMetrics) out << ',' << m;
  out << '\n';
}

void write_csv(std::ostream& out, const std::vector<GridPoint>& points,
               const std::vector<std::vector<TrialMetrics>>& results) {
  write_csv_header(out);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const SimConfig& c = points[p].cfg;
    const std::string prefix = scheme_name(c.scheme) + ',' + std::to_string(c.field().order()) + ',' +
                               std::to_string(c.n) + ',' + std::to_string(c.k) + ',' + pe_text(c.pe) + ',' +
                               fmt(c.pe_up) + ',';
    std::vector<std::vector<double>> columns(std::size(kMetrics));
    for (std::size_t t = 0; t < results[p].size(); ++t) {
      const auto& m = results[p][t];
      out << prefix << t << ',' << m.seed;
      const auto vals = metric_values(m);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        out << ',' << fmt(vals[i]);
        columns[i].push_back(vals[i]);
      }
      out << '\n';
    }
    out << prefix << "agg,";
    for (const auto& col : columns) {
      const auto [mean, sd] = mean_std(col);
      out << ',' << fmt(mean) << ':' << fmt(sd);
    }
    out << '\n';
  }
}

std::vector<std::filesystem::path> emit_plotdata(std::istream& csv, const std::string& x,
                                                 const std::vector<std::string>& group_by,
                                                 const std::filesystem::path& out_dir) {
  std::string line;
  if (!std::getline(csv, line)) throw ParseError("empty CSV input");
  const auto header = split(line, ',');
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw BadParams("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xcol = column(x);
  const std::size_t tcol = column("trial");
  std::vector<std::size_t> gcols;
  for (const auto& g : group_by) gcols.push_back(column(g));
  std::vector<std::size_t> mcols;
  for (const char* m : kMetrics) mcols.push_back(column(m));

  // group -> metric -> x -> samples
  std::map<std::string, std::vector<std::map<double, std::vector<double>>>> data;
  std::size_t line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw ParseError("CSV line " + std::to_string(line_no) + " has wrong width");
    if (cells[tcol] == "agg") continue;
    std::string key;
    for (std::size_t i = 0; i < gcols.size(); ++i)
      key += (i ? " " : "") + group_by[i] + "=" + cells[gcols[i]];
    auto& per_metric = data[key];
    per_metric.resize(mcols.size());
    try {
      const double xv = std::stod(cells[xcol]);
      for (std::size_t i = 0; i < mcols.size(); ++i) per_metric[i][xv].push_back(std::stod(cells[mcols[i]]));
    } catch (const std::invalid_argument&) {
      throw ParseError("CSV line " + std::to_string(line_no) + " has a non-numeric value");
    }
  }

  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < mcols.size(); ++i) {
    const auto path = out_dir / (std::string(kMetrics[i]) + "_vs_" + x + ".dat");
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "# " << kMetrics[i] << " vs " << x << ": x mean std n\n";
    bool first = true;
    for (const auto& [key, per_metric] : data) {
      if (!first) out << "\n\n";
      first = false;
      out << "# " << (key.empty() ? "all" : key) << '\n';
      for (const auto& [xv, samples] : per_metric[i]) {
        const auto [mean, sd] = mean_std(samples);
        out << fmt(xv) << ' ' << fmt(mean) << ' ' << fmt(sd) << ' ' << samples.size() << '\n';
      }
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace ebc
