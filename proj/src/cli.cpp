#include "ebc/cli.hpp"

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ebc/experiment.hpp"
#include "ebc/hard_instances.hpp"
#include "ebc/innovate.hpp"

namespace ebc {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw UsageError(std::string("bad value '") + item + "' for " + what);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty list for ") + what);
  return out;
}

std::vector<std::string> parse_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Io {
  std::istream& in;
  std::ostream& out;

  template <class F>
  auto read(const std::string& path, F&& parse) {
    if (path == "-") return parse(in);
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return parse(f);
  }

  template <class F>
  void write(const std::string& path, F&& emit) {
    if (path == "-") {
      emit(out);
      return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    emit(f);
  }
};

void print_vector(std::ostream& out, const char* label, const Vec& x) {
  out << label;
  for (auto v : x) out << ' ' << v;
  out << '\n';
}

void print_iev(std::ostream& out, const Scenario& s, const Vec& x) {
  print_vector(out, "vector", x);
  out << "weight " << hamming_weight(x) << '\n';
  out << "innovative_count " << innovative_count(x, s) << '/' << s.k() << '\n';
}

void print_hitting(std::ostream& out, const HittingSolution& sol) {
  out << "size " << sol.size() << "\nset";
  for (auto e : sol.elements) out << ' ' << e + 1;
  out << '\n';
}

Field field_of(unsigned q, const std::string& poly) {
  return poly.empty() ? Field(q) : Field::parse("q=" + std::to_string(q) + ",poly=" + poly);
}

// Shared flags of simulate and sweep; values are kept as text so sweep can
// accept comma lists.
struct SimFlags {
  std::string scheme, q, n, k, pe, pe_up, chunk;
  std::string poly;
  std::size_t trials = 0, payload_len = 0, max_slots = 0;
  std::uint64_t seed = 0, budget = 0;
  double lt_c = 0, lt_delta = 0;
  std::string config, out = "-";

  void add(CLI::App* app, bool lists) {
    const char* suffix = lists ? " (comma list)" : "";
    app->add_option("--scheme", scheme, std::string("lt|rlnc|chunked|idnc|oh|gh|gh-sbes|fh-sbes") + suffix);
    app->add_option("--q", q, std::string("field order") + suffix);
    app->add_option("--n", n, std::string("number of source packets N") + suffix);
    app->add_option("--k", k, std::string("number of users K") + suffix);
    app->add_option("--pe", pe,
                    lists ? "downlink erasure probabilities (comma list)"
                          : "downlink erasure probability, or one value per user");
    app->add_option("--pe-up", pe_up, std::string("uplink erasure probability") + suffix);
    app->add_option("--chunk", chunk, std::string("chunk size C") + suffix);
    app->add_option("--poly", poly, "reduction polynomial (hex) for GF(2^m)");
    app->add_option("--trials", trials, "trials per grid point");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--payload-len", payload_len, "payload symbols per packet");
    app->add_option("--lt-c", lt_c, "robust soliton c");
    app->add_option("--lt-delta", lt_delta, "robust soliton delta");
    app->add_option("--max-slots", max_slots, "slot limit per trial (0 = 50N)");
    app->add_option("--budget", budget, "node budget of the exact hitting set search");
    app->add_option("--config", config, "JSON configuration file");
    app->add_option("--out", out, "output CSV path, '-' for stdout");
  }

  bool given(const std::string& name, CLI::App* app) const { return app->count(name) > 0; }

  void apply_scalars(SimConfig& c, CLI::App* app) const {
    if (given("--poly", app)) {
      try {
        c.poly = static_cast<unsigned>(std::stoul(poly, nullptr, 16));
      } catch (const std::exception&) {
        throw UsageError("bad polynomial '" + poly + "'");
      }
    }
    if (given("--trials", app)) c.trials = trials;
    if (given("--seed", app)) c.master_seed = seed;
    if (given("--payload-len", app)) c.payload_len = payload_len;
    if (given("--lt-c", app)) c.lt_c = lt_c;
    if (given("--lt-delta", app)) c.lt_delta = lt_delta;
    if (given("--max-slots", app)) c.max_slots = max_slots;
    if (given("--budget", app)) c.hitting_budget = budget;
  }
};

nlohmann::json load_json(Io& io, const std::string& path) {
  return io.read(path, [](std::istream& s) {
    try {
      return nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("invalid JSON: ") + e.what());
    }
  });
}

void run_grid(Io& io, const std::vector<GridPoint>& points, const std::string& out_path) {
  for (const auto& p : points) p.cfg.validate();
  const auto results = run_experiment(points, thread_count_from_env());
  io.write(out_path, [&](std::ostream& o) { write_csv(o, points, results); });
}

int dispatch(int argc, const char* const* argv, Io& io, std::ostream& err) {
  CLI::App app{"Sparse innovative network coding toolkit for erasure broadcast channels", "ebc"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run trials of one configuration and print CSV");
  SimFlags sim_flags;
  sim_flags.add(sim, false);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid and print CSV");
  SimFlags sweep_flags;
  sweep_flags.add(sweep, true);

  // iev-solve
  auto* iev = app.add_subcommand("iev-solve", "find an innovative encoding vector for a scenario file");
  std::string iev_in = "-", iev_method = "gh";
  std::uint64_t iev_budget = kDefaultHittingBudget;
  iev->add_option("--in", iev_in, "scenario file, '-' for stdin");
  iev->add_option("--method", iev_method, "oh|gh|gh-sbes|fh-sbes|brute")
      ->check(CLI::IsMember({"oh", "gh", "gh-sbes", "fh-sbes", "brute"}));
  iev->add_option("--budget", iev_budget, "node budget of the exact hitting set search");

  // hitset-solve
  auto* hs = app.add_subcommand("hitset-solve", "solve a minimum hitting set instance");
  std::string hs_in = "-", hs_method = "exact";
  std::uint64_t hs_budget = kDefaultHittingBudget;
  hs->add_option("--in", hs_in, "instance file, '-' for stdin");
  hs->add_option("--method", hs_method, "exact|greedy|oracle")->check(CLI::IsMember({"exact", "greedy", "oracle"}));
  hs->add_option("--budget", hs_budget, "node budget of the exact search");

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  auto* gen_a = gen->add_subcommand("appendix-a", "scenario with q+1 users and no innovative vector");
  unsigned ga_q = 3;
  std::size_t ga_n = 3;
  std::string ga_poly, gen_out = "-";
  gen_a->add_option("--q", ga_q, "field order");
  gen_a->add_option("--n", ga_n, "packet count N (>= 2)");
  gen_a->add_option("--poly", ga_poly, "reduction polynomial (hex)");
  gen_a->add_option("--out", gen_out, "output path");
  auto* gen_sat = gen->add_subcommand("3sat", "scenario reduced from a 3-CNF formula");
  unsigned gs_q = 2;
  std::size_t gs_vars = 4, gs_clauses = 6;
  std::uint64_t gs_seed = 1;
  std::string gs_in, gs_poly, gs_cnf_out;
  gen_sat->add_option("--q", gs_q, "field order");
  gen_sat->add_option("--poly", gs_poly, "reduction polynomial (hex)");
  gen_sat->add_option("--in", gs_in, "DIMACS file; a random formula is drawn when absent");
  gen_sat->add_option("--vars", gs_vars, "variables of the random formula");
  gen_sat->add_option("--clauses", gs_clauses, "clauses of the random formula");
  gen_sat->add_option("--seed", gs_seed, "seed of the random formula");
  gen_sat->add_option("--cnf-out", gs_cnf_out, "also write the formula in DIMACS form");
  gen_sat->add_option("--out", gen_out, "output path");
  auto* gen_h = gen->add_subcommand("hitting-to-sparsity", "scenario whose sparsity number is the hitting optimum");
  unsigned gh_q = 0;
  std::string gh_in = "-", gh_poly;
  gen_h->add_option("--in", gh_in, "hitting instance file");
  gen_h->add_option("--q", gh_q, "field order (default: smallest prime >= K)");
  gen_h->add_option("--poly", gh_poly, "reduction polynomial (hex)");
  gen_h->add_option("--out", gen_out, "output path");

  // oracle
  auto* orc = app.add_subcommand("oracle", "exhaustive reference solvers");
  orc->require_subcommand(1);
  std::string orc_in = "-";
  auto* orc_iev = orc->add_subcommand("iev", "lexicographically smallest innovative vector");
  auto* orc_sp = orc->add_subcommand("sparsity", "sparsity number and a witness");
  auto* orc_hit = orc->add_subcommand("hitting", "minimum hitting set by enumeration");
  for (auto* c : {orc_iev, orc_sp, orc_hit}) c->add_option("--in", orc_in, "input file, '-' for stdin");

  // selftest
  auto* self = app.add_subcommand("selftest", "run the cross-module oracle checks");

  // solve
  auto* solve = app.add_subcommand("solve", "solve A·x = b from an augmented matrix file [A | b]");
  std::string solve_in = "-", solve_method = "dense";
  std::size_t solve_w = 0;
  solve->add_option("--in", solve_in, "matrix file");
  solve->add_option("--method", solve_method, "dense|sparse")->check(CLI::IsMember({"dense", "sparse"}));
  solve->add_option("--weight-bound", solve_w, "row weight bound for the sparse solver (default: max row weight)");

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "turn a results CSV into per-metric columnar files");
  std::string plot_in = "-", plot_x = "N", plot_group = "scheme", plot_dir = ".";
  plot->add_option("--in", plot_in, "results CSV");
  plot->add_option("--x", plot_x, "column on the x axis");
  plot->add_option("--group", plot_group, "comma-separated grouping columns");
  plot->add_option("--out-dir", plot_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, err);
    return code == 0 ? 0 : 1;
  }

  if (sim->parsed()) {
    SimConfig cfg;
    if (!sim_flags.config.empty()) cfg = config_from_json(load_json(io, sim_flags.config));
    if (sim->count("--scheme")) cfg.scheme = parse_scheme(sim_flags.scheme);
    if (sim->count("--q")) cfg.q = parse_list<unsigned>(sim_flags.q, "--q").at(0);
    if (sim->count("--n")) cfg.n = parse_list<std::size_t>(sim_flags.n, "--n").at(0);
    if (sim->count("--k")) cfg.k = parse_list<std::size_t>(sim_flags.k, "--k").at(0);
    if (sim->count("--pe")) cfg.pe = parse_list<double>(sim_flags.pe, "--pe");
    if (sim->count("--pe-up")) cfg.pe_up = parse_list<double>(sim_flags.pe_up, "--pe-up").at(0);
    if (sim->count("--chunk")) cfg.chunk_size = parse_list<std::size_t>(sim_flags.chunk, "--chunk").at(0);
    sim_flags.apply_scalars(cfg, sim);
    run_grid(io, {GridPoint{cfg, 0}}, sim_flags.out);
    return 0;
  }

  if (sweep->parsed()) {
    GridSpec g;
    if (!sweep_flags.config.empty()) g = grid_from_json(load_json(io, sweep_flags.config));
    if (sweep->count("--scheme")) {
      g.schemes.clear();
      for (const auto& s : parse_names(sweep_flags.scheme)) g.schemes.push_back(parse_scheme(s));
    }
    if (sweep->count("--q")) g.qs = parse_list<unsigned>(sweep_flags.q, "--q");
    if (sweep->count("--n")) g.ns = parse_list<std::size_t>(sweep_flags.n, "--n");
    if (sweep->count("--k")) g.ks = parse_list<std::size_t>(sweep_flags.k, "--k");
    if (sweep->count("--pe")) {
      g.pes.clear();
      for (double p : parse_list<double>(sweep_flags.pe, "--pe")) g.pes.push_back({p});
    }
    if (sweep->count("--pe-up")) g.pe_ups = parse_list<double>(sweep_flags.pe_up, "--pe-up");
    if (sweep->count("--chunk")) g.chunks = parse_list<std::size_t>(sweep_flags.chunk, "--chunk");
    sweep_flags.apply_scalars(g.base, sweep);
    run_grid(io, expand_grid(g), sweep_flags.out);
    return 0;
  }

  if (iev->parsed()) {
    const Scenario s = io.read(iev_in, read_scenario);
    if (iev_method == "brute") {
      const auto x = brute_force_innovative(s);
      if (!x) {
        io.out << "EMPTY\n";
        return 0;
      }
      print_iev(io.out, s, *x);
      return 0;
    }
    Vec x;
    if (iev_method == "oh") x = oh_generate(s, iev_budget);
    else if (iev_method == "gh") x = gh_generate(s);
    else if (iev_method == "gh-sbes") x = gh_sbes(s);
    else x = fh_sbes(s);
    print_iev(io.out, s, x);
    return 0;
  }

  if (hs->parsed()) {
    const HittingInstance inst = io.read(hs_in, read_hitting);
    HittingSolution sol;
    if (hs_method == "exact") sol = exact_hitting(inst, hs_budget);
    else if (hs_method == "greedy") sol = greedy_hitting(inst);
    else sol = oracle_min_hitting(inst);
    print_hitting(io.out, sol);
    return 0;
  }

  if (gen_a->parsed()) {
    const Scenario s = gen_appendix_a(field_of(ga_q, ga_poly), ga_n);
    io.write(gen_out, [&](std::ostream& o) { write_scenario(o, s); });
    return 0;
  }

  if (gen_sat->parsed()) {
    Cnf cnf;
    if (!gs_in.empty()) {
      cnf = io.read(gs_in, read_dimacs);
    } else {
      Rng rng(gs_seed);
      cnf = random_3cnf(gs_vars, gs_clauses, rng);
    }
    if (!gs_cnf_out.empty()) io.write(gs_cnf_out, [&](std::ostream& o) { write_dimacs(o, cnf); });
    const auto red = reduce_3sat(cnf, field_of(gs_q, gs_poly));
    io.write(gen_out, [&](std::ostream& o) { write_scenario(o, red.scenario); });
    return 0;
  }

  if (gen_h->parsed()) {
    const HittingInstance inst = io.read(gh_in, read_hitting);
    unsigned q = gh_q;
    if (q == 0) {
      q = std::max<unsigned>(2, static_cast<unsigned>(inst.k()));
      while (!is_prime(q)) ++q;
    }
    const Scenario s = sparsity_instance_from_hitting(inst, field_of(q, gh_poly));
    io.write(gen_out, [&](std::ostream& o) { write_scenario(o, s); });
    return 0;
  }

  if (orc_iev->parsed()) {
    const Scenario s = io.read(orc_in, read_scenario);
    const auto x = brute_force_innovative(s);
    if (!x) io.out << "EMPTY\n";
    else print_iev(io.out, s, *x);
    return 0;
  }

  if (orc_sp->parsed()) {
    const Scenario s = io.read(orc_in, read_scenario);
    try {
      const auto r = brute_force_sparsity(s);
      io.out << "omega " << r.omega << '\n';
      print_vector(io.out, "vector", r.witness);
    } catch (const EmptyInnovativeSet&) {
      io.out << "EMPTY\n";
    }
    return 0;
  }

  if (orc_hit->parsed()) {
    print_hitting(io.out, oracle_min_hitting(io.read(orc_in, read_hitting)));
    return 0;
  }

  if (self->parsed()) return run_selftest(io.out) == 0 ? 0 : 2;

  if (solve->parsed()) {
    const Matrix aug = io.read(solve_in, read_matrix);
    if (aug.cols() < 2) throw UsageError("augmented matrix needs at least two columns");
    std::vector<std::size_t> left(aug.cols() - 1);
    std::iota(left.begin(), left.end(), std::size_t{0});
    const std::vector<std::size_t> last{aug.cols() - 1};
    const Matrix a = aug.select_columns(left);
    const Matrix b = aug.select_columns(last);
    std::size_t w = solve_w;
    if (w == 0)
      for (std::size_t i = 0; i < a.rows(); ++i) w = std::max(w, hamming_weight(a.row(i)));
    const auto sol = solve_method == "dense" ? solve_dense(a, b) : solve_sparse(a, b, std::max<std::size_t>(w, 1));
    if (!sol) {
      io.out << "INCONSISTENT\n";
      return 0;
    }
    io.out << "rank " << sol->rank << "\nx";
    for (std::size_t i = 0; i < sol->x.rows(); ++i) io.out << ' ' << sol->x(i, 0);
    io.out << '\n';
    return 0;
  }

  if (plot->parsed()) {
    const auto files = io.read(plot_in, [&](std::istream& s) {
      return emit_plotdata(s, plot_x, parse_names(plot_group), plot_dir);
    });
    for (const auto& f : files) io.out << f.string() << '\n';
    return 0;
  }
  return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  // "iev solve" and "hitset solve" are spellings of the dashed commands.
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() >= 3 && args[2] == "solve" && (args[1] == "iev" || args[1] == "hitset")) {
    args[1] += "-solve";
    args.erase(args.begin() + 2);
  }
  std::vector<const char*> ptrs;
  for (const auto& a : args) ptrs.push_back(a.c_str());

  Io io{in, out};
  try {
    return dispatch(static_cast<int>(ptrs.size()), ptrs.data(), io, err);
  } catch (const UsageError& e) {
    err << "ebc: " << e.what() << '\n';
    return 1;
  } catch (const BadParams& e) {
    err << "ebc: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "ebc: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ebc
