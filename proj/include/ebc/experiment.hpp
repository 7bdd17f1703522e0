#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebc/simulate.hpp"

namespace ebc {

// Reads SimConfig fields (n, k, q, poly, scheme, pe, pe_up, trials,
// master_seed, payload_len, chunk_size, lt_c, lt_delta, max_slots,
// hitting_budget) on top of `base`. Upper-case N and K are accepted too.
// Unknown keys are rejected with BadParams.
SimConfig config_from_json(const nlohmann::json& j, SimConfig base = {});
nlohmann::json config_to_json(const SimConfig& cfg);

// Cartesian product of the listed values; empty axes keep the base value.
struct GridSpec {
  SimConfig base;
  std::vector<Scheme> schemes;
  std::vector<unsigned> qs;
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ks;
  std::vector<std::vector<double>> pes;
  std::vector<double> pe_ups;
  std::vector<std::size_t> chunks;
};

struct GridPoint {
  SimConfig cfg;
  // Derived from (N, K, pe) only: points that differ in scheme, q, pe_up or
  // chunk size see the same channel realizations.
  std::size_t channel_index = 0;
};

// Order: q, N, K, pe, pe_up, chunk size, then scheme innermost.
std::vector<GridPoint> expand_grid(const GridSpec& spec);

// Sweep document: SimConfig fields at top level plus an optional "grid"
// object whose keys (scheme, q, n, k, pe, pe_up, chunk_size) hold lists.
GridSpec grid_from_json(const nlohmann::json& j);

std::uint64_t trial_seed(std::uint64_t master, std::size_t channel_index, std::size_t trial);

// EBC_THREADS, 0 or unset meaning hardware concurrency.
unsigned thread_count_from_env();

// results[p][t] is trial t of point p, independent of the thread count.
std::vector<std::vector<TrialMetrics>> run_experiment(const std::vector<GridPoint>& points, unsigned threads);

void write_csv_header(std::ostream& out);
// One row per trial, then one aggregate row per point (trial = "agg",
// empty seed, metric cells "mean:std").
void write_csv(std::ostream& out, const std::vector<GridPoint>& points,
               const std::vector<std::vector<TrialMetrics>>& results);

// From trial rows of a CSV, writes <metric>_vs_<x>.dat into out_dir: one
// block per group ("# key=value ..."), lines "x mean std n" sorted by x.
// Returns the written paths.
std::vector<std::filesystem::path> emit_plotdata(std::istream& csv, const std::string& x,
                                                 const std::vector<std::string>& group_by,
                                                 const std::filesystem::path& out_dir);

}  // namespace ebc
