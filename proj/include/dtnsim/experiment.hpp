#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtnsim/sim_engine.hpp"

namespace dtnsim {

/// A parameter sweep: protocol x TTL x node count x speed, each cell
/// replicated `runs` times from the same base seed.
struct ExperimentSpec {
  SimConfig base;
  std::vector<Protocol> protocols;
  std::vector<Seconds> ttls;
  std::vector<std::size_t> node_counts;
  std::vector<double> speeds;
  int runs = 10;
  unsigned threads = 1;
  std::string out_path;  ///< empty writes to stdout
  std::string trace_path;
  std::string dump_trace_path;
  std::string event_log_path;
};

/// Evaluation defaults: 1000x1500 m arena, 3 m range, 600 s window,
/// threshold 0.01, 1000 messages, 25/75 nodes, four speeds, TTL 60..360.
ExperimentSpec default_experiment();

/// Keys accepted by apply_setting, in documentation order.
std::span<const std::string_view> setting_keys();

/// Sets one key from its text value. Throws ConfigError naming the key for
/// unknown keys and invalid values.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// Flat "key=value" lines; blank lines and '#' comments are skipped.
void apply_config_text(ExperimentSpec& spec, std::string_view text);
void apply_config_file(ExperimentSpec& spec, const std::string& path);

/// Applies DTNSIM_<KEY> variables (key upper-cased) through `lookup`.
void apply_env(ExperimentSpec& spec, const std::function<const char*(const char*)>& lookup);

void validate(const ExperimentSpec& spec);

struct CellResult {
  Protocol protocol = Protocol::Epidemic;
  std::size_t nodes = 0;
  double speed = 0;  ///< 0 when mobility comes from a trace file
  Seconds ttl = 0;
  std::optional<ReplicateReport> report;
  std::string error;  ///< set when the cell failed
};

/// The SimConfig a cell runs with (before per-run seed offsets).
SimConfig cell_config(const ExperimentSpec& spec, const CellResult& cell);

/// Cells in a fixed order: nodes, speed, ttl, protocol. A failing cell is
/// recorded and the sweep continues.
std::vector<CellResult> run_experiment(
    const ExperimentSpec& spec,
    const std::function<void(const CellResult&, std::size_t index, std::size_t total)>& progress = {});

/// Header plus one row per cell:
/// protocol,nodes,speed,ttl,runs,delivery_ratio,delivery_cost,delivery_efficiency,status
/// followed by run<r>_ratio,run<r>_cost,run<r>_efficiency for each run.
void write_results_csv(std::ostream& out, const ExperimentSpec& spec, std::span<const CellResult> cells);

}  // namespace dtnsim
