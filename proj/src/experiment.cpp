#include "dtnsim/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dtnsim {

namespace {

constexpr std::array<std::string_view, 24> kKeys = {
    "protocol", "protocols", "ttl", "ttls", "nodes", "speed", "runs", "seed",
    "area", "width", "height", "comm_range", "window_size", "threshold",
    "messages", "generation_span", "hello_period", "missed_hello_limit", "pause",
    "threads", "out", "trace", "dump_trace", "event_log",
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(std::string(key), "not a number: '" + std::string(text) + "'");
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number<T>(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double positive(std::string_view key, double v) {
  if (!(v > 0)) throw ConfigError(std::string(key), "must be positive");
  return v;
}

}  // namespace

ExperimentSpec default_experiment() {
  ExperimentSpec spec;
  spec.protocols = {Protocol::Epidemic, Protocol::Friendship, Protocol::ProposedI, Protocol::ProposedII};
  spec.ttls = {60, 120, 180, 240, 300, 360};
  spec.node_counts = {25, 75};
  spec.speeds = {0.5, 1.0, 1.25, 1.5};
  return spec;
}

std::span<const std::string_view> setting_keys() { return kKeys; }

void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  SimConfig& c = spec.base;
  const std::string k(key);

  if (key == "protocol" || key == "protocols") {
    spec.protocols.clear();
    std::string_view rest = value;
    while (true) {
      const auto comma = rest.find(',');
      spec.protocols.push_back(parse_protocol(trim(rest.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else if (key == "ttl" || key == "ttls") {
    spec.ttls = parse_list<double>(key, value);
    for (double t : spec.ttls) positive(key, t);
  } else if (key == "nodes") {
    spec.node_counts = parse_list<std::size_t>(key, value);
    for (auto n : spec.node_counts)
      if (n < 2) throw ConfigError(k, "need at least 2 nodes");
  } else if (key == "speed") {
    spec.speeds = parse_list<double>(key, value);
    for (double s : spec.speeds) positive(key, s);
  } else if (key == "runs") {
    spec.runs = parse_number<int>(key, value);
    if (spec.runs < 1) throw ConfigError(k, "must be at least 1");
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "area") {
    const auto x = value.find_first_of("xX*");
    if (x == std::string_view::npos) throw ConfigError(k, "expected <width>x<height>");
    c.arena.width = positive(key, parse_number<double>(key, value.substr(0, x)));
    c.arena.height = positive(key, parse_number<double>(key, value.substr(x + 1)));
  } else if (key == "width") {
    c.arena.width = positive(key, parse_number<double>(key, value));
  } else if (key == "height") {
    c.arena.height = positive(key, parse_number<double>(key, value));
  } else if (key == "comm_range") {
    c.comm_range = positive(key, parse_number<double>(key, value));
  } else if (key == "window_size") {
    c.window_size = positive(key, parse_number<double>(key, value));
  } else if (key == "threshold") {
    c.threshold = parse_number<double>(key, value);
    if (!(c.threshold >= 0)) throw ConfigError(k, "must be non-negative");
  } else if (key == "messages") {
    c.message_count = parse_number<std::size_t>(key, value);
    if (c.message_count == 0) throw ConfigError(k, "must be positive");
  } else if (key == "generation_span") {
    c.generation_span = parse_number<double>(key, value);
    if (!(c.generation_span >= 0)) throw ConfigError(k, "must be non-negative");
  } else if (key == "hello_period") {
    c.hello_period = positive(key, parse_number<double>(key, value));
  } else if (key == "missed_hello_limit") {
    c.missed_hello_limit = parse_number<int>(key, value);
    if (c.missed_hello_limit < 1) throw ConfigError(k, "must be at least 1");
  } else if (key == "pause") {
    c.pause = parse_number<double>(key, value);
    if (!(c.pause >= 0)) throw ConfigError(k, "must be non-negative");
  } else if (key == "threads") {
    spec.threads = parse_number<unsigned>(key, value);
  } else if (key == "out") {
    spec.out_path = value;
  } else if (key == "trace") {
    spec.trace_path = value;
  } else if (key == "dump_trace") {
    spec.dump_trace_path = value;
  } else if (key == "event_log") {
    spec.event_log_path = value;
  } else {
    throw ConfigError(k, "unknown key");
  }
}

void apply_config_text(ExperimentSpec& spec, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(body), "line " + std::to_string(line_no) + " is not key=value");
    apply_setting(spec, body.substr(0, eq), body.substr(eq + 1));
  }
}

void apply_config_file(ExperimentSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(spec, text.str());
}

void apply_env(ExperimentSpec& spec, const std::function<const char*(const char*)>& lookup) {
  for (std::string_view key : kKeys) {
    std::string name = "DTNSIM_";
    for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (const char* value = lookup(name.c_str())) apply_setting(spec, key, value);
  }
}

void validate(const ExperimentSpec& spec) {
  if (spec.protocols.empty()) throw ConfigError("protocol", "sweep list is empty");
  if (spec.ttls.empty()) throw ConfigError("ttl", "sweep list is empty");
  if (spec.node_counts.empty() && spec.trace_path.empty()) throw ConfigError("nodes", "sweep list is empty");
  if (spec.speeds.empty() && spec.trace_path.empty()) throw ConfigError("speed", "sweep list is empty");
  if (spec.runs < 1) throw ConfigError("runs", "must be at least 1");
  SimConfig probe = spec.base;
  probe.node_count = std::max<std::size_t>(2, probe.node_count);
  probe.validate();
}

SimConfig cell_config(const ExperimentSpec& spec, const CellResult& cell) {
  SimConfig c = spec.base;
  c.protocol = cell.protocol;
  c.ttl = cell.ttl;
  c.node_count = cell.nodes;
  if (!c.trace) c.speed = cell.speed;
  return c;
}

std::vector<CellResult> run_experiment(
    const ExperimentSpec& spec,
    const std::function<void(const CellResult&, std::size_t, std::size_t)>& progress) {
  validate(spec);
  ExperimentSpec resolved = spec;
  std::vector<std::size_t> node_counts = spec.node_counts;
  std::vector<double> speeds = spec.speeds;
  if (!spec.trace_path.empty()) {
    resolved.base.trace = std::make_shared<const Trace>(load_trace(spec.trace_path));
  }
  if (resolved.base.trace) {
    node_counts = {resolved.base.trace->node_count()};
    speeds = {0.0};
  }

  std::vector<CellResult> cells;
  for (std::size_t nodes : node_counts)
    for (double speed : speeds)
      for (Seconds ttl : spec.ttls)
        for (Protocol p : spec.protocols) {
          CellResult cell;
          cell.protocol = p;
          cell.nodes = nodes;
          cell.speed = speed;
          cell.ttl = ttl;
          cells.push_back(std::move(cell));
        }

  for (std::size_t i = 0; i < cells.size(); ++i) {
    CellResult& cell = cells[i];
    try {
      cell.report = replicate(cell_config(resolved, cell), spec.runs, spec.threads);
    } catch (const Error& e) {
      cell.error = e.what();
    }
    if (progress) progress(cell, i, cells.size());
  }
  return cells;
}

void write_results_csv(std::ostream& out, const ExperimentSpec& spec, std::span<const CellResult> cells) {
  out << "protocol,nodes,speed,ttl,runs,delivery_ratio,delivery_cost,delivery_efficiency,status";
  for (int r = 0; r < spec.runs; ++r) out << fmt::format(",run{0}_ratio,run{0}_cost,run{0}_efficiency", r);
  out << '\n';
  for (const CellResult& cell : cells) {
    out << fmt::format("{},{},{},{},{}", to_string(cell.protocol), cell.nodes, cell.speed, cell.ttl, spec.runs);
    if (!cell.report) {
      out << ",,,,failed";
      for (int r = 0; r < spec.runs; ++r) out << ",,,";
      out << '\n';
      continue;
    }
    const MetricsReport& m = cell.report->mean;
    out << fmt::format(",{},{},{},ok", m.delivery_ratio, m.delivery_cost, m.delivery_efficiency);
    for (const MetricsReport& r : cell.report->runs)
      out << fmt::format(",{},{},{}", r.delivery_ratio, r.delivery_cost, r.delivery_efficiency);
    out << '\n';
  }
}

}  // namespace dtnsim
