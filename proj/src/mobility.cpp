#include "dtnsim/mobility.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

namespace dtnsim {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

Trace::Trace(std::size_t node_count, Seconds duration, Seconds tick)
    : node_count_(node_count), duration_(duration), tick_(tick) {
  if (!(tick > 0)) throw TraceError("tick must be positive");
  if (!(duration >= 0)) throw TraceError("duration must be non-negative");
  const double steps = duration / tick;
  if (std::abs(steps - std::round(steps)) > 1e-9)
    throw TraceError("duration must be a multiple of tick");
  samples_ = static_cast<std::size_t>(std::llround(steps)) + 1;
  positions_.resize(samples_ * node_count_);
}

WaypointWalker::WaypointWalker(Position start, const WaypointParams& params, Rng rng)
    : params_(params), rng_(rng), pos_(start), target_(start) {
  pick_leg();
}

void WaypointWalker::begin_leg(Position target, double speed) {
  target_ = target;
  speed_ = speed;
  pause_left_ = 0;
}

void WaypointWalker::pick_leg() {
  target_ = {rng_.uniform(0.0, params_.arena.width), rng_.uniform(0.0, params_.arena.height)};
  speed_ = rng_.uniform(params_.speed_min, params_.speed_max);
}

void WaypointWalker::advance(Seconds dt) {
  while (dt > 0) {
    if (pause_left_ > 0) {
      const Seconds waited = std::min(dt, pause_left_);
      pause_left_ -= waited;
      dt -= waited;
      if (pause_left_ > 0) return;
      pick_leg();
      continue;
    }
    const double remaining = distance(pos_, target_);
    const double reach = speed_ * dt;
    if (remaining > reach) {
      pos_.x += (target_.x - pos_.x) / remaining * reach;
      pos_.y += (target_.y - pos_.y) / remaining * reach;
      return;
    }
    pos_ = target_;
    dt -= remaining / speed_;
    if (params_.pause > 0)
      pause_left_ = params_.pause;
    else
      pick_leg();
  }
}

Trace generate_waypoint_trace(const WaypointParams& params, std::size_t node_count, Seconds duration,
                              Seconds tick) {
  const Arena& arena = params.arena;
  if (!(arena.width > 0 && arena.height > 0)) throw ConfigError("area", "arena sides must be positive");
  if (!(params.speed_min > 0 && params.speed_min <= params.speed_max))
    throw ConfigError("speed", "need 0 < speed_min <= speed_max");
  if (!(params.pause >= 0)) throw ConfigError("pause", "must be non-negative");
  if (!(duration > 0)) throw ConfigError("duration", "must be positive");

  Trace trace(node_count, duration, tick);
  for (std::size_t n = 0; n < node_count; ++n) {
    Rng rng(derive_seed(params.seed, n));
    const Position start{rng.uniform(0.0, arena.width), rng.uniform(0.0, arena.height)};
    WaypointWalker walker(start, params, rng);
    trace.at(0, n) = walker.position();
    for (std::size_t k = 1; k < trace.sample_count(); ++k) {
      walker.advance(tick);
      trace.at(k, n) = walker.position();
    }
  }
  return trace;
}

namespace {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  std::string s(buf.data(), end);
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    s += ".000";
  } else {
    const std::size_t fraction = s.size() - dot - 1;
    if (fraction < 3) s.append(3 - fraction, '0');
  }
  return s;
}

template <typename T>
bool parse_value(std::string_view token, T& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

std::string_view header_value(std::string_view field, std::string_view key, std::size_t line_no) {
  if (!field.starts_with(key) || field.size() <= key.size() || field[key.size()] != '=')
    throw TraceParseError(line_no, "expected '" + std::string(key) + "=<value>' in header");
  return field.substr(key.size() + 1);
}

}  // namespace

void write_trace(std::ostream& out, const Trace& trace) {
  out << "nodes=" << trace.node_count() << " duration=" << format_number(trace.duration())
      << " tick=" << format_number(trace.tick()) << '\n';
  for (std::size_t k = 0; k < trace.sample_count(); ++k) {
    const std::string t = format_number(static_cast<double>(k) * trace.tick());
    for (std::size_t n = 0; n < trace.node_count(); ++n) {
      const Position p = trace.at(k, n);
      out << t << ',' << n << ',' << format_number(p.x) << ',' << format_number(p.y) << '\n';
    }
  }
}

Trace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw TraceParseError(1, "missing header");

  std::istringstream header(line);
  std::string f_nodes, f_duration, f_tick, extra;
  if (!(header >> f_nodes >> f_duration >> f_tick) || (header >> extra))
    throw TraceParseError(1, "header must be 'nodes=<n> duration=<s> tick=<s>'");
  std::size_t nodes = 0;
  double duration = 0, tick = 0;
  if (!parse_value(header_value(f_nodes, "nodes", 1), nodes)) throw TraceParseError(1, "bad node count");
  if (!parse_value(header_value(f_duration, "duration", 1), duration)) throw TraceParseError(1, "bad duration");
  if (!parse_value(header_value(f_tick, "tick", 1), tick)) throw TraceParseError(1, "bad tick");

  Trace trace;
  try {
    trace = Trace(nodes, duration, tick);
  } catch (const TraceError& e) {
    throw TraceParseError(1, e.what());
  }
  std::vector<bool> seen(trace.sample_count() * nodes, false);

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (std::size_t f = 0; f < 4; ++f) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (f == 3))
        throw TraceParseError(line_no, "expected 4 comma-separated fields 't,node,x,y'");
      fields[f] = rest.substr(0, comma);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    double t = 0, x = 0, y = 0;
    std::size_t node = 0;
    if (!parse_value(fields[0], t) || !parse_value(fields[1], node) || !parse_value(fields[2], x) ||
        !parse_value(fields[3], y))
      throw TraceParseError(line_no, "malformed row '" + line + "'");
    const double steps = t / tick;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-6 || rounded < 0 || rounded >= static_cast<double>(trace.sample_count()))
      throw TraceParseError(line_no, "time " + std::string(fields[0]) + " is not a tick inside the trace");
    if (node >= nodes) throw TraceParseError(line_no, "node " + std::to_string(node) + " out of range");
    const auto k = static_cast<std::size_t>(rounded);
    if (seen[k * nodes + node]) throw TraceParseError(line_no, "duplicate sample");
    seen[k * nodes + node] = true;
    trace.at(k, node) = {x, y};
  }

  for (std::size_t k = 0; k < trace.sample_count(); ++k)
    for (std::size_t n = 0; n < nodes; ++n)
      if (!seen[k * nodes + n])
        throw IncompleteTraceError("missing sample for node " + std::to_string(n) + " at t=" +
                                   format_number(static_cast<double>(k) * tick));
  return trace;
}

void save_trace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw TraceError("cannot open " + path.string() + " for writing");
  write_trace(out, trace);
  if (!out) throw TraceError("failed writing " + path.string());
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open " + path.string());
  return read_trace(in);
}

}  // namespace dtnsim
