#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "dtnsim/rng.hpp"
#include "dtnsim/types.hpp"

namespace dtnsim {

struct Arena {
  double width = 1000.0;
  double height = 1500.0;
};

struct Position {
  double x = 0;
  double y = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

double distance(Position a, Position b);

struct WaypointParams {
  Arena arena;
  double speed_min = 1.0;  ///< m/s
  double speed_max = 1.0;
  Seconds pause = 0;
  std::uint64_t seed = 1;
};

/// Node positions sampled every `tick` seconds over [0, duration].
class Trace {
 public:
  Trace() = default;
  Trace(std::size_t node_count, Seconds duration, Seconds tick);

  [[nodiscard]] std::size_t node_count() const { return node_count_; }
  [[nodiscard]] Seconds duration() const { return duration_; }
  [[nodiscard]] Seconds tick() const { return tick_; }
  [[nodiscard]] std::size_t sample_count() const { return samples_; }

  [[nodiscard]] std::span<const Position> at_tick(std::size_t k) const {
    return {positions_.data() + k * node_count_, node_count_};
  }
  [[nodiscard]] Position& at(std::size_t k, std::size_t node) { return positions_[k * node_count_ + node]; }
  [[nodiscard]] Position at(std::size_t k, std::size_t node) const { return positions_[k * node_count_ + node]; }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::size_t node_count_ = 0;
  Seconds duration_ = 0;
  Seconds tick_ = 1;
  std::size_t samples_ = 0;
  std::vector<Position> positions_;
};

/// Random-waypoint kinematics for one node: move straight to a uniform
/// random waypoint at a uniform random speed, pause, repeat.
class WaypointWalker {
 public:
  WaypointWalker(Position start, const WaypointParams& params, Rng rng);

  /// Replaces the current leg; used to drive the walker along a known path.
  void begin_leg(Position target, double speed);
  void advance(Seconds dt);

  [[nodiscard]] Position position() const { return pos_; }
  [[nodiscard]] Position target() const { return target_; }

 private:
  void pick_leg();

  WaypointParams params_;
  Rng rng_;
  Position pos_;
  Position target_;
  double speed_ = 0;
  Seconds pause_left_ = 0;
};

/// Deterministic for a fixed seed. Node n draws from its own stream
/// derive_seed(seed, n), so traces do not depend on node iteration order.
Trace generate_waypoint_trace(const WaypointParams& params, std::size_t node_count, Seconds duration, Seconds tick);

/// Header "nodes=<n> duration=<s> tick=<s>" followed by "t,node,x,y" rows.
/// Numbers are written in shortest round-trip form with at least three
/// fractional digits, so load(save(t)) == t.
void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);
void save_trace(const Trace& trace, const std::filesystem::path& path);
Trace load_trace(const std::filesystem::path& path);

}  // namespace dtnsim
