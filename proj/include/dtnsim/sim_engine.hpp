#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dtnsim/mobility.hpp"
#include "dtnsim/routing.hpp"

namespace dtnsim {

struct SimConfig {
  std::size_t node_count = 25;
  Arena arena;
  double speed = 1.0;  ///< fixed waypoint speed, m/s
  Seconds pause = 0;
  /// Predefined mobility. When set it replaces the waypoint model and its
  /// node count wins over node_count.
  std::shared_ptr<const Trace> trace;

  double comm_range = 3.0;
  Seconds window_size = 600;
  double threshold = kDefaultThreshold;
  Seconds ttl = 360;
  std::size_t message_count = 1000;
  Seconds generation_span = 1000;
  Seconds hello_period = 1;
  int missed_hello_limit = 3;
  Protocol protocol = Protocol::ProposedI;
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
  /// Trace length that always outlasts message resolution.
  [[nodiscard]] Seconds required_duration(Seconds tick = 1) const;
  [[nodiscard]] std::uint64_t mobility_seed() const;
  [[nodiscard]] std::uint64_t message_seed() const;
};

struct ContactEvent {
  enum class Kind { Encounter, Depart };
  Kind kind = Kind::Encounter;
  NodeId a;  ///< a < b
  NodeId b;
  Seconds time = 0;
  friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

/// Hello-based contact tracking for every node pair.
///
/// A pair encounters at the first tick its distance is <= range. A pair in
/// contact departs once it has missed `missed_hello_limit` consecutive
/// hellos; the departure is stamped at the first missed tick.
class ContactDetector {
 public:
  ContactDetector(std::size_t node_count, double range, int missed_hello_limit);

  /// Events come out in ascending pair order.
  std::vector<ContactEvent> detect(std::span<const Position> positions, Seconds now);

  /// Pairs within range at the last detect() call, ascending.
  [[nodiscard]] const std::vector<std::pair<NodeId, NodeId>>& heard() const { return heard_; }
  [[nodiscard]] bool in_contact(NodeId a, NodeId b) const;

 private:
  struct PairState {
    bool in_contact = false;
    int misses = 0;
    Seconds first_miss = 0;
  };
  [[nodiscard]] std::size_t pair_index(std::size_t a, std::size_t b) const;

  std::size_t node_count_;
  double range_;
  int missed_limit_;
  std::vector<PairState> pairs_;
  std::vector<std::pair<NodeId, NodeId>> heard_;
};

/// Messages with creation times uniform on the tick grid over
/// [window_size, window_size + generation_span], sources uniform, and
/// destinations uniform over the other nodes. Sorted by creation time, ids
/// assigned in that order.
std::vector<Message> schedule_messages(const SimConfig& config, std::uint64_t seed);

struct MessageEvent {
  enum class Kind { Generated, Forwarded, Delivered, Expired };
  Seconds time = 0;
  Kind kind = Kind::Generated;
  MessageId id = 0;
  NodeId from;
  std::optional<NodeId> to;
  friend bool operator==(const MessageEvent&, const MessageEvent&) = default;
};

/// CSV "time,event,msg_id,from,to" with event in {GEN, FWD, DLV, EXP}.
void write_event_log(std::ostream& out, std::span<const MessageEvent> events);

struct MetricsReport {
  std::size_t generated = 0;
  std::size_t delivered = 0;
  std::size_t expired = 0;  ///< generated but never delivered
  std::uint64_t total_forwards = 0;
  double delivery_ratio = 0;
  double delivery_cost = 0;
  /// ratio / cost; 0 with efficiency_defined == false when cost is 0.
  double delivery_efficiency = 0;
  bool efficiency_defined = false;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

MetricsReport make_report(std::size_t generated, std::size_t delivered, std::uint64_t forwards);

/// One deterministic time-stepped run. Each step handles one trace sample:
/// contacts and windows, message injection, then on hello ticks the social
/// round, hello exchange and routing, and finally TTL expiry.
class Simulation {
 public:
  Simulation(SimConfig config, std::shared_ptr<const Trace> trace, std::vector<Message> schedule);

  void record_message_events(bool on) { record_events_ = on; }

  [[nodiscard]] bool finished() const;
  /// Throws TraceExhaustedError if called past the last trace sample.
  void step();
  void run_to_end();

  [[nodiscard]] MetricsReport report() const;
  [[nodiscard]] Seconds now() const { return now_; }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] const NodeState& node(NodeId id) const { return nodes_.at(id.value); }
  [[nodiscard]] const std::vector<ContactEvent>& contact_events() const { return contact_events_; }
  [[nodiscard]] const std::vector<MessageEvent>& message_events() const { return message_events_; }

 private:
  void update_contacts(std::span<const Position> positions);
  void inject_messages();
  void social_round();
  void route(NodeState& from, NodeState& to, const HelloPayload& to_hello);
  void expire_messages();
  void log(MessageEvent::Kind kind, MessageId id, NodeId from, std::optional<NodeId> to);

  SimConfig config_;
  std::shared_ptr<const Trace> trace_;
  std::vector<Message> schedule_;
  std::vector<NodeState> nodes_;
  ContactDetector detector_;

  std::size_t next_tick_ = 0;
  Seconds now_ = 0;
  std::size_t next_message_ = 0;
  std::size_t hello_every_ = 1;
  std::vector<bool> delivered_;
  std::vector<std::size_t> pending_;  ///< schedule indices injected but not yet resolved
  std::size_t delivered_count_ = 0;
  std::size_t expired_count_ = 0;
  std::uint64_t forwards_ = 0;

  bool record_events_ = false;
  std::vector<ContactEvent> contact_events_;
  std::vector<MessageEvent> message_events_;
};

/// config.trace if set, otherwise a 1 s waypoint trace of required_duration()
/// seeded from config.mobility_seed().
std::shared_ptr<const Trace> trace_for(const SimConfig& config);

/// Builds the trace (from config.trace or the waypoint model) and message
/// schedule for config.seed and runs to termination.
MetricsReport run(const SimConfig& config, std::vector<MessageEvent>* events = nullptr);

struct ReplicateReport {
  MetricsReport mean;  ///< counts summed, metrics averaged over runs
  std::vector<MetricsReport> runs;
};

/// Runs seeds config.seed + 0 .. runs - 1. `threads` only changes wall time.
ReplicateReport replicate(const SimConfig& config, int runs, unsigned threads = 1);

}  // namespace dtnsim
