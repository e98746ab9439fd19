#include "dtnsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <set>

namespace dtnsim {

void SimConfig::validate() const {
  if (!trace && node_count < 2) throw ConfigError("nodes", "need at least 2 nodes");
  if (trace && trace->node_count() < 2) throw ConfigError("trace", "need at least 2 nodes");
  if (!trace) {
    if (!(arena.width > 0 && arena.height > 0)) throw ConfigError("area", "arena sides must be positive");
    if (!(speed > 0)) throw ConfigError("speed", "must be positive");
    if (!(pause >= 0)) throw ConfigError("pause", "must be non-negative");
  }
  if (!(comm_range > 0)) throw ConfigError("comm_range", "must be positive");
  if (!(window_size > 0)) throw ConfigError("window_size", "must be positive");
  if (!(threshold >= 0)) throw ConfigError("threshold", "must be non-negative");
  if (!(ttl > 0)) throw ConfigError("ttl", "must be positive");
  if (message_count == 0) throw ConfigError("messages", "must be positive");
  if (!(generation_span >= 0)) throw ConfigError("generation_span", "must be non-negative");
  if (!(hello_period > 0)) throw ConfigError("hello_period", "must be positive");
  if (missed_hello_limit < 1) throw ConfigError("missed_hello_limit", "must be at least 1");
  const Seconds tick = trace ? trace->tick() : 1.0;
  const double ratio = hello_period / tick;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1)
    throw ConfigError("hello_period", "must be a positive multiple of the tick");
}

Seconds SimConfig::required_duration(Seconds tick) const {
  const Seconds needed = window_size + generation_span + ttl + 2 * tick;
  return std::ceil(needed / tick) * tick;
}

std::uint64_t SimConfig::mobility_seed() const { return derive_seed(seed, 0x6d6f62696c697479ULL); }
std::uint64_t SimConfig::message_seed() const { return derive_seed(seed, 0x6d65737361676573ULL); }

ContactDetector::ContactDetector(std::size_t node_count, double range, int missed_hello_limit)
    : node_count_(node_count),
      range_(range),
      missed_limit_(missed_hello_limit),
      pairs_(node_count * (node_count > 0 ? node_count - 1 : 0) / 2) {}

std::size_t ContactDetector::pair_index(std::size_t a, std::size_t b) const {
  // Row-major upper triangle, a < b.
  return a * node_count_ - a * (a + 1) / 2 + (b - a - 1);
}

bool ContactDetector::in_contact(NodeId a, NodeId b) const {
  if (a == b) return false;
  if (b < a) std::swap(a, b);
  return pairs_[pair_index(a.value, b.value)].in_contact;
}

std::vector<ContactEvent> ContactDetector::detect(std::span<const Position> positions, Seconds now) {
  std::vector<ContactEvent> events;
  heard_.clear();
  const double range_sq = range_ * range_;
  for (std::size_t a = 0; a < node_count_; ++a) {
    for (std::size_t b = a + 1; b < node_count_; ++b) {
      const double dx = positions[a].x - positions[b].x;
      const double dy = positions[a].y - positions[b].y;
      const bool heard = dx * dx + dy * dy <= range_sq;
      PairState& s = pairs_[pair_index(a, b)];
      const NodeId na{static_cast<std::uint32_t>(a)};
      const NodeId nb{static_cast<std::uint32_t>(b)};
      if (heard) heard_.emplace_back(na, nb);

      if (!s.in_contact) {
        if (heard) {
          s = {true, 0, 0};
          events.push_back({ContactEvent::Kind::Encounter, na, nb, now});
        }
      } else if (heard) {
        s.misses = 0;
      } else {
        if (s.misses++ == 0) s.first_miss = now;
        if (s.misses >= missed_limit_) {
          events.push_back({ContactEvent::Kind::Depart, na, nb, s.first_miss});
          s = {};
        }
      }
    }
  }
  return events;
}

std::vector<Message> schedule_messages(const SimConfig& config, std::uint64_t seed) {
  const std::size_t nodes = config.trace ? config.trace->node_count() : config.node_count;
  if (nodes < 2) throw ConfigError("nodes", "need at least 2 nodes to pick distinct endpoints");
  const Seconds tick = config.trace ? config.trace->tick() : 1.0;
  const auto first = static_cast<std::uint64_t>(std::ceil(config.window_size / tick));
  const auto last = static_cast<std::uint64_t>(std::floor((config.window_size + config.generation_span) / tick));

  Rng rng(seed);
  std::vector<Message> out;
  out.reserve(config.message_count);
  for (std::size_t n = 0; n < config.message_count; ++n) {
    Message m;
    m.created_at = static_cast<double>(rng.uniform_int(first, std::max(first, last))) * tick;
    m.src = NodeId{static_cast<std::uint32_t>(rng.uniform_int(0, nodes - 1))};
    // Uniform over the other nodes: draw from n-1 slots and skip over src.
    auto d = static_cast<std::uint32_t>(rng.uniform_int(0, nodes - 2));
    if (d >= m.src.value) ++d;
    m.dst = NodeId{d};
    m.ttl = config.ttl;
    out.push_back(m);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Message& a, const Message& b) { return a.created_at < b.created_at; });
  for (std::size_t n = 0; n < out.size(); ++n) out[n].id = n;
  return out;
}

void write_event_log(std::ostream& out, std::span<const MessageEvent> events) {
  static constexpr const char* kNames[] = {"GEN", "FWD", "DLV", "EXP"};
  out << "time,event,msg_id,from,to\n";
  for (const auto& e : events) {
    out << e.time << ',' << kNames[static_cast<int>(e.kind)] << ',' << e.id << ',' << e.from << ',';
    if (e.to) out << *e.to;
    out << '\n';
  }
}

MetricsReport make_report(std::size_t generated, std::size_t delivered, std::uint64_t forwards) {
  MetricsReport r;
  r.generated = generated;
  r.delivered = delivered;
  r.expired = generated - delivered;
  r.total_forwards = forwards;
  if (generated > 0) {
    r.delivery_ratio = static_cast<double>(delivered) / static_cast<double>(generated);
    r.delivery_cost = static_cast<double>(forwards) / static_cast<double>(generated);
  }
  if (r.delivery_cost > 0) {
    r.delivery_efficiency = r.delivery_ratio / r.delivery_cost;
    r.efficiency_defined = true;
  }
  return r;
}

Simulation::Simulation(SimConfig config, std::shared_ptr<const Trace> trace, std::vector<Message> schedule)
    : config_(std::move(config)),
      trace_(std::move(trace)),
      schedule_(std::move(schedule)),
      detector_(trace_->node_count(), config_.comm_range, config_.missed_hello_limit) {
  config_.validate();
  std::stable_sort(schedule_.begin(), schedule_.end(),
                   [](const Message& a, const Message& b) { return a.created_at < b.created_at; });
  MessageId max_id = 0;
  std::set<MessageId> ids;
  for (const auto& m : schedule_) {
    if (!ids.insert(m.id).second) throw ConfigError("messages", "duplicate message id " + std::to_string(m.id));
    if (m.src == m.dst) throw ConfigError("messages", "message " + std::to_string(m.id) + " has src == dst");
    if (m.src.value >= trace_->node_count() || m.dst.value >= trace_->node_count())
      throw ConfigError("messages", "message " + std::to_string(m.id) + " names an unknown node");
    max_id = std::max(max_id, m.id);
  }
  delivered_.assign(schedule_.empty() ? 0 : max_id + 1, false);
  nodes_.reserve(trace_->node_count());
  for (std::size_t n = 0; n < trace_->node_count(); ++n)
    nodes_.emplace_back(NodeId{static_cast<std::uint32_t>(n)}, config_.threshold);
  hello_every_ = static_cast<std::size_t>(std::llround(config_.hello_period / trace_->tick()));
}

bool Simulation::finished() const { return next_message_ == schedule_.size() && pending_.empty(); }

void Simulation::step() {
  if (next_tick_ >= trace_->sample_count())
    throw TraceExhaustedError("mobility trace ended at t=" + std::to_string(trace_->duration()) + " with " +
                              std::to_string(pending_.size() + schedule_.size() - next_message_) +
                              " messages undecided");
  now_ = static_cast<double>(next_tick_) * trace_->tick();
  update_contacts(trace_->at_tick(next_tick_));
  inject_messages();
  if (next_tick_ % hello_every_ == 0) social_round();
  expire_messages();
  ++next_tick_;
}

void Simulation::run_to_end() {
  while (!finished()) step();
}

void Simulation::update_contacts(std::span<const Position> positions) {
  for (const ContactEvent& e : detector_.detect(positions, now_)) {
    contact_events_.push_back(e);
    NodeState& a = nodes_[e.a.value];
    NodeState& b = nodes_[e.b.value];
    auto& wa = a.windows.try_emplace(e.b, config_.window_size).first->second;
    auto& wb = b.windows.try_emplace(e.a, config_.window_size).first->second;
    if (e.kind == ContactEvent::Kind::Encounter) {
      wa.record_encounter(e.time);
      wb.record_encounter(e.time);
    } else {
      wa.record_departure(e.time);
      wb.record_departure(e.time);
    }
  }
  for (auto& n : nodes_)
    for (auto& [peer, w] : n.windows) w.slide(now_);
}

void Simulation::inject_messages() {
  while (next_message_ < schedule_.size() && schedule_[next_message_].created_at <= now_) {
    const Message& m = schedule_[next_message_++];
    nodes_[m.src.value].buffer.emplace(m.id, m);
    pending_.push_back(next_message_ - 1);
    log(MessageEvent::Kind::Generated, m.id, m.src, m.dst);
  }
}

void Simulation::social_round() {
  for (auto& n : nodes_) {
    n.view.maintain(n.windows, now_);
    n.centrality = n.view.my_centrality();
  }
  const auto& heard = detector_.heard();
  if (heard.empty()) return;

  std::vector<std::optional<HelloPayload>> hellos(nodes_.size());
  for (const auto& [a, b] : heard) {
    if (!hellos[a.value]) hellos[a.value] = nodes_[a.value].view.make_hello();
    if (!hellos[b.value]) hellos[b.value] = nodes_[b.value].view.make_hello();
  }
  for (const auto& [a, b] : heard) {
    nodes_[a.value].view.apply_hello(*hellos[b.value], now_);
    nodes_[b.value].view.apply_hello(*hellos[a.value], now_);
  }
  for (const auto& [a, b] : heard) {
    route(nodes_[a.value], nodes_[b.value], *hellos[b.value]);
    route(nodes_[b.value], nodes_[a.value], *hellos[a.value]);
  }
}

void Simulation::route(NodeState& from, NodeState& to, const HelloPayload& to_hello) {
  if (from.buffer.empty()) return;
  const auto actions = decide(config_.protocol, from, to.id, to_hello, to.summary(), now_);
  for (const ForwardAction& act : actions) {
    const Message m = from.buffer.at(act.message_id);
    ++forwards_;
    switch (act.action) {
      case Action::Deliver:
        accept(to.buffer, m, to.id);
        to.delivered.insert(m.id);
        from.buffer.erase(m.id);
        if (!delivered_[m.id]) {
          delivered_[m.id] = true;
          ++delivered_count_;
        }
        log(MessageEvent::Kind::Delivered, m.id, from.id, to.id);
        break;
      case Action::Copy:
        accept(to.buffer, m, to.id);
        log(MessageEvent::Kind::Forwarded, m.id, from.id, to.id);
        break;
      case Action::ForwardAndDelete:
        accept(to.buffer, m, to.id);
        from.buffer.erase(m.id);
        from.handed_off.insert(m.id);
        log(MessageEvent::Kind::Forwarded, m.id, from.id, to.id);
        break;
    }
  }
}

void Simulation::expire_messages() {
  for (auto& n : nodes_)
    for (const Message& m : expire(n.buffer, now_)) log(MessageEvent::Kind::Expired, m.id, n.id, std::nullopt);

  // Every copy of a message shares its deadline, so an undelivered message
  // past its TTL is gone from the whole network.
  std::erase_if(pending_, [&](std::size_t index) {
    const Message& m = schedule_[index];
    if (delivered_[m.id]) return true;
    if (m.live(now_)) return false;
    ++expired_count_;
    return true;
  });
}

void Simulation::log(MessageEvent::Kind kind, MessageId id, NodeId from, std::optional<NodeId> to) {
  if (record_events_) message_events_.push_back({now_, kind, id, from, to});
}

MetricsReport Simulation::report() const {
  MetricsReport r = make_report(next_message_, delivered_count_, forwards_);
  r.expired = expired_count_;
  return r;
}

std::shared_ptr<const Trace> trace_for(const SimConfig& config) {
  if (config.trace) return config.trace;
  const WaypointParams params{config.arena, config.speed, config.speed, config.pause, config.mobility_seed()};
  return std::make_shared<const Trace>(
      generate_waypoint_trace(params, config.node_count, config.required_duration(), 1.0));
}

MetricsReport run(const SimConfig& config, std::vector<MessageEvent>* events) {
  config.validate();
  Simulation sim(config, trace_for(config), schedule_messages(config, config.message_seed()));
  sim.record_message_events(events != nullptr);
  sim.run_to_end();
  if (events) *events = sim.message_events();
  return sim.report();
}

ReplicateReport replicate(const SimConfig& config, int runs, unsigned threads) {
  if (runs < 1) throw ConfigError("runs", "must be at least 1");
  ReplicateReport out;
  out.runs.resize(static_cast<std::size_t>(runs));
  auto one = [&](int r) {
    SimConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(r);
    return run(c);
  };
  if (threads <= 1) {
    for (int r = 0; r < runs; ++r) out.runs[r] = one(r);
  } else {
    for (int base = 0; base < runs; base += static_cast<int>(threads)) {
      std::vector<std::future<MetricsReport>> batch;
      for (int r = base; r < std::min(runs, base + static_cast<int>(threads)); ++r)
        batch.push_back(std::async(std::launch::async, one, r));
      for (std::size_t i = 0; i < batch.size(); ++i) out.runs[base + i] = batch[i].get();
    }
  }

  MetricsReport& mean = out.mean;
  for (const auto& r : out.runs) {
    mean.generated += r.generated;
    mean.delivered += r.delivered;
    mean.expired += r.expired;
    mean.total_forwards += r.total_forwards;
    mean.delivery_ratio += r.delivery_ratio;
    mean.delivery_cost += r.delivery_cost;
    mean.delivery_efficiency += r.delivery_efficiency;
    mean.efficiency_defined = mean.efficiency_defined || r.efficiency_defined;
  }
  const double n = static_cast<double>(runs);
  mean.delivery_ratio /= n;
  mean.delivery_cost /= n;
  mean.delivery_efficiency /= n;
  return out;
}

}  // namespace dtnsim
