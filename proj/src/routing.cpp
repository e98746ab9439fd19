#include "dtnsim/routing.hpp"

#include <algorithm>
#include <cctype>

namespace dtnsim {

std::vector<Message> expire(Buffer& buffer, Seconds now) {
  std::vector<Message> dropped;
  for (auto it = buffer.begin(); it != buffer.end();) {
    if (!it->second.live(now)) {
      dropped.push_back(it->second);
      it = buffer.erase(it);
    } else {
      ++it;
    }
  }
  return dropped;
}

bool accept(Buffer& buffer, const Message& m, NodeId receiver) {
  if (receiver == m.dst) return true;
  if (buffer.contains(m.id)) return false;
  Message copy = m;
  ++copy.hops;
  buffer.emplace(copy.id, copy);
  return false;
}

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::Epidemic: return "epidemic";
    case Protocol::Friendship: return "friendship";
    case Protocol::ProposedI: return "proposed1";
    case Protocol::ProposedII: return "proposed2";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "epidemic") return Protocol::Epidemic;
  if (lower == "friendship") return Protocol::Friendship;
  if (lower == "proposed1" || lower == "proposed-i" || lower == "proposedi") return Protocol::ProposedI;
  if (lower == "proposed2" || lower == "proposed-ii" || lower == "proposedii") return Protocol::ProposedII;
  throw ConfigError("protocol", "unknown protocol '" + std::string(name) + "'");
}

double NodeState::weight_to(NodeId k, Seconds now) const {
  auto it = windows.find(k);
  return it == windows.end() ? 0.0 : it->second.link_weight(now);
}

std::set<MessageId> NodeState::summary() const {
  std::set<MessageId> ids = delivered;
  ids.insert(handed_off.begin(), handed_off.end());
  for (const auto& [id, m] : buffer) ids.insert(id);
  return ids;
}

namespace {

// True when j's weight towards k beats every other member of i's social
// network, i itself included.
bool strongest_relay(const NodeState& i, NodeId j, NodeId k, double w_jk, Seconds now) {
  for (NodeId m : i.view.graph().vertices()) {
    if (m == j || m == k) continue;
    const double w_mk = m == i.id ? i.weight_to(k, now) : i.view.advertised_weight(m, k);
    if (!(w_jk > w_mk)) return false;
  }
  return true;
}

}  // namespace

std::vector<ForwardAction> decide(Protocol protocol, const NodeState& i, NodeId j, const HelloPayload& j_hello,
                                  const std::set<MessageId>& j_has, Seconds now) {
  std::vector<ForwardAction> actions;
  const double threshold = i.view.threshold();
  const bool j_in_network = i.view.graph().has_vertex(j);

  for (const auto& [id, m] : i.buffer) {
    if (!m.live(now) || j_has.contains(id)) continue;
    const NodeId k = m.dst;
    if (k == j) {
      actions.push_back({id, Action::Deliver});
      continue;
    }
    const double w_jk = weight_exchange(j_hello, k);
    const double w_ik = i.weight_to(k, now);

    switch (protocol) {
      case Protocol::Epidemic:
        actions.push_back({id, Action::Copy});
        break;
      case Protocol::Friendship:
        if (w_jk > threshold && w_jk > w_ik) actions.push_back({id, Action::Copy});
        break;
      case Protocol::ProposedI:
      case Protocol::ProposedII: {
        if (!j_in_network) break;
        if (w_jk > w_ik) {
          actions.push_back(
              {id, strongest_relay(i, j, k, w_jk, now) ? Action::ForwardAndDelete : Action::Copy});
        } else {
          const bool biased = protocol == Protocol::ProposedII;
          const CentralityScore mine = biased ? i.centrality.ceb : i.centrality.cb;
          const CentralityScore theirs = biased ? j_hello.sender_ceb : j_hello.sender_cb;
          if (theirs > mine) actions.push_back({id, Action::Copy});
        }
        break;
      }
    }
  }
  return actions;
}

}  // namespace dtnsim
