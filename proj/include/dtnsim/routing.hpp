#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dtnsim/contact_history.hpp"
#include "dtnsim/social_network.hpp"

namespace dtnsim {

struct Message {
  MessageId id = 0;
  NodeId src;
  NodeId dst;
  Seconds created_at = 0;
  Seconds ttl = 0;
  std::uint32_t hops = 0;

  /// Inclusive at the boundary: live while now - created_at <= ttl.
  [[nodiscard]] bool live(Seconds now) const { return now - created_at <= ttl; }
  friend bool operator==(const Message&, const Message&) = default;
};

/// Messages held by one node, keyed by id (at most one copy per id).
using Buffer = std::map<MessageId, Message>;

/// Drops every message whose TTL has elapsed; returns the dropped messages.
std::vector<Message> expire(Buffer& buffer, Seconds now);

/// Hands `m` to `receiver`. Returns true when the receiver is the destination
/// (the message is consumed, not buffered). Otherwise buffers a copy with one
/// more hop; an id already present is left untouched.
bool accept(Buffer& buffer, const Message& m, NodeId receiver);

enum class Protocol { Epidemic, Friendship, ProposedI, ProposedII };

std::string_view to_string(Protocol p);
/// Accepts "epidemic", "friendship", "proposed1"/"proposed-i", "proposed2"/"proposed-ii".
Protocol parse_protocol(std::string_view name);

enum class Action { Copy, ForwardAndDelete, Deliver };

struct ForwardAction {
  MessageId message_id = 0;
  Action action = Action::Copy;
  friend bool operator==(const ForwardAction&, const ForwardAction&) = default;
};

/// Everything a node carries that routing decisions read.
struct NodeState {
  explicit NodeState(NodeId id, double threshold = kDefaultThreshold) : id(id), view(id, threshold) {}

  NodeId id;
  Buffer buffer;
  SocialNetworkView view;
  WindowMap windows;
  SelfCentrality centrality;        ///< refreshed after each maintain()
  std::set<MessageId> delivered;    ///< ids received as destination
  std::set<MessageId> handed_off;   ///< ids dropped after FORWARD_AND_DELETE

  /// Own link weight towards k; 0 for peers never met.
  [[nodiscard]] double weight_to(NodeId k, Seconds now) const;
  /// Summary vector offered to peers: ids this node must not be sent again.
  [[nodiscard]] std::set<MessageId> summary() const;
};

/// Weight from j to k as carried in j's hello.
inline double weight_exchange(const HelloPayload& j_hello, NodeId k) { return j_hello.weight_to(k); }

/// Forwarding decisions of node i towards contacted peer j for every live
/// message in i's buffer that j does not already have. All comparisons are
/// strict. For the proposed protocols the social conditions only apply when
/// j is in i's social network.
std::vector<ForwardAction> decide(Protocol protocol, const NodeState& i, NodeId j, const HelloPayload& j_hello,
                                  const std::set<MessageId>& j_has, Seconds now);

}  // namespace dtnsim
