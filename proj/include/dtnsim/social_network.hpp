#pragma once

#include <map>
#include <optional>
#include <set>

#include "dtnsim/contact_history.hpp"
#include "dtnsim/social_graph.hpp"

namespace dtnsim {

inline constexpr double kDefaultThreshold = 0.01;

/// What a node advertises in every hello.
struct HelloPayload {
  NodeId sender;
  std::set<NodeId> neighbor_list;  ///< sender's current friends
  CentralityScore sender_cb = 0;
  CentralityScore sender_ceb = 0;
  /// Link weights from sender to its friends. Weights at or below the
  /// threshold are never advertised.
  std::map<NodeId, double> link_weights;

  /// Advertised weight towards k, 0 for non-friends.
  [[nodiscard]] double weight_to(NodeId k) const;
};

struct PeerCentrality {
  CentralityScore cb = 0;
  CentralityScore ceb = 0;
  Seconds stamped_at = 0;
};

struct SelfCentrality {
  CentralityScore cb = 0;
  CentralityScore ceb = 0;
};

using WindowMap = std::map<NodeId, ContactWindow>;

/// A node's locally maintained social network (its expanded ego network).
///
/// Friends are peers whose link weight strictly exceeds the threshold. The
/// graph holds the owner, its friends, and every friend's last advertised
/// neighbour list; nothing else. Hellos only stage data, the graph changes
/// in maintain().
class SocialNetworkView {
 public:
  explicit SocialNetworkView(NodeId owner, double threshold = kDefaultThreshold);

  /// One round of social network construction. `windows` must already be
  /// slid to `now`; each peer with a window counts as contacted.
  void maintain(const WindowMap& windows, Seconds now);

  void apply_hello(const HelloPayload& payload, Seconds now);
  [[nodiscard]] HelloPayload make_hello() const;
  [[nodiscard]] SelfCentrality my_centrality() const;

  [[nodiscard]] NodeId owner() const { return owner_; }
  [[nodiscard]] double threshold() const { return threshold_; }
  [[nodiscard]] const SocialGraph& graph() const { return graph_; }
  [[nodiscard]] bool is_friend(NodeId j) const { return friend_weights_.contains(j); }
  [[nodiscard]] const std::map<NodeId, double>& friend_weights() const { return friend_weights_; }
  [[nodiscard]] std::optional<PeerCentrality> peer_centrality(NodeId j) const;
  /// Weight from m to k as last advertised by m; 0 when unknown.
  [[nodiscard]] double advertised_weight(NodeId m, NodeId k) const;
  [[nodiscard]] const HelloPayload* latest_hello(NodeId j) const;

 private:
  NodeId owner_;
  double threshold_;
  SocialGraph graph_;
  std::map<NodeId, double> friend_weights_;
  std::map<NodeId, HelloPayload> hellos_;
  std::map<NodeId, PeerCentrality> peer_centrality_;
};

}  // namespace dtnsim
