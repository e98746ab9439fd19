#include "dtnsim/social_network.hpp"

namespace dtnsim {

double HelloPayload::weight_to(NodeId k) const {
  auto it = link_weights.find(k);
  return it == link_weights.end() ? 0.0 : it->second;
}

SocialNetworkView::SocialNetworkView(NodeId owner, double threshold) : owner_(owner), threshold_(threshold) {
  graph_.add_vertex(owner_);
}

void SocialNetworkView::maintain(const WindowMap& windows, Seconds now) {
  friend_weights_.clear();
  for (const auto& [peer, window] : windows) {
    if (peer == owner_) continue;
    const double w = window.link_weight(now);
    if (w > threshold_) friend_weights_.emplace(peer, w);
  }

  // Adding a friend brings in its edge and its advertised neighbours; losing
  // one removes its edges and any vertex only it connected us to. Rebuilding
  // from the friend set does both at once and cannot leave dangling vertices.
  SocialGraph next;
  next.add_vertex(owner_);
  for (const auto& [j, w] : friend_weights_) {
    next.add_edge(owner_, j);
    if (const HelloPayload* hello = latest_hello(j)) {
      for (NodeId k : hello->neighbor_list)
        if (k != owner_ && k != j) next.add_edge(j, k);
    }
  }
  graph_ = std::move(next);
}

void SocialNetworkView::apply_hello(const HelloPayload& payload, Seconds now) {
  if (payload.sender == owner_) return;
  peer_centrality_[payload.sender] = {payload.sender_cb, payload.sender_ceb, now};
  hellos_.insert_or_assign(payload.sender, payload);
}

HelloPayload SocialNetworkView::make_hello() const {
  const SelfCentrality self = my_centrality();
  HelloPayload hello;
  hello.sender = owner_;
  hello.neighbor_list = graph_.neighbors(owner_);
  hello.sender_cb = self.cb;
  hello.sender_ceb = self.ceb;
  hello.link_weights = friend_weights_;
  return hello;
}

SelfCentrality SocialNetworkView::my_centrality() const {
  // The view already is the owner's expanded ego network.
  return {betweenness(graph_).at(owner_), endpoint_betweenness(graph_).at(owner_)};
}

std::optional<PeerCentrality> SocialNetworkView::peer_centrality(NodeId j) const {
  auto it = peer_centrality_.find(j);
  if (it == peer_centrality_.end()) return std::nullopt;
  return it->second;
}

double SocialNetworkView::advertised_weight(NodeId m, NodeId k) const {
  const HelloPayload* hello = latest_hello(m);
  return hello ? hello->weight_to(k) : 0.0;
}

const HelloPayload* SocialNetworkView::latest_hello(NodeId j) const {
  auto it = hellos_.find(j);
  return it == hellos_.end() ? nullptr : &it->second;
}

}  // namespace dtnsim
