#include <doctest.h>

#include "dtnsim/social_network.hpp"
#include "oracles.hpp"

using namespace dtnsim;

namespace {

const NodeId I{0}, J{1}, K{2}, M{3}, X{4};

HelloPayload hello_from(NodeId sender, std::initializer_list<NodeId> friends, double cb = 0, double ceb = 0) {
  HelloPayload h;
  h.sender = sender;
  h.neighbor_list = friends;
  h.sender_cb = cb;
  h.sender_ceb = ceb;
  return h;
}

/// A 600 s window whose weight is well above 0.01 at t=600: contact [0, 560].
ContactWindow strong_tie() {
  ContactWindow w(600);
  w.record_encounter(0);
  w.record_departure(560);
  w.slide(600);
  return w;
}

std::set<NodeId> vertex_set(const SocialGraph& g) {
  const auto vs = g.vertices();
  return {vs.begin(), vs.end()};
}

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

}  // namespace

TEST_CASE("maintain adds a friend and its advertised neighbours") {
  SocialNetworkView view(I);
  WindowMap windows;
  ContactWindow w(10);
  w.record_encounter(4);
  w.record_departure(6);
  w.slide(10);
  REQUIRE(w.link_weight(10) == 0.625);
  windows.emplace(J, w);

  view.apply_hello(hello_from(J, {K}), 10);
  view.maintain(windows, 10);
  CHECK(vertex_set(view.graph()) == std::set<NodeId>{I, J, K});
  CHECK(view.graph().edges() == EdgeList{{I, J}, {J, K}});
  CHECK(view.is_friend(J));
}

TEST_CASE("maintain drops a friend whose weight decays") {
  SocialNetworkView view(I);
  WindowMap windows{{J, strong_tie()}};
  view.apply_hello(hello_from(J, {I, K}), 600);
  view.maintain(windows, 600);
  REQUIRE(vertex_set(view.graph()) == std::set<NodeId>{I, J, K});

  // Slide the contact fully out: the empty window weighs 2/600 = 1/300.
  windows.at(J).slide(1200);
  REQUIRE(windows.at(J).link_weight(1200) < 0.01);
  view.maintain(windows, 1200);
  CHECK(vertex_set(view.graph()) == std::set<NodeId>{I});
  CHECK(view.graph().edge_count() == 0);
}

TEST_CASE("threshold is strict") {
  // Zero-length contacts at 200 and 400 split the window into three 200 s
  // gaps: 600 / (3 * 200^2 / 2) = 0.01 exactly.
  ContactWindow w(600);
  for (double t : {200.0, 400.0}) {
    w.record_encounter(t);
    w.record_departure(t);
  }
  w.slide(600);
  REQUIRE(w.link_weight(600) == 0.01);

  SocialNetworkView view(I, 0.01);
  view.maintain(WindowMap{{J, w}}, 600);
  CHECK_FALSE(view.graph().has_vertex(J));
  CHECK(view.graph().vertex_count() == 1);
}

TEST_CASE("two friends advertising the same neighbour") {
  SocialNetworkView view(I);
  WindowMap windows{{J, strong_tie()}, {M, strong_tie()}};
  view.apply_hello(hello_from(J, {I, K, M}), 600);
  view.apply_hello(hello_from(M, {I, K, J}), 600);
  view.maintain(windows, 600);
  CHECK(vertex_set(view.graph()) == std::set<NodeId>{I, J, K, M});
  CHECK(view.graph().edges() == EdgeList{{I, J}, {I, M}, {J, K}, {J, M}, {K, M}});
}

TEST_CASE("losing a friend prunes only what it alone connected") {
  SocialNetworkView view(I);
  WindowMap windows{{J, strong_tie()}, {M, strong_tie()}};
  // j knows k and x; m knows k. Losing j removes x (N_j - N_i) but keeps m
  // (a friend) and k (still reached through m).
  view.apply_hello(hello_from(J, {I, K, X, M}), 600);
  view.apply_hello(hello_from(M, {I, K, J}), 600);
  view.maintain(windows, 600);
  REQUIRE(vertex_set(view.graph()) == std::set<NodeId>{I, J, K, M, X});

  windows.erase(J);
  ContactWindow faded(600);
  faded.record_encounter(0);
  faded.record_departure(1);
  faded.slide(1200);
  windows.emplace(J, faded);
  windows.at(M) = strong_tie();
  windows.at(M).record_encounter(650);
  windows.at(M).slide(1200);
  view.maintain(windows, 1200);

  CHECK(vertex_set(view.graph()) == std::set<NodeId>{I, J, K, M});
  // j survives only as m's advertised neighbour; its own edges are gone.
  CHECK(view.graph().edges() == EdgeList{{I, M}, {J, M}, {K, M}});
  CHECK_FALSE(view.is_friend(J));
}

TEST_CASE("maintain invariants") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    SocialNetworkView view(I);
    WindowMap windows;
    const Seconds now = 600;
    for (std::uint32_t p = 1; p < 10; ++p) {
      if (rng.uniform() < 0.3) continue;
      ContactWindow w(600);
      double t = 0;
      while ((t += std::floor(rng.uniform(1, 400))) < now) {
        w.record_encounter(t);
        t = std::min(now, t + std::floor(rng.uniform(0, 60)));
        w.record_departure(t);
      }
      w.slide(now);
      windows.emplace(NodeId(p), w);
      HelloPayload h = hello_from(NodeId(p), {});
      for (std::uint32_t q = 0; q < 14; ++q)
        if (q != p && rng.uniform() < 0.3) h.neighbor_list.insert(NodeId(q));
      view.apply_hello(h, now);
    }
    view.maintain(windows, now);
    const SocialGraph snapshot = view.graph();

    const auto dist = oracle::hop_distances(snapshot, I);
    CHECK(dist.size() == snapshot.vertex_count());
    for (const auto& [v, d] : dist) CHECK(d <= 2);

    for (const auto& [peer, w] : windows)
      CHECK(snapshot.has_edge(I, peer) == (w.link_weight(now) > view.threshold()));

    view.maintain(windows, now);
    CHECK(view.graph() == snapshot);
  }
}

TEST_CASE("add then remove restores the lone owner") {
  SocialNetworkView view(I);
  view.apply_hello(hello_from(J, {I, K, X}), 600);
  WindowMap windows{{J, strong_tie()}};
  view.maintain(windows, 600);
  REQUIRE(view.graph().vertex_count() == 4);
  windows.at(J).slide(5000);
  view.maintain(windows, 5000);
  SocialGraph lone;
  lone.add_vertex(I);
  CHECK(view.graph() == lone);
}

TEST_CASE("make_hello and my_centrality") {
  SocialNetworkView lone(I);
  const HelloPayload h0 = lone.make_hello();
  CHECK(h0.sender == I);
  CHECK(h0.neighbor_list.empty());
  CHECK(h0.sender_cb == 0);
  CHECK(h0.sender_ceb == 0);
  CHECK(lone.my_centrality().cb == 0);
  CHECK(lone.my_centrality().ceb == 0);

  SocialNetworkView star(I);
  WindowMap three{{J, strong_tie()}, {K, strong_tie()}, {M, strong_tie()}};
  star.maintain(three, 600);
  const HelloPayload h1 = star.make_hello();
  CHECK(h1.neighbor_list.size() == 3);
  CHECK(h1.sender_cb == 3.0);
  CHECK(star.my_centrality().ceb == 6.0);
  CHECK(h1.link_weights.size() == 3);
  CHECK(h1.weight_to(J) == strong_tie().link_weight(600));
  CHECK(h1.weight_to(X) == 0.0);

  SocialNetworkView pair(I);
  pair.maintain(WindowMap{{J, strong_tie()}}, 600);
  CHECK(pair.make_hello().neighbor_list == std::set<NodeId>{J});

  SocialNetworkView middle(I);
  middle.maintain(WindowMap{{J, strong_tie()}, {K, strong_tie()}}, 600);
  CHECK(middle.my_centrality().cb == 1.0);
  CHECK(middle.my_centrality().ceb == 3.0);
}

TEST_CASE("apply_hello caches centrality without touching the graph") {
  SocialNetworkView view(I);
  view.apply_hello(hello_from(J, {K}, 2.5, 4.0), 10);
  CHECK(view.peer_centrality(J)->cb == 2.5);
  CHECK(view.peer_centrality(J)->stamped_at == 10);
  CHECK(view.graph().vertex_count() == 1);

  view.apply_hello(hello_from(J, {K}, 1.0, 2.0), 11);
  CHECK(view.peer_centrality(J)->cb == 1.0);
  CHECK(view.peer_centrality(J)->stamped_at == 11);

  view.apply_hello(hello_from(M, {}, 7.0, 9.0), 12);
  CHECK(view.peer_centrality(M)->ceb == 9.0);
  view.maintain(WindowMap{{M, strong_tie()}}, 600);
  CHECK(view.is_friend(M));
  CHECK_FALSE(view.peer_centrality(X).has_value());
}
