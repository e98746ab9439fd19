#include <doctest.h>

#include "dtnsim/rng.hpp"
#include "routing_fixture.hpp"

using namespace dtnsim;
using namespace fixture;

TEST_CASE("expire honours the inclusive TTL boundary") {
  Buffer b;
  b.emplace(1, Message{1, I, K, 0, 60, 0});
  CHECK(expire(b, 60).empty());
  CHECK(b.size() == 1);
  const auto dropped = expire(b, 61);
  CHECK(dropped.size() == 1);
  CHECK(b.empty());
  Buffer empty;
  CHECK(expire(empty, 1000).empty());
}

TEST_CASE("accept") {
  const Message m{1, I, K, 0, 60, 0};
  Buffer at_dst;
  CHECK(accept(at_dst, m, K));
  CHECK(at_dst.empty());

  Buffer relay;
  CHECK_FALSE(accept(relay, m, J));
  CHECK_FALSE(accept(relay, m, J));
  CHECK(relay.size() == 1);
  CHECK(relay.at(1).hops == 1);
}

TEST_CASE("protocol names") {
  for (Protocol p : {Protocol::Epidemic, Protocol::Friendship, Protocol::ProposedI, Protocol::ProposedII})
    CHECK(parse_protocol(to_string(p)) == p);
  CHECK(parse_protocol("Proposed-II") == Protocol::ProposedII);
  CHECK_THROWS_AS(parse_protocol("bubble"), ConfigError);
}

TEST_CASE("weight exchange") {
  HelloPayload h;
  h.sender = J;
  h.link_weights[K] = 0.5;
  CHECK(weight_exchange(h, K) == 0.5);
  CHECK(weight_exchange(h, M) == 0.0);
  h.link_weights[M] = kMaxLinkWeight;
  CHECK(weight_exchange(h, M) > 1e300);
}

TEST_CASE("epidemic copies everything the peer lacks") {
  Scenario s(0.5, 0.0, false);
  CHECK(s.run(Protocol::Epidemic) == one(Action::Copy));
  CHECK(s.run(Protocol::Epidemic, {7}) == none());
}

TEST_CASE("delivery to the destination beats every rule") {
  for (Protocol p : {Protocol::Epidemic, Protocol::Friendship, Protocol::ProposedI, Protocol::ProposedII}) {
    NodeState i{I};
    i.buffer.emplace(3, Message{3, I, J, 0, 100, 0});
    HelloPayload h;
    h.sender = J;
    CHECK(decide(p, i, J, h, {}, 10) == std::vector<ForwardAction>{{3, Action::Deliver}});
    CHECK(decide(p, i, J, h, {3}, 10).empty());
    CHECK(decide(p, i, J, h, {}, 101).empty());
  }
}

TEST_CASE("proposed I worked examples") {
  SUBCASE("better relay that beats all of SN_i takes the message") {
    Scenario s(0.2, 0.5);
    CHECK(s.run(Protocol::ProposedI) == one(Action::ForwardAndDelete));
  }
  SUBCASE("centrality rescue when the weight condition fails") {
    Scenario s(0.5, 0.2);
    s.centralities(1, 0, 4, 0);
    CHECK(s.run(Protocol::ProposedI) == one(Action::Copy));
  }
}

TEST_CASE("deletion needs a strict maximum over SN_i") {
  Scenario s(0.2, 0.5);
  s.add_member(M, 0.5);
  CHECK(s.run(Protocol::ProposedI) == one(Action::Copy));
  Scenario t(0.2, 0.5);
  t.add_member(M, 0.49);
  CHECK(t.run(Protocol::ProposedI) == one(Action::ForwardAndDelete));
}

TEST_CASE("friendship baseline") {
  CHECK(Scenario(0.2, 0.5, false).run(Protocol::Friendship) == one(Action::Copy));
  CHECK(Scenario(0.5, 0.2, false).run(Protocol::Friendship) == none());
  Scenario weak(0.0, 0.005, false);
  CHECK(weak.run(Protocol::Friendship) == none());
}

TEST_CASE("deletion soundness on random social networks") {
  Rng rng(31337);
  int deletions = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Scenario s(rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0));
    const int members = static_cast<int>(rng.uniform_int(0, 4));
    for (int m = 0; m < members; ++m) s.add_member(NodeId(10 + m), rng.uniform(0.0, 1.0));
    s.centralities(rng.uniform(0, 3), rng.uniform(0, 6), rng.uniform(0, 3), rng.uniform(0, 6));

    const auto actions = s.run(Protocol::ProposedI);
    if (actions.empty() || actions[0].action != Action::ForwardAndDelete) continue;
    ++deletions;
    const double w_jk = s.j_hello.weight_to(K);
    for (NodeId m : s.i.view.graph().vertices()) {
      if (m == J || m == K) continue;
      const double w_mk = m == I ? s.i.weight_to(K, kNow) : s.i.view.advertised_weight(m, K);
      CHECK(w_mk < w_jk);
    }
  }
  CHECK(deletions > 0);
}

TEST_CASE("proposed I and II agree when centrality comparisons agree") {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    Scenario s(rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0));
    const double i_cb = rng.uniform(0, 3), j_cb = rng.uniform(0, 3);
    // Same ordering for the endpoint-biased scores.
    const double shift = rng.uniform(0, 5);
    s.centralities(i_cb, i_cb + shift, j_cb, j_cb + shift);
    CHECK(s.run(Protocol::ProposedI) == s.run(Protocol::ProposedII));
  }
}
