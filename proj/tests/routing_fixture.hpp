#pragma once

#include <cmath>

#include "dtnsim/routing.hpp"

namespace fixture {

using namespace dtnsim;

inline constexpr Seconds kWindow = 100;
inline constexpr Seconds kNow = 100;
inline const NodeId I{0}, J{1}, K{2}, M{3}, N{4};

/// Window whose weight at kNow is `w`: one contact centred in the window
/// leaving two equal gaps g, so w = W / g^2. Needs w >= 4 / W.
inline ContactWindow window_with_weight(double w) {
  const double g = std::sqrt(kWindow / w);
  ContactWindow win(kWindow);
  win.record_encounter(kNow - kWindow + g);
  win.record_departure(kNow - g);
  win.slide(kNow);
  return win;
}

/// Node i holding one message for k, with j optionally in its social network.
struct Scenario {
  NodeState i{I};
  HelloPayload j_hello;
  Message message{7, I, K, 50, 100, 0};

  Scenario(double w_ik, double w_jk, bool j_in_network = true) {
    if (w_ik > 0) i.windows.emplace(K, window_with_weight(w_ik));
    if (j_in_network) i.windows.emplace(J, window_with_weight(5.0));
    j_hello.sender = J;
    if (w_jk > 0) j_hello.link_weights[K] = w_jk;
    i.buffer.emplace(message.id, message);
    refresh();
  }

  /// Another friend of i that advertises weight w_mk towards k.
  void add_member(NodeId m, double w_mk) {
    i.windows.emplace(m, window_with_weight(5.0));
    HelloPayload h;
    h.sender = m;
    h.link_weights[K] = w_mk;
    i.view.apply_hello(h, kNow);
    refresh();
  }

  void centralities(double i_cb, double i_ceb, double j_cb, double j_ceb) {
    i.centrality = {i_cb, i_ceb};
    j_hello.sender_cb = j_cb;
    j_hello.sender_ceb = j_ceb;
  }

  void refresh() { i.view.maintain(i.windows, kNow); }

  [[nodiscard]] std::vector<ForwardAction> run(Protocol p, const std::set<MessageId>& j_has = {}) const {
    return decide(p, i, J, j_hello, j_has, kNow);
  }
};

inline std::vector<ForwardAction> one(Action a) { return {{7, a}}; }
inline std::vector<ForwardAction> none() { return {}; }

}  // namespace fixture
