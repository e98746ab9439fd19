#include "dtnsim/social_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <sstream>

namespace dtnsim {

void SocialGraph::add_vertex(NodeId v) { adjacency_.try_emplace(v); }

void SocialGraph::add_edge(NodeId u, NodeId v) {
  if (u == v) throw Error("self-loop on vertex " + std::to_string(u.value));
  adjacency_[u].insert(v);
  adjacency_[v].insert(u);
}

bool SocialGraph::remove_edge(NodeId u, NodeId v) {
  auto iu = adjacency_.find(u);
  auto iv = adjacency_.find(v);
  if (iu == adjacency_.end() || iv == adjacency_.end()) return false;
  const bool removed = iu->second.erase(v) > 0;
  iv->second.erase(u);
  return removed;
}

bool SocialGraph::remove_vertex(NodeId v) {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) return false;
  for (NodeId w : it->second) adjacency_[w].erase(v);
  adjacency_.erase(it);
  return true;
}

bool SocialGraph::has_edge(NodeId u, NodeId v) const {
  auto it = adjacency_.find(u);
  return it != adjacency_.end() && it->second.contains(v);
}

const std::set<NodeId>& SocialGraph::neighbors(NodeId u) const {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end()) throw UnknownVertexError(u);
  return it->second;
}

std::size_t SocialGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [v, adj] : adjacency_) twice += adj.size();
  return twice / 2;
}

std::vector<NodeId> SocialGraph::vertices() const {
  std::vector<NodeId> out;
  out.reserve(adjacency_.size());
  for (const auto& [v, adj] : adjacency_) out.push_back(v);
  return out;
}

std::vector<std::pair<NodeId, NodeId>> SocialGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& [u, adj] : adjacency_)
    for (NodeId v : adj)
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

struct Accumulated {
  std::vector<NodeId> ids;
  std::vector<double> pass_through;
  std::vector<double> reachable;
};

// Dependency accumulation over every source (Brandes). Runs on a compact
// index space. Each unordered pair is visited from both ends, so the totals
// are halved at the end.
Accumulated accumulate(const SocialGraph& g) {
  Accumulated acc{g.vertices(), {}, {}};
  const std::vector<NodeId>& ids = acc.ids;
  const std::size_t n = ids.size();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(ids[i], i);

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (NodeId w : g.neighbors(ids[i])) adj[i].push_back(index.at(w));

  std::vector<double>& score = acc.pass_through;
  score.assign(n, 0.0);
  acc.reachable.assign(n, 0.0);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<long> dist(n);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<std::size_t> order;
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto& p : preds) p.clear();
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (std::size_t w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }

    acc.reachable[s] = static_cast<double>(order.size() - 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) score[w] += delta[w];
    }
  }

  // Round every score onto one dyadic grid coarse enough that adding a
  // reachable count stays exact. The grid is one ulp of the smallest power of
  // two bounding score + reachable, so the loss is at rounding level.
  double top_score = 0.0;
  double top_reach = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    score[i] /= 2.0;
    top_score = std::max(top_score, score[i]);
    top_reach = std::max(top_reach, acc.reachable[i]);
  }
  const double snap = std::exp2(std::ceil(std::log2(std::max(1.0, top_score + top_reach))));
  for (double& x : score) x = (x + snap) - snap;
  return acc;
}

CentralityMap to_map(const std::vector<NodeId>& ids, const std::vector<double>& values) {
  CentralityMap out;
  for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], values[i]);
  return out;
}

}  // namespace

CentralityMap betweenness(const SocialGraph& g) {
  const Accumulated acc = accumulate(g);
  return to_map(acc.ids, acc.pass_through);
}

CentralityMap endpoint_betweenness(const SocialGraph& g) {
  Accumulated acc = accumulate(g);
  for (std::size_t i = 0; i < acc.ids.size(); ++i) acc.pass_through[i] += acc.reachable[i];
  return to_map(acc.ids, acc.pass_through);
}

SocialGraph extract_expanded_ego(const SocialGraph& g, NodeId ego) {
  SocialGraph out;
  out.add_vertex(ego);
  for (NodeId j : g.neighbors(ego)) {
    out.add_edge(ego, j);
    for (NodeId k : g.neighbors(j))
      if (k != ego) out.add_edge(j, k);
  }
  return out;
}

CentralityScore expanded_ego_betweenness(const SocialGraph& g, NodeId ego, CentralityKind kind) {
  const SocialGraph local = extract_expanded_ego(g, ego);
  const CentralityMap scores =
      kind == CentralityKind::EndpointBiased ? endpoint_betweenness(local) : betweenness(local);
  return scores.at(ego);
}

std::string dump_graph(const SocialGraph& g) {
  std::ostringstream os;
  for (NodeId v : g.vertices()) {
    const auto& adj = g.neighbors(v);
    if (adj.empty()) os << v << " -\n";
    for (NodeId w : adj)
      if (v < w) os << v << ' ' << w << '\n';
  }
  return os.str();
}

namespace {

NodeId parse_node(std::string_view token, std::size_t line_no) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw Error("graph dump line " + std::to_string(line_no) + ": bad vertex '" + std::string(token) + "'");
  return NodeId{value};
}

}  // namespace

SocialGraph parse_graph(std::string_view text) {
  SocialGraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra))
      throw Error("graph dump line " + std::to_string(line_no) + ": expected two fields");
    const NodeId u = parse_node(a, line_no);
    if (b == "-")
      g.add_vertex(u);
    else
      g.add_edge(u, parse_node(b, line_no));
  }
  return g;
}

}  // namespace dtnsim
