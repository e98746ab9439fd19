#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtnsim/types.hpp"

namespace dtnsim {

/// Dimensionless sum of shortest-path fractions; always finite and >= 0.
using CentralityScore = double;
using CentralityMap = std::map<NodeId, CentralityScore>;

/// Undirected simple graph over node identities. Iteration order is the
/// NodeId order, which keeps every derived computation deterministic.
class SocialGraph {
 public:
  SocialGraph() = default;

  void add_vertex(NodeId v);
  /// Adds both endpoints if missing. Self-loops are rejected.
  void add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);
  /// Removes v together with all incident edges.
  bool remove_vertex(NodeId v);

  [[nodiscard]] bool has_vertex(NodeId v) const { return adjacency_.contains(v); }
  [[nodiscard]] bool has_edge(NodeId u, NodeId v) const;

  /// Throws UnknownVertexError when u is not in the graph.
  [[nodiscard]] const std::set<NodeId>& neighbors(NodeId u) const;

  [[nodiscard]] std::size_t vertex_count() const { return adjacency_.size(); }
  [[nodiscard]] std::size_t edge_count() const;
  [[nodiscard]] std::vector<NodeId> vertices() const;
  /// Each edge once, as (u, v) with u < v, in lexicographic order.
  [[nodiscard]] std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

 private:
  std::map<NodeId, std::set<NodeId>> adjacency_;
};

enum class CentralityKind { Betweenness, EndpointBiased };

/// Shortest-path betweenness over unordered pairs {s, t} with s != i != t.
/// Paths are hop counts; pairs in different components contribute nothing.
CentralityMap betweenness(const SocialGraph& g);

/// Betweenness that also credits a vertex for pairs it is an endpoint of.
/// Equals betweenness(g)[i] plus the number of vertices reachable from i.
CentralityMap endpoint_betweenness(const SocialGraph& g);

/// Ego, its 1-hop and 2-hop neighbours, the ego's edges and every edge
/// incident to a 1-hop neighbour. Edges between two 2-hop neighbours are left
/// out since the ego cannot learn them from its neighbours' hellos.
SocialGraph extract_expanded_ego(const SocialGraph& g, NodeId ego);

CentralityScore expanded_ego_betweenness(const SocialGraph& g, NodeId ego, CentralityKind kind);

/// Debug dump: one "u v" line per edge, "u -" for isolated vertices.
std::string dump_graph(const SocialGraph& g);
SocialGraph parse_graph(std::string_view text);

}  // namespace dtnsim
