#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dtnsim/experiment.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace dtnsim;

namespace {

// Python sees node ids as plain ints.
NodeId node(std::uint32_t v) { return NodeId{v}; }

std::map<std::uint32_t, double> plain(const CentralityMap& scores) {
  std::map<std::uint32_t, double> out;
  for (const auto& [v, s] : scores) out.emplace(v.value, s);
  return out;
}

SocialGraph graph_from_edges(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                             const std::vector<std::uint32_t>& isolated) {
  SocialGraph g;
  for (auto v : isolated) g.add_vertex(node(v));
  for (auto [u, v] : edges) g.add_edge(node(u), node(v));
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Social-network-aware DTN routing simulator";

  py::register_exception<Error>(m, "DtnError", PyExc_RuntimeError);

  py::class_<SocialGraph>(m, "SocialGraph")
      .def(py::init<>())
      .def(py::init(&graph_from_edges), "edges"_a, "isolated"_a = std::vector<std::uint32_t>{})
      .def("add_vertex", [](SocialGraph& g, std::uint32_t v) { g.add_vertex(node(v)); })
      .def("add_edge", [](SocialGraph& g, std::uint32_t u, std::uint32_t v) { g.add_edge(node(u), node(v)); })
      .def("neighbors",
           [](const SocialGraph& g, std::uint32_t u) {
             std::vector<std::uint32_t> out;
             for (NodeId v : g.neighbors(node(u))) out.push_back(v.value);
             return out;
           })
      .def("vertices",
           [](const SocialGraph& g) {
             std::vector<std::uint32_t> out;
             for (NodeId v : g.vertices()) out.push_back(v.value);
             return out;
           })
      .def("edges",
           [](const SocialGraph& g) {
             std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
             for (auto [u, v] : g.edges()) out.emplace_back(u.value, v.value);
             return out;
           })
      .def("__len__", &SocialGraph::vertex_count)
      .def("__repr__", [](const SocialGraph& g) { return dump_graph(g); });

  m.def("betweenness", [](const SocialGraph& g) { return plain(betweenness(g)); });
  m.def("endpoint_betweenness", [](const SocialGraph& g) { return plain(endpoint_betweenness(g)); });
  m.def("extract_expanded_ego", [](const SocialGraph& g, std::uint32_t ego) { return extract_expanded_ego(g, node(ego)); });
  m.def(
      "expanded_ego_betweenness",
      [](const SocialGraph& g, std::uint32_t ego, bool endpoint_biased) {
        return expanded_ego_betweenness(g, node(ego),
                                        endpoint_biased ? CentralityKind::EndpointBiased : CentralityKind::Betweenness);
      },
      "graph"_a, "ego"_a, "endpoint_biased"_a = false);

  m.attr("MAX_LINK_WEIGHT") = kMaxLinkWeight;
  py::class_<ContactWindow>(m, "ContactWindow")
      .def(py::init<Seconds>(), "window_size"_a)
      .def("record_encounter", &ContactWindow::record_encounter)
      .def("record_departure", &ContactWindow::record_departure)
      .def("slide", &ContactWindow::slide)
      .def("link_weight", &ContactWindow::link_weight)
      .def_property_readonly("in_contact", &ContactWindow::in_contact)
      .def_property_readonly("intervals", [](const ContactWindow& w) {
        std::vector<std::pair<double, std::optional<double>>> out;
        for (const auto& c : w.intervals()) out.emplace_back(c.start, c.end);
        return out;
      });

  py::enum_<Protocol>(m, "Protocol")
      .value("EPIDEMIC", Protocol::Epidemic)
      .value("FRIENDSHIP", Protocol::Friendship)
      .value("PROPOSED_I", Protocol::ProposedI)
      .value("PROPOSED_II", Protocol::ProposedII);

  py::class_<Arena>(m, "Arena")
      .def(py::init<double, double>(), "width"_a, "height"_a)
      .def_readwrite("width", &Arena::width)
      .def_readwrite("height", &Arena::height);

  py::class_<Trace, std::shared_ptr<Trace>>(m, "Trace")
      .def_property_readonly("node_count", &Trace::node_count)
      .def_property_readonly("duration", &Trace::duration)
      .def_property_readonly("tick", &Trace::tick)
      .def_property_readonly("sample_count", &Trace::sample_count)
      .def("position", [](const Trace& t, std::size_t k, std::size_t n) {
        const Position p = t.at(k, n);
        return std::make_pair(p.x, p.y);
      })
      .def("__eq__", [](const Trace& a, const Trace& b) { return a == b; });

  m.def(
      "generate_trace",
      [](const Arena& arena, double speed, std::size_t nodes, Seconds duration, std::uint64_t seed, Seconds pause) {
        return std::make_shared<Trace>(
            generate_waypoint_trace(WaypointParams{arena, speed, speed, pause, seed}, nodes, duration, 1.0));
      },
      "arena"_a, "speed"_a, "nodes"_a, "duration"_a, "seed"_a = 1, "pause"_a = 0.0);
  m.def("save_trace", &save_trace, "trace"_a, "path"_a);
  m.def("load_trace", [](const std::filesystem::path& p) { return std::make_shared<Trace>(load_trace(p)); });

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("node_count", &SimConfig::node_count)
      .def_readwrite("arena", &SimConfig::arena)
      .def_readwrite("speed", &SimConfig::speed)
      .def_readwrite("pause", &SimConfig::pause)
      .def_property(
          "trace", [](const SimConfig& c) { return std::const_pointer_cast<Trace>(c.trace); },
          [](SimConfig& c, std::shared_ptr<Trace> t) { c.trace = std::move(t); })
      .def_readwrite("comm_range", &SimConfig::comm_range)
      .def_readwrite("window_size", &SimConfig::window_size)
      .def_readwrite("threshold", &SimConfig::threshold)
      .def_readwrite("ttl", &SimConfig::ttl)
      .def_readwrite("message_count", &SimConfig::message_count)
      .def_readwrite("generation_span", &SimConfig::generation_span)
      .def_readwrite("hello_period", &SimConfig::hello_period)
      .def_readwrite("missed_hello_limit", &SimConfig::missed_hello_limit)
      .def_readwrite("protocol", &SimConfig::protocol)
      .def_readwrite("seed", &SimConfig::seed);

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("generated", &MetricsReport::generated)
      .def_readonly("delivered", &MetricsReport::delivered)
      .def_readonly("expired", &MetricsReport::expired)
      .def_readonly("total_forwards", &MetricsReport::total_forwards)
      .def_readonly("delivery_ratio", &MetricsReport::delivery_ratio)
      .def_readonly("delivery_cost", &MetricsReport::delivery_cost)
      .def_readonly("delivery_efficiency", &MetricsReport::delivery_efficiency)
      .def_readonly("efficiency_defined", &MetricsReport::efficiency_defined)
      .def("__eq__", [](const MetricsReport& a, const MetricsReport& b) { return a == b; });

  py::class_<ReplicateReport>(m, "ReplicateReport")
      .def_readonly("mean", &ReplicateReport::mean)
      .def_readonly("runs", &ReplicateReport::runs);

  m.def("run", [](const SimConfig& c) { return run(c); }, "config"_a, py::call_guard<py::gil_scoped_release>());
  m.def("replicate", &replicate, "config"_a, "runs"_a, "threads"_a = 1, py::call_guard<py::gil_scoped_release>());
}
