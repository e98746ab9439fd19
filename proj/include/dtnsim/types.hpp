#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dtnsim {

/// Simulation time in seconds.
using Seconds = double;

/// Identity of a simulated node. Totally ordered; pair enumeration uses s < t.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
  friend std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }
};

using MessageId = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownVertexError : public Error {
 public:
  explicit UnknownVertexError(NodeId v)
      : Error("unknown vertex " + std::to_string(v.value)), vertex(v) {}
  NodeId vertex;
};

/// Contact bookkeeping called in an order that violates the encounter/departure protocol.
class ContactStateError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key(std::move(key)) {}
  std::string key;
};

class TraceError : public Error {
 public:
  using Error::Error;
};

class TraceParseError : public TraceError {
 public:
  TraceParseError(std::size_t line_no, const std::string& what)
      : TraceError("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  std::size_t line;
};

class IncompleteTraceError : public TraceError {
 public:
  using TraceError::TraceError;
};

/// Raised when a simulation needs samples beyond the end of its mobility trace.
class TraceExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtnsim

template <>
struct std::hash<dtnsim::NodeId> {
  std::size_t operator()(dtnsim::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
