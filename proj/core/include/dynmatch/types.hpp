#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dynmatch {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xFFFFFFFFu;

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SelfLoop : public Error {
  using Error::Error;
};

class DuplicateEdge : public Error {
  using Error::Error;
};

class MissingEdge : public Error {
  using Error::Error;
};

class InvalidEps : public Error {
  using Error::Error;
};

class InvalidParams : public Error {
  using Error::Error;
};

class TooLarge : public Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Unordered pair of distinct vertices; canonical form keeps u <= v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline std::uint64_t edge_key(Edge e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

struct EdgeHash {
  std::size_t operator()(Edge e) const {
    return std::hash<std::uint64_t>{}(edge_key(e));
  }
};

enum class UpdateKind : std::uint8_t { Insert, Delete };

struct UpdateEvent {
  UpdateKind kind = UpdateKind::Insert;
  Edge edge;

  friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

}  // namespace dynmatch
