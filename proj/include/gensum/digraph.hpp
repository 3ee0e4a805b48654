#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gensum {

/// Hard cap on digraph order; adjacency rows are single 64-bit masks.
inline constexpr int kMaxOrder = 64;

using VertexMask = std::uint64_t;

inline constexpr VertexMask vertex_bit(int v) { return VertexMask{1} << v; }

inline constexpr VertexMask low_mask(int n) {
  return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

/// Simple directed graph on integer vertices 0..order-1.
/// No self-loops, arc-set semantics; symmetric pairs (digons) are allowed.
class Digraph {
public:
  explicit Digraph(int order) : order_(order) {
    if (order < 0 || order > kMaxOrder)
      throw std::invalid_argument("Digraph: order must be in [0, " +
                                  std::to_string(kMaxOrder) + "]");
    out_.assign(static_cast<std::size_t>(order), 0);
    in_.assign(static_cast<std::size_t>(order), 0);
  }

  int order() const { return order_; }

  bool has_arc(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (out_[static_cast<std::size_t>(u)] & vertex_bit(v)) != 0;
  }

  void add_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("Digraph: self-loops are not allowed");
    out_[static_cast<std::size_t>(u)] |= vertex_bit(v);
    in_[static_cast<std::size_t>(v)] |= vertex_bit(u);
  }

  void remove_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    out_[static_cast<std::size_t>(u)] &= ~vertex_bit(v);
    in_[static_cast<std::size_t>(v)] &= ~vertex_bit(u);
  }

  VertexMask out_mask(int u) const {
    check_vertex(u);
    return out_[static_cast<std::size_t>(u)];
  }

  VertexMask in_mask(int v) const {
    check_vertex(v);
    return in_[static_cast<std::size_t>(v)];
  }

  int out_degree(int u) const { return std::popcount(out_mask(u)); }
  int in_degree(int v) const { return std::popcount(in_mask(v)); }

  int arc_count() const {
    int total = 0;
    for (VertexMask m : out_) total += std::popcount(m);
    return total;
  }

  /// All arcs in ascending (tail, head) order.
  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> result;
    result.reserve(static_cast<std::size_t>(arc_count()));
    for (int u = 0; u < order_; ++u) {
      VertexMask m = out_[static_cast<std::size_t>(u)];
      while (m) {
        int v = std::countr_zero(m);
        result.emplace_back(u, v);
        m &= m - 1;
      }
    }
    return result;
  }

  Digraph reversed() const {
    Digraph r(order_);
    r.out_ = in_;
    r.in_ = out_;
    return r;
  }

  /// Induced subdigraph; vertex i of the result is vertices[i].
  Digraph induced(const std::vector<int>& vertices) const {
    Digraph sub(static_cast<int>(vertices.size()));
    for (std::size_t a = 0; a < vertices.size(); ++a)
      for (std::size_t b = 0; b < vertices.size(); ++b)
        if (a != b && has_arc(vertices[a], vertices[b]))
          sub.add_arc(static_cast<int>(a), static_cast<int>(b));
    return sub;
  }

  /// The directed cycle 0 -> 1 -> ... -> n-1 -> 0.
  static Digraph directed_cycle(int n) {
    if (n < 2) throw std::invalid_argument("directed_cycle: need n >= 2");
    Digraph d(n);
    for (int i = 0; i < n; ++i) d.add_arc(i, (i + 1) % n);
    return d;
  }

  /// Complete digraph: both arcs between every vertex pair.
  static Digraph complete_digons(int n) {
    Digraph d(n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) d.add_arc(u, v);
    return d;
  }

  bool operator==(const Digraph& other) const = default;

private:
  void check_vertex(int v) const {
    if (v < 0 || v >= order_)
      throw std::out_of_range("Digraph: vertex " + std::to_string(v) +
                              " out of range for order " + std::to_string(order_));
  }

  int order_;
  std::vector<VertexMask> out_;
  std::vector<VertexMask> in_;
};

/// An ordered vertex list claimed to be a directed cycle; the closing arc
/// from back() to front() is implied. Never trusted: see validate_cycle.
struct CycleCert {
  std::vector<int> vertices;

  CycleCert() = default;
  explicit CycleCert(std::vector<int> vs) : vertices(std::move(vs)) {}

  int length() const { return static_cast<int>(vertices.size()); }

  /// Same cycle traversed against arc direction (a cycle of the reverse digraph).
  CycleCert reversed() const {
    CycleCert r(*this);
    std::reverse(r.vertices.begin(), r.vertices.end());
    return r;
  }

  bool operator==(const CycleCert& other) const = default;
};

/// True iff the cert is a genuine directed cycle of d: length >= 2, vertices
/// distinct and in range, every consecutive arc plus the closing arc present.
inline bool validate_cycle(const Digraph& d, const CycleCert& c) {
  const int len = c.length();
  if (len < 2) return false;
  VertexMask seen = 0;
  for (int v : c.vertices) {
    if (v < 0 || v >= d.order()) return false;
    if (seen & vertex_bit(v)) return false;
    seen |= vertex_bit(v);
  }
  for (int i = 0; i < len; ++i)
    if (!d.has_arc(c.vertices[static_cast<std::size_t>(i)],
                   c.vertices[static_cast<std::size_t>((i + 1) % len)]))
      return false;
  return true;
}

namespace detail {

struct TarjanState {
  const Digraph& d;
  std::vector<int> index, lowlink, component;
  std::vector<int> stack;
  VertexMask on_stack = 0;
  int next_index = 0;
  int component_count = 0;

  explicit TarjanState(const Digraph& g)
      : d(g),
        index(static_cast<std::size_t>(g.order()), -1),
        lowlink(static_cast<std::size_t>(g.order()), 0),
        component(static_cast<std::size_t>(g.order()), -1) {}

  void visit(int v) {
    index[static_cast<std::size_t>(v)] = lowlink[static_cast<std::size_t>(v)] = next_index++;
    stack.push_back(v);
    on_stack |= vertex_bit(v);
    VertexMask m = d.out_mask(v);
    while (m) {
      int w = std::countr_zero(m);
      m &= m - 1;
      if (index[static_cast<std::size_t>(w)] < 0) {
        visit(w);
        lowlink[static_cast<std::size_t>(v)] =
            std::min(lowlink[static_cast<std::size_t>(v)], lowlink[static_cast<std::size_t>(w)]);
      } else if (on_stack & vertex_bit(w)) {
        lowlink[static_cast<std::size_t>(v)] =
            std::min(lowlink[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
      }
    }
    if (lowlink[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack &= ~vertex_bit(w);
        component[static_cast<std::size_t>(w)] = component_count;
      } while (w != v);
      ++component_count;
    }
  }
};

}  // namespace detail

/// Tarjan SCC; returns component id per vertex (ids in reverse topological
/// discovery order) and writes the component count if requested.
inline std::vector<int> strongly_connected_components(const Digraph& d, int* count = nullptr) {
  detail::TarjanState state(d);
  for (int v = 0; v < d.order(); ++v)
    if (state.index[static_cast<std::size_t>(v)] < 0) state.visit(v);
  if (count) *count = state.component_count;
  return state.component;
}

/// True iff every ordered vertex pair is joined by a directed path.
/// A single vertex is strong.
inline bool is_strong(const Digraph& d) {
  if (d.order() < 1) throw std::invalid_argument("is_strong: order must be >= 1");
  int count = 0;
  strongly_connected_components(d, &count);
  return count == 1;
}

}  // namespace gensum
