#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>

#include "gensum/digraph.hpp"

namespace gensum {

namespace detail {

/// Backward BFS distances to `target` inside `allowed` (target included).
/// Unreachable vertices get order+1.
inline void distances_to(const Digraph& d, int target, VertexMask allowed, int* dist) {
  for (int v = 0; v < d.order(); ++v) dist[v] = d.order() + 1;
  dist[target] = 0;
  VertexMask frontier = vertex_bit(target);
  VertexMask seen = frontier;
  int level = 0;
  while (frontier) {
    ++level;
    VertexMask next = 0;
    VertexMask f = frontier;
    while (f) {
      int v = std::countr_zero(f);
      f &= f - 1;
      next |= d.in_mask(v) & allowed & ~seen;
    }
    VertexMask n = next;
    while (n) {
      int v = std::countr_zero(n);
      n &= n - 1;
      dist[v] = level;
    }
    seen |= next;
    frontier = next;
  }
}

/// Exhaustive DFS for a simple cycle of exactly `len` through `start`,
/// restricted to `allowed` vertices. Neighbors are tried in ascending index
/// order, so the first cycle found is deterministic.
class CycleSearch {
public:
  CycleSearch(const Digraph& d, int start, int len, VertexMask allowed)
      : d_(d), start_(start), len_(len), allowed_(allowed) {
    distances_to(d, start, allowed, dist_);
  }

  std::optional<CycleCert> run() {
    path_.clear();
    path_.push_back(start_);
    visited_ = vertex_bit(start_);
    if (extend()) return CycleCert(path_);
    return std::nullopt;
  }

private:
  bool extend() {
    const int used = static_cast<int>(path_.size());
    const int v = path_.back();
    if (used == len_) return d_.has_arc(v, start_);
    const int remaining = len_ - used;
    VertexMask cand = d_.out_mask(v) & allowed_ & ~visited_;
    // Enough fresh vertices left, and the candidate can still get home in time.
    if (std::popcount(allowed_ & ~visited_) < remaining) return false;
    while (cand) {
      int w = std::countr_zero(cand);
      cand &= cand - 1;
      if (dist_[w] > remaining) continue;
      path_.push_back(w);
      visited_ |= vertex_bit(w);
      if (extend()) return true;
      path_.pop_back();
      visited_ &= ~vertex_bit(w);
    }
    return false;
  }

  const Digraph& d_;
  int start_, len_;
  VertexMask allowed_;
  VertexMask visited_ = 0;
  std::vector<int> path_;
  int dist_[kMaxOrder];
};

}  // namespace detail

/// First simple cycle of exactly `len`, canonicalized by lowest start vertex
/// (only vertices >= the start participate) and ascending DFS order.
inline std::optional<CycleCert> find_cycle_of_length(const Digraph& d, int len) {
  if (len < 2 || len > d.order())
    throw std::invalid_argument("find_cycle_of_length: length out of range");
  for (int s = 0; s + len <= d.order(); ++s) {
    VertexMask allowed = low_mask(d.order()) & ~low_mask(s);
    detail::CycleSearch search(d, s, len, allowed);
    if (auto c = search.run()) return c;
  }
  return std::nullopt;
}

/// Exhaustive search for a length-l cycle through v; absent if none exists.
inline std::optional<CycleCert> cycle_through_vertex(const Digraph& d, int v, int l) {
  if (v < 0 || v >= d.order())
    throw std::invalid_argument("cycle_through_vertex: vertex out of range");
  if (l < 2 || l > d.order())
    throw std::invalid_argument("cycle_through_vertex: length out of range");
  detail::CycleSearch search(d, v, l, low_mask(d.order()));
  return search.run();
}

/// Exact cycle-length spectrum over a closed range, with one witness per
/// realized length. The ground-truth oracle for every theorem-level claim.
struct Spectrum {
  int min_len = 0;
  int max_len = -1;
  std::map<int, CycleCert> witnesses;

  bool contains(int l) const { return witnesses.count(l) != 0; }

  std::set<int> lengths() const {
    std::set<int> ls;
    for (const auto& [l, cert] : witnesses) ls.insert(l);
    return ls;
  }

  std::set<int> missing() const {
    std::set<int> gaps;
    for (int l = min_len; l <= max_len; ++l)
      if (!contains(l)) gaps.insert(l);
    return gaps;
  }
};

inline Spectrum cycle_spectrum(const Digraph& d, int min_len, int max_len) {
  if (min_len < 2 || min_len > max_len || max_len > d.order())
    throw std::invalid_argument("cycle_spectrum: need 2 <= min <= max <= order");
  Spectrum s;
  s.min_len = min_len;
  s.max_len = max_len;
  for (int l = min_len; l <= max_len; ++l)
    if (auto c = find_cycle_of_length(d, l)) s.witnesses.emplace(l, std::move(*c));
  return s;
}

inline std::optional<CycleCert> find_hamiltonian_cycle(const Digraph& d) {
  if (d.order() < 2)
    throw std::invalid_argument("find_hamiltonian_cycle: order must be >= 2");
  return find_cycle_of_length(d, d.order());
}

struct PancyclicityResult {
  bool pancyclic = false;
  std::set<int> missing;  // absent lengths in [3, order]
};

inline PancyclicityResult is_pancyclic(const Digraph& d) {
  if (d.order() < 3) throw std::invalid_argument("is_pancyclic: order must be >= 3");
  Spectrum s = cycle_spectrum(d, 3, d.order());
  PancyclicityResult r;
  r.missing = s.missing();
  r.pancyclic = r.missing.empty();
  return r;
}

struct VertexPancyclicityResult {
  bool vertex_pancyclic = false;
  std::set<std::pair<int, int>> omissions;  // (vertex, length) pairs with no cycle
};

inline VertexPancyclicityResult is_vertex_pancyclic(const Digraph& d) {
  if (d.order() < 3)
    throw std::invalid_argument("is_vertex_pancyclic: order must be >= 3");
  VertexPancyclicityResult r;
  for (int l = 3; l <= d.order(); ++l) {
    VertexMask covered = 0;
    if (auto any = find_cycle_of_length(d, l)) {
      for (int v : any->vertices) covered |= vertex_bit(v);
    }
    for (int v = 0; v < d.order(); ++v) {
      if (covered & vertex_bit(v)) continue;
      if (auto c = cycle_through_vertex(d, v, l)) {
        for (int w : c->vertices) covered |= vertex_bit(w);
      } else {
        r.omissions.emplace(v, l);
      }
    }
  }
  r.vertex_pancyclic = r.omissions.empty();
  return r;
}

}  // namespace gensum
