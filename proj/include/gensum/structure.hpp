#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "gensum/gensum.hpp"

namespace gensum {

struct unsupported_arity_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline int mod(int a, int n) { return ((a % n) + n) % n; }

/// Working view of two designated Hamiltonian cycles inside one host digraph.
/// Positions are cyclic; callers encode rotations by rotating the vertex
/// lists. With `reversed` set, every arc query is flipped, so algorithms
/// written for one arc direction also serve the mirrored case; cycles built
/// in a reversed view are turned back into host cycles by finish().
struct PairView {
  const Digraph* host = nullptr;
  std::vector<int> xs, ys;  // global vertex ids by cycle position
  bool reversed = false;

  int n() const { return static_cast<int>(xs.size()); }
  int m() const { return static_cast<int>(ys.size()); }

  int x(int p) const { return xs[static_cast<std::size_t>(mod(p, n()))]; }
  int y(int q) const { return ys[static_cast<std::size_t>(mod(q, m()))]; }

  bool arc(int u, int v) const { return reversed ? host->has_arc(v, u) : host->has_arc(u, v); }
  bool xy(int p, int q) const { return arc(x(p), y(q)); }
  bool yx(int q, int p) const { return arc(y(q), x(p)); }

  void append_x_path(std::vector<int>& out, int from, int to) const {
    int steps = mod(to - from, n());
    for (int t = 0; t <= steps; ++t) out.push_back(x(from + t));
  }

  void append_y_path(std::vector<int>& out, int from, int to) const {
    int steps = mod(to - from, m());
    for (int t = 0; t <= steps; ++t) out.push_back(y(from + t));
  }

  CycleCert finish(std::vector<int> vertices) const {
    CycleCert c(std::move(vertices));
    return reversed ? c.reversed() : c;
  }
};

/// A cycle list reordered so it traverses the reverse digraph forwards.
inline std::vector<int> reversed_cycle(const std::vector<int>& cycle) {
  std::vector<int> r = cycle;
  std::reverse(r.begin() + 1, r.end());
  return r;
}

inline PairView make_pair_view(const Digraph& host, std::vector<int> c1, std::vector<int> c2,
                               bool reversed = false) {
  PairView v;
  v.host = &host;
  v.reversed = reversed;
  v.xs = reversed ? reversed_cycle(c1) : std::move(c1);
  v.ys = reversed ? reversed_cycle(c2) : std::move(c2);
  return v;
}

inline std::vector<int> summand_cycle(const GenSum& g, int i) {
  std::vector<int> c;
  for (int p = 0; p < g.summand_order(i); ++p) c.push_back(g.vertex(i, p));
  return c;
}

/// View of summands (i, j) of a generalized sum as (C_1, C_2).
inline PairView pair_view(const GenSum& g, int i, int j, bool reversed = false) {
  return make_pair_view(g.compiled(), summand_cycle(g, i), summand_cycle(g, j), reversed);
}

/// Arcs x_s -> y_r and y_{r-1} -> x_{s+1} between two designated cycles.
struct GoodPair {
  int s = 0;  // position in C_1
  int r = 0;  // position in C_2
  bool operator==(const GoodPair&) const = default;
};

inline std::vector<GoodPair> find_good_pairs(const PairView& v) {
  std::vector<GoodPair> pairs;
  for (int s = 0; s < v.n(); ++s)
    for (int r = 0; r < v.m(); ++r)
      if (v.xy(s, r) && v.yx(r - 1, s + 1)) pairs.push_back(GoodPair{s, r});
  return pairs;
}

/// All good pairs with summand i's cycle as C_1 and summand j's as C_2,
/// in ascending (s, r) order. Scan (j, i) separately for the other role order.
inline std::vector<GoodPair> find_good_pairs(const GenSum& g, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= g.summand_count() || j >= g.summand_count())
    throw std::invalid_argument("find_good_pairs: invalid summand pair");
  return find_good_pairs(pair_view(g, i, j));
}

inline bool has_good_pair_either_order(const GenSum& g, int i, int j) {
  return !find_good_pairs(g, i, j).empty() || !find_good_pairs(g, j, i).empty();
}

/// Anti-directed 4-cycle v0 v1 v2 v3 with v0, v2 sources and v1, v3 sinks,
/// good because one of its two vertex-disjoint arc pairs is all-exterior.
/// Canonical form: v0 < v2 and v1 < v3.
struct GoodCycle {
  std::array<int, 4> v{};
  bool forward_pair_exterior = false;   // {(v0,v1), (v2,v3)} all exterior
  bool backward_pair_exterior = false;  // {(v2,v1), (v0,v3)} all exterior
};

inline std::vector<GoodCycle> find_good_cycles(const GenSum& g) {
  if (g.summand_count() < 2)
    throw std::invalid_argument("find_good_cycles: need k >= 2 summands");
  const Digraph& d = g.compiled();
  const int N = d.order();
  std::vector<GoodCycle> cycles;
  // Sources {v0, v2}, sinks {v1, v3}; the anti-directed 4-cycle needs all four
  // source->sink arcs, and either traversal order uses the same arc set, so
  // the unordered source and sink pairs identify the cycle.
  for (int v0 = 0; v0 < N; ++v0)
    for (int v2 = v0 + 1; v2 < N; ++v2)
      for (int v1 = 0; v1 < N; ++v1) {
        if (v1 == v0 || v1 == v2) continue;
        if (!d.has_arc(v0, v1) || !d.has_arc(v2, v1)) continue;
        for (int v3 = v1 + 1; v3 < N; ++v3) {
          if (v3 == v0 || v3 == v2) continue;
          if (!d.has_arc(v0, v3) || !d.has_arc(v2, v3)) continue;
          bool fwd = g.is_exterior_arc(v0, v1) && g.is_exterior_arc(v2, v3);
          bool bwd = g.is_exterior_arc(v2, v1) && g.is_exterior_arc(v0, v3);
          if (fwd || bwd) cycles.push_back(GoodCycle{{v0, v1, v2, v3}, fwd, bwd});
        }
      }
  return cycles;
}

enum class SingularStatus { OutSingular, InSingular, NonSingular };

inline SingularStatus singular_status_vs(const Digraph& d, int v, const std::vector<int>& target) {
  bool all_out = true, all_in = true;
  for (int u : target) {
    if (!d.has_arc(v, u)) all_out = false;
    if (!d.has_arc(u, v)) all_in = false;
  }
  if (all_out) return SingularStatus::OutSingular;
  if (all_in) return SingularStatus::InSingular;
  return SingularStatus::NonSingular;
}

/// Out-singular: v dominates the whole target summand; in-singular: the
/// target summand dominates v; else non-singular.
inline SingularStatus singular_status(const GenSum& g, int v, int target_summand) {
  if (target_summand < 0 || target_summand >= g.summand_count())
    throw std::invalid_argument("singular_status: bad summand index");
  if (g.summand_of(v) == target_summand)
    throw std::invalid_argument("singular_status: vertex lies in the target summand");
  return singular_status_vs(g.compiled(), v, summand_cycle(g, target_summand));
}

enum class ClassDirection { Out, In, Mixed };

struct DSingularResult {
  bool flag = false;  // every residue class of the opposite cycle dominated one-way
  int d = 1;
  std::vector<ClassDirection> classes;  // one entry per residue class mod d
};

inline void require_pair(const GenSum& g, const char* op) {
  if (g.summand_count() != 2)
    throw unsupported_arity_error(std::string(op) + " is defined for two summands only");
}

inline DSingularResult d_singular_vs(const Digraph& dg, int v, const std::vector<int>& opposite,
                                     int d) {
  DSingularResult result;
  result.d = d;
  result.flag = true;
  const int m = static_cast<int>(opposite.size());
  for (int c = 0; c < d; ++c) {
    bool all_out = true, all_in = true;
    for (int q = c; q < m; q += d) {
      int u = opposite[static_cast<std::size_t>(q)];
      if (!dg.has_arc(v, u)) all_out = false;
      if (!dg.has_arc(u, v)) all_in = false;
    }
    ClassDirection dir = all_out ? ClassDirection::Out
                                 : (all_in ? ClassDirection::In : ClassDirection::Mixed);
    if (dir == ClassDirection::Mixed) result.flag = false;
    result.classes.push_back(dir);
  }
  return result;
}

inline DSingularResult d_singular(const GenSum& g, int v) {
  require_pair(g, "d_singular");
  const int opp = 1 - g.summand_of(v);
  const int d = std::gcd(g.summand_order(0), g.summand_order(1));
  return d_singular_vs(g.compiled(), v, summand_cycle(g, opp), d);
}

struct DStarResult {
  bool flag = false;
  int d = 1;
  int window_start = -1;  // first position i with a uniform window of d
  bool outward = false;   // direction of that window
};

inline DStarResult dstar_singular_vs(const Digraph& dg, int v, const std::vector<int>& opposite,
                                     int d) {
  const int m = static_cast<int>(opposite.size());
  DStarResult result;
  result.d = d;
  for (int i = 0; i < m; ++i) {
    bool all_out = true, all_in = true;
    for (int j = 0; j < d; ++j) {
      int u = opposite[static_cast<std::size_t>((i + j) % m)];
      if (!dg.has_arc(v, u)) all_out = false;
      if (!dg.has_arc(u, v)) all_in = false;
    }
    if (all_out || all_in) {
      result.flag = true;
      result.window_start = i;
      result.outward = all_out;
      return result;
    }
  }
  return result;
}

inline DStarResult dstar_singular(const GenSum& g, int v) {
  require_pair(g, "dstar_singular");
  const int opp = 1 - g.summand_of(v);
  const int d = std::gcd(g.summand_order(0), g.summand_order(1));
  return dstar_singular_vs(g.compiled(), v, summand_cycle(g, opp), d);
}

/// Per-vertex singularity summary for a two-summand instance.
struct SingularityReport {
  int d = 1;
  std::vector<SingularStatus> status;        // vs the opposite summand
  std::vector<DSingularResult> d_singular;   // classwise domination flags
  std::vector<DStarResult> d_star_singular;  // uniform-window flags

  std::optional<int> first_singular() const {
    for (std::size_t v = 0; v < status.size(); ++v)
      if (status[v] != SingularStatus::NonSingular) return static_cast<int>(v);
    return std::nullopt;
  }
  bool any_singular() const { return first_singular().has_value(); }
  bool any_d_non_singular() const {
    for (const auto& r : d_singular)
      if (!r.flag) return true;
    return false;
  }
  bool any_d_star_singular() const {
    for (const auto& r : d_star_singular)
      if (r.flag) return true;
    return false;
  }
};

inline SingularityReport singularity_report(const GenSum& g) {
  require_pair(g, "singularity_report");
  SingularityReport rep;
  rep.d = std::gcd(g.summand_order(0), g.summand_order(1));
  for (int v = 0; v < g.order(); ++v) {
    rep.status.push_back(singular_status(g, v, 1 - g.summand_of(v)));
    rep.d_singular.push_back(d_singular(g, v));
    rep.d_star_singular.push_back(dstar_singular(g, v));
  }
  return rep;
}

/// The orbit {s + i*gcd(t, step) mod t : i >= 0}; equals the closures of
/// s - j*step and of s + i*step mod t, with exactly t / gcd(t, step) elements.
inline std::set<int> subscript_orbit(int t, int step, int s) {
  if (t < 1) throw std::invalid_argument("subscript_orbit: modulus must be >= 1");
  if (step < 1) throw std::invalid_argument("subscript_orbit: step must be >= 1");
  const int d = std::gcd(t, step);
  std::set<int> orbit;
  for (int i = mod(s, t) % d; i < t; i += d) orbit.insert(i);
  return orbit;
}

/// Outcome of replaying the forbidden-length arc rules against an instance.
/// Either some rule is violated -- yielding a certified cycle of exactly the
/// forbidden length -- or the implied arc set closes without contradiction.
/// Closure never proves the length absent; only the spectrum oracle does.
struct PropagationOutcome {
  std::optional<CycleCert> cycle;  // set iff a violation produced a cycle
  std::string rule;                // violated rule, for traces
  int seed_s = -1, seed_r = -1;    // violating seed arc, view positions
  int view = -1;                   // 0: C_1 plays the short/long role; 1: swapped
  std::vector<std::pair<int, int>> closure_arcs;  // confirmed implied arcs (global ids)
  std::vector<int> closure_singular;              // singular vertices evident from closure
  std::vector<int> closure_d_singular;            // d-singular vertices evident from closure

  bool cycle_found() const { return cycle.has_value(); }
};

namespace detail {

/// One single-step arc implication for a fixed forbidden length: a present
/// arc at (s, r) forces the arc shifted by (dp, dq), else the proof's
/// explicit cycle of that length materializes.
struct PropagationStep {
  const char* name;
  bool from_xy;  // consumes x->y arcs (else y->x)
  int dp, dq;
};

inline CycleCert propagation_violation_cycle(const PairView& v, std::string_view rule, int l,
                                             int h, int s, int r) {
  std::vector<int> verts;
  if (rule == "short_orbit_xy") {
    v.append_x_path(verts, s - (l - 2), s);
    verts.push_back(v.y(r));
  } else if (rule == "short_shift_xy") {
    v.append_x_path(verts, s - (l - 3), s);
    verts.push_back(v.y(r));
    verts.push_back(v.y(r + 1));
  } else if (rule == "short_orbit_yx") {
    v.append_x_path(verts, s, s + (l - 2));
    verts.push_back(v.y(r));
  } else if (rule == "short_shift_yx") {
    v.append_x_path(verts, s, s + (l - 3));
    verts.push_back(v.y(r - 1));
    verts.push_back(v.y(r));
  } else if (rule == "long_xy") {
    v.append_x_path(verts, s + 1, s);
    v.append_y_path(verts, r, r + h);
  } else {  // long_yx
    v.append_x_path(verts, s, s - 1);
    v.append_y_path(verts, r - h, r);
  }
  return v.finish(std::move(verts));
}

}  // namespace detail

/// Replays every rule applicable to forbidden length l over the cross arcs of
/// two spanning cycles. The orientation between the cycles is complete, so
/// every present cross arc is a seed and every implied arc is itself a seed;
/// one pass over (arc, rule) pairs therefore reaches the fixpoint. The scan
/// order (view, then s, then r, then rule) fixes which violation is reported.
inline PropagationOutcome propagate_forbidden_length(const Digraph& host,
                                                     const std::vector<int>& c1,
                                                     const std::vector<int>& c2, int l) {
  const int n1 = static_cast<int>(c1.size()), n2 = static_cast<int>(c2.size());
  if (l < 3 || l > n1 + n2)
    throw std::invalid_argument("propagate_forbidden_length: length out of range");

  PropagationOutcome out;
  for (int view = 0; view < 2; ++view) {
    PairView v = view == 0 ? make_pair_view(host, c1, c2) : make_pair_view(host, c2, c1);
    const int n = v.n(), m = v.m();
    std::vector<detail::PropagationStep> steps;
    int h = 0;
    if (l <= n + 1) {
      steps.push_back({"short_orbit_xy", true, -(l - 2), 0});
      steps.push_back({"short_shift_xy", true, -(l - 3), +1});
      steps.push_back({"short_orbit_yx", false, +(l - 2), 0});
      steps.push_back({"short_shift_yx", false, +(l - 3), -1});
    } else if (l <= n + m) {
      h = l - (n + 1);
      steps.push_back({"long_xy", true, +1, +h});
      steps.push_back({"long_yx", false, -1, -h});
    }
    if (steps.empty()) continue;
    for (int s = 0; s < n; ++s)
      for (int r = 0; r < m; ++r) {
        const bool xy = v.xy(s, r);
        for (const auto& step : steps) {
          if (step.from_xy != xy) continue;
          const int ps = mod(s + step.dp, n);
          const int qr = mod(r + step.dq, m);
          const bool implied_present = step.from_xy ? v.xy(ps, qr) : v.yx(qr, ps);
          if (!implied_present) {
            out.cycle = detail::propagation_violation_cycle(v, step.name, l, h, s, r);
            out.rule = step.name;
            out.seed_s = s;
            out.seed_r = r;
            out.view = view;
            return out;
          }
        }
      }
  }

  // No violation: the closure is the full cross arc set, all confirmed.
  const int d = std::gcd(n1, n2);
  for (int p = 0; p < n1; ++p)
    for (int q = 0; q < n2; ++q) {
      int u = c1[static_cast<std::size_t>(p)], w = c2[static_cast<std::size_t>(q)];
      if (host.has_arc(u, w)) out.closure_arcs.emplace_back(u, w);
      if (host.has_arc(w, u)) out.closure_arcs.emplace_back(w, u);
    }
  for (int p = 0; p < n1; ++p) {
    int u = c1[static_cast<std::size_t>(p)];
    if (singular_status_vs(host, u, c2) != SingularStatus::NonSingular)
      out.closure_singular.push_back(u);
    if (d_singular_vs(host, u, c2, d).flag) out.closure_d_singular.push_back(u);
  }
  for (int q = 0; q < n2; ++q) {
    int u = c2[static_cast<std::size_t>(q)];
    if (singular_status_vs(host, u, c1) != SingularStatus::NonSingular)
      out.closure_singular.push_back(u);
    if (d_singular_vs(host, u, c1, d).flag) out.closure_d_singular.push_back(u);
  }
  return out;
}

inline PropagationOutcome propagate_forbidden_length(const GenSum& g, int l) {
  require_pair(g, "propagate_forbidden_length");
  return propagate_forbidden_length(g.compiled(), summand_cycle(g, 0), summand_cycle(g, 1), l);
}

}  // namespace gensum
