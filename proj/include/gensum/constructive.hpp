#pragma once

#include <map>
#include <string>

#include "gensum/oracle.hpp"
#include "gensum/structure.hpp"

namespace gensum {

struct strongness_violation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct wrong_case_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A named cycle construction: which pattern produced it, with which
/// parameters, and the resulting certificate. Constructions self-check both
/// the certificate and the pattern's closed-form length at build time.
struct ConstructionTrace {
  std::string pattern;  // merge | alpha | beta | gamma | eta | phi | psi | gamma_i | propagation
  std::map<std::string, int> params;
  std::string detail;  // free-form annotation (e.g. violated propagation rule)
  CycleCert cycle;
};

namespace detail {

inline ConstructionTrace make_trace(const Digraph& host, std::string pattern,
                                    std::map<std::string, int> params, CycleCert cycle,
                                    int expected_len, std::string note = "") {
  if (cycle.length() != expected_len)
    throw std::logic_error("construction '" + pattern + "' built length " +
                           std::to_string(cycle.length()) + ", formula says " +
                           std::to_string(expected_len));
  if (!validate_cycle(host, cycle))
    throw std::logic_error("construction '" + pattern + "' produced an invalid certificate");
  return ConstructionTrace{std::move(pattern), std::move(params), std::move(note),
                           std::move(cycle)};
}

inline std::vector<int> rotated(const std::vector<int>& cycle, int start) {
  const int n = static_cast<int>(cycle.size());
  std::vector<int> r(cycle.size());
  for (int t = 0; t < n; ++t) r[static_cast<std::size_t>(t)] = cycle[static_cast<std::size_t>(mod(start + t, n))];
  return r;
}

}  // namespace detail

/// The cycle spanning V(C_1) u V(C_2) that a good pair yields:
/// x_s -> y_r, around C_2 to y_{r-1}, jump to x_{s+1}, around C_1 back to x_s.
inline ConstructionTrace merge_on_view(const PairView& v, const GoodPair& p) {
  if (!v.xy(p.s, p.r) || !v.yx(p.r - 1, p.s + 1))
    throw std::invalid_argument("merge_with_good_pair: arcs do not form a good pair");
  std::vector<int> verts;
  verts.push_back(v.x(p.s));
  v.append_y_path(verts, p.r, p.r - 1);
  v.append_x_path(verts, p.s + 1, p.s - 1);
  return detail::make_trace(*v.host, "merge", {{"s", p.s}, {"r", p.r}}, v.finish(std::move(verts)),
                            v.n() + v.m());
}

inline ConstructionTrace merge_with_good_pair(const GenSum& g, const GoodPair& p, int i = 0,
                                              int j = 1) {
  return merge_on_view(pair_view(g, i, j), p);
}

/// Cycle families unlocked by a singular vertex: alpha covers [3, m+2],
/// beta covers [n+1, n+m], gamma is attempted for [m+3, n] and may be
/// inapplicable on a given instance; such lengths land in gamma_missing.
struct SingularCycles {
  std::map<int, ConstructionTrace> by_length;
  std::vector<int> gamma_missing;
};

namespace detail {

/// Out-singular core; the in-singular case runs this on a reversed view.
inline SingularCycles singular_cycles_on(const PairView& v, bool mirrored) {
  const int n = v.n(), m = v.m();
  std::vector<bool> out(static_cast<std::size_t>(n));
  int out_count = 0;
  for (int p = 0; p < n; ++p) {
    bool all = true;
    for (int q = 0; q < m; ++q)
      if (!v.xy(p, q)) {
        all = false;
        break;
      }
    out[static_cast<std::size_t>(p)] = all;
    if (all) ++out_count;
  }
  if (out_count == n)
    throw strongness_violation_error("whole summand dominates the other; instance is not strong");
  if (out_count == 0)
    throw std::invalid_argument("cycles_from_singular: no singular vertex in this view");

  // Anchor pairs around the cycle: a singular vertex preceded (resp.
  // followed) by a non-singular one; both exist since both kinds occur.
  int s = -1, q_anchor = -1;
  for (int p = 0; p < n; ++p)
    if (out[static_cast<std::size_t>(p)] && !out[static_cast<std::size_t>(mod(p - 1, n))]) {
      s = p;
      break;
    }
  for (int p = 0; p < n; ++p)
    if (out[static_cast<std::size_t>(p)] && !out[static_cast<std::size_t>(mod(p + 1, n))]) {
      q_anchor = p;
      break;
    }
  int r = -1, r2 = -1;
  for (int q = 0; q < m; ++q)
    if (v.yx(q, s - 1)) {
      r = q;
      break;
    }
  for (int q = 0; q < m; ++q)
    if (v.yx(q, q_anchor + 1)) {
      r2 = q;
      break;
    }
  if (s < 0 || q_anchor < 0 || r < 0 || r2 < 0)
    throw strongness_violation_error("singular anchors missing; instance cannot be strong");

  const int mir = mirrored ? 1 : 0;
  SingularCycles result;
  // alpha_h: y_r -> x_{s-1} -> x_s -> y_{r-h} -> ... -> y_r, length 3+h.
  for (int h = 0; h < m; ++h) {
    std::vector<int> verts{v.y(r), v.x(s - 1), v.x(s)};
    if (h > 0) v.append_y_path(verts, r - h, r - 1);
    result.by_length.emplace(
        3 + h, make_trace(*v.host, "alpha", {{"h", h}, {"s", s}, {"r", r}, {"mirrored", mir}},
                          v.finish(std::move(verts)), 3 + h));
  }
  // beta_h: y_{r2} -> x_{q+1} -> ... -> x_q -> y_{r2-h} -> ... -> y_{r2},
  // length n+1+h.
  for (int h = 0; h < m; ++h) {
    std::vector<int> verts{v.y(r2)};
    v.append_x_path(verts, q_anchor + 1, q_anchor);
    if (h > 0) v.append_y_path(verts, r2 - h, r2 - 1);
    int len = n + 1 + h;
    if (!result.by_length.count(len))
      result.by_length.emplace(
          len, make_trace(*v.host, "beta", {{"h", h}, {"q", q_anchor}, {"r", r2}, {"mirrored", mir}},
                          v.finish(std::move(verts)), len));
  }
  // gamma: for l in [m+3, n], a path of h+1 cycle arcs bridged through two
  // cross arcs and most of C_2; needs a compatible arc pair to exist.
  for (int l = m + 3; l <= n; ++l) {
    if (result.by_length.count(l)) continue;
    const int h = l - (m + 1);
    bool built = false;
    for (int a = 0; a < n && !built; ++a)
      for (int q = 0; q < m && !built; ++q) {
        if (!v.yx(q, a) || !v.xy(a + h + 1, q + 2)) continue;
        std::vector<int> verts{v.y(q)};
        v.append_x_path(verts, a, a + h + 1);
        if (m >= 3) v.append_y_path(verts, q + 2, q - 1);
        result.by_length.emplace(
            l, make_trace(*v.host, "gamma", {{"h", h}, {"a", a}, {"q", q}, {"mirrored", mir}},
                          v.finish(std::move(verts)), l));
        built = true;
      }
    if (!built) result.gamma_missing.push_back(l);
  }
  return result;
}

}  // namespace detail

inline SingularCycles cycles_from_singular_on(const Digraph& host, const std::vector<int>& own,
                                              const std::vector<int>& opposite, bool in_singular) {
  PairView v = make_pair_view(host, own, opposite, in_singular);
  return detail::singular_cycles_on(v, in_singular);
}

inline SingularCycles cycles_from_singular(const GenSum& g, int vertex) {
  require_pair(g, "cycles_from_singular");
  if (!is_strong(g.compiled()))
    throw std::invalid_argument("cycles_from_singular: instance is not strong");
  const int own = g.summand_of(vertex);
  SingularStatus status = singular_status(g, vertex, 1 - own);
  if (status == SingularStatus::NonSingular)
    throw std::invalid_argument("cycles_from_singular: vertex is not singular");
  return cycles_from_singular_on(g.compiled(), summand_cycle(g, own), summand_cycle(g, 1 - own),
                                 status == SingularStatus::InSingular);
}

/// Lengths {n + i*d : 1 <= i <= m/d} from a good pair: the pair is rotated to
/// x_{n-1} -> y_1, y_0 -> x_0; gamma_i closes through y_{i*d} -> x_0 when that
/// arc is present, otherwise the arc's absence violates a forbidden-length
/// rule and the propagation engine supplies the cycle.
inline std::map<int, ConstructionTrace> cycles_n_plus_id_on(const Digraph& host,
                                                            const std::vector<int>& c1,
                                                            const std::vector<int>& c2,
                                                            const GoodPair& p) {
  PairView base = make_pair_view(host, c1, c2);
  if (!base.xy(p.s, p.r) || !base.yx(p.r - 1, p.s + 1))
    throw std::invalid_argument("cycles_n_plus_id: arcs do not form a good pair");
  const int n = base.n(), m = base.m();
  PairView v = make_pair_view(host, detail::rotated(c1, p.s + 1), detail::rotated(c2, p.r - 1));
  const int d = std::gcd(n, m);
  std::map<int, ConstructionTrace> result;
  for (int i = 1; i <= m / d; ++i) {
    const int len = n + i * d;
    if (v.yx(i * d, 0)) {
      std::vector<int> verts{v.x(n - 1)};
      v.append_y_path(verts, 1, i * d);
      v.append_x_path(verts, 0, n - 2);
      result.emplace(len,
                     detail::make_trace(host, "gamma_i", {{"i", i}, {"s", p.s}, {"r", p.r}},
                                        v.finish(std::move(verts)), len));
    } else {
      PropagationOutcome prop = propagate_forbidden_length(host, c1, c2, len);
      if (!prop.cycle_found())
        throw std::logic_error("cycles_n_plus_id: propagation closed although a required "
                               "arc is absent");
      result.emplace(len, detail::make_trace(
                              host, "propagation",
                              {{"l", len}, {"view", prop.view}, {"s", prop.seed_s}, {"r", prop.seed_r}},
                              std::move(*prop.cycle), len, prop.rule));
    }
  }
  return result;
}

inline std::map<int, ConstructionTrace> cycles_n_plus_id(const GenSum& g, const GoodPair& p,
                                                         int i = 0, int j = 1) {
  return cycles_n_plus_id_on(g.compiled(), summand_cycle(g, i), summand_cycle(g, j), p);
}

/// Collapse analysis of the summand digraph H (one vertex per summand,
/// arc i -> j iff some exterior arc runs that way). `base` is a summand of
/// minimum order; H minus base either contains a cycle (merge those summands
/// into one Hamiltonian super-summand and recurse) or is a transitive
/// tournament whose unique Hamiltonian path drives the explicit cases.
struct SummandGraphAnalysis {
  Digraph summand_graph{0};
  int base = 0;
  bool has_cycle = false;
  std::vector<int> cycle_summands;    // case 1: summand indices on a shortest H' cycle
  std::vector<int> transitive_order;  // case 2: H' Hamiltonian path, summand indices
};

inline SummandGraphAnalysis collapse_cycle_in_H_on(const Digraph& host,
                                                   const std::vector<std::vector<int>>& cycles) {
  const int k = static_cast<int>(cycles.size());
  if (k < 3) throw std::invalid_argument("collapse_cycle_in_H: need k >= 3 summands");
  SummandGraphAnalysis a;
  a.summand_graph = Digraph(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      bool any = false;
      for (int u : cycles[static_cast<std::size_t>(i)]) {
        for (int w : cycles[static_cast<std::size_t>(j)])
          if (host.has_arc(u, w)) {
            any = true;
            break;
          }
        if (any) break;
      }
      if (any) a.summand_graph.add_arc(i, j);
    }
  a.base = 0;
  for (int i = 1; i < k; ++i)
    if (cycles[static_cast<std::size_t>(i)].size() < cycles[static_cast<std::size_t>(a.base)].size())
      a.base = i;
  std::vector<int> others;
  for (int i = 0; i < k; ++i)
    if (i != a.base) others.push_back(i);
  Digraph hprime = a.summand_graph.induced(others);
  for (int len = 2; len <= hprime.order(); ++len)
    if (auto cyc = find_cycle_of_length(hprime, len)) {
      a.has_cycle = true;
      for (int local : cyc->vertices) a.cycle_summands.push_back(others[static_cast<std::size_t>(local)]);
      return a;
    }
  // Acyclic semicomplete without digons: a transitive tournament; its unique
  // Hamiltonian path orders vertices by descending out-degree.
  std::vector<int> order_local(others.size());
  for (std::size_t t = 0; t < others.size(); ++t) order_local[t] = static_cast<int>(t);
  std::sort(order_local.begin(), order_local.end(), [&](int x, int y) {
    return hprime.out_degree(x) > hprime.out_degree(y);
  });
  for (std::size_t t = 0; t + 1 < order_local.size(); ++t)
    if (!hprime.has_arc(order_local[t], order_local[t + 1]))
      throw std::logic_error("collapse_cycle_in_H: acyclic summand graph is not transitive");
  for (int local : order_local) a.transitive_order.push_back(others[static_cast<std::size_t>(local)]);
  return a;
}

inline std::vector<std::vector<int>> summand_cycles(const GenSum& g) {
  std::vector<std::vector<int>> cycles;
  for (int i = 0; i < g.summand_count(); ++i) cycles.push_back(summand_cycle(g, i));
  return cycles;
}

inline SummandGraphAnalysis collapse_cycle_in_H(const GenSum& g) {
  if (g.summand_count() < 3)
    throw std::invalid_argument("collapse_cycle_in_H: need k >= 3 summands");
  if (!is_strong(g.compiled()))
    throw std::invalid_argument("collapse_cycle_in_H: instance is not strong");
  return collapse_cycle_in_H_on(g.compiled(), summand_cycles(g));
}

/// Traces from the transitive-tournament cases. Sub-case 1 and its mirror 2
/// certify every length in [3, total]; sub-case 3 certifies
/// [r+3, sum_{l>=2} n_l + r + 1] and delegates [3, r+2] to the two-summand
/// machinery on the first two role summands.
struct KnaryOutcome {
  int sub_case = 0;
  int r = -1;             // sub-case 3 anchor offset
  int delegate_upto = 0;  // sub-case 3: lengths [3, delegate_upto] are delegated
  int delegate_first = 0, delegate_second = 0;  // summand indices for delegation
  std::map<int, ConstructionTrace> traces;
};

namespace detail {

struct RoleView {
  const Digraph* host;
  bool reversed;
  std::vector<std::vector<int>> cyc;  // cycles by role, role t at index t-1

  bool arc(int u, int v) const { return reversed ? host->has_arc(v, u) : host->has_arc(u, v); }
  int size(int role) const { return static_cast<int>(cyc[static_cast<std::size_t>(role - 1)].size()); }
  int at(int role, int pos) const {
    const auto& c = cyc[static_cast<std::size_t>(role - 1)];
    return c[static_cast<std::size_t>(mod(pos, static_cast<int>(c.size())))];
  }
  void append_full(std::vector<int>& out, int role) const {
    const auto& c = cyc[static_cast<std::size_t>(role - 1)];
    out.insert(out.end(), c.begin(), c.end());
  }
  void append_prefix(std::vector<int>& out, int role, int upto) const {
    for (int t = 0; t <= upto; ++t) out.push_back(at(role, t));
  }
  CycleCert finish(std::vector<int> verts) const {
    CycleCert c(std::move(verts));
    return reversed ? c.reversed() : c;
  }
  bool arc_set_empty(int role_from, int role_to) const {
    for (int p = 0; p < size(role_from); ++p)
      for (int q = 0; q < size(role_to); ++q)
        if (arc(at(role_from, p), at(role_to, q))) return false;
    return true;
  }
};

/// Sub-case with D_1 |-> D_2: beta/gamma/eta cover every length in [3, total].
inline void knary_dominant_case(RoleView& v, int mir, std::map<int, ConstructionTrace>& traces) {
  const int k = static_cast<int>(v.cyc.size());
  // Anchor arc from D_k to D_1; rotate C_1 so its head sits at position 0 and
  // C_k so its tail sits last.
  int pk = -1, p1 = -1;
  for (int a = 0; a < v.size(k) && pk < 0; ++a)
    for (int b = 0; b < v.size(1); ++b)
      if (v.arc(v.at(k, a), v.at(1, b))) {
        pk = a;
        p1 = b;
        break;
      }
  if (pk < 0) throw strongness_violation_error("no arc from the last summand back to the base");
  v.cyc[0] = rotated(v.cyc[0], p1);
  v.cyc[static_cast<std::size_t>(k - 1)] = rotated(v.cyc[static_cast<std::size_t>(k - 1)], pk + 1);

  auto add = [&](int len, const char* pattern, int j, int i, std::vector<int> verts) {
    if (traces.count(len)) return;
    traces.emplace(len, make_trace(*v.host, pattern, {{"j", j}, {"i", i}, {"mirrored", mir}},
                                   v.finish(std::move(verts)), len));
  };

  const int tail = v.at(k, v.size(k) - 1);
  // beta(1,i): prefix of P_1, hop to x_0^2, then the anchor tail, length i+3.
  for (int i = 0; i < v.size(1); ++i) {
    std::vector<int> verts;
    v.append_prefix(verts, 1, i);
    verts.push_back(v.at(2, 0));
    verts.push_back(tail);
    add(i + 3, "beta", 1, i, std::move(verts));
  }
  // gamma(j,i): P_1..P_{j-1} whole, prefix of P_j, anchor tail.
  int before = v.size(1);
  for (int j = 2; j <= k - 1; ++j) {
    for (int i = 0; i < v.size(j); ++i) {
      std::vector<int> verts;
      for (int t = 1; t < j; ++t) v.append_full(verts, t);
      v.append_prefix(verts, j, i);
      verts.push_back(tail);
      add(before + i + 2, "gamma", j, i, std::move(verts));
    }
    before += v.size(j);
  }
  // eta(k,i): all of P_1..P_{k-1}, then the last i+1 vertices of P_k.
  for (int i = 0; i < v.size(k); ++i) {
    std::vector<int> verts;
    for (int t = 1; t < k; ++t) v.append_full(verts, t);
    for (int t = v.size(k) - (i + 1); t < v.size(k); ++t) verts.push_back(v.at(k, t));
    add(before + i + 1, "eta", k, i, std::move(verts));
  }
}

/// Sub-case with traffic both ways around the base: phi/psi cover
/// [r+3, sum_{l>=2} n_l + r + 1].
inline int knary_threaded_case(RoleView& v, std::map<int, ConstructionTrace>& traces) {
  const int k = static_cast<int>(v.cyc.size());
  int pk = -1, p1 = -1;
  for (int a = 0; a < v.size(k) && pk < 0; ++a)
    for (int b = 0; b < v.size(1); ++b)
      if (v.arc(v.at(k, a), v.at(1, b))) {
        pk = a;
        p1 = b;
        break;
      }
  if (pk < 0) throw strongness_violation_error("no arc from the last summand back to the base");
  int q1 = -1, p2 = -1;
  for (int a = 0; a < v.size(1) && q1 < 0; ++a)
    for (int b = 0; b < v.size(2); ++b)
      if (v.arc(v.at(1, a), v.at(2, b))) {
        q1 = a;
        p2 = b;
        break;
      }
  if (q1 < 0) throw strongness_violation_error("no arc from the base into the second summand");
  v.cyc[0] = rotated(v.cyc[0], p1);
  v.cyc[1] = rotated(v.cyc[1], p2);
  v.cyc[static_cast<std::size_t>(k - 1)] = rotated(v.cyc[static_cast<std::size_t>(k - 1)], pk + 1);
  const int r = mod(q1 - p1, v.size(1));
  const int tail = v.at(k, v.size(k) - 1);

  auto add = [&](int len, const char* pattern, int j, int i, std::vector<int> verts) {
    if (traces.count(len)) return;
    traces.emplace(len, make_trace(*v.host, pattern, {{"j", j}, {"i", i}, {"r", r}},
                                   v.finish(std::move(verts)), len));
  };

  // phi(j,i): P_2..P_{j-1} whole, prefix of P_j, anchor tail, then the base
  // path x_0^1..x_r^1 closing into x_0^2.
  int before = 0;
  for (int j = 2; j <= k - 1; ++j) {
    for (int i = 0; i < v.size(j); ++i) {
      std::vector<int> verts;
      for (int t = 2; t < j; ++t) v.append_full(verts, t);
      v.append_prefix(verts, j, i);
      verts.push_back(tail);
      v.append_prefix(verts, 1, r);
      add(before + i + r + 3, "phi", j, i, std::move(verts));
    }
    before += v.size(j);
  }
  // psi(k,i): P_2..P_{k-1} whole, last i+1 vertices of P_k, base path.
  for (int i = 0; i < v.size(k); ++i) {
    std::vector<int> verts;
    for (int t = 2; t < k; ++t) v.append_full(verts, t);
    for (int t = v.size(k) - (i + 1); t < v.size(k); ++t) verts.push_back(v.at(k, t));
    v.append_prefix(verts, 1, r);
    add(before + i + r + 2, "psi", k, i, std::move(verts));
  }
  return r;
}

}  // namespace detail

inline KnaryOutcome knary_case_cycles_on(const Digraph& host,
                                         const std::vector<std::vector<int>>& cycles,
                                         const SummandGraphAnalysis& analysis) {
  if (analysis.has_cycle)
    throw wrong_case_error("knary_case_cycles: summand graph minus base has a cycle; "
                           "collapse and recurse instead");
  const int k = static_cast<int>(cycles.size());
  std::vector<int> roles{analysis.base};
  roles.insert(roles.end(), analysis.transitive_order.begin(), analysis.transitive_order.end());

  detail::RoleView v{&host, false, {}};
  for (int idx : roles) v.cyc.push_back(cycles[static_cast<std::size_t>(idx)]);

  KnaryOutcome out;
  if (v.arc_set_empty(2, 1)) {
    out.sub_case = 1;
    detail::knary_dominant_case(v, 0, out.traces);
  } else if (v.arc_set_empty(1, k)) {
    out.sub_case = 2;
    // In the reverse digraph the transitive chain flips, the base keeps its
    // role, and D_k |-> D_1 becomes the dominant configuration.
    detail::RoleView rv{&host, true, {}};
    rv.cyc.push_back(reversed_cycle(v.cyc[0]));
    for (int t = k - 1; t >= 1; --t) rv.cyc.push_back(reversed_cycle(v.cyc[static_cast<std::size_t>(t)]));
    detail::knary_dominant_case(rv, 1, out.traces);
  } else {
    out.sub_case = 3;
    out.r = detail::knary_threaded_case(v, out.traces);
    out.delegate_upto = out.r + 2;
    out.delegate_first = roles[0];
    out.delegate_second = roles[1];
  }
  return out;
}

inline KnaryOutcome knary_case_cycles(const GenSum& g, const SummandGraphAnalysis& analysis) {
  return knary_case_cycles_on(g.compiled(), summand_cycles(g), analysis);
}

/// Everything the two-summand patterns can certify on two spanning cycles:
/// singular-vertex families, good-pair merge and gamma_i lengths, and
/// propagation violations for whatever is still missing.
inline std::map<int, ConstructionTrace> pair_certify(const Digraph& host,
                                                     const std::vector<int>& c1,
                                                     const std::vector<int>& c2) {
  std::map<int, ConstructionTrace> traces;
  const int total = static_cast<int>(c1.size() + c2.size());
  const std::vector<int>* cyc[2] = {&c1, &c2};

  for (int order = 0; order < 2; ++order) {
    const std::vector<int>& a = *cyc[order];
    const std::vector<int>& b = *cyc[1 - order];
    auto pairs = find_good_pairs(make_pair_view(host, a, b));
    if (pairs.empty()) continue;
    const GoodPair& p = pairs.front();
    ConstructionTrace t = merge_on_view(make_pair_view(host, a, b), p);
    traces.emplace(total, std::move(t));
    for (auto& [len, trace] : cycles_n_plus_id_on(host, a, b, p))
      traces.emplace(len, std::move(trace));
    break;
  }

  for (int side = 0; side < 2; ++side) {
    const std::vector<int>& own = *cyc[side];
    const std::vector<int>& opp = *cyc[1 - side];
    bool done = false;
    for (int u : own) {
      SingularStatus st = singular_status_vs(host, u, opp);
      if (st == SingularStatus::NonSingular) continue;
      SingularCycles sc = cycles_from_singular_on(host, own, opp, st == SingularStatus::InSingular);
      for (auto& [len, trace] : sc.by_length)
        traces.emplace(len, std::move(trace));
      done = true;
      break;
    }
    if (done) break;
  }

  for (int l = 3; l <= total; ++l) {
    if (traces.count(l)) continue;
    PropagationOutcome prop = propagate_forbidden_length(host, c1, c2, l);
    if (prop.cycle_found())
      traces.emplace(l, detail::make_trace(
                            host, "propagation",
                            {{"l", l}, {"view", prop.view}, {"s", prop.seed_s}, {"r", prop.seed_r}},
                            std::move(*prop.cycle), l, prop.rule));
  }
  return traces;
}

namespace detail {

inline std::map<int, ConstructionTrace> certify_recurse(const Digraph& host,
                                                        std::vector<std::vector<int>> cycles) {
  const int k = static_cast<int>(cycles.size());
  if (k == 2) return pair_certify(host, cycles[0], cycles[1]);

  SummandGraphAnalysis analysis = collapse_cycle_in_H_on(host, cycles);
  if (analysis.has_cycle) {
    std::vector<int> fused_vertices;
    for (int i : analysis.cycle_summands)
      fused_vertices.insert(fused_vertices.end(), cycles[static_cast<std::size_t>(i)].begin(),
                            cycles[static_cast<std::size_t>(i)].end());
    std::sort(fused_vertices.begin(), fused_vertices.end());
    Digraph sub = host.induced(fused_vertices);
    auto ham = find_hamiltonian_cycle(sub);
    if (!ham)
      throw std::logic_error("collapse merge: fused strong sub-sum has no Hamiltonian cycle");
    std::vector<int> fused_cycle;
    for (int local : ham->vertices) fused_cycle.push_back(fused_vertices[static_cast<std::size_t>(local)]);

    int slot = *std::min_element(analysis.cycle_summands.begin(), analysis.cycle_summands.end());
    std::vector<std::vector<int>> next;
    for (int i = 0; i < k; ++i) {
      if (i == slot) {
        next.push_back(fused_cycle);
      } else if (std::find(analysis.cycle_summands.begin(), analysis.cycle_summands.end(), i) ==
                 analysis.cycle_summands.end()) {
        next.push_back(cycles[static_cast<std::size_t>(i)]);
      }
    }
    return certify_recurse(host, std::move(next));
  }

  KnaryOutcome out = knary_case_cycles_on(host, cycles, analysis);
  if (out.sub_case == 3) {
    auto delegated = pair_certify(host, cycles[static_cast<std::size_t>(out.delegate_first)],
                                  cycles[static_cast<std::size_t>(out.delegate_second)]);
    for (int l = 3; l <= out.delegate_upto; ++l) {
      auto it = delegated.find(l);
      if (it != delegated.end() && !out.traces.count(l)) out.traces.emplace(l, std::move(it->second));
    }
  }
  return out.traces;
}

}  // namespace detail

/// All lengths the proof patterns certify for this instance, any k >= 2.
/// Lengths outside the returned map are not constructively covered and fall
/// back to the spectrum oracle at the caller's discretion.
inline std::map<int, ConstructionTrace> certify_constructive(const GenSum& g) {
  if (!is_strong(g.compiled()))
    throw std::invalid_argument("certify_constructive: instance is not strong");
  if (g.summand_count() < 2)
    throw std::invalid_argument("certify_constructive: need k >= 2 summands");
  return detail::certify_recurse(g.compiled(), summand_cycles(g));
}

}  // namespace gensum
