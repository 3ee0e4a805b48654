#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "gensum/constructive.hpp"
#include "gensum/oracle.hpp"
#include "gensum/structure.hpp"

namespace gensum {

/// Cycle lengths guaranteed for every strong two-summand instance with these
/// orders: [3, n+1], the n+id ladder, the Hamiltonian length, and -- when
/// gcd(n, m) <= 2 -- everything, since such instances are always pancyclic.
inline std::set<int> guaranteed_lengths_pair(int n, int m) {
  if (n < m) std::swap(n, m);
  if (m < 2) throw std::invalid_argument("guaranteed_lengths_pair: orders must be >= 2");
  const int d = std::gcd(n, m);
  std::set<int> lengths;
  if (d <= 2) {
    for (int l = 3; l <= n + m; ++l) lengths.insert(l);
    return lengths;
  }
  for (int l = 3; l <= n + 1; ++l) lengths.insert(l);
  for (int i = 0; i < m / d; ++i) lengths.insert(n + i * d);
  lengths.insert(n + m);
  return lengths;
}

/// k-summand guarantee: [3, total - min_order + 1] plus the Hamiltonian
/// length. Weaker than the pair form at k = 2.
inline std::set<int> guaranteed_lengths_k(const std::vector<int>& orders) {
  if (orders.size() < 2) throw std::invalid_argument("guaranteed_lengths_k: need k >= 2");
  int total = 0, min_order = orders.front();
  for (int n : orders) {
    if (n < 2) throw std::invalid_argument("guaranteed_lengths_k: orders must be >= 2");
    total += n;
    min_order = std::min(min_order, n);
  }
  std::set<int> lengths;
  for (int l = 3; l <= total - min_order + 1; ++l) lengths.insert(l);
  lengths.insert(total);
  return lengths;
}

enum class Verdict { VertexPancyclic, Pancyclic, GuaranteedOnly };

enum class LadderRung {
  NoGoodPair,
  NoGoodCycle,
  Singular,
  SmallGcd,
  DNonSingular,
  DStarSingular,
  None
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::VertexPancyclic: return "vertex-pancyclic";
    case Verdict::Pancyclic: return "pancyclic";
    default: return "guaranteed-only";
  }
}

inline const char* to_string(LadderRung r) {
  switch (r) {
    case LadderRung::NoGoodPair: return "no-good-pair";
    case LadderRung::NoGoodCycle: return "no-good-cycle";
    case LadderRung::Singular: return "singular";
    case LadderRung::SmallGcd: return "gcd-le-2";
    case LadderRung::DNonSingular: return "d-non-singular";
    case LadderRung::DStarSingular: return "d-star-singular";
    default: return "none";
  }
}

struct Classification {
  Verdict verdict = Verdict::GuaranteedOnly;
  LadderRung rung = LadderRung::None;
  std::set<int> guaranteed;
};

/// Sufficient-condition ladder, cheapest-strongest first; no oracle involved.
/// The first rung that fires decides the verdict.
inline Classification classify_fast(const GenSum& g) {
  if (!is_strong(g.compiled()))
    throw std::invalid_argument("classify_fast: instance is not strong");
  const int k = g.summand_count();
  const int total = g.order();
  Classification c;
  auto full_range = [total]() {
    std::set<int> s;
    for (int l = 3; l <= total; ++l) s.insert(l);
    return s;
  };

  if (k == 2 && !has_good_pair_either_order(g, 0, 1)) {
    c.verdict = Verdict::VertexPancyclic;
    c.rung = LadderRung::NoGoodPair;
    c.guaranteed = full_range();
    return c;
  }
  if (find_good_cycles(g).empty()) {
    c.verdict = Verdict::VertexPancyclic;
    c.rung = LadderRung::NoGoodCycle;
    c.guaranteed = full_range();
    return c;
  }
  if (k == 2) {
    SingularityReport rep = singularity_report(g);
    LadderRung rung = LadderRung::None;
    if (rep.any_singular())
      rung = LadderRung::Singular;
    else if (rep.d <= 2)
      rung = LadderRung::SmallGcd;
    else if (rep.any_d_non_singular())
      rung = LadderRung::DNonSingular;
    else if (rep.any_d_star_singular())
      rung = LadderRung::DStarSingular;
    if (rung != LadderRung::None) {
      c.verdict = Verdict::Pancyclic;
      c.rung = rung;
      c.guaranteed = full_range();
      return c;
    }
  }
  c.verdict = Verdict::GuaranteedOnly;
  c.rung = LadderRung::None;
  c.guaranteed = k == 2 ? guaranteed_lengths_pair(g.summand_order(0), g.summand_order(1))
                        : guaranteed_lengths_k(g.orders());
  return c;
}

/// Candidate answers to the open problems: Q1 = pancyclic but not
/// vertex-pancyclic; Q2 = Hamiltonian with the full guaranteed set yet not
/// pancyclic.
struct Finding {
  enum class Kind { Q1, Q2 };
  Kind kind = Kind::Q1;
  std::pair<int, int> omission{-1, -1};  // Q1: (vertex, length) witness
  std::set<int> missing;                 // Q2: absent lengths
};

struct Violation {
  std::string kind;
  std::string detail;
};

/// Everything the oracle and the constructive machinery say about one
/// instance, with any theorem-level contradiction recorded as a violation
/// (violations indicate implementation bugs; acceptance requires zero).
struct VerificationReport {
  std::vector<int> orders;
  std::string orientation_hex;
  int bit_count = 0;
  std::vector<std::vector<std::pair<int, int>>> extra_arcs;
  std::vector<int> degenerate_summands;

  bool strong = false;
  Classification ladder;
  std::set<int> guaranteed;  // applicable formula guarantee (pair for k=2)

  bool oracle_skipped = false;
  Spectrum spectrum;  // over [2, order] when the oracle ran
  bool hamiltonian = false;
  CycleCert hamiltonian_cycle;
  bool pancyclic = false;
  std::set<int> missing;
  bool vertex_pancyclic = false;
  std::set<std::pair<int, int>> omissions;

  std::map<int, ConstructionTrace> constructive;
  std::vector<int> gamma_missing;  // singular-vertex gamma gaps, if any
  int knary_case = 0;              // k >= 3: 1 = collapse branch, 2 = transitive branch

  std::vector<Violation> violations;
  std::optional<Finding> finding;

  int order() const {
    int total = 0;
    for (int n : orders) total += n;
    return total;
  }
};

inline std::optional<Finding> open_problem_scan(const VerificationReport& r) {
  if (r.oracle_skipped || !r.strong) return std::nullopt;
  if (r.pancyclic && !r.vertex_pancyclic) {
    Finding f;
    f.kind = Finding::Kind::Q1;
    f.omission = *r.omissions.begin();
    return f;
  }
  if (!r.pancyclic && r.hamiltonian) {
    bool guaranteed_satisfied = true;
    for (int l : r.guaranteed)
      if (!r.spectrum.contains(l)) {
        guaranteed_satisfied = false;
        break;
      }
    if (guaranteed_satisfied) {
      Finding f;
      f.kind = Finding::Kind::Q2;
      f.missing = r.missing;
      return f;
    }
  }
  return std::nullopt;
}

inline VerificationReport verify_instance(const GenSum& g, int oracle_budget = 14) {
  VerificationReport r;
  r.orders = g.orders();
  r.orientation_hex = g.orientation().to_hex();
  r.bit_count = g.orientation().bit_count();
  for (int i = 0; i < g.summand_count(); ++i) r.extra_arcs.push_back(g.summand(i).extra_arcs());
  r.degenerate_summands = g.degenerate_summands();
  r.strong = is_strong(g.compiled());
  if (!r.strong)
    throw std::invalid_argument("verify_instance: instance is not strong");

  const int k = g.summand_count();
  const int total = g.order();
  r.ladder = classify_fast(g);
  r.guaranteed = k == 2 ? guaranteed_lengths_pair(g.summand_order(0), g.summand_order(1))
                        : guaranteed_lengths_k(g.orders());

  if (total <= oracle_budget) {
    r.spectrum = cycle_spectrum(g.compiled(), 2, total);
    if (auto ham = find_hamiltonian_cycle(g.compiled())) {
      r.hamiltonian = true;
      r.hamiltonian_cycle = *ham;
    }
    r.missing.clear();
    for (int l = 3; l <= total; ++l)
      if (!r.spectrum.contains(l)) r.missing.insert(l);
    r.pancyclic = r.missing.empty();
    auto vp = is_vertex_pancyclic(g.compiled());
    r.vertex_pancyclic = vp.vertex_pancyclic;
    r.omissions = std::move(vp.omissions);

    if (!r.hamiltonian)
      r.violations.push_back({"THEOREM-VIOLATION", "strong instance has no Hamiltonian cycle"});
    for (int l : r.guaranteed)
      if (!r.spectrum.contains(l))
        r.violations.push_back(
            {"THEOREM-VIOLATION", "guaranteed length " + std::to_string(l) + " is absent"});
    if (r.ladder.verdict == Verdict::VertexPancyclic && !r.vertex_pancyclic)
      r.violations.push_back({"THEOREM-VIOLATION",
                              std::string("ladder rung ") + to_string(r.ladder.rung) +
                                  " claims vertex-pancyclic, oracle disagrees"});
    if (r.ladder.verdict == Verdict::Pancyclic && !r.pancyclic)
      r.violations.push_back({"THEOREM-VIOLATION",
                              std::string("ladder rung ") + to_string(r.ladder.rung) +
                                  " claims pancyclic, oracle disagrees"});
  } else {
    r.oracle_skipped = true;
  }

  // Constructive side: build every certificate the patterns cover and check
  // them against the oracle where available.
  try {
    r.constructive = certify_constructive(g);
  } catch (const std::logic_error& e) {
    r.violations.push_back({"BAD-CERT", e.what()});
  }
  if (!r.oracle_skipped)
    for (const auto& [len, trace] : r.constructive)
      if (!r.spectrum.contains(len))
        r.violations.push_back({"ORACLE-MISMATCH", "certified length " + std::to_string(len) +
                                                       " missing from the oracle spectrum"});

  if (k == 2) {
    SingularityReport rep = singularity_report(g);
    for (int v = 0; v < total; ++v) {
      if (rep.status[static_cast<std::size_t>(v)] == SingularStatus::NonSingular) continue;
      const int own = g.summand_of(v);
      const int n = g.summand_order(own), m = g.summand_order(1 - own);
      try {
        SingularCycles sc = cycles_from_singular(g, v);
        for (int l = 3; l <= m + 2; ++l)
          if (!sc.by_length.count(l))
            r.violations.push_back({"SINGULAR-COVERAGE",
                                    "alpha family missing length " + std::to_string(l)});
        for (int l = n + 1; l <= n + m; ++l)
          if (!sc.by_length.count(l))
            r.violations.push_back({"SINGULAR-COVERAGE",
                                    "beta family missing length " + std::to_string(l)});
        if (v == *rep.first_singular()) r.gamma_missing = sc.gamma_missing;
      } catch (const std::exception& e) {
        r.violations.push_back({"SINGULAR-COVERAGE", e.what()});
      }
    }
  } else {
    r.knary_case = collapse_cycle_in_H(g).has_cycle ? 1 : 2;
  }

  r.finding = open_problem_scan(r);
  return r;
}

}  // namespace gensum
