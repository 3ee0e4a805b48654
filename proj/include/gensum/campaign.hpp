#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <thread>

#include "gensum/classify.hpp"

namespace gensum {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for the i-th sample of a campaign: decorrelates the campaign seed
/// from the sample index before it reaches sample_orientation's mt19937_64.
inline std::uint64_t campaign_sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

/// Orientation value after rotating each summand's cycle by the given shift.
/// Bit (i, j, p, q) of the result reads bit (i, j, p+shift_i, q+shift_j) of
/// the input, since rotating relabels positions without moving arcs.
inline std::uint64_t rotate_orientation_value(const std::vector<int>& orders, std::uint64_t value,
                                              const std::vector<int>& shifts) {
  const int k = static_cast<int>(orders.size());
  std::uint64_t rotated = 0;
  int b = 0;
  int block_start = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const int ni = orders[static_cast<std::size_t>(i)];
      const int nj = orders[static_cast<std::size_t>(j)];
      for (int p = 0; p < ni; ++p)
        for (int q = 0; q < nj; ++q, ++b) {
          const int sp = (p + shifts[static_cast<std::size_t>(i)]) % ni;
          const int sq = (q + shifts[static_cast<std::size_t>(j)]) % nj;
          if ((value >> (block_start + sp * nj + sq)) & 1) rotated |= std::uint64_t{1} << b;
        }
      block_start += ni * nj;
    }
  return rotated;
}

/// True iff value is the minimum of its orbit under cyclic summand rotations.
inline bool is_rotation_canonical(const std::vector<int>& orders, std::uint64_t value) {
  const int k = static_cast<int>(orders.size());
  std::vector<int> shifts(static_cast<std::size_t>(k), 0);
  while (true) {
    int pos = k - 1;
    while (pos >= 0) {
      if (++shifts[static_cast<std::size_t>(pos)] < orders[static_cast<std::size_t>(pos)]) break;
      shifts[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return true;
    if (rotate_orientation_value(orders, value, shifts) < value) return false;
  }
}

struct CampaignConfig {
  std::vector<int> orders;
  std::vector<std::vector<std::pair<int, int>>> extra_arcs;  // optional, per summand
  bool exhaustive = true;
  std::uint64_t sample_count = 0;  // sample mode instance count
  std::uint64_t seed = 0;
  std::uint64_t offset = 0;
  std::uint64_t limit = 0;  // 0 = run to the end of the space
  int workers = 1;
  int oracle_budget = 14;
  bool modulo_rotation = false;
  int enum_cap = -1;  // -1 = default_enum_cap()

  // Called with (instances completed from offset, merged counts so far) each
  // time a 2^16-instance block frontier advances. Hook for checkpoint files.
  std::function<void(std::uint64_t, const struct CampaignCounts&)> checkpoint = nullptr;
};

struct CampaignCounts {
  std::uint64_t total = 0;             // instances processed
  std::uint64_t skipped_rotation = 0;  // non-canonical instances skipped
  std::uint64_t strong = 0;
  std::uint64_t hamiltonian = 0;
  std::uint64_t oracle_pancyclic = 0;
  std::uint64_t oracle_vertex_pancyclic = 0;
  std::uint64_t oracle_skipped = 0;
  std::uint64_t verdict_vertex_pancyclic = 0;
  std::uint64_t verdict_pancyclic = 0;
  std::uint64_t verdict_guaranteed_only = 0;
  std::uint64_t rung_no_good_pair = 0;
  std::uint64_t rung_no_good_cycle = 0;
  std::uint64_t rung_singular = 0;
  std::uint64_t rung_small_gcd = 0;
  std::uint64_t rung_d_non_singular = 0;
  std::uint64_t rung_d_star = 0;
  std::uint64_t rung_none = 0;
  std::uint64_t violations = 0;
  std::uint64_t q1 = 0;
  std::uint64_t q2 = 0;
  std::uint64_t knary_case1 = 0;
  std::uint64_t knary_case2 = 0;

  CampaignCounts& operator+=(const CampaignCounts& o) {
    total += o.total;
    skipped_rotation += o.skipped_rotation;
    strong += o.strong;
    hamiltonian += o.hamiltonian;
    oracle_pancyclic += o.oracle_pancyclic;
    oracle_vertex_pancyclic += o.oracle_vertex_pancyclic;
    oracle_skipped += o.oracle_skipped;
    verdict_vertex_pancyclic += o.verdict_vertex_pancyclic;
    verdict_pancyclic += o.verdict_pancyclic;
    verdict_guaranteed_only += o.verdict_guaranteed_only;
    rung_no_good_pair += o.rung_no_good_pair;
    rung_no_good_cycle += o.rung_no_good_cycle;
    rung_singular += o.rung_singular;
    rung_small_gcd += o.rung_small_gcd;
    rung_d_non_singular += o.rung_d_non_singular;
    rung_d_star += o.rung_d_star;
    rung_none += o.rung_none;
    violations += o.violations;
    q1 += o.q1;
    q2 += o.q2;
    knary_case1 += o.knary_case1;
    knary_case2 += o.knary_case2;
    return *this;
  }

  bool operator==(const CampaignCounts&) const = default;
};

struct CampaignFinding {
  std::uint64_t index = 0;  // orientation value (exhaustive) or sample index
  std::string orientation_hex;
  Finding finding;
};

struct CampaignViolation {
  std::uint64_t index = 0;
  std::string orientation_hex;
  Violation violation;
};

struct CampaignReport {
  CampaignConfig config;
  CampaignCounts counts;
  std::vector<CampaignFinding> findings;
  std::vector<CampaignViolation> violation_samples;  // capped detail list
  std::uint64_t space_size = 0;
  double wall_ms = 0;
};

namespace detail {

inline constexpr std::uint64_t kCampaignBlock = 1u << 16;
inline constexpr std::size_t kViolationSampleCap = 128;

struct BlockResult {
  CampaignCounts counts;
  std::vector<CampaignFinding> findings;
  std::vector<CampaignViolation> violations;
};

inline std::vector<int> orders_of(const std::vector<SummandSpec>& specs) {
  std::vector<int> o;
  for (const SummandSpec& s : specs) o.push_back(s.order());
  return o;
}

inline int orientation_bit_count_of(const std::vector<SummandSpec>& specs) {
  return orientation_bit_count(orders_of(specs));
}

inline void campaign_process(const CampaignConfig& cfg, const std::vector<SummandSpec>& specs,
                             std::uint64_t index, BlockResult& out) {
  OrientationMap orientation;
  const int bits = orientation_bit_count_of(specs);
  if (cfg.exhaustive) {
    if (cfg.modulo_rotation && !is_rotation_canonical(orders_of(specs), index)) {
      out.counts.skipped_rotation += 1;
      return;
    }
    orientation = OrientationMap::from_value(bits, index);
  } else {
    orientation = sample_orientation(orders_of(specs), campaign_sample_seed(cfg.seed, index));
  }
  out.counts.total += 1;
  GenSum g = GenSum::build(specs, std::move(orientation));
  if (!is_strong(g.compiled())) return;
  out.counts.strong += 1;
  try {
    VerificationReport r = verify_instance(g, cfg.oracle_budget);
    if (r.hamiltonian) out.counts.hamiltonian += 1;
    if (r.oracle_skipped) out.counts.oracle_skipped += 1;
    if (r.pancyclic) out.counts.oracle_pancyclic += 1;
    if (r.vertex_pancyclic) out.counts.oracle_vertex_pancyclic += 1;
    switch (r.ladder.verdict) {
      case Verdict::VertexPancyclic: out.counts.verdict_vertex_pancyclic += 1; break;
      case Verdict::Pancyclic: out.counts.verdict_pancyclic += 1; break;
      default: out.counts.verdict_guaranteed_only += 1; break;
    }
    switch (r.ladder.rung) {
      case LadderRung::NoGoodPair: out.counts.rung_no_good_pair += 1; break;
      case LadderRung::NoGoodCycle: out.counts.rung_no_good_cycle += 1; break;
      case LadderRung::Singular: out.counts.rung_singular += 1; break;
      case LadderRung::SmallGcd: out.counts.rung_small_gcd += 1; break;
      case LadderRung::DNonSingular: out.counts.rung_d_non_singular += 1; break;
      case LadderRung::DStarSingular: out.counts.rung_d_star += 1; break;
      default: out.counts.rung_none += 1; break;
    }
    if (r.knary_case == 1) out.counts.knary_case1 += 1;
    if (r.knary_case == 2) out.counts.knary_case2 += 1;
    out.counts.violations += r.violations.size();
    for (const Violation& v : r.violations)
      out.violations.push_back({index, g.orientation().to_hex(), v});
    if (r.finding) {
      if (r.finding->kind == Finding::Kind::Q1)
        out.counts.q1 += 1;
      else
        out.counts.q2 += 1;
      out.findings.push_back({index, g.orientation().to_hex(), *r.finding});
    }
  } catch (const std::exception& e) {
    out.counts.violations += 1;
    out.violations.push_back({index, g.orientation().to_hex(), {"EXCEPTION", e.what()}});
  }
}

}  // namespace detail

/// Runs build -> strongness filter -> verify -> open-problem scan over an
/// orientation range, sharded into 2^16-instance blocks handed to workers.
/// Results merge in block order, so aggregate counts and the findings list
/// are identical for any worker count.
inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<SummandSpec> specs;
  for (std::size_t i = 0; i < cfg.orders.size(); ++i) {
    auto extra = i < cfg.extra_arcs.size() ? cfg.extra_arcs[i] : std::vector<std::pair<int, int>>{};
    specs.push_back(SummandSpec::cycle_with_extra(cfg.orders[i], extra));
  }
  const int cap = cfg.enum_cap < 0 ? default_enum_cap() : cfg.enum_cap;

  std::uint64_t space = 0;
  if (cfg.exhaustive) {
    const int bits = orientation_bit_count(cfg.orders);
    if (bits > cap)
      throw enumeration_too_large_error(
          "orientation space has " + std::to_string(bits) + " bits, above the cap of " +
          std::to_string(cap) + "; use sample mode");
    space = std::uint64_t{1} << bits;
  } else {
    space = cfg.sample_count;
  }
  const std::uint64_t begin = std::min(cfg.offset, space);
  std::uint64_t end = space;
  if (cfg.limit > 0) end = std::min(end, begin + cfg.limit);

  const std::uint64_t span = end - begin;
  const std::uint64_t block_count = (span + detail::kCampaignBlock - 1) / detail::kCampaignBlock;
  std::vector<detail::BlockResult> blocks(static_cast<std::size_t>(block_count));
  std::vector<char> done(static_cast<std::size_t>(block_count), 0);
  std::atomic<std::uint64_t> next_block{0};
  std::mutex frontier_mutex;
  std::uint64_t frontier = 0;  // blocks merged into the checkpoint view
  CampaignCounts frontier_counts;

  auto worker = [&]() {
    while (true) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= block_count) return;
      const std::uint64_t lo = begin + b * detail::kCampaignBlock;
      const std::uint64_t hi = std::min(end, lo + detail::kCampaignBlock);
      detail::BlockResult result;
      for (std::uint64_t idx = lo; idx < hi; ++idx)
        detail::campaign_process(cfg, specs, idx, result);
      {
        std::lock_guard<std::mutex> lock(frontier_mutex);
        blocks[static_cast<std::size_t>(b)] = std::move(result);
        done[static_cast<std::size_t>(b)] = 1;
        bool advanced = false;
        while (frontier < block_count && done[static_cast<std::size_t>(frontier)]) {
          frontier_counts += blocks[static_cast<std::size_t>(frontier)].counts;
          ++frontier;
          advanced = true;
        }
        if (advanced && cfg.checkpoint) {
          const std::uint64_t done_instances =
              std::min(span, frontier * detail::kCampaignBlock);
          cfg.checkpoint(done_instances, frontier_counts);
        }
      }
    }
  };

  const int workers = std::max(1, cfg.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CampaignReport report;
  report.config = cfg;
  report.space_size = space;
  for (auto& block : blocks) {
    report.counts += block.counts;
    for (auto& f : block.findings) report.findings.push_back(std::move(f));
    for (auto& v : block.violations)
      if (report.violation_samples.size() < detail::kViolationSampleCap)
        report.violation_samples.push_back(std::move(v));
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                       .count();
  return report;
}

}  // namespace gensum
