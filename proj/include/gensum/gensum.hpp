#pragma once

#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gensum/digraph.hpp"
#include "gensum/oracle.hpp"

namespace gensum {

struct invalid_summand_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct malformed_orientation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct enumeration_too_large_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A summand digraph together with its designated Hamiltonian cycle,
/// given as the vertex order x_0, x_1, ..., x_{n-1} (closing arc implied).
struct SummandSpec {
  Digraph digraph;
  std::vector<int> ham_order;

  SummandSpec() : digraph(2), ham_order{0, 1} {
    digraph.add_arc(0, 1);
    digraph.add_arc(1, 0);
  }

  SummandSpec(Digraph d, std::vector<int> order)
      : digraph(std::move(d)), ham_order(std::move(order)) {}

  int order() const { return digraph.order(); }

  /// Bare directed n-cycle with the natural Hamiltonian order.
  static SummandSpec cycle(int n) {
    if (n < 2) throw invalid_summand_error("summand order must be >= 2");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    return SummandSpec(Digraph::directed_cycle(n), std::move(order));
  }

  /// n-cycle plus extra arcs given in cycle-position space.
  static SummandSpec cycle_with_extra(int n, const std::vector<std::pair<int, int>>& extra) {
    SummandSpec s = cycle(n);
    for (auto [a, b] : extra) {
      if (a < 0 || a >= n || b < 0 || b >= n || a == b)
        throw invalid_summand_error("extra arc out of range or self-loop");
      s.digraph.add_arc(a, b);
    }
    return s;
  }

  void validate() const {
    const int n = order();
    if (n < 2) throw invalid_summand_error("summand order must be >= 2");
    if (static_cast<int>(ham_order.size()) != n)
      throw invalid_summand_error("ham_order size does not match summand order");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : ham_order) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
        throw invalid_summand_error("ham_order is not a permutation");
      seen[static_cast<std::size_t>(v)] = true;
    }
    for (int i = 0; i < n; ++i) {
      int u = ham_order[static_cast<std::size_t>(i)];
      int v = ham_order[static_cast<std::size_t>((i + 1) % n)];
      if (!digraph.has_arc(u, v))
        throw invalid_summand_error("designated Hamiltonian cycle arc missing");
    }
  }

  /// Relabel vertices so that ham_order becomes the identity permutation.
  SummandSpec normalized() const {
    validate();
    const int n = order();
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(ham_order[static_cast<std::size_t>(p)])] = p;
    Digraph d(n);
    for (auto [u, v] : digraph.arcs())
      d.add_arc(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]);
    std::vector<int> ident(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ident[static_cast<std::size_t>(i)] = i;
    return SummandSpec(std::move(d), std::move(ident));
  }

  /// Arcs beyond the designated cycle, in position space (normalized labels).
  std::vector<std::pair<int, int>> extra_arcs() const {
    SummandSpec norm = normalized();
    std::vector<std::pair<int, int>> extra;
    for (auto [u, v] : norm.digraph.arcs())
      if (v != (u + 1) % norm.order()) extra.emplace_back(u, v);
    return extra;
  }
};

/// One direction bit per cross-summand vertex pair. Bit order is lexicographic
/// by (i, j, position in C_i, position in C_j) over summand pairs i < j;
/// bit 0 of the canonical integer is the first pair. A 0 bit points the arc
/// from the lower-indexed summand to the higher one.
class OrientationMap {
public:
  OrientationMap() = default;

  explicit OrientationMap(int bit_count)
      : bit_count_(bit_count), words_(static_cast<std::size_t>((bit_count + 63) / 64), 0) {
    if (bit_count < 0) throw malformed_orientation_error("negative bit count");
  }

  static OrientationMap from_value(int bit_count, std::uint64_t value) {
    OrientationMap m(bit_count);
    if (bit_count < 64 && value >= (std::uint64_t{1} << bit_count))
      throw malformed_orientation_error("orientation value exceeds bit count");
    if (bit_count > 0) m.words_[0] = value;
    return m;
  }

  static OrientationMap from_hex(int bit_count, std::string_view hex) {
    if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex.remove_prefix(2);
    if (hex.empty()) throw malformed_orientation_error("empty orientation hex string");
    OrientationMap m(bit_count);
    int nibble = 0;  // nibble index from the least significant end
    for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++nibble) {
      char c = *it;
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
      else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
      else throw malformed_orientation_error("invalid hex digit in orientation");
      if (v != 0) {
        int b = nibble * 4;
        if (b >= bit_count) throw malformed_orientation_error("orientation hex longer than bit count");
        for (int k = 0; k < 4; ++k)
          if (v & (1 << k)) {
            if (b + k >= bit_count)
              throw malformed_orientation_error("orientation hex longer than bit count");
            m.set_bit(b + k, true);
          }
      }
    }
    return m;
  }

  int bit_count() const { return bit_count_; }

  bool bit(int b) const {
    check(b);
    return (words_[static_cast<std::size_t>(b / 64)] >> (b % 64)) & 1;
  }

  void set_bit(int b, bool v) {
    check(b);
    if (v)
      words_[static_cast<std::size_t>(b / 64)] |= std::uint64_t{1} << (b % 64);
    else
      words_[static_cast<std::size_t>(b / 64)] &= ~(std::uint64_t{1} << (b % 64));
  }

  /// Canonical integer value; only valid when bit_count <= 64.
  std::uint64_t value() const {
    if (bit_count_ > 64) throw std::logic_error("orientation wider than 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  /// Lowercase hex of the canonical integer, zero-padded to ceil(bits/4) digits.
  std::string to_hex() const {
    const int nibbles = std::max(1, (bit_count_ + 3) / 4);
    std::string s(static_cast<std::size_t>(nibbles), '0');
    static const char* digits = "0123456789abcdef";
    for (int h = 0; h < nibbles; ++h) {
      int v = 0;
      for (int k = 0; k < 4; ++k) {
        int b = h * 4 + k;
        if (b < bit_count_ && bit(b)) v |= 1 << k;
      }
      s[static_cast<std::size_t>(nibbles - 1 - h)] = digits[v];
    }
    return s;
  }

  bool operator==(const OrientationMap& other) const = default;

private:
  void check(int b) const {
    if (b < 0 || b >= bit_count_)
      throw std::out_of_range("orientation bit index out of range");
  }

  int bit_count_ = 0;
  std::vector<std::uint64_t> words_;
};

inline int orientation_bit_count(const std::vector<int>& orders) {
  int bits = 0;
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = i + 1; j < orders.size(); ++j) bits += orders[i] * orders[j];
  return bits;
}

/// A generalized sum: k summands plus a complete orientation of every
/// cross-summand pair, compiled to one digraph. Vertices are assigned
/// contiguously by summand in Hamiltonian-cycle position order.
class GenSum {
public:
  static GenSum build(std::vector<SummandSpec> summands, OrientationMap orientation) {
    if (summands.empty()) throw invalid_summand_error("need at least one summand");
    GenSum g;
    g.summands_.reserve(summands.size());
    int total = 0;
    g.offsets_.push_back(0);
    for (const SummandSpec& s : summands) {
      g.summands_.push_back(s.normalized());
      total += s.order();
      if (total > kMaxOrder)
        throw invalid_summand_error("total order exceeds the cap of " +
                                    std::to_string(kMaxOrder));
      g.offsets_.push_back(total);
    }
    std::vector<int> orders = g.orders();
    const int bits = orientation_bit_count(orders);
    if (orientation.bit_count() != bits)
      throw malformed_orientation_error(
          "orientation has " + std::to_string(orientation.bit_count()) +
          " bits, expected " + std::to_string(bits));
    g.orientation_ = std::move(orientation);

    g.compiled_ = Digraph(total);
    const int k = g.summand_count();
    for (int i = 0; i < k; ++i)
      for (auto [u, v] : g.summands_[static_cast<std::size_t>(i)].digraph.arcs())
        g.compiled_.add_arc(g.vertex(i, u), g.vertex(i, v));
    int b = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int p = 0; p < orders[static_cast<std::size_t>(i)]; ++p)
          for (int q = 0; q < orders[static_cast<std::size_t>(j)]; ++q, ++b) {
            if (g.orientation_.bit(b))
              g.compiled_.add_arc(g.vertex(j, q), g.vertex(i, p));
            else
              g.compiled_.add_arc(g.vertex(i, p), g.vertex(j, q));
          }
    return g;
  }

  int summand_count() const { return static_cast<int>(summands_.size()); }
  int order() const { return offsets_.back(); }
  const Digraph& compiled() const { return compiled_; }
  const OrientationMap& orientation() const { return orientation_; }
  const SummandSpec& summand(int i) const { return summands_[static_cast<std::size_t>(i)]; }
  int summand_order(int i) const { return summands_[static_cast<std::size_t>(i)].order(); }

  std::vector<int> orders() const {
    std::vector<int> o;
    o.reserve(summands_.size());
    for (const SummandSpec& s : summands_) o.push_back(s.order());
    return o;
  }

  /// Global vertex id of cycle position p in summand i.
  int vertex(int i, int p) const { return offsets_[static_cast<std::size_t>(i)] + p; }

  /// (summand index, cycle position) of a global vertex id.
  std::pair<int, int> label(int v) const {
    for (int i = summand_count() - 1; i >= 0; --i)
      if (v >= offsets_[static_cast<std::size_t>(i)])
        return {i, v - offsets_[static_cast<std::size_t>(i)]};
    throw std::out_of_range("vertex out of range");
  }

  int summand_of(int v) const { return label(v).first; }

  bool is_exterior_arc(int u, int v) const {
    return compiled_.has_arc(u, v) && summand_of(u) != summand_of(v);
  }

  int exterior_arc_count() const {
    int count = 0;
    for (auto [u, v] : compiled_.arcs())
      if (summand_of(u) != summand_of(v)) ++count;
    return count;
  }

  /// Bit index of the unordered cross pair (summand i pos p, summand j pos q), i < j.
  int bit_index(int i, int j, int p, int q) const {
    int b = 0;
    for (int a = 0; a < summand_count(); ++a)
      for (int c = a + 1; c < summand_count(); ++c) {
        if (a == i && c == j) return b + p * summand_order(j) + q;
        b += summand_order(a) * summand_order(c);
      }
    throw std::out_of_range("no such summand pair");
  }

  std::vector<int> degenerate_summands() const {
    std::vector<int> ds;
    for (int i = 0; i < summand_count(); ++i)
      if (summand_order(i) == 2) ds.push_back(i);
    return ds;
  }

private:
  GenSum() : compiled_(0) {}

  std::vector<SummandSpec> summands_;  // normalized: ham_order is the identity
  OrientationMap orientation_;
  Digraph compiled_;
  std::vector<int> offsets_;  // size k+1; offsets_[i] = first vertex of summand i
};

/// Enumeration cap in bits; override with the GSL_ENUM_CAP environment variable.
inline int default_enum_cap() {
  if (const char* env = std::getenv("GSL_ENUM_CAP")) {
    int cap = std::atoi(env);
    if (cap > 0) return cap;
  }
  return 30;
}

/// Streams all 2^bits orientation maps in ascending canonical-integer order,
/// restartable from any offset.
class OrientationEnumerator {
public:
  explicit OrientationEnumerator(const std::vector<int>& orders, std::uint64_t offset = 0,
                                 int cap = default_enum_cap())
      : bits_(orientation_bit_count(orders)), next_(offset) {
    if (bits_ > cap)
      throw enumeration_too_large_error(
          "orientation space has " + std::to_string(bits_) + " bits, above the cap of " +
          std::to_string(cap) + "; use sampling instead");
    total_ = std::uint64_t{1} << bits_;
  }

  std::uint64_t total() const { return total_; }
  std::uint64_t next_index() const { return next_; }

  std::optional<OrientationMap> next() {
    if (next_ >= total_) return std::nullopt;
    return OrientationMap::from_value(bits_, next_++);
  }

private:
  int bits_;
  std::uint64_t total_;
  std::uint64_t next_;
};

/// Uniform orientation draw from std::mt19937_64 seeded with `seed`; the
/// engine's raw 64-bit outputs fill words from the least significant end, so
/// identical seeds give identical maps on every platform.
inline OrientationMap sample_orientation(const std::vector<int>& orders, std::uint64_t seed) {
  const int bits = orientation_bit_count(orders);
  OrientationMap m(bits);
  std::mt19937_64 rng(seed);
  for (int base = 0; base < bits; base += 64) {
    std::uint64_t word = rng();
    for (int k = 0; k < 64 && base + k < bits; ++k)
      m.set_bit(base + k, (word >> k) & 1);
  }
  return m;
}

/// The induced generalized sum on a subset of summands, relabeled to fresh
/// contiguous vertex ids; source_vertices maps new ids back to g's ids.
struct InducedSubsum {
  GenSum sum;
  std::vector<int> source_vertices;
};

inline InducedSubsum induced_subsum(const GenSum& g, const std::vector<int>& summand_indices) {
  if (summand_indices.empty())
    throw std::invalid_argument("induced_subsum: summand subset must be nonempty");
  std::vector<SummandSpec> specs;
  std::vector<int> source;
  for (int i : summand_indices) {
    if (i < 0 || i >= g.summand_count())
      throw std::invalid_argument("induced_subsum: summand index out of range");
    specs.push_back(g.summand(i));
    for (int p = 0; p < g.summand_order(i); ++p) source.push_back(g.vertex(i, p));
  }
  std::vector<int> orders;
  for (const SummandSpec& s : specs) orders.push_back(s.order());
  OrientationMap bits(orientation_bit_count(orders));
  int b = 0;
  const int k = static_cast<int>(summand_indices.size());
  for (int a = 0; a < k; ++a)
    for (int c = a + 1; c < k; ++c)
      for (int p = 0; p < orders[static_cast<std::size_t>(a)]; ++p)
        for (int q = 0; q < orders[static_cast<std::size_t>(c)]; ++q, ++b) {
          int u = g.vertex(summand_indices[static_cast<std::size_t>(a)], p);
          int v = g.vertex(summand_indices[static_cast<std::size_t>(c)], q);
          bits.set_bit(b, !g.compiled().has_arc(u, v));
        }
  InducedSubsum result{GenSum::build(std::move(specs), std::move(bits)), std::move(source)};
  return result;
}

/// Reordered summands; vertex_map[old_id] = new_id is the witness isomorphism.
struct PermutedGenSum {
  GenSum sum;
  std::vector<int> vertex_map;
};

inline PermutedGenSum permute_summands(const GenSum& g, const std::vector<int>& perm) {
  const int k = g.summand_count();
  if (static_cast<int>(perm.size()) != k)
    throw std::invalid_argument("permute_summands: permutation size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int i : perm) {
    if (i < 0 || i >= k || seen[static_cast<std::size_t>(i)])
      throw std::invalid_argument("permute_summands: not a permutation");
    seen[static_cast<std::size_t>(i)] = true;
  }
  // perm[new position] = old summand index
  std::vector<SummandSpec> specs;
  std::vector<int> orders;
  for (int n = 0; n < k; ++n) {
    specs.push_back(g.summand(perm[static_cast<std::size_t>(n)]));
    orders.push_back(specs.back().order());
  }
  OrientationMap bits(orientation_bit_count(orders));
  int b = 0;
  for (int a = 0; a < k; ++a)
    for (int c = a + 1; c < k; ++c)
      for (int p = 0; p < orders[static_cast<std::size_t>(a)]; ++p)
        for (int q = 0; q < orders[static_cast<std::size_t>(c)]; ++q, ++b) {
          int u = g.vertex(perm[static_cast<std::size_t>(a)], p);
          int v = g.vertex(perm[static_cast<std::size_t>(c)], q);
          bits.set_bit(b, !g.compiled().has_arc(u, v));
        }
  PermutedGenSum result{GenSum::build(std::move(specs), std::move(bits)), {}};
  std::vector<int> new_pos(static_cast<std::size_t>(k));
  for (int n = 0; n < k; ++n) new_pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(n)])] = n;
  result.vertex_map.resize(static_cast<std::size_t>(g.order()));
  for (int v = 0; v < g.order(); ++v) {
    auto [i, p] = g.label(v);
    result.vertex_map[static_cast<std::size_t>(v)] =
        result.sum.vertex(new_pos[static_cast<std::size_t>(i)], p);
  }
  return result;
}

}  // namespace gensum
