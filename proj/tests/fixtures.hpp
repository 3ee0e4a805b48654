#pragma once

#include "gensum/gensum.hpp"

namespace fixtures {

using namespace gensum;

// Vertex ids used throughout: X0..X3 = 0..3 (4-cycle summand),
// Y0..Y2 = 4..6 (3-cycle summand).
inline constexpr int X0 = 0, X1 = 1, X2 = 2, X3 = 3, Y0 = 4, Y1 = 5, Y2 = 6;

/// The C4 + C3 example instance, assembled arc by arc so tests of the
/// builder and the oracles have an independent ground truth to compare with.
inline Digraph example_c4c3_literal() {
  Digraph d(7);
  // designated cycles
  d.add_arc(X0, X1);
  d.add_arc(X1, X2);
  d.add_arc(X2, X3);
  d.add_arc(X3, X0);
  d.add_arc(Y0, Y1);
  d.add_arc(Y1, Y2);
  d.add_arc(Y2, Y0);
  // the 12 cross arcs
  d.add_arc(X0, Y0);
  d.add_arc(X0, Y1);
  d.add_arc(X0, Y2);
  d.add_arc(X1, Y0);
  d.add_arc(X1, Y1);
  d.add_arc(Y2, X1);
  d.add_arc(Y0, X2);
  d.add_arc(Y1, X2);
  d.add_arc(Y2, X2);
  d.add_arc(X3, Y0);
  d.add_arc(Y1, X3);
  d.add_arc(X3, Y2);
  return d;
}

/// Orientation bits of the same instance in canonical encoding; 0x5e0 packs
/// the five cross pairs that point from the 3-cycle into the 4-cycle.
inline constexpr std::uint64_t kExampleC4C3Bits = 0x5e0;

inline GenSum example_c4c3() {
  return GenSum::build({SummandSpec::cycle(4), SummandSpec::cycle(3)},
                       OrientationMap::from_value(12, kExampleC4C3Bits));
}

/// Two 3-cycles with every cross arc pointing into the second summand.
inline GenSum two_triangles_one_way() {
  return GenSum::build({SummandSpec::cycle(3), SummandSpec::cycle(3)},
                       OrientationMap::from_value(9, 0));
}

}  // namespace fixtures
