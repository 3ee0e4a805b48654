#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "gensum/digraph.hpp"

using namespace gensum;
using namespace fixtures;

TEST_CASE("arc set semantics, no self-loops, digons allowed") {
  Digraph d(3);
  d.add_arc(0, 1);
  d.add_arc(0, 1);  // duplicate insert is a no-op
  CHECK(d.arc_count() == 1);
  d.add_arc(1, 0);  // digon
  CHECK(d.arc_count() == 2);
  CHECK(d.has_arc(0, 1));
  CHECK(d.has_arc(1, 0));
  CHECK_THROWS_AS(d.add_arc(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(kMaxOrder + 1), std::invalid_argument);
}

TEST_CASE("reversal and induced subdigraphs") {
  Digraph d = Digraph::directed_cycle(4);
  Digraph r = d.reversed();
  CHECK(r.has_arc(1, 0));
  CHECK(!r.has_arc(0, 1));
  CHECK(r.reversed() == d);

  Digraph sub = example_c4c3_literal().induced({X0, X1, X2, X3});
  CHECK(sub == Digraph::directed_cycle(4));
}

TEST_CASE("is_strong on the named examples") {
  CHECK(is_strong(Digraph::directed_cycle(3)));

  Digraph path(3);
  path.add_arc(0, 1);
  path.add_arc(1, 2);
  CHECK(!is_strong(path));

  CHECK(is_strong(example_c4c3_literal()));

  Digraph single(1);
  CHECK(is_strong(single));
}

TEST_CASE("validate_cycle accepts real cycles and nothing else") {
  Digraph c3 = Digraph::directed_cycle(3);
  CHECK(validate_cycle(c3, CycleCert({0, 1, 2})));
  CHECK(!validate_cycle(c3, CycleCert({0, 2, 1})));
  CHECK(!validate_cycle(c3, CycleCert({0})));
  CHECK(!validate_cycle(c3, CycleCert({0, 1, 1})));
  CHECK(!validate_cycle(c3, CycleCert({0, 1, 7})));

  // digon is a valid 2-cycle
  Digraph d(2);
  d.add_arc(0, 1);
  d.add_arc(1, 0);
  CHECK(validate_cycle(d, CycleCert({0, 1})));

  CHECK(validate_cycle(example_c4c3_literal(), CycleCert({X0, Y0, Y1, Y2, X1, X2, X3})));
}

TEST_CASE("strongly connected component count") {
  Digraph d(5);
  d.add_arc(0, 1);
  d.add_arc(1, 0);
  d.add_arc(2, 3);
  d.add_arc(3, 4);
  d.add_arc(4, 2);
  d.add_arc(1, 2);
  int count = 0;
  strongly_connected_components(d, &count);
  CHECK(count == 2);
}
