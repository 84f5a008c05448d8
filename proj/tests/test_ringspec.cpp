#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strongj/ring.hpp"

using namespace strongj;

TEST_CASE("spec strings canonicalize and round-trip") {
  for (const std::string& spec : builtin_ring_specs()) {
    CAPTURE(spec);
    RingPtr r = construct_ring(spec);
    RingPtr again = construct_ring(r->spec());
    CHECK(again.get() == r.get());
  }
}

TEST_CASE("whitespace and case variants parse to the same ring") {
  CHECK(construct_ring("Z/2 x Z/4").get() == construct_ring("Z/2  x  Z/4").get());
  CHECK(construct_ring("M2( Z/4 )").get() == construct_ring("M2(Z/4)").get());
  CHECK(construct_ring("series(Z/4, 3)").get() == construct_ring("series(Z/4,3)").get());
}

TEST_CASE("orders of composite specs") {
  CHECK(construct_ring("M2(Z/3)")->order() == 81);
  CHECK(construct_ring("T2(Z/3)")->order() == 27);
  CHECK(construct_ring("series(Z/4,3)")->order() == 256);
  CHECK(construct_ring("Z/2 x Z/3 x Z/4")->order() == 24);
  CHECK(construct_ring("op(skew(GF(4)))")->order() == 16);
}

TEST_CASE("polynomial quotient rings") {
  RingPtr r = construct_ring("Z/4[t]/(t^2)");
  CHECK(r->order() == 16);
  CHECK(r->is_commutative());
  CHECK(r->is_local());
  // t^2 = 0; encoding is base-4 positional: t = 4.
  CHECK(r->mul(4, 4) == 0);
  CHECK(r->jacobson_radical().size() == 8);  // 2R + tR

  RingPtr s = construct_ring("GF(2)[t]/(t^3)");
  CHECK(s->order() == 8);
  CHECK(s->mul(2, 2) == 4);  // t*t = t^2
  CHECK(s->mul(4, 2) == 0);  // t^3 = 0
}

TEST_CASE("GF specs pin least-index irreducibles") {
  // GF(4) uses t^2+t+1; the explicit quotient builds the same tables.
  RingPtr gf4 = construct_ring("GF(4)");
  RingPtr quo = construct_ring("Z/2[t]/(t^2+t+1)");
  CHECK(gf4->order() == quo->order());
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      CHECK(gf4->mul(a, b) == quo->mul(a, b));
      CHECK(gf4->add(a, b) == quo->add(a, b));
    }
  CHECK(construct_ring("GF(8)")->mul(4, 2) == 3);  // t^3 = t+1
  CHECK(construct_ring("GF(9)")->mul(3, 3) == 2);  // t^2 = -1
}

TEST_CASE("element format/parse round-trips in structured rings") {
  for (const char* spec : {"Z/4[t]/(t^2)", "GF(9)", "T2(Z/2)", "skew(GF(4))",
                           "Z/2 x Z/4", "op(Z/8)"}) {
    RingPtr r = construct_ring(spec);
    CAPTURE(spec);
    for (std::uint32_t a = 0; a < r->order(); ++a) {
      auto back = r->parse_element(r->format(a));
      REQUIRE(back.has_value());
      CHECK(*back == a);
    }
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(construct_ring("Z/1"), RingError);
  CHECK_THROWS_AS(construct_ring("Z/0"), RingError);
  CHECK_THROWS_AS(construct_ring("GF(6)"), ParseError);
  CHECK_THROWS_AS(construct_ring("Q"), ParseError);
  CHECK_THROWS_AS(construct_ring("Z/4[t]/(2t^2)"), RingError);        // non-unit lead
  CHECK_THROWS_AS(construct_ring("M2(Z/4"), ParseError);              // unbalanced
  CHECK_THROWS_AS(construct_ring("series(Z/4)"), ParseError);         // missing order
  CHECK_THROWS_AS(construct_ring("skew(Z/4)"), RingError);            // needs a field
}

TEST_CASE("canonical indices 0 and 1 are zero and one in every builtin ring") {
  for (const std::string& spec : builtin_ring_specs()) {
    RingPtr r = construct_ring(spec);
    CAPTURE(spec);
    CHECK(r->format(0) == r->format(r->mul(0, 1)));
    for (std::uint32_t a = 0; a < std::min<std::uint32_t>(r->order(), 64); ++a) {
      CHECK(r->add(a, 0) == a);
      CHECK(r->mul(a, 1) == a);
      CHECK(r->mul(1, a) == a);
    }
  }
}

TEST_CASE("builtin ring list is stable and nonempty") {
  const auto& specs = builtin_ring_specs();
  CHECK(specs.size() >= 16);
  for (const char* expected : {"Z/2", "Z/3", "Z/4", "Z/8", "Z/9", "GF(4)",
                               "GF(2)[t]/(t^2)", "GF(2)[t]/(t^3)", "Z/4[t]/(t^2)",
                               "skew(GF(4))", "T2(Z/2)"}) {
    bool found = false;
    for (const auto& s : specs)
      if (construct_ring(s).get() == construct_ring(expected).get()) found = true;
    CAPTURE(expected);
    CHECK(found);
  }
}
