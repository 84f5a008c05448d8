#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "strongj/ring.hpp"

using namespace strongj;

TEST_CASE("Z/n basics") {
  RingPtr r = construct_ring("Z/4");
  CHECK(r->order() == 4);
  CHECK(r->is_commutative());
  CHECK(r->is_local());
  CHECK(r->jacobson_radical() == std::vector<std::uint32_t>{0, 2});
  CHECK(r->units().size() == 2);
  CHECK(r->idempotents() == std::vector<std::uint32_t>{0, 1});
  CHECK(r->add(3, 3) == 2);
  CHECK(r->mul(3, 3) == 1);
  CHECK(r->neg(1) == 3);
  CHECK(r->sub(1, 3) == 2);
  CHECK(r->pow(3, 0) == 1);
  CHECK(r->pow(2, 2) == 0);
}

TEST_CASE("fields have zero radical and inverse for every nonzero element") {
  for (const char* spec : {"Z/2", "Z/3", "Z/5", "GF(4)", "GF(8)", "GF(9)"}) {
    RingPtr r = construct_ring(spec);
    CAPTURE(spec);
    CHECK(r->jacobson_radical() == std::vector<std::uint32_t>{0});
    CHECK(r->units().size() == r->order() - 1);
    for (std::uint32_t a = 1; a < r->order(); ++a)
      CHECK(r->mul(a, *r->inverse(a)) == 1);
  }
}

TEST_CASE("GF(4) multiplication table") {
  RingPtr r = construct_ring("GF(4)");
  // 2 encodes t, 3 encodes t+1 in the base-2 positional encoding.
  CHECK(r->mul(2, 2) == 3);  // t^2 = t+1
  CHECK(r->mul(2, 3) == 1);  // t(t+1) = t^2+t = 1
  CHECK(r->add(2, 3) == 1);
}

TEST_CASE("radical matches quasi-regularity definition on every builtin ring") {
  for (const std::string& spec : builtin_ring_specs()) {
    RingPtr r = construct_ring(spec);
    if (r->order() > 256) continue;
    CAPTURE(spec);
    std::vector<std::uint32_t> direct;
    for (std::uint32_t j = 0; j < r->order(); ++j) {
      bool quasi = true;
      for (std::uint32_t x = 0; x < r->order() && quasi; ++x)
        quasi = r->inverse(r->sub(1, r->mul(x, j))).has_value();
      if (quasi) direct.push_back(j);
    }
    CHECK(r->jacobson_radical() == direct);
    if (auto sr = r->structural_radical()) CHECK(*sr == r->jacobson_radical());
  }
}

TEST_CASE("upper triangular T2(Z/2) is strongly J-clean but not uniquely clean") {
  RingPtr r = construct_ring("T2(Z/2)");
  CHECK(r->order() == 8);
  CHECK_FALSE(r->is_commutative());
  CHECK_FALSE(r->is_local());
  CHECK(ring_is_strongly_jclean(*r));
  CHECK_FALSE(ring_is_uniquely_clean(*r));
}

TEST_CASE("skew ring GF(4)[u; frob] is a noncommutative local ring") {
  RingPtr r = construct_ring("skew(GF(4))");
  CHECK(r->order() == 16);
  CHECK_FALSE(r->is_commutative());
  CHECK(r->is_local());
  CHECK(r->is_wb_ring());
  CHECK(r->jacobson_radical().size() == 4);
  // u*a = sigma(a)*u with sigma the Frobenius: u*t = (t+1)*u = t*u + u.
  std::uint32_t u = 4, t = 2;
  CHECK(r->mul(u, u) == 0);
  CHECK(r->mul(u, t) == r->add(r->mul(t, u), u));
  CHECK(r->mul(u, t) != r->mul(t, u));
}

TEST_CASE("opposite ring reverses multiplication") {
  RingPtr r = construct_ring("T2(Z/2)");
  RingPtr o = construct_ring("op(T2(Z/2))");
  CHECK(o->order() == r->order());
  for (std::uint32_t a = 0; a < r->order(); ++a)
    for (std::uint32_t b = 0; b < r->order(); ++b) {
      CHECK(o->mul(a, b) == r->mul(b, a));
      CHECK(o->add(a, b) == r->add(a, b));
    }
  CHECK(o->jacobson_radical() == r->jacobson_radical());
}

TEST_CASE("product ring is componentwise") {
  RingPtr r = construct_ring("Z/2 x Z/4");
  CHECK(r->order() == 8);
  CHECK_FALSE(r->is_local());
  CHECK(r->idempotents().size() == 4);
  CHECK(r->jacobson_radical().size() == 2);  // {0} x {0,2}
}

TEST_CASE("format and parse round-trip on every builtin ring") {
  for (const std::string& spec : builtin_ring_specs()) {
    RingPtr r = construct_ring(spec);
    if (r->order() > 4096) continue;
    CAPTURE(spec);
    for (std::uint32_t a = 0; a < r->order(); ++a) {
      auto back = r->parse_element(r->format(a));
      REQUIRE(back.has_value());
      CHECK(*back == a);
    }
  }
}

TEST_CASE("factories memoize: same spec yields the same instance") {
  RingPtr a = construct_ring("Z/8");
  RingPtr b = construct_ring(" Z/8 ");
  CHECK(a.get() == b.get());
  CHECK(a->spec() == "Z/8");
}

TEST_CASE("bound guard") {
  std::uint64_t saved = default_bound();
  set_default_bound(16);
  CHECK_THROWS_AS(construct_ring("M2(Z/4)")->jacobson_radical(), BoundExceeded);
  set_default_bound(saved);
  CHECK(construct_ring("M2(Z/4)")->jacobson_radical().size() == 16);
}

TEST_CASE("solve_commutator closed forms satisfy their equations by substitution") {
  for (const char* spec : {"Z/8", "GF(2)[t]/(t^3)", "skew(GF(4))"}) {
    RingPtr r = construct_ring(spec);
    CAPTURE(spec);
    for (std::uint32_t b : r->jacobson_radical()) {
      std::uint32_t a = r->add(1, b == 0 ? r->jacobson_radical().back() : b);
      REQUIRE(r->in_radical(r->sub(a, 1)));
      for (std::uint32_t c = 0; c < r->order(); ++c) {
        Elem x = solve_commutator_nilpotent(r->elem(a), r->elem(b), r->elem(c),
                                            CommutatorDirection::LeftAlpha);
        CHECK(r->sub(r->mul(a, x.idx), r->mul(x.idx, b)) == c);
        Elem y = solve_commutator_nilpotent(r->elem(a), r->elem(b), r->elem(c),
                                            CommutatorDirection::LeftBeta);
        CHECK(r->sub(r->mul(b, y.idx), r->mul(y.idx, a)) == c);
      }
    }
  }
}

TEST_CASE("element-level strong J-cleanness") {
  RingPtr z4 = construct_ring("Z/4");
  for (std::uint32_t a = 0; a < 4; ++a) {
    auto d = element_strongly_jclean(z4->elem(a));
    REQUIRE(d.has_value());
    CHECK(z4->add(d->first.idx, d->second.idx) == a);
    CHECK(z4->mul(d->first.idx, d->first.idx) == d->first.idx);
    CHECK(z4->in_radical(d->second.idx));
  }
  CHECK(ring_is_strongly_jclean(*z4));
  CHECK(ring_is_uniquely_clean(*z4));

  RingPtr z3 = construct_ring("Z/3");
  CHECK_FALSE(ring_is_strongly_jclean(*z3));
  CHECK_FALSE(element_strongly_jclean(z3->elem(2)).has_value());
}

TEST_CASE("two-projective-free surrogate verdicts") {
  CHECK(is_2pf_surrogate(*construct_ring("Z/4")) == TwoPFVerdict::AssumedYesLocal);
  CHECK(is_2pf_surrogate(*construct_ring("skew(GF(4))")) == TwoPFVerdict::AssumedYesLocal);
  CHECK(is_2pf_surrogate(*construct_ring("T2(Z/2)")) != TwoPFVerdict::AssumedYesLocal);
}

TEST_CASE("peirce subgroup of a trivial idempotent is {0}") {
  RingPtr r = construct_ring("Z/8");
  CHECK(peirce_subgroup(*r, 0) == std::vector<std::uint32_t>{0});
  CHECK(peirce_subgroup(*r, 1) == std::vector<std::uint32_t>{0});
}

TEST_CASE("optimally J-clean elements coincide with strongly J-clean ones on Z/8") {
  RingPtr r = construct_ring("Z/8");
  for (std::uint32_t a = 0; a < r->order(); ++a) {
    CAPTURE(a);
    CHECK(element_optimally_jclean(r->elem(a)).has_value() ==
          element_strongly_jclean(r->elem(a)).has_value());
  }
}
