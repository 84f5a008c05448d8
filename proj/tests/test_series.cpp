#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "strongj/mat2.hpp"
#include "strongj/series.hpp"

using namespace strongj;

TEST_CASE("series arithmetic matches the materialized truncated ring") {
  RingPtr base = construct_ring("Z/4");
  RingPtr s = construct_ring("series(Z/4,3)");
  auto lift = [&](std::uint32_t i) {
    auto f = series_parse(*base, 3, s->format(i));
    REQUIRE(f.has_value());
    return *f;
  };
  auto drop = [&](const TruncSeries& f) {
    auto back = s->parse_element(series_format(f));
    REQUIRE(back.has_value());
    return *back;
  };
  for (std::uint32_t i = 0; i < s->order(); i += 13)
    for (std::uint32_t j = 0; j < s->order(); j += 17) {
      CHECK(drop(lift(i) + lift(j)) == s->add(i, j));
      CHECK(drop(lift(i) * lift(j)) == s->mul(i, j));
      CHECK(drop(series_neg(lift(i))) == s->neg(i));
    }
}

TEST_CASE("series radical and units are decided by the constant term") {
  RingPtr base = construct_ring("Z/4");
  CHECK(series_radical_crosscheck(base, 3));
  TruncSeries f(base.get(), {2, 1, 3, 0});
  CHECK(series_in_radical(f));
  CHECK_FALSE(series_is_unit(f));
  TruncSeries g(base.get(), {3, 2, 0, 1});
  CHECK_FALSE(series_in_radical(g));
  CHECK(series_is_unit(g));
}

TEST_CASE("series format/parse round-trip") {
  RingPtr base = construct_ring("GF(4)");
  TruncSeries f(base.get(), {1, 2, 0, 3, 1});
  auto back = series_parse(*base, 4, series_format(f));
  REQUIRE(back.has_value());
  CHECK(*back == f);
  CHECK_FALSE(series_parse(*base, 4, "[1,2,3]").has_value());  // wrong length
  CHECK_FALSE(series_parse(*base, 4, "[1,2,3,4,x]").has_value());
}

TEST_CASE("lift over Z/4 agrees with the exhaustive truncated-ring search") {
  RingPtr base = construct_ring("Z/4");
  RingPtr s = construct_ring("series(Z/4,3)");
  for (std::uint32_t i = 0; i < s->order(); ++i) {
    auto f = series_parse(*base, 3, s->format(i));
    REQUIRE(f.has_value());
    auto lifted = series_strongly_jclean(*f);
    bool exhaustive = element_strongly_jclean(s->elem(i)).has_value();
    CAPTURE(s->format(i));
    CHECK(lifted.has_value() == exhaustive);
    if (lifted) {
      auto& [e, w] = *lifted;
      CHECK(e * e == e);
      CHECK(series_in_radical(w));
      CHECK(e + w == *f);
      CHECK(e * w == w * e);
    }
  }
}

TEST_CASE("lift_idempotent step identities hold over M2(Z/4)") {
  RingPtr base = construct_ring("Z/4");
  RingPtr m2 = make_matrix_ring(base);
  JCleanAnalyzer an(base);
  std::mt19937_64 rng(2026);
  const std::uint32_t n = 8;
  int done = 0;
  while (done < 10) {
    std::vector<std::uint32_t> coeffs(n + 1);
    for (auto& ci : coeffs) ci = static_cast<std::uint32_t>(rng() % m2->order());
    Mat2 a0 = mat_from_index(*m2, base, coeffs[0]);
    auto w = an.matrix_optimally_jclean(a0);
    if (!w) continue;
    ++done;
    TruncSeries f(m2.get(), coeffs);
    auto solver = make_matrix_peirce_solver(an, *w, m2);
    auto [e, trace] = lift_idempotent(f, m2->elem(mat_to_index(*m2, w->E)), solver);
    CHECK(e * e == e);
    CHECK(series_commutator(f, e) == series_zero(*m2, n));
    CHECK(series_in_radical(f - e));
    REQUIRE(trace.steps.size() == n);
    for (const auto& step : trace.steps) {
      CHECK(step.lemma42_ok);
      CHECK(step.lemma43_ok);
      CHECK(step.peirce_identity_ok);
      CHECK(step.commutator_identity_ok);
    }
  }
}

TEST_CASE("lift failure names the violated hypothesis") {
  RingPtr base = construct_ring("Z/4");
  // e0 = 0 is an idempotent but not a witness for f(0) = 3 (3 not in J).
  TruncSeries f(base.get(), {3, 1, 0});
  auto solver = make_peirce_solver(*base, base->elem(3), base->elem(0));
  CHECK_THROWS_WITH_AS(lift_idempotent(f, base->elem(0), solver),
                       doctest::Contains("witness"), RingError);
  // A sabotaged solver surfaces the failing recursion step in the message.
  TruncSeries g(base.get(), {1, 1, 0});
  PeirceSolver broken = [](Elem) { return std::nullopt; };
  CHECK_THROWS_WITH_AS(lift_idempotent(g, base->elem(1), broken),
                       doctest::Contains("step 1"), RingError);
}

TEST_CASE("theorem47_check on seeded random series over M2(Z/2)") {
  RingPtr base = construct_ring("Z/2");
  JCleanAnalyzer an(base);
  const FiniteRing& m2 = *an.matrix_ring();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 40; ++k) {
    std::vector<std::uint32_t> coeffs(5);
    for (auto& ci : coeffs) ci = static_cast<std::uint32_t>(rng() % m2.order());
    TruncSeries f(&m2, coeffs);
    auto rep = theorem47_check(an, f);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.agrees);
  }
}

TEST_CASE("constant series classify exactly like their constant term") {
  RingPtr base = construct_ring("Z/2");
  JCleanAnalyzer an(base);
  const FiniteRing& m2 = *an.matrix_ring();
  std::uint64_t positive = 0;
  for (std::uint32_t i = 0; i < m2.order(); ++i) {
    auto rep = theorem47_check(an, series_constant(m2.elem(i), 4));
    CHECK(rep.agrees);
    if (rep.series_positive) ++positive;
  }
  CHECK(positive == 8);
}
