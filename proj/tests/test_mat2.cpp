#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strongj/mat2.hpp"

using namespace strongj;

namespace {

Mat2 m(const RingPtr& r, std::uint32_t a, std::uint32_t b, std::uint32_t c,
       std::uint32_t d) {
  return Mat2(r.get(), {a, b, c, d});
}

}  // namespace

TEST_CASE("arithmetic matches the materialized matrix ring") {
  RingPtr r = construct_ring("Z/4");
  RingPtr m2 = construct_ring("M2(Z/4)");
  for (std::uint32_t i = 0; i < m2->order(); i += 7)
    for (std::uint32_t j = 0; j < m2->order(); j += 11) {
      Mat2 x = mat_from_index(*m2, r, i);
      Mat2 y = mat_from_index(*m2, r, j);
      CHECK(mat_to_index(*m2, x + y) == m2->add(i, j));
      CHECK(mat_to_index(*m2, x * y) == m2->mul(i, j));
      CHECK(mat_to_index(*m2, -x) == m2->neg(i));
      CHECK(mat_to_index(*m2, x - y) == m2->sub(i, j));
    }
}

TEST_CASE("index bridge is a bijection") {
  RingPtr r = construct_ring("Z/3");
  RingPtr m2 = construct_ring("M2(Z/3)");
  for (std::uint32_t i = 0; i < m2->order(); ++i)
    CHECK(mat_to_index(*m2, mat_from_index(*m2, r, i)) == i);
}

TEST_CASE("inversion agrees with the materialized ring's units") {
  for (const char* spec : {"Z/4", "T2(Z/2)", "Z/2 x Z/2"}) {
    RingPtr r = construct_ring(spec);
    RingPtr m2 = make_matrix_ring(r);
    CAPTURE(spec);
    for (std::uint32_t i = 0; i < m2->order(); ++i) {
      Mat2 x = mat_from_index(*m2, r, i);
      auto inv = mat_invert(x);
      auto ringinv = m2->inverse(i);
      REQUIRE(inv.has_value() == ringinv.has_value());
      if (inv) {
        CHECK(mat_to_index(*m2, *inv) == *ringinv);
        CHECK(*inv * x == mat_identity(*r));
        CHECK(x * *inv == mat_identity(*r));
      }
    }
  }
}

TEST_CASE("conjugation composes and preserves idempotency") {
  RingPtr r = construct_ring("Z/8");
  Mat2 e = m(r, 1, 0, 0, 0);
  Mat2 u = m(r, 1, 3, 0, 1);
  Mat2 v = m(r, 1, 0, 5, 1);
  CHECK(is_idempotent(e));
  CHECK(is_idempotent(conjugate(u, e)));
  CHECK(conjugate(u, conjugate(v, e)) == conjugate(u * v, e));
  Mat2 singular = m(r, 2, 0, 0, 1);
  CHECK_THROWS_AS(conjugate(singular, e), RingError);
}

TEST_CASE("matrix radical is entrywise") {
  std::uint64_t saved = default_bound();
  set_default_bound(1 << 13);
  for (const char* spec : {"Z/4", "Z/9", "GF(2)[t]/(t^2)", "T2(Z/2)"}) {
    RingPtr r = construct_ring(spec);
    CAPTURE(spec);
    CHECK(matrix_radical_crosscheck(r));
    Mat2 w = m(r, r->jacobson_radical().back(), 0, 0, 0);
    CHECK(in_matrix_radical(w));
    CHECK_FALSE(in_matrix_radical(mat_identity(*r)));
  }
  set_default_bound(saved);
}

TEST_CASE("trace, det, cyclic test on a commutative ring") {
  RingPtr r = construct_ring("Z/4");
  Mat2 x = m(r, 2, 1, 0, 3);
  CHECK(trace(x).idx == 1);
  CHECK(det(x).idx == 2);
  CHECK(is_cyclic(x).has_value());
  CHECK_FALSE(is_cyclic(m(r, 1, 0, 0, 1)).has_value());  // scalar, never cyclic
  RingPtr nc = construct_ring("T2(Z/2)");
  CHECK_THROWS_AS(det(m(nc, 1, 0, 0, 1)), RingError);
}

TEST_CASE("cyclic witness column has invertible (alpha | A alpha)") {
  RingPtr r = construct_ring("Z/9");
  Mat2 x = m(r, 0, 2, 1, 5);
  auto col = is_cyclic(x);
  REQUIRE(col.has_value());
  ColVec2 ax = x * *col;
  Mat2 wit = m(r, col->v1, ax.v1, col->v2, ax.v2);
  CHECK(mat_invert(wit).has_value());
}

TEST_CASE("format/parse round-trip") {
  for (const char* spec : {"Z/2", "Z/4", "GF(4)", "skew(GF(4))"}) {
    RingPtr r = construct_ring(spec);
    RingPtr m2 = make_matrix_ring(r);
    CAPTURE(spec);
    std::uint32_t step = spec[0] == 's' ? 97 : 1;
    for (std::uint32_t i = 0; i < m2->order(); i += step) {
      Mat2 x = mat_from_index(*m2, r, i);
      auto back = mat_parse(*r, mat_format(x));
      REQUIRE(back.has_value());
      CHECK(*back == x);
    }
  }
}

TEST_CASE("parse rejects malformed literals") {
  RingPtr r = construct_ring("Z/4");
  CHECK_FALSE(mat_parse(*r, "[[1,2],[3]]").has_value());
  CHECK_FALSE(mat_parse(*r, "[[1,2],[3,4],[5,6]]").has_value());
  CHECK_FALSE(mat_parse(*r, "[[1,2],[3,x]]").has_value());
  CHECK_FALSE(mat_parse(*r, "1,2,3,4").has_value());
}

TEST_CASE("row vectors act on the right") {
  RingPtr r = construct_ring("Z/4");
  Mat2 x = m(r, 1, 2, 3, 0);
  RowVec2 v{r.get(), 1, 1};
  RowVec2 w = v * x;
  CHECK(w.v1 == 0);  // 1*1 + 1*3
  CHECK(w.v2 == 2);  // 1*2 + 1*0
}
