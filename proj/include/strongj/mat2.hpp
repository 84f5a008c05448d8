#pragma once

// 2x2 matrices over a FiniteRing.
//
// Row vectors act on the right (v * A); all similarity and invariant-subspace
// reasoning in the classifier uses row spaces.  conjugate(U, A) = U * A * U^{-1},
// so conjugate(U, conjugate(V, A)) == conjugate(U * V, A).

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "strongj/ring.hpp"

namespace strongj {

struct Mat2 {
  const FiniteRing* ring = nullptr;
  // Row-major canonical indices: a[0]=a11, a[1]=a12, a[2]=a21, a[3]=a22.
  std::array<std::uint32_t, 4> a{};

  Mat2() = default;
  Mat2(const FiniteRing* r, std::array<std::uint32_t, 4> e) : ring(r), a(e) {}
  Mat2(Elem a11, Elem a12, Elem a21, Elem a22);

  Elem at(int i, int j) const { return Elem(ring, a[2 * i + j]); }

  bool operator==(const Mat2&) const = default;
};

struct RowVec2 {
  const FiniteRing* ring = nullptr;
  std::uint32_t v1 = 0, v2 = 0;

  bool operator==(const RowVec2&) const = default;
};

struct ColVec2 {
  const FiniteRing* ring = nullptr;
  std::uint32_t v1 = 0, v2 = 0;

  bool operator==(const ColVec2&) const = default;
};

Mat2 mat_zero(const FiniteRing& r);
Mat2 mat_identity(const FiniteRing& r);
Mat2 mat_diag(Elem x, Elem y);

Mat2 mat_add(const Mat2& x, const Mat2& y);
Mat2 mat_sub(const Mat2& x, const Mat2& y);
Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_neg(const Mat2& x);
Mat2 mat_scalar_left(Elem r, const Mat2& x);

inline Mat2 operator+(const Mat2& x, const Mat2& y) { return mat_add(x, y); }
inline Mat2 operator-(const Mat2& x, const Mat2& y) { return mat_sub(x, y); }
inline Mat2 operator*(const Mat2& x, const Mat2& y) { return mat_mul(x, y); }
inline Mat2 operator-(const Mat2& x) { return mat_neg(x); }

RowVec2 operator*(const RowVec2& v, const Mat2& x);
ColVec2 operator*(const Mat2& x, const ColVec2& v);

// Two-sided inverse: unit-pivot elimination first, exhaustive fallback when no
// entry is a unit; the result is checked (AB = BA = I2) before return.
std::optional<Mat2> mat_invert(const Mat2& x);

// U * A * U^{-1}; throws RingError when U is singular.
Mat2 conjugate(const Mat2& u, const Mat2& a);

bool is_idempotent(const Mat2& x);

// All four entries in J(R).
bool in_matrix_radical(const Mat2& x);
// Recomputes J(M2(R)) by quasi-regularity and compares it with the entrywise
// description M2(J(R)).  Requires |M2(R)| within the bound.
bool matrix_radical_crosscheck(const RingPtr& r);

// Least-index column alpha with (alpha | A*alpha) invertible; commutative
// rings only (throws RingError otherwise).
std::optional<ColVec2> is_cyclic(const Mat2& x);

Elem trace(const Mat2& x);
// a11*a22 - a12*a21; throws RingError on a noncommutative ring.
Elem det(const Mat2& x);

std::string mat_format(const Mat2& x);
std::optional<Mat2> mat_parse(const FiniteRing& r, std::string_view text);

// Bridges to the materialized matrix ring M2(R) (canonical indices).
Mat2 mat_from_index(const FiniteRing& m2, const RingPtr& base, std::uint32_t idx);
std::uint32_t mat_to_index(const FiniteRing& m2, const Mat2& x);

}  // namespace strongj
