#include "strongj/mat2.hpp"

namespace strongj {

namespace {

const FiniteRing& same_ring(const Mat2& x, const Mat2& y) {
  if (x.ring == nullptr || x.ring != y.ring)
    throw RingError("matrices belong to different rings");
  return *x.ring;
}

}  // namespace

Mat2::Mat2(Elem a11, Elem a12, Elem a21, Elem a22)
    : ring(a11.ring), a{a11.idx, a12.idx, a21.idx, a22.idx} {
  if (a12.ring != ring || a21.ring != ring || a22.ring != ring)
    throw RingError("matrix entries belong to different rings");
}

Mat2 mat_zero(const FiniteRing& r) { return Mat2(&r, {0, 0, 0, 0}); }
Mat2 mat_identity(const FiniteRing& r) { return Mat2(&r, {1, 0, 0, 1}); }
Mat2 mat_diag(Elem x, Elem y) { return Mat2(x, x.ring->zero(), x.ring->zero(), y); }

Mat2 mat_add(const Mat2& x, const Mat2& y) {
  const FiniteRing& r = same_ring(x, y);
  Mat2 out(&r, {});
  for (int i = 0; i < 4; ++i) out.a[i] = r.add(x.a[i], y.a[i]);
  return out;
}

Mat2 mat_sub(const Mat2& x, const Mat2& y) {
  const FiniteRing& r = same_ring(x, y);
  Mat2 out(&r, {});
  for (int i = 0; i < 4; ++i) out.a[i] = r.sub(x.a[i], y.a[i]);
  return out;
}

Mat2 mat_neg(const Mat2& x) {
  Mat2 out(x.ring, {});
  for (int i = 0; i < 4; ++i) out.a[i] = x.ring->neg(x.a[i]);
  return out;
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  const FiniteRing& r = same_ring(x, y);
  return Mat2(&r, {r.add(r.mul(x.a[0], y.a[0]), r.mul(x.a[1], y.a[2])),
                   r.add(r.mul(x.a[0], y.a[1]), r.mul(x.a[1], y.a[3])),
                   r.add(r.mul(x.a[2], y.a[0]), r.mul(x.a[3], y.a[2])),
                   r.add(r.mul(x.a[2], y.a[1]), r.mul(x.a[3], y.a[3]))});
}

Mat2 mat_scalar_left(Elem s, const Mat2& x) {
  if (s.ring != x.ring) throw RingError("scalar and matrix ring mismatch");
  Mat2 out(x.ring, {});
  for (int i = 0; i < 4; ++i) out.a[i] = x.ring->mul(s.idx, x.a[i]);
  return out;
}

RowVec2 operator*(const RowVec2& v, const Mat2& x) {
  if (v.ring != x.ring) throw RingError("vector and matrix ring mismatch");
  const FiniteRing& r = *x.ring;
  return RowVec2{&r, r.add(r.mul(v.v1, x.a[0]), r.mul(v.v2, x.a[2])),
                 r.add(r.mul(v.v1, x.a[1]), r.mul(v.v2, x.a[3]))};
}

ColVec2 operator*(const Mat2& x, const ColVec2& v) {
  if (v.ring != x.ring) throw RingError("vector and matrix ring mismatch");
  const FiniteRing& r = *x.ring;
  return ColVec2{&r, r.add(r.mul(x.a[0], v.v1), r.mul(x.a[1], v.v2)),
                 r.add(r.mul(x.a[2], v.v1), r.mul(x.a[3], v.v2))};
}

namespace {

// Inverse when the (0,0) entry is a unit, via the Schur complement.
std::optional<Mat2> invert_pivot00(const Mat2& x) {
  const FiniteRing& r = *x.ring;
  auto p = r.inverse(x.a[0]);
  if (!p) return std::nullopt;
  std::uint32_t pinv = *p;
  std::uint32_t schur = r.sub(x.a[3], r.mul(r.mul(x.a[2], pinv), x.a[1]));
  auto s = r.inverse(schur);
  if (!s) return std::nullopt;
  std::uint32_t sinv = *s;
  std::uint32_t b21 = r.neg(r.mul(sinv, r.mul(x.a[2], pinv)));
  std::uint32_t b12 = r.neg(r.mul(r.mul(pinv, x.a[1]), sinv));
  std::uint32_t b11 = r.add(pinv, r.mul(r.mul(r.mul(pinv, x.a[1]), sinv), r.mul(x.a[2], pinv)));
  return Mat2(&r, {b11, b12, b21, sinv});
}

Mat2 swap_rows(const Mat2& x) { return Mat2(x.ring, {x.a[2], x.a[3], x.a[0], x.a[1]}); }
Mat2 swap_cols(const Mat2& x) { return Mat2(x.ring, {x.a[1], x.a[0], x.a[3], x.a[2]}); }

bool checked_inverse(const Mat2& x, const Mat2& b) {
  Mat2 id = mat_identity(*x.ring);
  return mat_mul(x, b) == id && mat_mul(b, x) == id;
}

}  // namespace

std::optional<Mat2> mat_invert(const Mat2& x) {
  const FiniteRing& r = *x.ring;
  const auto& um = r.unit_mask();
  // Route the unit pivot to position (0,0) by row/column swaps; the swaps are
  // self-inverse permutation matrices, so undoing them on the inverse is the
  // mirrored swap.
  if (um[x.a[0]]) {
    if (auto b = invert_pivot00(x); b && checked_inverse(x, *b)) return b;
  }
  if (um[x.a[2]]) {
    if (auto b = invert_pivot00(swap_rows(x))) {
      Mat2 inv = swap_cols(*b);  // x = P y  =>  x^{-1} = y^{-1} P
      if (checked_inverse(x, inv)) return inv;
    }
  }
  if (um[x.a[1]]) {
    if (auto b = invert_pivot00(swap_cols(x))) {
      Mat2 inv = swap_rows(*b);  // x = y P  =>  x^{-1} = P y^{-1}
      if (checked_inverse(x, inv)) return inv;
    }
  }
  if (um[x.a[3]]) {
    if (auto b = invert_pivot00(swap_rows(swap_cols(x)))) {
      Mat2 inv = swap_rows(swap_cols(*b));
      if (checked_inverse(x, inv)) return inv;
    }
  }
  bool any_unit = um[x.a[0]] || um[x.a[1]] || um[x.a[2]] || um[x.a[3]];
  if (any_unit && r.is_local()) return std::nullopt;  // pivot path is complete here
  // Exhaustive fallback for rings where an invertible matrix may have no unit
  // entry (e.g. products).
  std::uint64_t n = r.order();
  if (n * n * n * n > (std::uint64_t(1) << 26))
    throw BoundExceeded("exhaustive 2x2 inversion too large over " + r.spec());
  Mat2 id = mat_identity(r);
  Mat2 b(&r, {});
  for (std::uint32_t i0 = 0; i0 < n; ++i0)
    for (std::uint32_t i1 = 0; i1 < n; ++i1)
      for (std::uint32_t i2 = 0; i2 < n; ++i2)
        for (std::uint32_t i3 = 0; i3 < n; ++i3) {
          b.a = {i0, i1, i2, i3};
          if (mat_mul(x, b) == id && mat_mul(b, x) == id) return b;
        }
  return std::nullopt;
}

Mat2 conjugate(const Mat2& u, const Mat2& a) {
  auto uinv = mat_invert(u);
  if (!uinv) throw RingError("conjugator is singular over " + u.ring->spec());
  return mat_mul(mat_mul(u, a), *uinv);
}

bool is_idempotent(const Mat2& x) { return mat_mul(x, x) == x; }

bool in_matrix_radical(const Mat2& x) {
  const auto& jm = x.ring->radical_mask();
  return jm[x.a[0]] && jm[x.a[1]] && jm[x.a[2]] && jm[x.a[3]];
}

bool matrix_radical_crosscheck(const RingPtr& r) {
  RingPtr m2 = make_matrix_ring(r);
  if (m2->order() > default_bound())
    throw BoundExceeded("matrix radical cross-check exceeds the bound for " + m2->spec());
  const auto& quasi = m2->radical_mask();  // quasi-regularity definition
  for (std::uint32_t i = 0; i < m2->order(); ++i) {
    Mat2 a = mat_from_index(*m2, r, i);
    if (quasi[i] != in_matrix_radical(a)) return false;
  }
  return true;
}

std::optional<ColVec2> is_cyclic(const Mat2& x) {
  const FiniteRing& r = *x.ring;
  if (!r.is_commutative()) throw RingError("is_cyclic needs a commutative ring: " + r.spec());
  const auto& um = r.unit_mask();
  for (std::uint32_t v1 = 0; v1 < r.order(); ++v1)
    for (std::uint32_t v2 = 0; v2 < r.order(); ++v2) {
      ColVec2 alpha{&r, v1, v2};
      ColVec2 beta = x * alpha;
      // det(alpha | beta) = v1*b2 - v2*b1 must be a unit.
      std::uint32_t d = r.sub(r.mul(v1, beta.v2), r.mul(v2, beta.v1));
      if (um[d]) return alpha;
    }
  return std::nullopt;
}

Elem trace(const Mat2& x) { return x.at(0, 0) + x.at(1, 1); }

Elem det(const Mat2& x) {
  if (!x.ring->is_commutative())
    throw RingError("det needs a commutative ring: " + x.ring->spec());
  return x.at(0, 0) * x.at(1, 1) - x.at(0, 1) * x.at(1, 0);
}

std::string mat_format(const Mat2& x) {
  const FiniteRing& r = *x.ring;
  return "[[" + r.format(x.a[0]) + "," + r.format(x.a[1]) + "],[" + r.format(x.a[2]) + "," +
         r.format(x.a[3]) + "]]";
}

std::optional<Mat2> mat_parse(const FiniteRing& r, std::string_view text) {
  // Reuse the matrix-ring literal grammar without materializing M2(R):
  // outer [[..],[..]] with ring-literal cells.
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 4 || s.front() != '[' || s.back() != ']') return std::nullopt;
  // Split rows and cells tracking bracket depth.
  std::string_view inner = s.substr(1, s.size() - 2);
  std::array<std::string_view, 4> cells;
  int depth = 0, cell = 0;
  std::size_t start = 0;
  std::vector<std::string_view> rows;
  for (std::size_t i = 0; i <= inner.size(); ++i) {
    if (i == inner.size() || (depth == 0 && inner[i] == ',')) {
      rows.push_back(inner.substr(start, i - start));
      start = i + 1;
      continue;
    }
    if (inner[i] == '[' || inner[i] == '(') ++depth;
    else if (inner[i] == ']' || inner[i] == ')') --depth;
  }
  if (rows.size() != 2) return std::nullopt;
  for (std::string_view row : rows) {
    while (!row.empty() && std::isspace(static_cast<unsigned char>(row.front())))
      row.remove_prefix(1);
    while (!row.empty() && std::isspace(static_cast<unsigned char>(row.back())))
      row.remove_suffix(1);
    if (row.size() < 2 || row.front() != '[' || row.back() != ']') return std::nullopt;
    std::string_view body = row.substr(1, row.size() - 2);
    depth = 0;
    start = 0;
    int before = cell;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || (depth == 0 && body[i] == ',')) {
        if (cell >= 4) return std::nullopt;
        cells[cell++] = body.substr(start, i - start);
        start = i + 1;
        continue;
      }
      if (body[i] == '[' || body[i] == '(') ++depth;
      else if (body[i] == ']' || body[i] == ')') --depth;
    }
    if (cell - before != 2) return std::nullopt;
  }
  Mat2 out(&r, {});
  for (int i = 0; i < 4; ++i) {
    auto v = r.parse_element(cells[i]);
    if (!v) return std::nullopt;
    out.a[i] = *v;
  }
  return out;
}

Mat2 mat_from_index(const FiniteRing& m2, const RingPtr& base, std::uint32_t idx) {
  return Mat2(base.get(), matrix_entries(m2, idx));
}

std::uint32_t mat_to_index(const FiniteRing& m2, const Mat2& x) {
  return matrix_index(m2, x.a);
}

}  // namespace strongj
