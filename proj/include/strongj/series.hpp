#pragma once

// Truncated power series over a FiniteRing (including a materialized matrix
// ring as coefficients), the Theorem 4.4 idempotent lift, and the Theorem 4.7
// equivalence harness.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strongj/jclean.hpp"
#include "strongj/ring.hpp"

namespace strongj {

struct TruncSeries {
  const FiniteRing* ring = nullptr;
  // Coefficients c[0..N], canonical indices; the truncation order N is
  // implied by the length.
  std::vector<std::uint32_t> c;

  TruncSeries() = default;
  TruncSeries(const FiniteRing* r, std::vector<std::uint32_t> coeffs)
      : ring(r), c(std::move(coeffs)) {}

  std::uint32_t order() const { return static_cast<std::uint32_t>(c.size()) - 1; }
  Elem at(std::uint32_t i) const { return Elem(ring, c[i]); }

  bool operator==(const TruncSeries&) const = default;
};

TruncSeries series_zero(const FiniteRing& r, std::uint32_t n);
TruncSeries series_one(const FiniteRing& r, std::uint32_t n);
TruncSeries series_constant(Elem a, std::uint32_t n);

TruncSeries series_add(const TruncSeries& f, const TruncSeries& g);
TruncSeries series_sub(const TruncSeries& f, const TruncSeries& g);
TruncSeries series_neg(const TruncSeries& f);
// Convolution truncated at the common order.
TruncSeries series_mul(const TruncSeries& f, const TruncSeries& g);
// fg - gf.
TruncSeries series_commutator(const TruncSeries& f, const TruncSeries& g);

inline TruncSeries operator+(const TruncSeries& f, const TruncSeries& g) {
  return series_add(f, g);
}
inline TruncSeries operator-(const TruncSeries& f, const TruncSeries& g) {
  return series_sub(f, g);
}
inline TruncSeries operator*(const TruncSeries& f, const TruncSeries& g) {
  return series_mul(f, g);
}

// J(R[[x]]/x^{N+1}) = {f : f(0) in J(R)}; units are exactly the series with
// unit constant term.
bool series_in_radical(const TruncSeries& f);
bool series_is_unit(const TruncSeries& f);
// Materializes series(base, n) and compares the constant-term criteria with
// quasi-regularity / two-sided-inverse enumeration.  Bound-guarded.
bool series_radical_crosscheck(const RingPtr& base, std::uint32_t n);

std::string series_format(const TruncSeries& f);
std::optional<TruncSeries> series_parse(const FiniteRing& r, std::uint32_t n,
                                        std::string_view text);

// Solver supplied to the lift: for s, some g in the Peirce subgroup of e0
// with [r0, g] = [e0, s]; least-index implementations keep lifts
// deterministic.
using PeirceSolver = std::function<std::optional<Elem>(Elem s)>;

// Least-index scan of the Peirce subgroup of e0.
PeirceSolver make_peirce_solver(const FiniteRing& ring, Elem r0, Elem e0);
// Closed-form solver from the Lemma 4.6 matrix witness; m2 is the
// materialized coefficient ring the series live in.
PeirceSolver make_matrix_peirce_solver(const JCleanAnalyzer& analyzer,
                                       const MatrixOptimalWitness& witness,
                                       const RingPtr& m2);

struct LiftStep {
  std::uint32_t n = 0;
  std::uint32_t e_n = 0, f_n = 0, s_n = 0, g_n = 0;  // canonical indices
  bool lemma42_ok = false;       // e0 commutes with sum e_i e_{n-i}
  bool lemma43_ok = false;       // [r0, T] = (1-e0) S - S e0
  bool peirce_identity_ok = false;      // e_n = sum_{i=0..n} e_i e_{n-i}
  bool commutator_identity_ok = false;  // sum_{i=0..n} [r_i, e_{n-i}] = 0
};

struct LiftTrace {
  std::vector<LiftStep> steps;
};

// Theorem 4.4 recursion.  Throws RingError naming the violated hypothesis
// (with the step index) when a Peirce solve fails or a step identity breaks.
std::pair<TruncSeries, LiftTrace> lift_idempotent(const TruncSeries& f, Elem e0,
                                                  const PeirceSolver& solver);

// f = e + w with e idempotent, w in the truncated radical, ew = we; tries
// lift_idempotent over each candidate idempotent of f(0) (least index first),
// then an exhaustive search over the materialized truncated ring when small.
std::optional<std::pair<TruncSeries, TruncSeries>> series_strongly_jclean(const TruncSeries& f);

struct Theorem47Report {
  bool hypothesis_ok = false;       // coefficient base ring local and wb
  bool classify_positive = false;   // A(0) strongly J-clean per classify
  bool series_positive = false;     // constructive lift succeeded
  bool agrees = false;
  std::string note;
};

// aseries lives over analyzer.matrix_ring().  The forward direction runs
// matrix_optimally_jclean + lift_idempotent; the reverse is evaluation at 0.
Theorem47Report theorem47_check(const JCleanAnalyzer& analyzer, const TruncSeries& aseries);

}  // namespace strongj
