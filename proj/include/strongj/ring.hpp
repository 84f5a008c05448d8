#pragma once

// Finite unital rings with canonical element indexing.
//
// Every ring fixes a total order on its elements at construction: index 0 is
// the additive identity and index 1 the multiplicative identity.  All
// searches ("choose a solution") return the least canonical index, which
// makes every operation in the library deterministic.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace strongj {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default bound for exhaustive operations (|R|^2 / |R|^3 loops refuse above
// it).  Initialized from the STRONGJ_BOUND environment variable when set.
std::uint64_t default_bound();
void set_default_bound(std::uint64_t bound);

enum class RingKind {
  Modular,
  PolyQuotient,
  GaloisField,
  UpperTriangular,
  SkewTrivial,
  Matrix,
  Series,
  Product,
  Opposite,
};

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

// An element handle: a canonical index within one ring.  Elements are only
// combinable within the same ring.
struct Elem {
  const FiniteRing* ring = nullptr;
  std::uint32_t idx = 0;

  Elem() = default;
  Elem(const FiniteRing* r, std::uint32_t i) : ring(r), idx(i) {}

  bool operator==(const Elem&) const = default;
};

Elem operator+(Elem a, Elem b);
Elem operator-(Elem a, Elem b);
Elem operator*(Elem a, Elem b);
Elem operator-(Elem a);

class FiniteRing {
 public:
  virtual ~FiniteRing() = default;

  std::uint32_t order() const { return order_; }
  RingKind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }
  bool is_commutative() const { return commutative_; }

  Elem elem(std::uint32_t i) const;
  Elem zero() const { return elem(0); }
  Elem one() const { return elem(1); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (!add_tab_.empty()) return add_tab_[std::size_t(a) * order_ + b];
    return unfix(raw_add(fix(a), fix(b)));
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!mul_tab_.empty()) return mul_tab_[std::size_t(a) * order_ + b];
    return unfix(raw_mul(fix(a), fix(b)));
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (!neg_tab_.empty()) return neg_tab_[a];
    return unfix(raw_neg(fix(a)));
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t n) const;

  // --- cached subsets (computed lazily; O(|R|^2) ones are bound-guarded) ---
  const std::vector<std::uint32_t>& units() const;
  const std::vector<bool>& unit_mask() const;
  std::optional<std::uint32_t> inverse(std::uint32_t a) const;
  bool is_unit(std::uint32_t a) const { return unit_mask()[a]; }

  const std::vector<std::uint32_t>& jacobson_radical() const;
  const std::vector<bool>& radical_mask() const;
  bool in_radical(std::uint32_t a) const { return radical_mask()[a]; }
  // Elements of the coset 1 + J(R), in canonical index order.
  const std::vector<std::uint32_t>& one_plus_radical() const;

  const std::vector<std::uint32_t>& idempotents() const;

  bool is_local() const;
  bool is_wb_ring() const;
  bool has_only_trivial_idempotents() const;
  bool is_directly_finite() const;

  // Closed-form radical for structured kinds (canonical indices, sorted);
  // nullopt when no closed form applies.  Used to cross-check the
  // quasi-regularity computation.
  std::optional<std::vector<std::uint32_t>> structural_radical() const;

  bool is_nilpotent(std::uint32_t a) const;
  // Least n >= 1 with a^n = 0, or nullopt.
  std::optional<std::uint32_t> nilpotency_index(std::uint32_t a) const;

  // --- element literals ---
  std::string format(std::uint32_t i) const { return raw_format(fix(i)); }
  // Accepts the kind's structured literal or a bare canonical index.
  std::optional<std::uint32_t> parse_element(std::string_view text) const;

 protected:
  FiniteRing(RingKind kind, std::uint64_t order, std::string spec);

  // Derived constructors must call finalize() last: it fixes the canonical
  // position of 1, builds the operation tables and verifies the ring axioms
  // (exhaustively for order <= 256, by seeded sampling otherwise).
  void finalize();

  // Raw index space: the kind's natural positional encoding, in which the
  // all-zero encoding is index 0 but the identity may sit elsewhere.  The
  // canonical index space transposes 1 with raw_one().
  virtual std::uint32_t raw_add(std::uint32_t, std::uint32_t) const = 0;
  virtual std::uint32_t raw_mul(std::uint32_t, std::uint32_t) const = 0;
  virtual std::uint32_t raw_neg(std::uint32_t) const = 0;
  virtual std::uint32_t raw_one() const = 0;
  virtual std::string raw_format(std::uint32_t) const = 0;
  virtual std::optional<std::uint32_t> raw_parse(std::string_view) const { return std::nullopt; }
  virtual std::optional<std::vector<std::uint32_t>> raw_structural_radical() const {
    return std::nullopt;
  }
  virtual bool commutative_hint() const = 0;

  std::uint32_t fix(std::uint32_t i) const {
    if (i == 1) return one_raw_;
    if (i == one_raw_) return 1;
    return i;
  }
  std::uint32_t unfix(std::uint32_t i) const { return fix(i); }  // involution

  void require_square_bound(const char* what) const;

 private:
  void compute_units() const;
  void compute_radical() const;
  void verify_axioms() const;

  RingKind kind_;
  std::uint32_t order_;
  std::string spec_;
  std::uint32_t one_raw_ = 1;
  bool commutative_ = false;

  std::vector<std::uint16_t> add_tab_, mul_tab_, neg_tab_;

  mutable std::vector<std::uint32_t> units_, radical_, idempotents_, one_plus_radical_;
  mutable std::vector<bool> unit_mask_, radical_mask_;
  mutable std::vector<std::uint32_t> inverse_;  // UINT32_MAX = none
  mutable bool units_done_ = false, radical_done_ = false, idempotents_done_ = false;
  mutable std::optional<bool> local_, wb_, directly_finite_;
};

// --- construction -----------------------------------------------------------

// Parses the ring-spec mini-language and returns a memoized ring:
//   Z/n, GF(p^k), Z/p[t]/(poly), GF(q)[t]/(poly), T2(<spec>), skew(GF(p^k)),
//   M2(<spec>), series(<spec>, N), op(<spec>), <spec> x <spec>.
// Throws ParseError / BoundExceeded.
RingPtr construct_ring(std::string_view spec);

RingPtr make_zmod(std::uint64_t n);
RingPtr make_galois_field(std::uint64_t p, std::uint32_t k);
// Quotient B[t]/(g); g given by ascending canonical-index coefficients over
// the (commutative) base.  Throws RingError if the leading coefficient is not
// a unit.  If require_irreducible is set, g must be irreducible over a field
// base (used by the GF constructions).
RingPtr make_poly_quotient(RingPtr base, std::vector<std::uint32_t> modulus,
                           bool require_irreducible = false);
RingPtr make_upper_triangular(RingPtr base);
RingPtr make_skew_trivial(RingPtr galois_field);
RingPtr make_matrix_ring(RingPtr base);
RingPtr make_series_ring(RingPtr base, std::uint32_t n);
RingPtr make_product(RingPtr a, RingPtr b);
RingPtr opposite_ring(RingPtr r);

// Rings the test corpus and CLI treat as built in.
const std::vector<std::string>& builtin_ring_specs();

// --- composite-kind accessors ------------------------------------------------

// Base ring of a composite kind (PolyQuotient, UpperTriangular, SkewTrivial,
// Matrix, Series, Opposite); null for Modular and Product.
RingPtr ring_base(const FiniteRing& r);
std::pair<RingPtr, RingPtr> product_factors(const FiniteRing& r);

// Matrix-ring index <-> entries (a11, a12, a21, a22), canonical base indices.
std::array<std::uint32_t, 4> matrix_entries(const FiniteRing& m2, std::uint32_t idx);
std::uint32_t matrix_index(const FiniteRing& m2, const std::array<std::uint32_t, 4>& e);

// Series-ring index <-> coefficients c0..cN.
std::uint32_t series_truncation_order(const FiniteRing& s);
std::vector<std::uint32_t> series_coefficients(const FiniteRing& s, std::uint32_t idx);
std::uint32_t series_index(const FiniteRing& s, const std::vector<std::uint32_t>& coeffs);

// --- predicates and solvers -------------------------------------------------

enum class TwoPFVerdict { AssumedYesLocal, NoNontrivialIdempotent, Unknown };
std::string to_string(TwoPFVerdict v);

// "assumed-yes-local" iff R is local (finite local rings are projective-free,
// hence 2-projective-free); "no-nontrivial-idempotent" iff a nontrivial
// idempotent witnesses failure; "unknown" otherwise.
TwoPFVerdict is_2pf_surrogate(const FiniteRing& r);

enum class CommutatorDirection {
  LeftAlpha,  // x -> alpha*x - x*beta
  LeftBeta,   // x -> beta*x - x*alpha
};

struct CommutatorMaps {
  Elem alpha;
  Elem beta;
  CommutatorDirection direction = CommutatorDirection::LeftAlpha;

  Elem apply(Elem x) const;
};

// Least-index x with maps.apply(x) == r, or nullopt.
std::optional<Elem> solve_commutator(const CommutatorMaps& maps, Elem r);

// Telescoping closed form for alpha a unit and beta nilpotent:
//   LeftAlpha: x = sum_{i=1..n} alpha^{-i} r beta^{i-1}   solves alpha*x - x*beta = r
//   LeftBeta:  x = -sum_{i=0..n-1} beta^i r alpha^{-(i+1)} solves beta*x - x*alpha = r
// The result is verified by substitution before return.
Elem solve_commutator_nilpotent(Elem alpha, Elem beta, Elem r, CommutatorDirection direction);

// Strongly J-clean decomposition of a single element: least-index idempotent
// e with a - e in J(R) and ae = ea; returns (e, a - e).
std::optional<std::pair<Elem, Elem>> element_strongly_jclean(Elem a);

bool ring_is_strongly_jclean(const FiniteRing& r);
// Nicholson-Zhou J(R)-form: for every a there is a unique idempotent e with
// a - e in J(R) (no commuting requirement).
bool ring_is_uniquely_clean(const FiniteRing& r);

// Additive subgroup e*R*(1-e) + (1-e)*R*e, sorted by canonical index.
std::vector<std::uint32_t> peirce_subgroup(const FiniteRing& r, std::uint32_t e);

struct OptimalWitness {
  Elem e;
  // c_for_b[b] is the least-index c in the Peirce subgroup of e with
  // [a, c] + [e, b] = 0.
  std::vector<std::uint32_t> c_for_b;
};

// Brute-force optimal J-cleanness of one element, per the Peirce form: tries
// idempotents e in canonical order and keeps the first for which every b is
// solvable.
std::optional<OptimalWitness> element_optimally_jclean(Elem a);

}  // namespace strongj
