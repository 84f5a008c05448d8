#pragma once

// Strong J-cleanness of 2x2 matrices: definition-level oracle, the
// similarity chain diag(alpha, beta) -> companion [[0,lambda],[1,mu]] ->
// quadratic roots -> explicit idempotent decomposition, and the optimal
// J-cleanness construction used by the power-series lift.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "strongj/mat2.hpp"
#include "strongj/ring.hpp"

namespace strongj {

enum class JCleanVerdict {
  RadicalCase,     // A in M2(J(R))
  UnipotentCase,   // I2 - A in M2(J(R))
  CompanionCase,   // similar to [[0,lambda],[1,mu]] with split roots
  NotStronglyJClean,
};
std::string to_string(JCleanVerdict v);

struct JCleanCertificate {
  JCleanVerdict verdict = JCleanVerdict::NotStronglyJClean;
  std::optional<Mat2> E;  // idempotent part (A = E + W)
  std::optional<Mat2> W;  // radical part, commuting with E
  std::optional<Mat2> U;  // conjugator: U A U^{-1} = [[0,lambda],[1,mu]]
  std::optional<Elem> lambda, mu;     // companion entries (lambda in J, mu in 1+J)
  std::optional<Elem> rootJ, rootU;   // roots of x^2 - x mu - lambda in J and 1+J
  std::vector<std::string> provenance;
  // Set when the ring is not a local 2pf surrogate and the verdict was
  // cross-checked against the oracle; false = hypothesis-violation finding.
  std::optional<bool> oracle_agrees;
};

struct MatrixOptimalWitness {
  Mat2 A;  // the classified matrix
  Mat2 E;  // commuting idempotent with A - E in M2(J(R))
  Mat2 V;  // V A V^{-1} = diag(alpha, beta); identity in the trivial cases
  bool diagonal_case = false;
  std::uint32_t alpha = 0;  // diagonal entries when diagonal_case:
  std::uint32_t beta = 0;   // alpha in J(R), beta in 1+J(R)
};

class JCleanAnalyzer {
 public:
  explicit JCleanAnalyzer(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  // Materialized M2(R); its canonical indices key all least-index searches.
  const RingPtr& matrix_ring() const { return m2_; }
  // All idempotents of M2(R), in canonical matrix-index order.
  const std::vector<Mat2>& matrix_idempotents() const;

  // Least-index idempotent E with A - E in M2(J(R)) and AE = EA.
  std::optional<std::pair<Mat2, Mat2>> oracle_strongly_jclean(const Mat2& a) const;

  // U with U A U^{-1} = diag(alpha, beta), alpha in 1+J(R), beta in J(R);
  // absent for the radical/unipotent cases or when no such form exists.
  std::optional<std::tuple<Mat2, Elem, Elem>> theorem31_form(const Mat2& a) const;

  // For D = diag(alpha, beta) with alpha in 1+J(R), beta in J(R): U with
  // U D U^{-1} = [[0,lambda],[1,mu]], lambda in J, mu in 1+J, by the closed
  // forms; the printed elementary product is tried first and an exhaustive
  // search replaces U on verification failure (recorded in *provenance).
  std::tuple<Mat2, Elem, Elem> lemma34_companion(Elem alpha, Elem beta,
                                                 std::vector<std::string>* provenance) const;

  // Least-index roots of x^2 - x*mu - lambda = 0 with c in J(R), d in 1+J(R).
  std::optional<std::pair<Elem, Elem>> quadratic_roots_right(Elem lambda, Elem mu) const;
  // Same for x^2 - mu*x - lambda = 0.
  std::optional<std::pair<Elem, Elem>> quadratic_roots_left(Elem lambda, Elem mu) const;

  // For B = [[0,lambda],[1,mu]] and roots (c, d): E = M^{-1} diag(0,1) M with
  // M rows (1,c), (1,d); returns (E, B - E) after checking the full contract.
  std::pair<Mat2, Mat2> decomposition_from_roots(Elem lambda, Elem mu, Elem c, Elem d) const;

  // The Theorem 3.5 trichotomy with witnesses; cross-checked against the
  // oracle when the ring is not a local 2pf surrogate.
  JCleanCertificate classify(const Mat2& a) const;

  // Cor 3.6: radical / unipotent / (cyclic and char-poly roots split across
  // J and 1+J).  Commutative rings only.
  JCleanVerdict classify_commutative(const Mat2& a) const;

  // Cor 3.7: transport to (A^o)^T over R^op, classify there, transport the
  // certificate home.  Local rings only.
  JCleanCertificate classify_local_opposite(const Mat2& a) const;

  // Lemma 4.6 construction on wb rings; present iff classify is positive.
  std::optional<MatrixOptimalWitness> matrix_optimally_jclean(const Mat2& a) const;

  // C in the Peirce subgroup of w.E with [A,C] + [E,B] = 0, built from the
  // Cor 4.8 commutator solutions (substitution-verified).
  Mat2 optimal_commutator_solution(const MatrixOptimalWitness& w, const Mat2& b) const;

 private:
  std::optional<Mat2> diagonalizer(const Mat2& e) const;

  RingPtr ring_;
  RingPtr m2_;
  mutable std::vector<Mat2> idempotents_;
  mutable std::map<std::uint32_t, std::optional<Mat2>> diagonalizer_cache_;
  struct Lemma34Entry {
    Mat2 u;
    std::uint32_t lambda, mu;
    std::string provenance;
  };
  mutable std::map<std::pair<std::uint32_t, std::uint32_t>, Lemma34Entry> lemma34_cache_;
  mutable std::map<std::pair<std::uint32_t, std::uint32_t>,
                   std::optional<std::pair<std::uint32_t, std::uint32_t>>>
      roots_cache_;
  mutable std::shared_ptr<JCleanAnalyzer> opposite_;  // lazy, for Cor 3.7
};

// Cor 3.2 over a commutative ring with J(R) = 0 and only trivial idempotents:
// strongly J-clean iff A = 0, A = I2, or A = [[a,b],[c,1-a]] with bc = a - a^2;
// asserted equal to direct idempotency.
bool classify_radical_zero(const Mat2& a);

// Exact-integer mode of Cor 3.2 (J(Z) = 0): the same shape rule, asserted
// equal to A^2 = A.
bool integer_strongly_jclean(const std::array<long long, 4>& a);

}  // namespace strongj
