#pragma once

// Exhaustive / sampled theorem checks shared by the CLI `verify` subcommand
// and the acceptance suite.  A failure count of zero means the property held
// on everything checked; notes carry findings that are not failures
// (provenance tallies, hypothesis-violation probes).

#include <cstdint>
#include <string>
#include <vector>

#include "strongj/ring.hpp"

namespace strongj {

struct VerifyResult {
  std::string id;
  std::string subject;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;

  bool passed() const { return failures == 0; }
};

// T3.1: every classify-positive matrix outside the radical/unipotent cases
// admits U A U^{-1} = diag(1+J, J), verified by substitution.
VerifyResult verify_theorem31(const RingPtr& r);

// C3.2 integer mode: shape rule vs A^2 = A for all entries in [lo, hi].
VerifyResult verify_cor32_integers(long long lo, long long hi);

// L3.4: all (alpha', beta) in J(R)^2; substitution check; notes tally the
// printed-product vs fallback provenance.
VerifyResult verify_lemma34(const RingPtr& r);

// T3.5 master equivalence: classify vs the definition-level oracle on every
// matrix in M2(R).
VerifyResult verify_master_equivalence(const RingPtr& r);

// T3.5 converse: decomposition_from_roots contract for every (lambda, mu)
// admitting split roots.
VerifyResult verify_decomposition(const RingPtr& r);

// J(M2(R)) by quasi-regularity equals M2(J(R)).
VerifyResult verify_radical_identification(const RingPtr& r);

// C3.6: classify_commutative agrees with classify on all of M2(R).
VerifyResult verify_cor36(const RingPtr& r);

// C3.7: classify_local_opposite agrees with classify and the oracle.
VerifyResult verify_cor37(const RingPtr& r);

// C4.8: both closed forms satisfy their equations for all alpha in 1+J(R),
// beta in J(R), r in R.
VerifyResult verify_cor48(const RingPtr& r);

// T4.4: seeded random lifts over M2(base) at the given truncation order.
VerifyResult verify_theorem44(const RingPtr& base, std::uint32_t order_n, int samples,
                              std::uint64_t seed);

// T4.7: biconditional on seeded random series over M2(base) plus the
// exhaustive set of constant series.
VerifyResult verify_theorem47(const RingPtr& base, std::uint32_t order_n, int samples,
                              std::uint64_t seed);

// L4.6: on wb rings, the matrix_optimally_jclean set equals the
// classify-positive set over all of M2(R).
VerifyResult verify_lemma46(const RingPtr& r);

// Dispatch by theorem id ("T3.1", "C3.2", "L3.4", "T3.5", "C3.6", "C3.7",
// "L4.6", "T4.4", "T4.7", "C4.8"); throws ParseError on unknown ids.
VerifyResult run_verification(const std::string& id, const RingPtr& r, std::uint32_t order_n,
                              int samples, std::uint64_t seed);

}  // namespace strongj
