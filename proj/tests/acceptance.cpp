// Acceptance gate: one pass/fail line per criterion; exit code is the number
// of failed criteria.

#include <cstdio>
#include <string>
#include <vector>

#include "strongj/jclean.hpp"
#include "strongj/mat2.hpp"
#include "strongj/report.hpp"
#include "strongj/verify.hpp"

using namespace strongj;

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s - %s\n", n, ok ? "pass" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

bool passed(const VerifyResult& r) { return r.passed() && r.checked > 0; }

}  // namespace

int main() {
  set_default_bound(1 << 17);

  // 1. Paper facts.
  {
    bool ok = ring_is_strongly_jclean(*construct_ring("T2(Z/2)")) &&
              !ring_is_uniquely_clean(*construct_ring("T2(Z/2)")) &&
              !ring_is_strongly_jclean(*construct_ring("Z/3"));
    for (const std::string& spec : builtin_ring_specs()) {
      RingPtr r = construct_ring(spec);
      if (r->order() > 16) continue;
      JCleanAnalyzer an(r);
      Mat2 a(r.get(), {1, 1, 1, 0});
      ok = ok && an.classify(a).verdict == JCleanVerdict::NotStronglyJClean;
    }
    line(1, ok, "T2(Z/2) strongly J-clean but not uniquely clean; Z/3 not; "
                "[[1,1],[1,0]] negative on all builtin rings of order <= 16");
  }

  // 2. Master equivalence, exhaustive over ten rings.
  {
    bool ok = true;
    std::uint64_t total = 0;
    for (const char* spec : {"Z/2", "Z/3", "Z/4", "Z/8", "Z/9", "GF(4)",
                             "GF(2)[t]/(t^2)", "GF(2)[t]/(t^3)", "Z/4[t]/(t^2)",
                             "skew(GF(4))"}) {
      VerifyResult r = verify_master_equivalence(construct_ring(spec));
      ok = ok && passed(r);
      total += r.checked;
    }
    line(2, ok, "classify == oracle on all " + std::to_string(total) +
                " matrices over the ten listed rings");
  }

  // 3. Radical identification.
  {
    bool ok = true;
    for (const char* spec : {"Z/2", "Z/3", "Z/4", "Z/8", "GF(4)",
                             "GF(2)[t]/(t^2)", "GF(2)[t]/(t^3)"}) {
      VerifyResult r = verify_radical_identification(construct_ring(spec));
      ok = ok && passed(r);
    }
    line(3, ok, "J(M2(R)) by quasi-regularity equals M2(J(R)) for |M2(R)| <= 4096");
  }

  // 4. Companion similarity for all (alpha', beta) in J(R)^2.
  {
    VerifyResult a = verify_lemma34(construct_ring("Z/8"));
    VerifyResult b = verify_lemma34(construct_ring("skew(GF(4))"));
    std::string prov;
    for (const auto& n : a.notes) prov += " [Z/8: " + n + "]";
    for (const auto& n : b.notes) prov += " [skew: " + n + "]";
    line(4, passed(a) && passed(b),
         "diag(1+alpha',beta) ~ [[0,lambda],[1,mu]] by substitution;" + prov);
  }

  // 5. Decomposition contract for every root pair.
  {
    bool ok = true;
    for (const char* spec : {"Z/8", "Z/9", "skew(GF(4))"})
      ok = ok && passed(verify_decomposition(construct_ring(spec)));
    line(5, ok, "decomposition_from_roots: E^2 = E, B - E in M2(J), EB = BE "
                "over Z/8, Z/9, skew(GF(4))");
  }

  // 6. Integer mode and the Z/2 count.
  {
    VerifyResult ints = verify_cor32_integers(-10, 10);
    RingPtr z2 = construct_ring("Z/2");
    JCleanAnalyzer an(z2);
    const FiniteRing& m2 = *an.matrix_ring();
    std::uint64_t count = 0;
    for (std::uint32_t i = 0; i < m2.order(); ++i) {
      Mat2 a = mat_from_index(m2, z2, i);
      if (an.oracle_strongly_jclean(a)) ++count;
    }
    line(6, passed(ints) && count == 8,
         "shape rule == idempotency on " + std::to_string(ints.checked) +
             " integer matrices; M2(Z/2) count = " + std::to_string(count));
  }

  // 7. Commutative and opposite-ring shortcuts.
  {
    bool ok = true;
    for (const char* spec : {"Z/2", "Z/3", "Z/4", "Z/8", "Z/9", "GF(4)",
                             "GF(2)[t]/(t^2)", "GF(2)[t]/(t^3)", "Z/4[t]/(t^2)"})
      ok = ok && passed(verify_cor36(construct_ring(spec)));
    VerifyResult opp = verify_cor37(construct_ring("skew(GF(4))"));
    line(7, ok && passed(opp) && opp.checked == 65536,
         "classify_commutative and classify_local_opposite agree with classify "
         "(skew: all 65536 matrices)");
  }

  // 8. Commutator closed forms.
  {
    bool ok = passed(verify_cor48(construct_ring("Z/8"))) &&
              passed(verify_cor48(construct_ring("GF(2)[t]/(t^3)")));
    line(8, ok, "both closed forms satisfy their equations for all "
                "(alpha, beta, r) over Z/8 and GF(2)[t]/(t^3)");
  }

  // 9. Idempotent lifting at N = 8.
  {
    VerifyResult r = verify_theorem44(construct_ring("Z/4"), 8, 50, 424243);
    line(9, passed(r), "50 random lifts over M2(Z/4) at N = 8; every step "
                       "identity holds (" + std::to_string(r.checked) + " checks)");
  }

  // 10. Series biconditional.
  {
    VerifyResult r = verify_theorem47(construct_ring("Z/4"), 4, 200, 424243);
    line(10, passed(r), "theorem47_check on 200 seeded series plus all "
                        "constants over M2(Z/4) at N = 4");
  }

  // 11. Optimal set equals strongly J-clean set.
  {
    VerifyResult r = verify_lemma46(construct_ring("Z/4"));
    line(11, passed(r) && r.checked == 256,
         "optimally-J-clean set == strongly-J-clean set over all 256 matrices of M2(Z/4)");
  }

  // 12. Determinism.
  {
    ReportOptions opt;
    opt.order_n = 8;
    opt.samples = 50;
    opt.seed = 424243;
    bool ok = run_verify("T4.4", "Z/4", opt).dump() ==
              run_verify("T4.4", "Z/4", opt).dump();
    ok = ok && run_verify("L3.4", "Z/8", opt).dump() ==
                   run_verify("L3.4", "Z/8", opt).dump();
    ok = ok && run_classify("skew(GF(4))", "[[1,0],[(0)+(1)u,(t)+(0)u]]").dump() ==
                   run_classify("skew(GF(4))", "[[1,0],[(0)+(1)u,(t)+(0)u]]").dump();
    ok = ok && run_lift("M2(Z/4)", "[[[3,0],[0,2]], [[2,0],[0,2]], [[0,2],[2,0]]]",
                        opt).dump() ==
                   run_lift("M2(Z/4)", "[[[3,0],[0,2]], [[2,0],[0,2]], [[0,2],[2,0]]]",
                            opt).dump();
    line(12, ok, "repeated runs with the same seed produce byte-identical JSON");
  }

  return failures;
}
