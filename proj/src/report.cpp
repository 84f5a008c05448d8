#include "strongj/report.hpp"

#include <chrono>

#include "strongj/jclean.hpp"
#include "strongj/mat2.hpp"
#include "strongj/series.hpp"

namespace strongj {

namespace {

Json certificate_json(const FiniteRing& r, const JCleanCertificate& cert) {
  Json j;
  j["verdict"] = to_string(cert.verdict);
  j["E"] = cert.E ? Json(mat_format(*cert.E)) : Json(nullptr);
  j["W"] = cert.W ? Json(mat_format(*cert.W)) : Json(nullptr);
  j["U"] = cert.U ? Json(mat_format(*cert.U)) : Json(nullptr);
  j["lambda"] = cert.lambda ? Json(r.format(cert.lambda->idx)) : Json(nullptr);
  j["mu"] = cert.mu ? Json(r.format(cert.mu->idx)) : Json(nullptr);
  j["rootJ"] = cert.rootJ ? Json(r.format(cert.rootJ->idx)) : Json(nullptr);
  j["rootU"] = cert.rootU ? Json(r.format(cert.rootU->idx)) : Json(nullptr);
  j["provenance"] = cert.provenance;
  if (cert.oracle_agrees) j["oracle_agrees"] = *cert.oracle_agrees;
  return j;
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(clock::now()) {}
  void stamp(Json& report) const {
    if (!enabled_) return;
    double s = std::chrono::duration<double>(clock::now() - start_).count();
    report["elapsed_seconds"] = s;
  }

 private:
  using clock = std::chrono::steady_clock;
  bool enabled_;
  clock::time_point start_;
};

Json verify_result_json(const VerifyResult& res) {
  Json j;
  j["theorem"] = res.id;
  j["subject"] = res.subject;
  j["checked"] = res.checked;
  j["failures"] = res.failures;
  j["passed"] = res.passed();
  j["notes"] = res.notes;
  return j;
}

}  // namespace

Json run_ring_info(const std::string& spec) {
  RingPtr r = construct_ring(spec);
  Json j;
  j["command"] = "ring-info";
  j["ring"] = r->spec();
  j["order"] = r->order();
  j["commutative"] = r->is_commutative();
  j["local"] = r->is_local();
  j["wb_ring"] = r->is_wb_ring();
  j["directly_finite"] = r->is_directly_finite();
  j["two_projective_free"] = to_string(is_2pf_surrogate(*r));
  j["units"] = r->units().size();
  j["idempotent_count"] = r->idempotents().size();
  const auto& jr = r->jacobson_radical();
  j["radical_size"] = jr.size();
  if (jr.size() <= 64) {
    Json lst = Json::array();
    for (std::uint32_t x : jr) lst.push_back(r->format(x));
    j["radical"] = lst;
  }
  if (auto sr = r->structural_radical())
    j["radical_structural_crosscheck"] = (*sr == jr);
  j["strongly_jclean_ring"] = ring_is_strongly_jclean(*r);
  j["uniquely_clean_ring"] = ring_is_uniquely_clean(*r);
  return j;
}

Json run_classify(const std::string& spec, const std::string& matrix_literal) {
  RingPtr r = construct_ring(spec);
  auto a = mat_parse(*r, matrix_literal);
  if (!a) throw ParseError("cannot parse matrix literal '" + matrix_literal + "' over " +
                           r->spec());
  JCleanAnalyzer an(r);
  JCleanCertificate cert = an.classify(*a);
  Json j;
  j["command"] = "classify";
  j["ring"] = r->spec();
  j["matrix"] = mat_format(*a);
  j["certificate"] = certificate_json(*r, cert);
  return j;
}

Json run_enumerate(const std::string& spec) {
  RingPtr r = construct_ring(spec);
  JCleanAnalyzer an(r);
  const FiniteRing& m2 = *an.matrix_ring();
  std::uint64_t counts[4] = {0, 0, 0, 0};
  std::uint64_t violations = 0;
  for (std::uint32_t i = 0; i < m2.order(); ++i) {
    JCleanCertificate cert = an.classify(mat_from_index(m2, r, i));
    ++counts[static_cast<int>(cert.verdict)];
    if (cert.oracle_agrees && !*cert.oracle_agrees) ++violations;
  }
  Json j;
  j["command"] = "enumerate";
  j["ring"] = r->spec();
  j["total"] = m2.order();
  j["radical_case"] = counts[0];
  j["unipotent_case"] = counts[1];
  j["companion_case"] = counts[2];
  j["not_strongly_jclean"] = counts[3];
  j["strongly_jclean"] = counts[0] + counts[1] + counts[2];
  j["hypothesis_violations"] = violations;
  return j;
}

Json run_verify(const std::string& theorem_id, const std::string& spec,
                const ReportOptions& opt) {
  Stopwatch sw(opt.timing);
  RingPtr r;
  if (theorem_id != "C3.2") r = construct_ring(spec);
  VerifyResult res = run_verification(theorem_id, r, opt.order_n, opt.samples, opt.seed);
  Json j;
  j["command"] = "verify";
  j["theorem"] = theorem_id;
  j["result"] = verify_result_json(res);
  sw.stamp(j);
  return j;
}

Json run_lift(const std::string& spec, const std::string& series_literal,
              const ReportOptions& opt) {
  Stopwatch sw(opt.timing);
  RingPtr coeff = construct_ring(spec);
  // Infer N+1 from the literal: top-level cell count.
  std::uint32_t cells = 1;
  int depth = 0;
  std::string_view body(series_literal);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ParseError("series literal must be [c0, ..., cN]");
  for (char c : body.substr(1, body.size() - 2)) {
    if (c == '[' || c == '(') ++depth;
    else if (c == ']' || c == ')') --depth;
    else if (c == ',' && depth == 0) ++cells;
  }
  auto f = series_parse(*coeff, cells - 1, series_literal);
  if (!f) throw ParseError("cannot parse series literal over " + coeff->spec());

  Json j;
  j["command"] = "lift";
  j["ring"] = coeff->spec();
  j["order"] = f->order();
  j["f"] = series_format(*f);

  auto emit = [&](const TruncSeries& e, const LiftTrace& trace, const std::string& how) {
    j["found"] = true;
    j["solver"] = how;
    j["e"] = series_format(e);
    j["w"] = series_format(series_sub(*f, e));
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
      Json st;
      st["n"] = s.n;
      st["e_n"] = coeff->format(s.e_n);
      st["f_n"] = coeff->format(s.f_n);
      st["s_n"] = coeff->format(s.s_n);
      st["g_n"] = coeff->format(s.g_n);
      st["lemma42"] = s.lemma42_ok;
      st["lemma43"] = s.lemma43_ok;
      st["peirce_identity"] = s.peirce_identity_ok;
      st["commutator_identity"] = s.commutator_identity_ok;
      steps.push_back(st);
    }
    j["trace"] = steps;
  };

  if (coeff->kind() == RingKind::Matrix) {
    // Fast path: Lemma 4.6 witness over the entry ring.
    RingPtr base = ring_base(*coeff);
    JCleanAnalyzer an(base);
    Mat2 a0 = mat_from_index(*coeff, base, f->c[0]);
    auto w = an.matrix_optimally_jclean(a0);
    if (w) {
      auto solver = make_matrix_peirce_solver(an, *w, coeff);
      auto [e, trace] = lift_idempotent(*f, coeff->elem(mat_to_index(*coeff, w->E)), solver);
      emit(e, trace, "lemma-4.6 closed-form commutator solver");
      sw.stamp(j);
      return j;
    }
    j["found"] = false;
    j["reason"] = "f(0) is not strongly J-clean over " + base->spec();
    sw.stamp(j);
    return j;
  }

  for (std::uint32_t e0 : coeff->idempotents()) {
    if (!coeff->in_radical(coeff->sub(f->c[0], e0)) ||
        coeff->mul(f->c[0], e0) != coeff->mul(e0, f->c[0]))
      continue;
    try {
      auto solver = make_peirce_solver(*coeff, coeff->elem(f->c[0]), coeff->elem(e0));
      auto [e, trace] = lift_idempotent(*f, coeff->elem(e0), solver);
      emit(e, trace, "least-index Peirce scan");
      sw.stamp(j);
      return j;
    } catch (const RingError&) {
      // next candidate idempotent
    }
  }
  j["found"] = false;
  j["reason"] = "no constant-term witness lifts";
  sw.stamp(j);
  return j;
}

Json run_oracle_diff(const std::string& spec) {
  RingPtr r = construct_ring(spec);
  JCleanAnalyzer an(r);
  const FiniteRing& m2 = *an.matrix_ring();
  Json diffs = Json::array();
  for (std::uint32_t i = 0; i < m2.order(); ++i) {
    Mat2 a = mat_from_index(m2, r, i);
    bool chain = an.classify(a).verdict != JCleanVerdict::NotStronglyJClean;
    bool oracle = an.oracle_strongly_jclean(a).has_value();
    if (chain != oracle)
      diffs.push_back(Json{{"index", i},
                           {"matrix", mat_format(a)},
                           {"classify", chain},
                           {"oracle", oracle}});
  }
  Json j;
  j["command"] = "oracle-diff";
  j["ring"] = r->spec();
  j["total"] = m2.order();
  j["disagreements"] = diffs.size();
  j["detail"] = diffs;
  return j;
}

namespace {

void render_node(const Json& node, const std::string& indent, std::string& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object() || value.is_array()) {
        out += indent + key + ":\n";
        render_node(value, indent + "  ", out);
      } else {
        out += indent + key + ": " + (value.is_string() ? value.get<std::string>()
                                                        : value.dump()) +
               "\n";
      }
    }
  } else if (node.is_array()) {
    for (const auto& value : node) {
      if (value.is_object() || value.is_array()) {
        out += indent + "-\n";
        render_node(value, indent + "  ", out);
      } else {
        out += indent + "- " +
               (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
      }
    }
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  render_node(report, "", out);
  return out;
}

bool report_has_counterexamples(const Json& report) {
  if (report.contains("result") && report["result"].contains("failures"))
    return report["result"]["failures"].get<std::uint64_t>() > 0;
  if (report.contains("disagreements"))
    return report["disagreements"].get<std::uint64_t>() > 0;
  if (report.contains("hypothesis_violations"))
    return report["hypothesis_violations"].get<std::uint64_t>() > 0;
  return false;
}

}  // namespace strongj
