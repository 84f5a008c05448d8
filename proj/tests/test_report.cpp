#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strongj/report.hpp"

using namespace strongj;

TEST_CASE("ring-info report fields") {
  Json j = run_ring_info("Z/4");
  CHECK(j["ring"] == "Z/4");
  CHECK(j["order"] == 4);
  CHECK(j["local"] == true);
  CHECK(j["radical"] == Json::array({"0", "2"}));
  CHECK(j["strongly_jclean_ring"] == true);
  CHECK_FALSE(report_has_counterexamples(j));
}

TEST_CASE("classify report carries a full certificate") {
  Json j = run_classify("Z/4", "[[2,1],[0,3]]");
  CHECK(j["certificate"]["verdict"] == "companion-case");
  CHECK(j["certificate"]["E"].is_string());
  CHECK(j["certificate"]["U"].is_string());
  CHECK(j["certificate"]["lambda"] == "2");
  CHECK(j["certificate"]["provenance"].size() >= 2);

  Json neg = run_classify("Z/4", "[[1,1],[1,0]]");
  CHECK(neg["certificate"]["verdict"] == "not-strongly-jclean");
  CHECK(neg["certificate"]["E"].is_null());
}

TEST_CASE("classify rejects bad literals") {
  CHECK_THROWS_AS(run_classify("Z/4", "[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(run_classify("nonsense", "[[1,2],[3,4]]"), ParseError);
}

TEST_CASE("enumerate counts are frozen for Z/4") {
  Json j = run_enumerate("Z/4");
  CHECK(j["total"] == 256);
  CHECK(j["strongly_jclean"] == 128);
  CHECK(j["radical_case"] == 16);
  CHECK(j["unipotent_case"] == 16);
  CHECK(j["companion_case"] == 96);
  CHECK(j["hypothesis_violations"] == 0);
  CHECK_FALSE(report_has_counterexamples(j));
}

TEST_CASE("verify report passes on Z/4 and reports failures verbatim") {
  ReportOptions opt;
  Json j = run_verify("T3.5", "Z/4", opt);
  CHECK(j["result"]["checked"] == 256);
  CHECK(j["result"]["failures"] == 0);
  CHECK(j["result"]["passed"] == true);
  CHECK_FALSE(report_has_counterexamples(j));
  CHECK_FALSE(j.contains("elapsed_seconds"));
  CHECK_THROWS_AS(run_verify("T9.9", "Z/4", opt), ParseError);
}

TEST_CASE("lift report records the step trace") {
  ReportOptions opt;
  Json j = run_lift("Z/4", "[1,2,3,0,1]", opt);
  CHECK(j["found"] == true);
  CHECK(j["e"] == "[1,0,0,0,0]");
  CHECK(j["trace"].size() == 4);
  for (const auto& step : j["trace"]) {
    CHECK(step["lemma42"] == true);
    CHECK(step["lemma43"] == true);
    CHECK(step["peirce_identity"] == true);
    CHECK(step["commutator_identity"] == true);
  }
  Json m = run_lift("M2(Z/4)", "[[[3,0],[0,2]], [[2,0],[0,2]], [[0,2],[2,0]]]", opt);
  CHECK(m["found"] == true);
  CHECK(m["solver"] == "lemma-4.6 closed-form commutator solver");
}

TEST_CASE("oracle-diff is empty on Z/4") {
  Json j = run_oracle_diff("Z/4");
  CHECK(j["disagreements"] == 0);
  CHECK_FALSE(report_has_counterexamples(j));
}

TEST_CASE("oracle-diff flags hypothesis violations on a non-local ring") {
  Json j = run_oracle_diff("Z/2 x Z/2");
  CHECK(j["disagreements"] == 26);
  CHECK(report_has_counterexamples(j));
}

TEST_CASE("reports are byte-identical across reruns") {
  ReportOptions opt;
  CHECK(run_ring_info("Z/8").dump() == run_ring_info("Z/8").dump());
  CHECK(run_classify("Z/8", "[[1,0],[2,2]]").dump() ==
        run_classify("Z/8", "[[1,0],[2,2]]").dump());
  CHECK(run_enumerate("Z/4").dump() == run_enumerate("Z/4").dump());
  CHECK(run_verify("L3.4", "Z/8", opt).dump() == run_verify("L3.4", "Z/8", opt).dump());
  CHECK(run_lift("Z/4", "[1,2,3,0,1]", opt).dump() ==
        run_lift("Z/4", "[1,2,3,0,1]", opt).dump());
}

TEST_CASE("render_text projects the same data") {
  Json j = run_classify("Z/4", "[[2,1],[0,3]]");
  std::string text = render_text(j);
  CHECK(text.find("verdict: companion-case") != std::string::npos);
  CHECK(text.find("lambda: 2") != std::string::npos);
  CHECK(render_text(j) == text);
}
