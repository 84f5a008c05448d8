#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "strongj/report.hpp"
#include "strongj/ring.hpp"

namespace {

void print_report(const strongj::Json& report, const std::string& format) {
  if (format == "text")
    std::cout << strongj::render_text(report);
  else
    std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strongj: strong J-cleanness of 2x2 matrices over finite rings"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::uint64_t bound = 0;
  strongj::ReportOptions opt;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--bound", bound, "materialization bound (ring order limit)");
  app.add_flag("--timing", opt.timing, "include elapsed wall time in the report");

  std::string spec, matrix_literal, series_literal, theorem_id;

  CLI::App* ring_info = app.add_subcommand("ring-info", "ring invariants");
  ring_info->add_option("spec", spec, "ring specification")->required();

  CLI::App* classify = app.add_subcommand("classify", "classify one matrix");
  classify->add_option("spec", spec, "ring specification")->required();
  classify->add_option("matrix", matrix_literal, "matrix literal [[a,b],[c,d]]")->required();

  CLI::App* enumerate = app.add_subcommand("enumerate", "verdict counts over M2(R)");
  enumerate->add_option("spec", spec, "ring specification")->required();

  CLI::App* verify = app.add_subcommand("verify", "check a theorem over a ring");
  verify->add_option("theorem", theorem_id, "theorem id (e.g. T3.5, L3.4, T4.4)")->required();
  verify->add_option("spec", spec, "ring specification");
  verify->add_option("--order", opt.order_n, "series truncation order")
      ->capture_default_str();
  verify->add_option("--samples", opt.samples, "random sample count")
      ->capture_default_str();
  verify->add_option("--seed", opt.seed, "random seed")->capture_default_str();

  CLI::App* lift = app.add_subcommand("lift", "lift a decomposition to power series");
  lift->add_option("spec", spec, "coefficient ring specification")->required();
  lift->add_option("series", series_literal, "series literal [c0, ..., cN]")->required();

  CLI::App* diff = app.add_subcommand("oracle-diff", "classify vs brute-force oracle");
  diff->add_option("spec", spec, "ring specification")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (bound != 0) strongj::set_default_bound(bound);
    strongj::Json report;
    if (ring_info->parsed())
      report = strongj::run_ring_info(spec);
    else if (classify->parsed())
      report = strongj::run_classify(spec, matrix_literal);
    else if (enumerate->parsed())
      report = strongj::run_enumerate(spec);
    else if (verify->parsed())
      report = strongj::run_verify(theorem_id, spec, opt);
    else if (lift->parsed())
      report = strongj::run_lift(spec, series_literal, opt);
    else
      report = strongj::run_oracle_diff(spec);
    print_report(report, format);
    return strongj::report_has_counterexamples(report) ? 3 : 0;
  } catch (const strongj::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const strongj::BoundExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const strongj::RingError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
