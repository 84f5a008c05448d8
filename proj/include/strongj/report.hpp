#pragma once

// Report assembly for the CLI: every subcommand produces one ordered JSON
// document; the human-readable format is a projection of the same data.
// Output is byte-stable for a fixed command and seed (timing is added only on
// request).

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "strongj/verify.hpp"

namespace strongj {

using Json = nlohmann::ordered_json;

struct ReportOptions {
  std::uint32_t order_n = 8;
  int samples = 200;
  std::uint64_t seed = 0;
  bool timing = false;
};

Json run_ring_info(const std::string& spec);
Json run_classify(const std::string& spec, const std::string& matrix_literal);
Json run_enumerate(const std::string& spec);
Json run_verify(const std::string& theorem_id, const std::string& spec,
                const ReportOptions& opt);
Json run_lift(const std::string& spec, const std::string& series_literal,
              const ReportOptions& opt);
Json run_oracle_diff(const std::string& spec);

// Human-readable projection of a report.
std::string render_text(const Json& report);

// True when the report demonstrates a counterexample (CLI exit code 3).
bool report_has_counterexamples(const Json& report);

}  // namespace strongj
