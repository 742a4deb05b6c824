#pragma once

// JSON and text renderings of a ConjectureOReport.
//
// The JSON schema is versioned by the "schema" field ("conjo-report/1").
// The canonical form drops the "timings" object so that two runs on the
// same input compare byte for byte.

#include <string>
#include <vector>

#include "json.hpp"

#include "conjo/verifier.hpp"

namespace conjo {

inline constexpr const char* kReportSchema = "conjo-report/1";

nlohmann::json report_to_json(const ConjectureOReport& rep, bool include_timings = true);
std::string canonical_json(const ConjectureOReport& rep);

std::string render_text(const ConjectureOReport& rep);

// One row per space: space, |W^P|, r, h, delta0, pass/fail.
std::string summary_table(const std::vector<ConjectureOReport>& reports);

// Space name used for file names and tables, e.g. "A3_P1,3".
std::string space_id(const ConjectureOReport& rep);

}  // namespace conjo
