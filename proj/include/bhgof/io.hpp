#pragma once

#include <string>

#include <json.hpp>

#include "bhgof/bootstrap.hpp"
#include "bhgof/mle.hpp"
#include "bhgof/sample.hpp"

namespace bhgof {

/// One `x,y` pair per line, optional header line; order preserved.
/// Malformed, negative or non-integer entries raise with the line number.
BivariateSample load_pairs(const std::string& path);

/// Matrix of counts: row index = second coordinate (0..R), column index =
/// first coordinate (0..C); cell (r,c) contributes `count` copies of the
/// pair (c, r). Rows must be rectangular and counts nonnegative.
BivariateSample load_contingency(const std::string& path);

nlohmann::json params_to_json(const BHParams& p);
BHParams params_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const TestReport& r);
std::string report_to_text(const TestReport& r);
std::string report_to_csv(const TestReport& r);

nlohmann::json fit_to_json(const FitResult& f);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace bhgof
