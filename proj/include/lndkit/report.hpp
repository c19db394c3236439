#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lndkit/driver.hpp"

namespace lndkit {

inline constexpr int kReportVersion = 1;

// Triangular form {"n", "q", "p"} or twin form {"n", "p_plus", "p_minus"};
// an optional "version" must equal 1.
DerivationInput parse_input(const std::string& text);
nlohmann::json input_json(const DerivationInput& d);

// {"version": 1, "splittings": [{"alpha", "P_bar", "modulus", "roots", "galois": [{"s_image", "perm"}]}]}
std::vector<SplittingData> parse_splittings(const std::string& text);

nlohmann::json report_json(const ClassificationReport& rep, bool with_timings = true);
std::string report_text(const ClassificationReport& rep);

}  // namespace lndkit
