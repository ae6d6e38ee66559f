#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "shufflemix/measures.hpp"
#include "shufflemix/montecarlo.hpp"
#include "shufflemix/tvd.hpp"
#include "shufflemix/verify.hpp"

namespace shufflemix {

using Json = nlohmann::ordered_json;

/// {"num": "...", "den": "..."} in lowest terms, den > 0.
Json rational_json(const BigRational& q);
BigRational rational_from_json(const Json& j);

/// Fixed 15 significant digits ("%.15g"). Non-finite values render as
/// "inf", "-inf" or "nan".
std::string format_float(double x);
/// A JSON number whose text is exactly format_float(x); strings for
/// non-finite values.
Json float_json(double x);

Json spec_json(const MeasureSpec& spec);
/// Entries {"perm": "2 1 3", "mass": {...}} in lexicographic order; zero
/// masses are included so the array length is n!.
Json distribution_json(const FullDistribution& dist);
/// {"statistic": name, "entries": [{"value": v, "mass": {...}}, ...]}
Json stat_distribution_json(const StatDistribution& dist);
Json mixing_json(const std::vector<MixingRow>& rows);
/// Header m,k,tv_num,tv_den,tv_float; LF line endings.
std::string mixing_csv(const std::vector<MixingRow>& rows);
Json sample_json(const SampleReport& report);
Json verify_json(const VerifyReport& report);

}  // namespace shufflemix
