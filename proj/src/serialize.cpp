#include "shufflemix/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "shufflemix/error.hpp"

namespace shufflemix {

Json rational_json(const BigRational& q) {
  Json j;
  j["num"] = q.num().get_str();
  j["den"] = q.den().get_str();
  return j;
}

BigRational rational_from_json(const Json& j) {
  return BigRational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
}

std::string format_float(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json float_json(double x) {
  if (!std::isfinite(x)) return format_float(x);
  // Round-trip through the 15-digit text so the serializer's shortest
  // representation is that text.
  return Json(std::stod(format_float(x)));
}

Json spec_json(const MeasureSpec& spec) {
  Json j;
  j["family"] = to_string(spec.family);
  j["n"] = spec.n;
  if (spec.family != Family::uniform) j["k"] = spec.k;
  return j;
}

Json distribution_json(const FullDistribution& dist) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < dist.size(); ++r) {
    Json e;
    e["perm"] = unrank(dist.n(), r).to_string();
    e["mass"] = rational_json(dist.masses()[r]);
    entries.push_back(std::move(e));
  }
  return entries;
}

Json stat_distribution_json(const StatDistribution& dist) {
  Json j;
  j["statistic"] = dist.statistic;
  Json entries = Json::array();
  for (const auto& [value, m] : dist.masses) {
    Json e;
    e["value"] = value;
    e["mass"] = rational_json(m);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json mixing_json(const std::vector<MixingRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json j;
    j["m"] = row.m;
    j["k"] = row.k;
    j["tv"] = rational_json(row.tv);
    j["tv_float"] = float_json(row.tv_float);
    out.push_back(std::move(j));
  }
  return out;
}

std::string mixing_csv(const std::vector<MixingRow>& rows) {
  std::string out = "m,k,tv_num,tv_den,tv_float\n";
  for (const auto& row : rows)
    out += std::to_string(row.m) + "," + std::to_string(row.k) + "," + row.tv.num().get_str() + "," +
           row.tv.den().get_str() + "," + float_json(row.tv_float).dump() + "\n";
  return out;
}

Json sample_json(const SampleReport& report) {
  const auto& req = report.request;
  Json j;
  j["simulator"] = to_string(req.simulator);
  j["n"] = req.n;
  j["k"] = req.k;
  j["iterations"] = req.iterations;
  j["statistic"] = req.statistic.name();
  j["samples"] = req.samples;
  j["seed"] = req.seed;
  j["streams"] = req.threads;
  j["generator"] = report.generator;
  j["law"] = report.law;
  j["exact_law"] = spec_json(req.exact_spec());
  j["exact_available"] = report.exact_available;
  Json cells = Json::array();
  const bool perm_stat = req.statistic.kind == StatisticKind::permutation;
  for (const auto& cell : report.cells) {
    Json c;
    c["value"] = cell.value;
    if (perm_stat) c["perm"] = unrank(req.n, static_cast<std::uint64_t>(cell.value)).to_string();
    c["count"] = cell.count;
    if (cell.exact) c["exact"] = rational_json(*cell.exact);
    if (cell.sigma) c["sigma"] = float_json(*cell.sigma);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  if (report.exact_available) {
    j["max_abs_sigma"] = float_json(report.max_abs_sigma);
    j["chi_square"] = float_json(report.chi_square);
    j["degrees_of_freedom"] = report.degrees_of_freedom;
    j["flag_threshold"] = float_json(report.flag_threshold);
    j["flagged"] = report.flagged;
  }
  return j;
}

Json verify_json(const VerifyReport& report) {
  Json j;
  j["suite"] = report.suite;
  j["max_n"] = report.max_n;
  j["max_k"] = report.max_k;
  j["checks"] = report.checks;
  j["passed"] = report.passed();
  j["failures"] = report.failures;
  j["notes"] = report.notes;
  return j;
}

}  // namespace shufflemix
