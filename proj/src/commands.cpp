#include "shufflemix/commands.hpp"

#include <optional>
#include <string>

#include "shufflemix/error.hpp"

namespace shufflemix {

namespace {

template <typename T>
std::optional<T> optional_arg(const Json& args, const char* key) {
  const auto it = args.find(key);
  if (it == args.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("argument '") + key + "' has the wrong type");
  }
}

template <typename T>
T required_arg(const Json& args, const char* key) {
  auto v = optional_arg<T>(args, key);
  if (!v) throw UsageError(std::string("missing argument '") + key + "'");
  return *v;
}

template <typename T>
T arg_or(const Json& args, const char* key, T fallback) {
  return optional_arg<T>(args, key).value_or(fallback);
}

void reject_unknown(const Json& args, std::initializer_list<std::string_view> known) {
  if (!args.is_object()) throw UsageError("arguments must be a JSON object");
  for (const auto& [key, value] : args.items()) {
    bool found = false;
    for (const auto k : known) found = found || key == k;
    if (!found) throw UsageError("unknown argument '" + key + "'");
  }
}

MeasureSpec spec_from(const Json& args, const char* family_key, const char* k_key, std::int64_t k_fallback) {
  MeasureSpec spec;
  spec.family = parse_family(required_arg<std::string>(args, family_key));
  spec.n = required_arg<int>(args, "n");
  spec.k = spec.family == Family::uniform ? 1 : arg_or<std::int64_t>(args, k_key, k_fallback);
  spec.validate();
  return spec;
}

Json value_fields(const BigRational& v, const char* name) {
  Json j;
  j[name] = rational_json(v);
  j[std::string(name) + "_float"] = float_json(v.to_double());
  return j;
}

CommandResult cmd_eval(const Json& args) {
  reject_unknown(args, {"family", "n", "k", "perm", "d", "cd", "maj"});
  const auto spec = spec_from(args, "family", "k", 2);
  const auto perm_text = optional_arg<std::string>(args, "perm");
  const auto d = optional_arg<int>(args, "d");
  const auto cd = optional_arg<int>(args, "cd");
  const auto maj = optional_arg<int>(args, "maj");
  const bool any_stat = d || cd || maj;
  if (perm_text && any_stat) throw UsageError("give either a permutation or statistics, not both");

  Json out = spec_json(spec);
  BigRational m;
  if (perm_text) {
    const auto p = Permutation::parse(*perm_text);
    if (p.size() != spec.n)
      throw DomainError("permutation has " + std::to_string(p.size()) + " entries but n = " + std::to_string(spec.n));
    out["perm"] = p.to_string();
    Json stats;
    stats["descents"] = descents(p);
    if (spec.n >= 2) stats["cyclic_descents"] = cyclic_descents(p);
    stats["major_index"] = major_index(p);
    out["stats"] = std::move(stats);
    m = mass(spec, p);
  } else if (spec.family == Family::uniform) {
    if (any_stat) throw UsageError("the uniform family takes no statistics");
    m = uniform_mass(spec.n);
  } else {
    // Each family is a function of specific statistics; anything else is a
    // mismatch rather than something to ignore.
    Json stats;
    switch (spec.family) {
      case Family::riffle:
        if (!d || cd || maj) throw UsageError("riffle mass needs --d only");
        m = riffle_mass(spec.n, spec.k, *d);
        stats["descents"] = *d;
        break;
      case Family::cut_riffle:
        if (!cd || d || maj) throw UsageError("cut-riffle mass needs --cd only");
        m = cut_riffle_mass(spec.n, spec.k, *cd);
        stats["cyclic_descents"] = *cd;
        break;
      case Family::affine:
        if (!cd || !maj || d) throw UsageError("affine mass needs --cd and --maj");
        m = affine_mass(spec.n, spec.k, *cd, *maj);
        stats["cyclic_descents"] = *cd;
        stats["major_index"] = *maj;
        break;
      case Family::uniform: break;
    }
    out["stats"] = std::move(stats);
  }
  out.update(value_fields(m, "mass"));
  return {out};
}

TvMethod parse_method(const std::string& text, std::optional<Statistic>& stat) {
  if (text == "auto") return TvMethod::automatic;
  if (text == "expr1") return TvMethod::expr1;
  if (text == "expr2") return TvMethod::expr2;
  if (text == "expr3") return TvMethod::expr3;
  if (text == "brute") return TvMethod::brute;
  constexpr std::string_view prefix = "statistic:";
  if (text.starts_with(prefix)) {
    stat = Statistic::parse(std::string_view(text).substr(prefix.size()));
    return TvMethod::statistic;
  }
  throw UsageError("unknown method '" + text + "' (expected auto, expr1, expr2, expr3, brute or statistic:<name>)");
}

CommandResult cmd_tv(const Json& args, const Limits& limits) {
  reject_unknown(args, {"a", "b", "n", "k", "k_b", "method"});
  const auto k = arg_or<std::int64_t>(args, "k", 2);
  const auto a = spec_from(args, "a", "k", 2);
  const auto b = spec_from(args, "b", "k_b", k);
  std::optional<Statistic> stat;
  const auto method = parse_method(arg_or<std::string>(args, "method", "auto"), stat);
  const auto result = total_variation(a, b, method, stat, limits);
  Json out;
  out["a"] = spec_json(a);
  out["b"] = spec_json(b);
  out["method"] = result.method;
  out.update(value_fields(result.value, "tv"));
  return {out};
}

CommandResult cmd_mix_table(const Json& args, const Limits& limits) {
  reject_unknown(args, {"family", "reference", "n", "base", "m_first", "m_last"});
  const auto family = parse_family(required_arg<std::string>(args, "family"));
  const auto reference = parse_reference(arg_or<std::string>(args, "reference", "uniform"));
  const int n = required_arg<int>(args, "n");
  const auto base = arg_or<std::int64_t>(args, "base", 2);
  const int m_first = arg_or<int>(args, "m_first", 1);
  const int m_last = arg_or<int>(args, "m_last", 12);
  const auto rows = mixing_table(family, n, base, m_first, m_last, reference, limits);
  Json out;
  out["family"] = to_string(family);
  out["reference"] = to_string(reference);
  out["n"] = n;
  out["base"] = base;
  out["rows"] = mixing_json(rows);
  return {out};
}

CommandResult cmd_simulate(const Json& args, const Limits& limits) {
  reject_unknown(args, {"simulator", "n", "k", "iterations", "statistic", "samples", "seed"});
  SampleRequest req;
  req.simulator = parse_simulator(required_arg<std::string>(args, "simulator"));
  req.n = required_arg<int>(args, "n");
  req.k = arg_or<std::int64_t>(args, "k", 2);
  req.iterations = arg_or<int>(args, "iterations", 1);
  req.statistic = Statistic::parse(arg_or<std::string>(args, "statistic", "permutation"));
  req.samples = arg_or<std::uint64_t>(args, "samples", 10000);
  req.seed = arg_or<std::uint64_t>(args, "seed", 0);
  req.threads = limits.threads;
  return {sample_json(sample_statistic(req, limits))};
}

CommandResult cmd_verify(const Json& args, const Limits& limits) {
  reject_unknown(args, {"suite", "max_n", "max_k"});
  const auto report = run_verify(required_arg<std::string>(args, "suite"), optional_arg<int>(args, "max_n"),
                                 optional_arg<std::int64_t>(args, "max_k"), limits);
  return {verify_json(report), !report.passed()};
}

CommandResult cmd_dist(const Json& args, const Limits& limits) {
  reject_unknown(args, {"family", "n", "k", "statistic"});
  const auto spec = spec_from(args, "family", "k", 2);
  Json out = spec_json(spec);
  if (const auto stat_text = optional_arg<std::string>(args, "statistic")) {
    const auto stat = Statistic::parse(*stat_text);
    const auto dist = stat_distribution(spec, stat, limits);
    out["marginal"] = stat_distribution_json(dist);
    out["total"] = rational_json(dist.total());
  } else {
    const auto dist = full_distribution(spec, limits);
    out["entries"] = distribution_json(dist);
    out["total"] = rational_json(dist.total());
  }
  return {out};
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names{"eval", "tv", "mix-table", "simulate", "verify", "dist"};
  return names;
}

CommandResult run_command(std::string_view name, const Json& args, const Limits& limits) {
  if (name == "eval") return cmd_eval(args);
  if (name == "tv") return cmd_tv(args, limits);
  if (name == "mix-table") return cmd_mix_table(args, limits);
  if (name == "simulate") return cmd_simulate(args, limits);
  if (name == "verify") return cmd_verify(args, limits);
  if (name == "dist") return cmd_dist(args, limits);
  throw UsageError("unknown command '" + std::string(name) + "'");
}

}  // namespace shufflemix
