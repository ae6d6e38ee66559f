// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "shufflemix/shufflemix.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { exit_ok = 0, exit_failed = 1, exit_usage = 2, exit_resource = 3 };

int exit_code(smx_status s) {
  switch (s) {
    case SMX_OK: return exit_ok;
    case SMX_ERR_INVALID_ARGUMENT:
    case SMX_ERR_DOMAIN: return exit_usage;
    case SMX_ERR_RESOURCE: return exit_resource;
    case SMX_ERR_VERIFY_FAILED:
    case SMX_ERR_INTERNAL: return exit_failed;
  }
  return exit_failed;
}

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int enum_limit = 10;
  std::uint64_t word_limit = 10'000'000;
};

struct ContextDeleter {
  void operator()(smx_context* c) const { smx_context_destroy(c); }
};
using Context = std::unique_ptr<smx_context, ContextDeleter>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { smx_string_free(p); }
};

// Adds value to args only when the option was given, so library defaults
// apply otherwise.
template <typename T>
void put(Json& args, const char* key, const CLI::Option* opt, const T& value) {
  if (opt->count() > 0) args[key] = value;
}

std::string rational_text(const Json& q) {
  const auto num = q.at("num").get<std::string>();
  const auto den = q.at("den").get<std::string>();
  return den == "1" ? num : num + "/" + den;
}

std::string number_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string csv_of(const std::string& command, const Json& p) {
  std::string out;
  auto line = [&](std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out += ',';
      out += c;
      first = false;
    }
    out += '\n';
  };
  if (command == "eval") {
    line({"mass_num", "mass_den", "mass_float"});
    line({p["mass"]["num"], p["mass"]["den"], number_text(p["mass_float"])});
  } else if (command == "tv") {
    line({"method", "tv_num", "tv_den", "tv_float"});
    line({p["method"], p["tv"]["num"], p["tv"]["den"], number_text(p["tv_float"])});
  } else if (command == "dist") {
    if (p.contains("marginal")) {
      line({"value", "mass_num", "mass_den"});
      for (const auto& e : p["marginal"]["entries"]) line({e["value"].dump(), e["mass"]["num"], e["mass"]["den"]});
    } else {
      line({"perm", "mass_num", "mass_den"});
      for (const auto& e : p["entries"]) line({e["perm"], e["mass"]["num"], e["mass"]["den"]});
    }
  } else if (command == "simulate") {
    line({"value", "count", "exact_num", "exact_den", "sigma"});
    for (const auto& c : p["cells"]) {
      const bool exact = c.contains("exact");
      line({c["value"].dump(), c["count"].dump(), exact ? c["exact"]["num"].get<std::string>() : "",
            exact ? c["exact"]["den"].get<std::string>() : "", c.contains("sigma") ? number_text(c["sigma"]) : ""});
    }
  } else if (command == "verify") {
    line({"suite", "max_n", "max_k", "checks", "failures", "passed"});
    line({p["suite"], p["max_n"].dump(), p["max_k"].dump(), p["checks"].dump(),
          std::to_string(p["failures"].size()), p["passed"].get<bool>() ? "true" : "false"});
  }
  return out;
}

std::string text_of(const std::string& command, const Json& p) {
  std::string out;
  if (command == "eval") {
    out = rational_text(p["mass"]) + "  (" + number_text(p["mass_float"]) + ")\n";
  } else if (command == "tv") {
    out = rational_text(p["tv"]) + "  (" + number_text(p["tv_float"]) + ", " + p["method"].get<std::string>() + ")\n";
  } else if (command == "mix-table") {
    for (const auto& r : p["rows"])
      out += "m=" + r["m"].dump() + " k=" + r["k"].dump() + "  " + number_text(r["tv_float"]) + "  " +
             rational_text(r["tv"]) + "\n";
  } else if (command == "dist") {
    const bool marginal = p.contains("marginal");
    for (const auto& e : marginal ? p["marginal"]["entries"] : p["entries"])
      out += (marginal ? e["value"].dump() : e["perm"].get<std::string>()) + "  " + rational_text(e["mass"]) + "\n";
  } else if (command == "simulate") {
    out = p["simulator"].get<std::string>() + " n=" + p["n"].dump() + " samples=" + p["samples"].dump() +
          " seed=" + p["seed"].dump() + " (" + p["law"].get<std::string>() + ")\n";
    for (const auto& c : p["cells"]) {
      out += "  " + (c.contains("perm") ? c["perm"].get<std::string>() : c["value"].dump()) + ": " + c["count"].dump();
      if (c.contains("exact")) out += "  exact " + rational_text(c["exact"]);
      if (c.contains("sigma")) out += "  sigma " + number_text(c["sigma"]);
      out += "\n";
    }
    if (p.contains("max_abs_sigma")) out += "max |sigma| " + number_text(p["max_abs_sigma"]) + "\n";
  } else if (command == "verify") {
    out = p["suite"].get<std::string>() + ": " + (p["passed"].get<bool>() ? "pass" : "FAIL") + " (" +
          p["checks"].dump() + " checks, " + std::to_string(p["failures"].size()) + " failures)\n";
    for (const auto& f : p["failures"]) out += "  failure: " + f.get<std::string>() + "\n";
    for (const auto& n : p["notes"]) out += "  note: " + n.get<std::string>() + "\n";
  }
  return out;
}

int run(const Globals& g, const std::string& command, const Json& args) {
  smx_context* raw = nullptr;
  if (smx_context_create(&raw) != SMX_OK) {
    std::cerr << "error: cannot create context\n";
    return exit_failed;
  }
  Context ctx(raw);
  for (const smx_status s : {smx_context_set_enum_limit(raw, g.enum_limit),
                             smx_context_set_word_limit(raw, g.word_limit), smx_context_set_threads(raw, g.threads)})
    if (s != SMX_OK) {
      std::cerr << "error: " << smx_last_error(raw) << "\n";
      return exit_usage;
    }

  const std::string args_text = args.dump();
  OwnedString payload_text;
  const smx_status status = smx_command_json(raw, command.c_str(), args_text.c_str(), &payload_text.p);
  if (!payload_text.p) {
    std::cerr << "error (" << smx_status_name(status) << "): " << smx_last_error(raw) << "\n";
    return exit_code(status);
  }
  const Json payload = Json::parse(payload_text.p);

  if (g.format == "json") {
    Json envelope;
    envelope["schema"] = 1;
    envelope["command"] = command;
    envelope["args"] = args;
    Json config;
    config["seed"] = g.seed;
    config["threads"] = g.threads;
    config["enum_limit"] = g.enum_limit;
    config["word_limit"] = g.word_limit;
    envelope["config"] = std::move(config);
    envelope["payload"] = payload;
    std::cout << envelope.dump(2) << "\n";
  } else if (g.format == "csv") {
    if (command == "mix-table") {
      OwnedString csv;
      const smx_status s = smx_mix_table_csv(raw, args_text.c_str(), &csv.p);
      if (s != SMX_OK) {
        std::cerr << "error (" << smx_status_name(s) << "): " << smx_last_error(raw) << "\n";
        return exit_code(s);
      }
      std::cout << csv.p;
    } else {
      std::cout << csv_of(command, payload);
    }
  } else {
    std::cout << text_of(command, payload);
  }
  if (status != SMX_OK) std::cerr << "error (" << smx_status_name(status) << "): " << smx_last_error(raw) << "\n";
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact shuffle measures, total variation distances and simulations"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(smx_version()));

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", g.seed, "Seed for simulate");
  app.add_option("--threads", g.threads, "Worker threads (also the number of random streams)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--enum-limit", g.enum_limit, "Largest n for which S_n is enumerated")->check(CLI::Range(1, 20));
  app.add_option("--word-limit", g.word_limit, "Largest k^n for word-enumeration oracles");

  Json args = Json::object();
  std::string command;

  std::string family, perm, a, b, method, reference, statistic, suite;
  int n = 0, d = 0, cd = 0, maj = 0, m_first = 0, m_last = 0, iterations = 0, max_n = 0;
  std::int64_t k = 0, k_b = 0, base = 0, max_k = 0;
  std::uint64_t samples = 0;

  auto* eval = app.add_subcommand("eval", "Mass of one permutation");
  auto* eval_family = eval->add_option("--family", family, "riffle, cut-riffle, affine or uniform")->required();
  auto* eval_n = eval->add_option("--n", n, "Deck size")->required();
  auto* eval_k = eval->add_option("--k", k, "Shuffle parameter (default 2)");
  auto* eval_perm = eval->add_option("--perm", perm, "One-line notation, e.g. \"2 1 3\"");
  auto* eval_d = eval->add_option("--d", d, "Descents");
  auto* eval_cd = eval->add_option("--cd", cd, "Cyclic descents");
  auto* eval_maj = eval->add_option("--maj", maj, "Major index");
  eval->callback([&] {
    command = "eval";
    put(args, "family", eval_family, family);
    put(args, "n", eval_n, n);
    put(args, "k", eval_k, k);
    put(args, "perm", eval_perm, perm);
    put(args, "d", eval_d, d);
    put(args, "cd", eval_cd, cd);
    put(args, "maj", eval_maj, maj);
  });

  auto* tv = app.add_subcommand("tv", "Total variation distance between two measures");
  auto* tv_a = tv->add_option("--a", a, "First family")->required();
  auto* tv_b = tv->add_option("--b", b, "Second family")->required();
  auto* tv_n = tv->add_option("--n", n, "Deck size")->required();
  auto* tv_k = tv->add_option("--k", k, "Shuffle parameter (default 2)");
  auto* tv_kb = tv->add_option("--k-b", k_b, "Shuffle parameter of the second measure (default --k)");
  auto* tv_method = tv->add_option("--method", method, "auto, expr1, expr2, expr3, brute or statistic:<name>");
  tv->callback([&] {
    command = "tv";
    put(args, "a", tv_a, a);
    put(args, "b", tv_b, b);
    put(args, "n", tv_n, n);
    put(args, "k", tv_k, k);
    put(args, "k_b", tv_kb, k_b);
    put(args, "method", tv_method, method);
  });

  auto* mix = app.add_subcommand("mix-table", "Exact distance for k = base^m over a range of m");
  auto* mix_family = mix->add_option("--family", family, "Shuffle family")->required();
  auto* mix_ref = mix->add_option("--reference", reference, "uniform (default), riffle or cut-riffle");
  auto* mix_n = mix->add_option("--n", n, "Deck size")->required();
  auto* mix_base = mix->add_option("--base", base, "Base (default 2)");
  auto* mix_first = mix->add_option("--m-first", m_first, "First m (default 1)");
  auto* mix_last = mix->add_option("--m-last", m_last, "Last m (default 12)");
  mix->callback([&] {
    command = "mix-table";
    put(args, "family", mix_family, family);
    put(args, "reference", mix_ref, reference);
    put(args, "n", mix_n, n);
    put(args, "base", mix_base, base);
    put(args, "m_first", mix_first, m_first);
    put(args, "m_last", mix_last, m_last);
  });

  auto* sim = app.add_subcommand("simulate", "Monte Carlo simulation of a physical shuffle");
  auto* sim_family =
      sim->add_option("--family", family, "riffle (gsr), inverse-digit, cut-riffle, affine (affine2) or uniform")
          ->required();
  auto* sim_n = sim->add_option("--n", n, "Deck size")->required();
  auto* sim_k = sim->add_option("--k", k, "Shuffle parameter (default 2)");
  auto* sim_iter = sim->add_option("--iterations", iterations, "Shuffles composed per sample (default 1)");
  auto* sim_samples = sim->add_option("--samples", samples, "Number of samples (default 10000)");
  auto* sim_stat = sim->add_option("--statistic", statistic,
                                   "permutation (default), descents, cyclic-descents, major-index, lis, "
                                   "card-position:i");
  sim->callback([&] {
    command = "simulate";
    put(args, "simulator", sim_family, family);
    put(args, "n", sim_n, n);
    put(args, "k", sim_k, k);
    put(args, "iterations", sim_iter, iterations);
    put(args, "statistic", sim_stat, statistic);
    put(args, "samples", sim_samples, samples);
  });

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  auto* verify_suite = verify->add_option("--suite", suite, "Suite name")
                           ->required()
                           ->check(CLI::IsMember({"worpitzky", "eulerian", "bernoulli", "cyclic-descents",
                                                  "normalization", "closure", "tv-equalities", "bounds", "oracle",
                                                  "affine-physical"}));
  auto* verify_n = verify->add_option("--max-n", max_n, "Largest n (per-suite default)");
  auto* verify_k = verify->add_option("--max-k", max_k, "Largest k (per-suite default)");
  verify->callback([&] {
    command = "verify";
    put(args, "suite", verify_suite, suite);
    put(args, "max_n", verify_n, max_n);
    put(args, "max_k", verify_k, max_k);
  });

  auto* dist = app.add_subcommand("dist", "Full law on S_n, or the marginal of a statistic");
  auto* dist_family = dist->add_option("--family", family, "Shuffle family")->required();
  auto* dist_n = dist->add_option("--n", n, "Deck size")->required();
  auto* dist_k = dist->add_option("--k", k, "Shuffle parameter (default 2)");
  auto* dist_stat = dist->add_option("--statistic", statistic, "Marginal of this statistic instead of the full law");
  dist->callback([&] {
    command = "dist";
    put(args, "family", dist_family, family);
    put(args, "n", dist_n, n);
    put(args, "k", dist_k, k);
    put(args, "statistic", dist_stat, statistic);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }
  if (command == "simulate") args["seed"] = g.seed;
  return run(g, command, args);
}
