#include "shufflemix/shufflemix.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "shufflemix/commands.hpp"
#include "shufflemix/error.hpp"

struct smx_context {
  shufflemix::Limits limits;
  std::string last_error;
};

struct smx_distribution {
  shufflemix::FullDistribution dist;
};

namespace {

using namespace shufflemix;

char* dup_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into status codes and the context message.
template <typename Fn>
smx_status guarded(smx_context* ctx, Fn&& fn) {
  if (!ctx) return SMX_ERR_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    return fn();
  } catch (const UsageError& e) {
    ctx->last_error = e.what();
    return SMX_ERR_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = std::string("invalid JSON: ") + e.what();
    return SMX_ERR_INVALID_ARGUMENT;
  } catch (const DomainError& e) {
    ctx->last_error = e.what();
    return SMX_ERR_DOMAIN;
  } catch (const ResourceError& e) {
    ctx->last_error = e.what();
    return SMX_ERR_RESOURCE;
  } catch (const std::exception& e) {
    ctx->last_error = std::string("internal error: ") + e.what();
    return SMX_ERR_INTERNAL;
  } catch (...) {
    ctx->last_error = "internal error";
    return SMX_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(what);
}

smx_status write_string(char** out, const std::string& s) {
  *out = dup_string(s);
  return SMX_OK;
}

MeasureSpec make_spec(const char* family, int n, int64_t k) {
  require(family != nullptr, "family is null");
  MeasureSpec spec{parse_family(family), n, k};
  if (spec.family == Family::uniform) spec.k = 1;
  spec.validate();
  return spec;
}

}  // namespace

extern "C" {

const char* smx_version(void) { return "0.1.0"; }

const char* smx_status_name(smx_status status) {
  switch (status) {
    case SMX_OK: return "ok";
    case SMX_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SMX_ERR_DOMAIN: return "domain";
    case SMX_ERR_RESOURCE: return "resource";
    case SMX_ERR_VERIFY_FAILED: return "verify-failed";
    case SMX_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

smx_status smx_context_create(smx_context** out) {
  if (!out) return SMX_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) smx_context{};
  return *out ? SMX_OK : SMX_ERR_INTERNAL;
}

void smx_context_destroy(smx_context* ctx) { delete ctx; }

smx_status smx_context_set_enum_limit(smx_context* ctx, int n) {
  return guarded(ctx, [&] {
    require(n >= 1 && n <= 20, "enum limit must be in 1..20");
    ctx->limits.enum_limit = n;
    return SMX_OK;
  });
}

smx_status smx_context_set_word_limit(smx_context* ctx, uint64_t limit) {
  return guarded(ctx, [&] {
    require(limit >= 1, "word limit must be >= 1");
    ctx->limits.word_limit = limit;
    return SMX_OK;
  });
}

smx_status smx_context_set_threads(smx_context* ctx, unsigned threads) {
  return guarded(ctx, [&] {
    require(threads >= 1 && threads <= 1024, "threads must be in 1..1024");
    ctx->limits.threads = threads;
    return SMX_OK;
  });
}

const char* smx_last_error(const smx_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

void smx_string_free(char* s) { std::free(s); }

smx_status smx_mass(smx_context* ctx, const char* family, int n, int64_t k, const char* perm, char** out_rational) {
  return guarded(ctx, [&] {
    require(perm && out_rational, "null argument");
    const auto spec = make_spec(family, n, k);
    const auto p = Permutation::parse(perm);
    if (p.size() != n) throw DomainError("permutation size does not match n");
    return write_string(out_rational, mass(spec, p).to_string());
  });
}

smx_status smx_mass_from_stats(smx_context* ctx, const char* family, int n, int64_t k, int d, int cd, int maj,
                               char** out_rational) {
  return guarded(ctx, [&] {
    require(out_rational != nullptr, "null argument");
    const auto spec = make_spec(family, n, k);
    BigRational m;
    switch (spec.family) {
      case Family::riffle: m = riffle_mass(n, k, d); break;
      case Family::cut_riffle: m = cut_riffle_mass(n, k, cd); break;
      case Family::affine: m = affine_mass(n, k, cd, maj); break;
      case Family::uniform: m = uniform_mass(n); break;
    }
    return write_string(out_rational, m.to_string());
  });
}

smx_status smx_tv_rc(smx_context* ctx, const char* expression, int n, int64_t k, char** out_rational) {
  return guarded(ctx, [&] {
    require(expression && out_rational, "null argument");
    const std::string e = expression;
    BigRational v;
    if (e == "expr1") v = tv_rc_expr1(n, k);
    else if (e == "expr2") v = tv_rc_expr2(n, k);
    else if (e == "expr3") v = tv_rc_expr3(n, k);
    else throw UsageError("expression must be expr1, expr2 or expr3");
    return write_string(out_rational, v.to_string());
  });
}

smx_status smx_distribution_create(smx_context* ctx, const char* family, int n, int64_t k, smx_distribution** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    *out = new smx_distribution{full_distribution(make_spec(family, n, k), ctx->limits)};
    return SMX_OK;
  });
}

smx_status smx_distribution_cut(smx_context* ctx, int n, smx_distribution** out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null argument");
    *out = new smx_distribution{cut_measure(n, ctx->limits)};
    return SMX_OK;
  });
}

smx_status smx_distribution_convolve(smx_context* ctx, const smx_distribution* first, const smx_distribution* second,
                                     smx_distribution** out) {
  return guarded(ctx, [&] {
    require(first && second && out, "null argument");
    *out = new smx_distribution{convolve(first->dist, second->dist, ctx->limits)};
    return SMX_OK;
  });
}

smx_status smx_distribution_mass(smx_context* ctx, const smx_distribution* dist, const char* perm,
                                 char** out_rational) {
  return guarded(ctx, [&] {
    require(dist && perm && out_rational, "null argument");
    const auto p = Permutation::parse(perm);
    if (p.size() != dist->dist.n()) throw DomainError("permutation size does not match the distribution");
    return write_string(out_rational, dist->dist[p].to_string());
  });
}

smx_status smx_distribution_tv(smx_context* ctx, const smx_distribution* a, const smx_distribution* b,
                               char** out_rational) {
  return guarded(ctx, [&] {
    require(a && b && out_rational, "null argument");
    return write_string(out_rational, tv_generic(a->dist, b->dist).to_string());
  });
}

smx_status smx_distribution_equal(smx_context* ctx, const smx_distribution* a, const smx_distribution* b,
                                  int* out_equal) {
  return guarded(ctx, [&] {
    require(a && b && out_equal, "null argument");
    *out_equal = a->dist == b->dist ? 1 : 0;
    return SMX_OK;
  });
}

int smx_distribution_n(const smx_distribution* dist) { return dist ? dist->dist.n() : 0; }

smx_status smx_distribution_json(smx_context* ctx, const smx_distribution* dist, char** out_json) {
  return guarded(ctx, [&] {
    require(dist && out_json, "null argument");
    Json j;
    j["n"] = dist->dist.n();
    j["entries"] = distribution_json(dist->dist);
    j["total"] = rational_json(dist->dist.total());
    return write_string(out_json, j.dump());
  });
}

void smx_distribution_destroy(smx_distribution* dist) { delete dist; }

smx_status smx_command_json(smx_context* ctx, const char* command, const char* args_json, char** out_json) {
  return guarded(ctx, [&] {
    require(command && out_json, "null argument");
    const Json args = args_json && *args_json ? Json::parse(args_json) : Json::object();
    const auto result = run_command(command, args, ctx->limits);
    write_string(out_json, result.payload.dump());
    if (result.verify_failed) {
      ctx->last_error = "verification failed";
      return SMX_ERR_VERIFY_FAILED;
    }
    return SMX_OK;
  });
}

smx_status smx_mix_table_csv(smx_context* ctx, const char* args_json, char** out_csv) {
  return guarded(ctx, [&] {
    require(out_csv != nullptr, "null argument");
    const Json args = args_json && *args_json ? Json::parse(args_json) : Json::object();
    const auto payload = run_command("mix-table", args, ctx->limits).payload;
    std::vector<MixingRow> rows;
    for (const auto& r : payload.at("rows"))
      rows.push_back({r.at("m").get<int>(), r.at("k").get<std::int64_t>(), rational_from_json(r.at("tv")),
                      rational_from_json(r.at("tv")).to_double()});
    return write_string(out_csv, mixing_csv(rows));
  });
}

}  // extern "C"
