#include <doctest.h>

#include <string>

#include "shufflemix/shufflemix.h"

namespace {

struct Ctx {
  smx_context* p = nullptr;
  Ctx() { REQUIRE(smx_context_create(&p) == SMX_OK); }
  ~Ctx() { smx_context_destroy(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  smx_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("context and status names") {
  Ctx ctx;
  CHECK(std::string(smx_version()) == "0.1.0");
  CHECK(std::string(smx_status_name(SMX_ERR_RESOURCE)) == "resource");
  CHECK(smx_context_set_threads(ctx.p, 0) == SMX_ERR_INVALID_ARGUMENT);
  CHECK(std::string(smx_last_error(ctx.p)).find("threads") != std::string::npos);
  CHECK(smx_context_set_threads(ctx.p, 2) == SMX_OK);
  CHECK(std::string(smx_last_error(ctx.p)).empty());
  CHECK(smx_context_set_enum_limit(ctx.p, 21) == SMX_ERR_INVALID_ARGUMENT);
  CHECK(smx_context_create(nullptr) == SMX_ERR_INVALID_ARGUMENT);
}

TEST_CASE("masses") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(smx_mass(ctx.p, "cut-riffle", 3, 2, "2 1 3", &out) == SMX_OK);
  CHECK(take(out) == "1/12");
  REQUIRE(smx_mass_from_stats(ctx.p, "affine", 2, 3, -1, 1, 0, &out) == SMX_OK);
  CHECK(take(out) == "2/3");
  REQUIRE(smx_mass_from_stats(ctx.p, "riffle", 3, 2, 1, -1, -1, &out) == SMX_OK);
  CHECK(take(out) == "1/8");
  CHECK(smx_mass(ctx.p, "riffle", 3, 2, "1 2", &out) == SMX_ERR_DOMAIN);
  CHECK(smx_mass(ctx.p, "nope", 3, 2, "1 2 3", &out) == SMX_ERR_DOMAIN);
  CHECK(smx_mass(ctx.p, "riffle", 3, 2, nullptr, &out) == SMX_ERR_INVALID_ARGUMENT);
  REQUIRE(smx_tv_rc(ctx.p, "expr2", 3, 2, &out) == SMX_OK);
  CHECK(take(out) == "1/3");
}

TEST_CASE("distributions") {
  Ctx ctx;
  smx_distribution *r = nullptr, *cut = nullptr, *c = nullptr, *rc = nullptr;
  REQUIRE(smx_distribution_create(ctx.p, "riffle", 4, 3, &r) == SMX_OK);
  REQUIRE(smx_distribution_cut(ctx.p, 4, &cut) == SMX_OK);
  REQUIRE(smx_distribution_create(ctx.p, "cut-riffle", 4, 3, &c) == SMX_OK);
  REQUIRE(smx_distribution_convolve(ctx.p, cut, r, &rc) == SMX_OK);
  int equal = 0;
  REQUIRE(smx_distribution_equal(ctx.p, rc, c, &equal) == SMX_OK);
  CHECK(equal == 1);
  CHECK(smx_distribution_n(c) == 4);
  char* out = nullptr;
  REQUIRE(smx_distribution_tv(ctx.p, r, c, &out) == SMX_OK);
  CHECK(take(out) == "97/324");
  REQUIRE(smx_distribution_mass(ctx.p, c, "2 1 4 3", &out) == SMX_OK);
  CHECK(take(out) == "1/108");
  REQUIRE(smx_distribution_json(ctx.p, cut, &out) == SMX_OK);
  CHECK(take(out).find(R"("total":{"num":"1","den":"1"})") != std::string::npos);
  smx_distribution* bad = nullptr;
  CHECK(smx_context_set_enum_limit(ctx.p, 5) == SMX_OK);
  CHECK(smx_distribution_create(ctx.p, "riffle", 7, 2, &bad) == SMX_ERR_RESOURCE);
  CHECK(bad == nullptr);
  for (auto* d : {r, cut, c, rc}) smx_distribution_destroy(d);
}

TEST_CASE("command payloads") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(smx_command_json(ctx.p, "eval", R"({"family":"uniform","n":3})", &out) == SMX_OK);
  CHECK(take(out).find(R"("mass":{"num":"1","den":"6"})") != std::string::npos);
  CHECK(smx_command_json(ctx.p, "eval", "{not json", &out) == SMX_ERR_INVALID_ARGUMENT);
  CHECK(smx_command_json(ctx.p, "launch", "{}", &out) == SMX_ERR_INVALID_ARGUMENT);
  REQUIRE(smx_mix_table_csv(ctx.p, R"({"family":"riffle","n":3,"m_last":1})", &out) == SMX_OK);
  CHECK(take(out) == "m,k,tv_num,tv_den,tv_float\n1,2,1,3,0.333333333333333\n");
  REQUIRE(smx_command_json(ctx.p, "verify", R"({"suite":"worpitzky"})", &out) == SMX_OK);
  CHECK(take(out).find(R"("passed":true)") != std::string::npos);
}
