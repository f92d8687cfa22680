#include <doctest.h>

#include <string>

#include "badic/badic.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  badic_string_free(s);
  return out;
}

badic_set* cantor(int depth) {
  badic_gen_params p;
  badic_gen_params_init(&p);
  p.family = "digit-cantor";
  p.base = 3;
  p.depth = depth;
  p.digits = "0,2";
  badic_set* s = nullptr;
  REQUIRE(badic_generate(&p, &s) == BADIC_OK);
  return s;
}

}  // namespace

TEST_CASE("generate, estimate, format") {
  badic_set* s = cantor(8);
  CHECK(badic_set_is_windowed(s) == 0);

  badic_estimate_params e;
  badic_estimate_params_init(&e);
  char* headline = nullptr;
  char* tsv = nullptr;
  REQUIRE(badic_estimate(s, &e, &headline, &tsv) == BADIC_OK);
  CHECK(take(headline) == "estimate=0.630930 kind=star-local depth=8");
  CHECK(take(tsv).rfind("k\tcount\tlogratio\twitness\n", 0) == 0);

  e.workers = 4;
  REQUIRE(badic_estimate(s, &e, &headline, nullptr) == BADIC_OK);
  CHECK(take(headline) == "estimate=0.630930 kind=star-local depth=8");

  char* text = nullptr;
  REQUIRE(badic_set_format(s, &text) == BADIC_OK);
  const std::string bdt = take(text);
  badic_set* back = nullptr;
  REQUIRE(badic_set_parse(bdt.c_str(), &back) == BADIC_OK);
  REQUIRE(badic_set_format(back, &text) == BADIC_OK);
  CHECK(take(text) == bdt);

  char* info = nullptr;
  REQUIRE(badic_set_info(s, &info) == BADIC_OK);
  CHECK(take(info).find("leaves=256") != std::string::npos);
  badic_set_free(back);
  badic_set_free(s);
}

TEST_CASE("error codes") {
  badic_set* s = nullptr;
  CHECK(badic_set_parse("bdt b=3 d=1 n=2\n00\n03\n", &s) == BADIC_E_PARSE);
  CHECK(std::string(badic_last_error()).find("line 3") != std::string::npos);
  CHECK(badic_set_load("/nonexistent/x.bdt", &s) == BADIC_E_IO);
  CHECK(badic_set_parse(nullptr, &s) == BADIC_E_ARG);

  badic_gen_params g;
  badic_gen_params_init(&g);
  g.family = "no-such-family";
  CHECK(badic_generate(&g, &s) == BADIC_E_DOMAIN);

  s = cantor(4);
  badic_estimate_params e;
  badic_estimate_params_init(&e);
  e.k_max = 9;
  char* h = nullptr;
  CHECK(badic_estimate(s, &e, &h, nullptr) == BADIC_E_DOMAIN);
  CHECK(h == nullptr);

  badic_assouad_params a;
  badic_assouad_params_init(&a);
  a.alpha = "0.5";
  a.eps = "0.25";
  a.M = 3;
  a.strategy = "sometimes";
  badic_set* out = nullptr;
  CHECK(badic_extract_assouad(s, &a, &out, nullptr, nullptr) == BADIC_E_ARG);
  CHECK(out == nullptr);
  CHECK(std::string(badic_last_error()).find("strategy") != std::string::npos);

  CHECK(badic_set_format(s, &h) == BADIC_OK);
  CHECK(std::string(badic_last_error()).empty());
  badic_string_free(h);
  badic_set_free(s);
}

TEST_CASE("extraction through the C API") {
  badic_gen_params g;
  badic_gen_params_init(&g);
  g.family = "full-cube";
  g.base = 4;
  g.depth = 6;
  badic_set* E = nullptr;
  REQUIRE(badic_generate(&g, &E) == BADIC_OK);

  badic_lower_params l;
  badic_lower_params_init(&l);
  l.alpha = "1/2";
  l.M = 4;
  l.depth = 2;
  badic_set* F = nullptr;
  char* report = nullptr;
  char* summary = nullptr;
  REQUIRE(badic_extract_lower(E, &l, &F, &report, &summary) == BADIC_OK);
  CHECK(take(report).rfind("x\tR\tr\tNstar\tbound\tok\n", 0) == 0);
  CHECK(take(summary).find("violations=0") != std::string::npos);
  char* info = nullptr;
  REQUIRE(badic_set_info(F, &info) == BADIC_OK);
  CHECK(take(info).find("leaves=16") != std::string::npos);
  badic_set_free(F);

  badic_assouad_params a;
  badic_assouad_params_init(&a);
  a.alpha = "0.5";
  a.eps = "0.25";
  a.M = 4;
  a.strict = 1;
  CHECK(badic_extract_assouad(E, &a, &F, nullptr, nullptr) == BADIC_E_DOMAIN);
  CHECK(std::string(badic_last_error()).find("N+3^d > M^{alpha+eps}") != std::string::npos);
  a.strict = 0;
  F = nullptr;
  char* trace = nullptr;
  REQUIRE(badic_extract_assouad(E, &a, &F, &trace, &summary) == BADIC_OK);
  CHECK(take(trace).rfind("stage\twindow\tlevel\tcount\tbound\tok\n", 0) == 0);
  CHECK(take(summary).find("in_range=1") != std::string::npos);
  badic_set_free(F);
  badic_set_free(E);
}

TEST_CASE("verify suites") {
  char* summary = nullptr;
  char* violations = nullptr;
  REQUIRE(badic_verify("lemma21", 0, 0, &summary, &violations) == BADIC_OK);
  CHECK(take(summary).find("violations=0") != std::string::npos);
  CHECK(take(violations).empty());
  CHECK(badic_verify("nope", 0, 0, nullptr, nullptr) == BADIC_E_DOMAIN);
}
