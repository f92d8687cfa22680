#include <doctest.h>

#include "badic/verify.hpp"

using namespace badic;

TEST_CASE("property suites") {
  for (auto s : {Suite::HStar, Suite::PackingSandwich, Suite::PruneBound, Suite::BallCube}) {
    const auto r = run_suite(s, {});
    INFO(r.summary());
    CHECK(r.checks > 0);
    for (const auto& v : r.violations) MESSAGE(v);
    CHECK(r.ok());
  }
}

TEST_CASE("suite seeds") {
  SuiteOptions o;
  o.seed = 7;
  o.samples = 60;
  const auto a = run_suite(Suite::PackingSandwich, o);
  const auto b = run_suite(Suite::PackingSandwich, o);
  CHECK(a.summary() == b.summary());
  CHECK(a.ok());
  CHECK(parse_suite("lemma21") == Suite::BallCube);
}
