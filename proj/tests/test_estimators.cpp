#include <doctest.h>

#include <cmath>

#include "badic/error.hpp"
#include "badic/estimators.hpp"
#include "badic/generators.hpp"
#include "badic/oracles.hpp"

using namespace badic;

namespace {

GeneratorSpec cantor(int depth) {
  GeneratorSpec s;
  s.family = Family::DigitCantor;
  s.base = 3;
  s.digits = {0, 2};
  s.depth = depth;
  return s;
}

PointSet line_points(std::vector<std::int64_t> nums, int base, int precision) {
  std::vector<Point> pts;
  for (auto n : nums) pts.push_back(Point{{n}});
  return PointSet(base, 1, precision, std::move(pts));
}

}  // namespace

TEST_CASE("cantor star headline is log2/log3 at every depth") {
  for (int n = 1; n <= 10; ++n) {
    const auto tree = std::get<CubeTree>(generate(cantor(n)));
    const auto rep = star_dimension_report(tree, n);
    CHECK(format_ratio(rep.headline()) == "0.630930");
    CHECK(rep.headline_line() == "estimate=0.630930 kind=star-local depth=" + std::to_string(n));
  }
  CHECK(std::get<CubeTree>(generate(cantor(8))).leaf_count() == 256);
}

TEST_CASE("count_hit_subcubes") {
  const auto tree = std::get<CubeTree>(generate(cantor(4)));
  CHECK(count_hit_subcubes(tree, BadicCube::parse(3, 1, "0"), 2) == 4);
  CHECK(count_hit_subcubes(tree, BadicCube::parse(3, 1, "1"), 2) == 0);
  CHECK_THROWS_AS(count_hit_subcubes(tree, BadicCube::parse(3, 1, "00"), 3), DomainError);
  CHECK_THROWS_AS(count_hit_subcubes(tree, tree.root_cube(), 0), DomainError);
}

TEST_CASE("full cube headline equals the dimension") {
  for (int d = 1; d <= 3; ++d) {
    const auto tree = full_tree(2, d, 5);
    CHECK(star_dimension_report(tree, 5).headline() == doctest::Approx(d).epsilon(1e-12));
    CHECK(lower_dimension_report(tree, 5).headline() == doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("h_star witness and worker independence") {
  const auto tree = random_branching_tree(3, 1, 7, 2, 42);
  for (int k = 1; k <= 7; ++k) {
    const auto one = h_star(tree, k, 1);
    for (int w : {2, 3, 8}) {
      const auto many = h_star(tree, k, w);
      CHECK(many.count == one.count);
      CHECK(many.witness == one.witness);
    }
    CHECK(count_hit_subcubes(tree, one.witness, k) == one.count);
    CHECK(oracle::exact_hstar(tree, k).count == one.count);
  }
  CHECK_THROWS_AS(h_star(tree, 8), DomainError);
}

TEST_CASE("lattice window: local 0, global d") {
  for (int d = 1; d <= 2; ++d) {
    GeneratorSpec s;
    s.family = Family::LatticeWindow;
    s.base = 2;
    s.dim = d;
    s.window_exp = 4;
    s.frac = 3;
    const auto set = std::get<WindowedSet>(generate(s));
    const auto local = star_dimension_report(set, false, default_k_max(set, false));
    const auto global = star_dimension_report(set, true, default_k_max(set, true));
    CHECK(local.envelope_max() == 0.0);
    CHECK(global.headline() == doctest::Approx(d).epsilon(1e-12));
    for (const auto& r : global.records) CHECK(count_hit_subcubes(set, *r.global, r.k) == r.count);
  }
}

TEST_CASE("prop5 union separates local and global") {
  GeneratorSpec s;
  s.family = Family::Prop5Union;
  s.base = 4;
  s.digits = {0, 2};
  s.int_digits = {0, 1, 2};
  s.window_exp = 2;
  s.windows = 3;
  s.frac = 5;
  const auto set = std::get<WindowedSet>(generate(s));
  const auto local = star_dimension_report(set, false, default_k_max(set, false));
  const auto global = star_dimension_report(set, true, default_k_max(set, true));
  CHECK(format_ratio(local.headline()) == "0.500000");
  CHECK(format_ratio(global.headline()) == "0.792481");
  for (const auto& r : global.records) CHECK(count_hit_subcubes(set, *r.global, r.k) == r.count);
}

TEST_CASE("packing examples") {
  // {0, 1/2, 1} at precision 1 in base 2.
  const auto ps = line_points({0, 1, 2}, 2, 1);
  const Point half{{1}};
  CHECK(oracle::exact_packing(ps, half, Rational::parse("0.6"), Rational::parse("0.2")) == 3);
  CHECK(packing_count(ps, half, Rational::parse("0.6"), Rational::parse("0.2")) == 3);

  const auto single = line_points({3}, 10, 1);
  CHECK(oracle::exact_packing(single, single[0], Rational(1), Rational(1, 10)) == 1);

  const auto five = line_points({0, 1, 2, 3, 4}, 10, 1);
  CHECK(oracle::exact_packing(five, five[2], Rational(1), Rational::parse("0.15")) == 2);
}

TEST_CASE("exact cover") {
  const auto five = line_points({0, 1, 2, 3, 4}, 10, 1);
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  // Open balls of radius 0.1 cover spreads < 0.2: pairs only.
  CHECK(oracle::exact_cover(five, all, Rational(1, 10)) == 3);
  CHECK(oracle::exact_cover(five, all, Rational(1)) == 1);
  CHECK(oracle::exact_cover(five, {}, Rational(1)) == 0);
}

TEST_CASE("ball cover count bounds the exact cover") {
  const auto tree = std::get<CubeTree>(generate(cantor(3)));
  const auto ps = leaf_representatives(tree);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::vector<std::size_t> in;
    for (std::size_t j = 0; j < ps.size(); ++j)
      if (in_open_ball(ps, ps[i], Rational(1, 2), ps[j])) in.push_back(j);
    CHECK(ball_cover_count(ps, ps[i], Rational(1, 2), Rational(1, 9)) >=
          oracle::exact_cover(ps, in, Rational(1, 9)));
  }
}

TEST_CASE("ball cover examples") {
  const auto ps = line_points({0, 1, 2}, 2, 1);
  CHECK(ball_cover_count(ps, ps[1], Rational(1, 2) + Rational(1, 64), Rational(1, 8)) == 3);
  const auto single = line_points({3}, 2, 4);
  CHECK(ball_cover_count(single, single[0], Rational(1), Rational(1, 16)) == 1);

  const auto corners = leaf_representatives(std::get<CubeTree>(generate(cantor(8))));
  REQUIRE(corners.size() == 256);
  CHECK(ball_cover_count(corners, corners[0], Rational(1), Rational(1, 81)) == 16);
}

TEST_CASE("overlapping balls pack once") {
  const auto two = line_points({0, 1}, 10, 1);
  CHECK(packing_count(two, two[0], Rational(1), Rational(1, 5)) == 1);
  CHECK(oracle::exact_packing(two, two[0], Rational(1), Rational(1, 5)) == 1);
}

TEST_CASE("lower report sees a chain") {
  std::vector<BadicCube> leaves;
  for (const auto& l : full_tree(2, 1, 8).leaves()) {
    auto path = l.path();
    path.insert(path.begin(), 0);
    leaves.emplace_back(2, 1, path);
  }
  leaves.push_back(BadicCube::parse(2, 1, "100000000"));
  const auto tree = tree_from_leaves(2, 1, 9, leaves);
  CHECK(lower_dimension_report(tree, 8).headline() == 0.0);
  CHECK(star_dimension_report(tree, 8).headline() == doctest::Approx(1.0));
}

TEST_CASE("one-over-k diagnostic") {
  GeneratorSpec s;
  s.family = Family::OneOverK;
  s.count = 64;
  double previous = 1.0;
  for (int depth : {6, 8, 10, 12}) {
    s.depth = depth;
    const auto h = star_dimension_report(std::get<CubeTree>(generate(s)), depth).headline();
    CHECK(h > 0.0);
    CHECK(h < previous);
    previous = h;
  }
  // all 64 points are separated at depth 12: 64 = 2^(12/2)
  CHECK(format_ratio(previous) == "0.500000");
}
