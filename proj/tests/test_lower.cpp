#include <doctest.h>

#include "badic/error.hpp"
#include "badic/generators.hpp"
#include "badic/lower.hpp"

using namespace badic;

namespace {

PointSet spaced(int count, int base, int precision) {
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) pts.push_back(Point{{i}});
  return PointSet(base, 1, precision, std::move(pts));
}

LowerParams params(Rational alpha, int M, int depth) {
  LowerParams p;
  p.alpha = alpha;
  p.M = M;
  p.depth = depth;
  return p;
}

}  // namespace

TEST_CASE("inverse ratio") {
  CHECK(inverse_ratio(4, Rational(1, 2)) == 16);
  CHECK(inverse_ratio(2, Rational(1, 2)) == 4);
  CHECK(inverse_ratio(8, Rational(3, 2)) == 4);
  CHECK_THROWS_AS(inverse_ratio(3, Rational(2, 3)), DomainError);
}

TEST_CASE("packing children") {
  const auto ps = spaced(16, 2, 4);
  const auto c = select_packing_children(ps, 0, Rational(1), Rational(1, 64), 4);
  REQUIRE(c.centers.size() == 4);
  CHECK(c.centers == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(c.packing == 16);

  CHECK(select_packing_children(ps, 5, Rational(1), Rational(1, 64), 1).centers == std::vector<std::size_t>{5});

  const auto sparse = spaced(3, 2, 2);
  try {
    (void)select_packing_children(sparse, 0, Rational(1), Rational(1, 16), 4);
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("achieved=3") != std::string::npos);
  }
}

TEST_CASE("full interval construction") {
  const auto E = full_tree(4, 1, 12);
  const auto p = params(Rational(1, 2), 4, 3);
  const auto pts = lower_candidates(E, p);
  const auto t = construct_subset_lower(pts, p);
  CHECK(t.lambda_inv == 16);
  CHECK(t.centers.back().size() == 64);
  CHECK(t.centers.front().front() == 0);
  CHECK(t.inadmissible.empty());
  const auto check = check_ball_tree(t);
  CHECK_MESSAGE(check.ok(), check.first_failure);

  const auto rep = verify_lower_bounds(t);
  CHECK(rep.rows.size() == 64 * 6);
  CHECK(rep.violations() == 0);
  CHECK(rep.cardinality_ok);
  CHECK(rep.box_ratio_exact);
  CHECK(rep.box_ratio == doctest::Approx(0.5));

  const auto F = lower_subset_tree(t, E);
  CHECK(F.leaf_count() == 64);
  CHECK(is_subtree(F, E));
}

TEST_CASE("depth zero and depth one") {
  const auto E = full_tree(4, 1, 6);
  auto p = params(Rational(1, 2), 4, 0);
  const auto t0 = construct_subset_lower(lower_candidates(E, p), p);
  CHECK(t0.final_points().size() == 1);

  p.depth = 1;
  const auto t1 = construct_subset_lower(lower_candidates(E, p), p);
  const auto rep = verify_lower_bounds(t1);
  REQUIRE(rep.rows.size() == 4);
  for (const auto& row : rep.rows) {
    CHECK(row.nstar >= 1);
    CHECK(row.ok);
  }
}

TEST_CASE("cantor construction") {
  const auto E = tree_from_digit_rule(3, 1, 12, {{0}, {2}});
  const auto p = params(Rational(1, 2), 2, 4);
  const auto t = construct_subset_lower(lower_candidates(E, p), p);
  CHECK(t.final_points().size() == 16);
  const auto check = check_ball_tree(t);
  CHECK_MESSAGE(check.ok(), check.first_failure);
  CHECK(verify_lower_bounds(t).violations() == 0);
  // Starting from 0 the 1/4 radius ratio lands in a Cantor gap.
  auto pinned = p;
  pinned.anchor = 0;
  CHECK_THROWS_AS(construct_subset_lower(lower_candidates(E, pinned), pinned), DomainError);
}

TEST_CASE("invariant checker catches broken trees") {
  const auto E = full_tree(4, 1, 12);
  const auto p = params(Rational(1, 2), 4, 2);
  auto t = construct_subset_lower(lower_candidates(E, p), p);
  std::swap(t.centers[2][0], t.centers[2][1]);
  const auto c = check_ball_tree(t);
  CHECK_FALSE(c.anchored);
  t.centers[2][1] = t.centers[2][0];
  CHECK_FALSE(check_ball_tree(t).disjoint);
}
