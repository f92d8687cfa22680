#include <doctest.h>

#include <cmath>

#include "badic/assouad.hpp"
#include "badic/error.hpp"
#include "badic/generators.hpp"

using namespace badic;

namespace {

AssouadParams params(const char* alpha, const char* eps, int stages = 3) {
  AssouadParams p;
  p.alpha = Rational::parse(alpha);
  p.eps = Rational::parse(eps);
  p.stages = stages;
  return p;
}

bool caps_hold(const CubeTree& t, std::uint64_t N) { return max_child_count(t) <= N; }

}  // namespace

TEST_CASE("greedy prune examples") {
  const auto full = full_tree(4, 1, 2);
  PruneParams p;
  p.N = 2;
  p.s = 1;
  p.eps = 0;
  const auto f = prune(full, p);
  CHECK(f.leaf_count() == 4);
  CHECK(prune_bound(2, 2, 4, 0) == 4);
  CHECK(is_subtree(f, full));
  CHECK(caps_hold(f, 2));

  const auto k = random_branching_tree(3, 1, 5, 2, 9);
  CHECK(prune_greedy(k, 3).leaf_count() == k.leaf_count());

  const auto cantor = tree_from_digit_rule(3, 1, 3, {{0}, {2}});
  const auto chain = prune_greedy(cantor, 1);
  CHECK(chain.leaf_count() == 1);
  CHECK(chain.leaves().front().to_string() == "000");
}

TEST_CASE("prune hypotheses are enforced") {
  const auto full = full_tree(4, 1, 2);
  PruneParams p;
  p.N = 3;
  p.s = 0.5;
  p.eps = 0;
  const auto v = prune_hypothesis_violation(full, p);
  REQUIRE(v.has_value());
  CHECK(v->find("children") != std::string::npos);
  CHECK_THROWS_AS(prune(full, p), DomainError);
}

TEST_CASE("random prune is reproducible and meets the bound") {
  const auto full = full_tree(4, 1, 3);
  PruneParams p;
  p.N = 2;
  p.s = 1;
  p.eps = 0.1;
  p.strategy = PruneStrategy::Random;
  p.seed = 5;
  const auto a = prune(full, p);
  const auto b = prune(full, p);
  CHECK(a.leaves() == b.leaves());
  CHECK(a.leaf_count() >= prune_bound(2, 3, 4, 0.1));
  CHECK(caps_hold(a, 2));
}

TEST_CASE("dense windows") {
  const auto cantor = tree_from_digit_rule(3, 1, 6, {{0}, {2}});
  const auto w = find_dense_window(cantor, cantor.root_cube(), 2, 2);
  CHECK(w.cube.to_string() == "00");
  CHECK(w.count == 4);

  const auto full = full_tree(4, 1, 4);
  const auto f = find_dense_window(full, full.root_cube(), 1, 2);
  CHECK(f.cube.level() == 1);
  CHECK(f.count == 16);

  // One full depth-6 subtree under "1", a single chain under "0".
  std::vector<BadicCube> leaves{BadicCube::parse(2, 1, "0000000")};
  for (const auto& l : full_tree(2, 1, 6).leaves()) {
    auto path = l.path();
    path.insert(path.begin(), 1);
    leaves.emplace_back(2, 1, path);
  }
  const auto mixed = tree_from_leaves(2, 1, 7, leaves);
  const auto m = find_dense_window(mixed, mixed.root_cube(), 1, 3);
  CHECK(m.cube.path().front() == 1);
  CHECK(m.count == 8);
}

TEST_CASE("target dimension extraction on the full binary tree") {
  const auto E = rebase_to(full_tree(2, 1, 30), 16);
  REQUIRE(E.depth() == 7);
  for (const char* a : {"0.25", "0.5", "0.75"}) {
    const auto r = construct_subset_assouad(E, params(a, "0.25"));
    CHECK(r.trace.stages.size() == 3);
    CHECK(r.trace.delta < 0.1);
    CHECK(r.trace.in_range());
    CHECK(r.trace.ok());
    CHECK(std::abs(r.trace.headline - Rational::parse(a).to_double()) < 1e-9);
    CHECK(is_subtree(r.tree, E));
  }
}

TEST_CASE("extraction examples") {
  SUBCASE("full d=2 tree") {
    const auto E = rebase_to(full_tree(2, 2, 24), 16);
    const auto r = construct_subset_assouad(E, params("1", "0.25"));
    CHECK(r.trace.headline >= 0.75);
    CHECK(r.trace.headline <= 1.25);
    CHECK(r.trace.stages.back().truncated);
  }
  SUBCASE("cantor") {
    const auto E = rebase_to(tree_from_digit_rule(3, 1, 18, {{0}, {2}}), 27);
    const auto r = construct_subset_assouad(E, params("0.4", "0.1"));
    CHECK(r.trace.N == 3);
    CHECK(r.trace.headline >= 0.3);
    CHECK(r.trace.headline <= 0.5);
  }
  SUBCASE("identity when the cap does not bind") {
    const auto E = tree_from_digit_rule(4, 1, 6, {{0}, {1}});
    const auto r = construct_subset_assouad(E, params("0.5", "0"));
    CHECK(format_ratio(r.trace.headline) == "0.500000");
  }
  SUBCASE("strict mode names the violated inequality") {
    const auto E = rebase_to(full_tree(2, 1, 30), 16);
    auto p = params("0.25", "0.25");
    p.strict = true;
    try {
      (void)construct_subset_assouad(E, p);
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()) == "N+3^d > M^{alpha+eps}");
    }
  }
  SUBCASE("alpha above the input estimate") {
    const auto E = tree_from_digit_rule(4, 1, 6, {{0}, {1}});
    CHECK_THROWS_AS(construct_subset_assouad(E, params("0.9", "0.05")), DomainError);
  }
  SUBCASE("depth budget") {
    const auto E = full_tree(4, 1, 2);
    CHECK_THROWS_AS(construct_subset_assouad(E, params("0.5", "0.1", 3)), DomainError);
  }
}

TEST_CASE("sandwich ladder") {
  const auto E = rebase_to(full_tree(2, 1, 30), 32);
  AssouadParams base;
  base.stages = 3;
  const auto r = sandwich_assemble(E, 0.5, 2, base);
  CHECK(r.nested);
  REQUIRE(r.stages.size() == 4);
  for (const auto& s : r.stages) CHECK_MESSAGE(s.in_interval(), s.which, s.n, " ", s.headline);
  CHECK_THROWS_AS(sandwich_assemble(rebase_to(full_tree(2, 1, 28), 16), 0.5, 2, base), DomainError);

  const auto one = sandwich_assemble(E, 0.5, 1, base);
  CHECK(one.A.size() == 1);
  CHECK(one.B.size() == 1);
  CHECK(one.nested);
}

TEST_CASE("global construction") {
  GeneratorSpec g;
  g.family = Family::IntegerCantor;
  g.base = 4;
  g.int_digits = {0, 1, 2, 3};
  g.window_exp = 2;
  g.windows = 3;
  g.frac = 1;
  const auto E = std::get<WindowedSet>(generate(g));
  const auto r = construct_subset_assouad_global(E, params("0.5", "0.25"));
  CHECK(r.trace.headline >= 0.25);
  CHECK(r.trace.headline <= 0.75);
  CHECK(r.trace.in_range());
  REQUIRE(r.gaps.size() == 2);
  for (const auto& gap : r.gaps) CHECK(gap.ok);
  const auto again = verify_gap_condition(r.set, Rational::parse("0.75"));
  for (const auto& gap : again) CHECK(gap.ok);
  // Adjacent windows fail the recomputed condition.
  const auto block = full_tree(4, 1, 2);
  const WindowedSet close(4, 1, {Window{{0}, 2, block}, Window{{32}, 2, block}});
  const auto gaps = verify_gap_condition(close, Rational::parse("0.75"));
  CHECK(gaps.front().gap == 16);
  CHECK(gaps.front().lhs == "8");
  CHECK(gaps.front().rhs == "8");
  CHECK(gaps.front().ok);
  const WindowedSet touching(4, 1, {Window{{0}, 2, block}, Window{{16}, 2, block}});
  CHECK_FALSE(verify_gap_condition(touching, Rational::parse("0.75")).front().ok);
}
