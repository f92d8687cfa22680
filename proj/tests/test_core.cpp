#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "badic/error.hpp"
#include "badic/generators.hpp"
#include "badic/io.hpp"
#include "badic/points.hpp"
#include "badic/tree.hpp"

using namespace badic;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    (void)parse_set(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return SIZE_MAX;
}

}  // namespace

TEST_CASE("subdivision order") {
  const BadicCube root(2, 2);
  std::vector<std::string> kids;
  for (std::uint32_t c = 0; c < root.arity(); ++c) kids.push_back(root.child(c).to_string());
  CHECK(kids == std::vector<std::string>{"0,0", "0,1", "1,0", "1,1"});

  const auto zero = BadicCube::parse(3, 1, "0");
  CHECK(zero.child(2).to_string() == "02");
  CHECK(zero.child(2).parent() == zero);
  CHECK(zero.is_ancestor_of(zero.child(1)));
  CHECK_FALSE(zero.child(1).is_ancestor_of(zero));
  CHECK(BadicCube::parse(3, 2, "02,21").corner(1) == 7);
  CHECK_THROWS_AS(BadicCube::parse(3, 1, "03"), DomainError);
}

TEST_CASE("digit rule trees") {
  const auto cantor = tree_from_digit_rule(3, 1, 4, {{0}, {2}});
  CHECK(cantor.leaf_count() == 16);
  for (int k = 0; k <= 4; ++k) CHECK(cantor.level_count(k) == ipow(2, static_cast<unsigned>(k)));
  CHECK(tree_from_digit_rule(2, 1, 5, {{0}, {1}}).leaf_count() == 32);
  CHECK(tree_from_digit_rule(3, 2, 2, {{0, 0}, {2, 2}}).leaf_count() == 4);
  CHECK_THROWS_AS(tree_from_digit_rule(3, 1, 2, {}), DomainError);
  CHECK(is_subtree(cantor, full_tree(3, 1, 4)));
  CHECK_FALSE(is_subtree(full_tree(3, 1, 4), cantor));
}

TEST_CASE("leaf representatives are corners") {
  const auto full = leaf_representatives(full_tree(2, 1, 1));
  REQUIRE(full.size() == 2);
  CHECK(full.format(full[1]) == "0.1");

  const auto cantor = leaf_representatives(tree_from_digit_rule(3, 1, 2, {{0}, {2}}));
  std::vector<std::string> got;
  for (const auto& p : cantor.points()) got.push_back(cantor.format(p));
  CHECK(got == std::vector<std::string>{"0.00", "0.02", "0.20", "0.22"});

  CHECK(leaf_representatives(tree_from_leaves(2, 1, 3, {BadicCube::parse(2, 1, "101")})).size() == 1);
}

TEST_CASE("bdt round trip") {
  GeneratorSpec s;
  s.family = Family::RandomBranching;
  s.base = 3;
  s.dim = 2;
  s.depth = 3;
  s.max_children = 4;
  s.seed = 11;
  const auto set = generate(s);
  const auto text = format_set(set);
  CHECK(format_set(parse_set(text)) == text);

  const auto path = std::filesystem::temp_directory_path() / "badic_core_roundtrip.bdt";
  save_set(path.string(), set);
  CHECK(format_set(load_set(path.string())) == text);
  std::filesystem::remove(path);
}

TEST_CASE("wdt round trip") {
  GeneratorSpec s;
  s.family = Family::Prop5Union;
  s.base = 4;
  s.digits = {0, 2};
  s.int_digits = {0, 1, 2};
  s.window_exp = 1;
  s.windows = 2;
  s.frac = 2;
  const auto text = format_set(generate(s));
  CHECK(text.rfind("wdt b=4 d=1 windows=3\n", 0) == 0);
  CHECK(format_set(parse_set(text)) == text);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("xyz\n") == 1);
  CHECK(parse_error_line("bdt b=3 d=1\n00\n") == 1);
  CHECK(parse_error_line("bdt b=3 d=1 n=2\n00\n03\n") == 3);
  CHECK(parse_error_line("bdt b=3 d=1 n=2\n00\n0\n") == 3);
  CHECK(parse_error_line("bdt b=3 d=1 n=2\n02\n00\n") == 3);
  CHECK(parse_error_line("bdt b=3 d=1 n=2\n00\n00\n") == 3);
  CHECK(parse_error_line("bdt b=3 d=2 n=1\n0\n") == 2);
  CHECK(parse_error_line("wdt b=2 d=1 windows=1\n00\n") == 2);
  CHECK(parse_error_line("wdt b=2 d=1 windows=2\nwindow off=0 m=1\n0\n") != SIZE_MAX);
}

TEST_CASE("missing file is an io error") {
  CHECK_THROWS_AS(load_set("/nonexistent/dir/x.bdt"), IoError);
}
