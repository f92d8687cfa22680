#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "badic/assouad.hpp"
#include "badic/error.hpp"
#include "badic/estimators.hpp"
#include "badic/generators.hpp"
#include "badic/lower.hpp"
#include "badic/random.hpp"
#include "badic/verify.hpp"

using namespace badic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Outcome crit_prune_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_suite(Suite::PruneBound, {});
  const double t = seconds_since(t0);
  std::string detail = r.summary() + " time=" + fixed(t) + "s";
  if (!r.ok()) detail += " first: " + r.violations.front();
  return {r.ok() && t < 30.0, detail};
}

Outcome random_prune_expectation() {
  const int M = 4, n = 3;
  const double eps = 0.25;
  const auto K = full_tree(M, 1, n);
  bool pass = true;
  std::ostringstream os;
  for (std::uint64_t N = 1; N <= 4; ++N) {
    double sum = 0, sum2 = 0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
      const auto leaves = static_cast<double>(prune_random(K, N, derive_seed(N, static_cast<std::uint64_t>(i))).leaf_count());
      sum += leaves;
      sum2 += leaves * leaves;
    }
    const double mean = sum / trials;
    const double var = std::max(0.0, sum2 / trials - mean * mean);
    const double se = std::sqrt(var * trials / (trials - 1) / trials);
    const double bound = std::pow(static_cast<double>(N), n) * std::pow(M, -n * eps);
    const bool ok = mean + 3 * se >= bound;
    pass = pass && ok;
    os << (N > 1 ? " " : "") << "N=" << N << ":mean=" << fixed(mean) << ",se=" << fixed(se) << ",bound=" << fixed(bound);
  }
  return {pass, os.str()};
}

Outcome packing_sandwich() {
  const auto r = run_suite(Suite::PackingSandwich, {});
  std::string detail = r.summary();
  if (!r.ok()) detail += " first: " + r.violations.front();
  return {r.ok(), detail};
}

Outcome exact_star_values() {
  bool pass = true;
  std::ostringstream os;
  for (int depth = 1; depth <= 10; ++depth) {
    const auto h = star_dimension_report(tree_from_digit_rule(3, 1, depth, {{0}, {2}}), depth).headline();
    if (std::abs(h - std::log(2.0) / std::log(3.0)) > 1e-6) {
      pass = false;
      os << "cantor depth " << depth << " gives " << format_ratio(h) << "; ";
    }
  }
  os << "cantor depths 1..10 ok=" << (pass ? 1 : 0);
  for (int d = 1; d <= 3; ++d) {
    const auto rep = star_dimension_report(full_tree(2, d, 6), 6);
    const auto& last = rep.records.back();
    const bool exact = last.count == ipow(2, static_cast<unsigned>(6 * d));
    pass = pass && exact;
    os << " full d=" << d << ":" << format_ratio(rep.headline());
  }
  for (int d = 1; d <= 2; ++d) {
    GeneratorSpec s;
    s.family = Family::LatticeWindow;
    s.base = 2;
    s.dim = d;
    s.window_exp = 6;
    s.frac = 2;
    const auto set = std::get<WindowedSet>(generate(s));
    const auto local = star_dimension_report(set, false, default_k_max(set, false));
    const auto global = star_dimension_report(set, true, default_k_max(set, true));
    const auto& g = global.records.back();
    const bool ok = local.envelope_max() == 0.0 &&
                    g.count == ipow(2, static_cast<unsigned>(d * g.k));
    pass = pass && ok;
    os << " lattice d=" << d << ":local=" << format_ratio(local.headline()) << ",global=" << format_ratio(global.headline());
  }
  return {pass, os.str()};
}

Outcome target_extraction() {
  const auto E = rebase_to(full_tree(2, 1, 30), 16);
  bool pass = true;
  std::ostringstream os;
  for (const char* a : {"0.25", "0.5", "0.75"}) {
    AssouadParams p;
    p.alpha = Rational::parse(a);
    p.eps = Rational::parse("0.25");
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = construct_subset_assouad(E, p);
    const double t = seconds_since(t0);
    const auto& tr = r.trace;
    const bool ok = tr.in_range() && tr.delta < 0.1 && t < 60.0;
    pass = pass && ok;
    os << (a[2] == '2' ? "" : " ") << "alpha=" << a << ":headline=" << format_ratio(tr.headline)
       << ",delta=" << fixed(tr.delta, 4) << ",time=" << fixed(t) << "s";
  }
  return {pass, os.str()};
}

Outcome ladder() {
  const auto E = rebase_to(full_tree(2, 1, 30), 32);
  AssouadParams base;
  const auto r = sandwich_assemble(E, 0.5, 2, base);
  bool pass = r.nested && r.stages.size() == 4;
  std::ostringstream os;
  os << "M=32 nested=" << (r.nested ? 1 : 0);
  for (const auto& s : r.stages) {
    pass = pass && s.in_interval();
    os << ' ' << s.which << s.n << '=' << format_ratio(s.headline) << (s.lo_open ? "(" : "[") << fixed(s.lo, 4) << ','
       << fixed(s.hi, 4) << (s.hi_open ? ")" : "]");
  }
  return {pass, os.str()};
}

Outcome global_construction() {
  GeneratorSpec g;
  g.family = Family::IntegerCantor;
  g.base = 4;
  g.int_digits = {0, 1, 2, 3};
  g.window_exp = 2;
  g.windows = 3;
  g.frac = 1;
  const auto E = std::get<WindowedSet>(generate(g));
  AssouadParams p;
  p.alpha = Rational::parse("0.5");
  p.eps = Rational::parse("0.25");
  const auto r = construct_subset_assouad_global(E, p);
  const auto gaps = verify_gap_condition(r.set, p.alpha + p.eps);
  bool pass = r.trace.in_range() && !gaps.empty();
  std::ostringstream os;
  os << "headline=" << format_ratio(r.trace.headline) << " delta=" << fixed(r.trace.delta, 4);
  for (const auto& gap : gaps) {
    pass = pass && gap.ok;
    os << " k=" << gap.k << ":" << gap.lhs << "<=" << gap.rhs;
  }
  return {pass, os.str()};
}

Outcome lower_construction() {
  const auto E = full_tree(4, 1, 12);
  LowerParams p;
  p.alpha = Rational(1, 2);
  p.M = 4;
  p.depth = 3;
  const auto t = construct_subset_lower(lower_candidates(E, p), p);
  const auto check = check_ball_tree(t);
  const auto rep = verify_lower_bounds(t);
  const auto size = t.final_points().size();
  const bool pass = size == 64 && check.ok() && rep.violations() == 0 && rep.box_ratio_exact;
  std::ostringstream os;
  os << "|F|=" << size << " invariants=" << (check.ok() ? 1 : 0) << " pairs=" << rep.rows.size()
     << " violations=" << rep.violations() << " box_ratio=" << format_ratio(rep.box_ratio)
     << " exact=" << (rep.box_ratio_exact ? 1 : 0);
  if (!check.first_failure.empty()) os << " first: " << check.first_failure;
  return {pass, os.str()};
}

Outcome prop5() {
  GeneratorSpec s;
  s.family = Family::Prop5Union;
  s.base = 4;
  s.digits = {0, 2};
  s.int_digits = {0, 1, 2};
  s.window_exp = 2;
  s.windows = 3;
  s.frac = 5;
  const auto set = std::get<WindowedSet>(generate(s));
  const double local = star_dimension_report(set, false, default_k_max(set, false)).headline();
  const double global = star_dimension_report(set, true, default_k_max(set, true)).headline();
  const bool pass = std::abs(local - 0.5) <= 1e-6 && std::abs(global - std::log(3.0) / std::log(4.0)) <= 1e-6 &&
                    local < global;
  return {pass, "local=" + format_ratio(local) + " global=" + format_ratio(global)};
}

Outcome oracle_equivalence() {
  const auto h = run_suite(Suite::HStar, {});
  SuiteOptions o;
  o.seed = 10;
  const auto p = run_suite(Suite::PackingSandwich, o);
  std::string detail = h.summary() + "; " + p.summary();
  if (!h.ok()) detail += " first: " + h.violations.front();
  if (!p.ok()) detail += " first: " + p.violations.front();
  return {h.ok() && p.ok(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"prune bound", crit_prune_bound},
      {"randomized prune expectation", random_prune_expectation},
      {"packing/covering sandwich", packing_sandwich},
      {"exact star values", exact_star_values},
      {"target-dimension extraction", target_extraction},
      {"sandwich ladder", ladder},
      {"global construction", global_construction},
      {"lower construction", lower_construction},
      {"local/global separation", prop5},
      {"oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    failed += out.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, out.pass ? "PASS" : "FAIL", criteria[i].first, out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
