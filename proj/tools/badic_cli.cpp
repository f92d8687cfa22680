#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "badic/badic.h"

namespace {

struct SetDeleter {
  void operator()(badic_set* s) const { badic_set_free(s); }
};
using SetPtr = std::unique_ptr<badic_set, SetDeleter>;

struct Text {
  char* p = nullptr;
  ~Text() { badic_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int exit_code(badic_status s) {
  switch (s) {
    case BADIC_OK: return 0;
    case BADIC_E_DOMAIN: return 1;
    default: return 2;
  }
}

int fail(badic_status s) {
  std::cerr << "error: " << badic_last_error() << '\n';
  return exit_code(s);
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

int load(const std::string& path, SetPtr& set) {
  badic_set* raw = nullptr;
  const auto st = badic_set_load(path.c_str(), &raw);
  set.reset(raw);
  return st == BADIC_OK ? 0 : fail(st);
}

// The set goes to --out or stdout; side reports go to their file, or to
// stdout after the summary when the set itself went to a file.
int emit(badic_status st, badic_set* raw, const Text& side, const Text& summary, const std::string& out,
         const std::string& side_path) {
  SetPtr set(raw);
  if (st != BADIC_OK && st != BADIC_E_DOMAIN) return fail(st);
  if (!set) return fail(st);
  if (!out.empty()) {
    const auto s = badic_set_save(set.get(), out.c_str());
    if (s != BADIC_OK) return fail(s);
    std::cout << summary.str();
  } else {
    Text text;
    const auto s = badic_set_format(set.get(), &text.p);
    if (s != BADIC_OK) return fail(s);
    std::cout << text.str();
    std::cerr << summary.str();
  }
  if (!side_path.empty()) {
    if (!write_file(side_path, side.str())) return 2;
  } else if (!out.empty()) {
    std::cout << side.str();
  }
  return st == BADIC_OK ? 0 : fail(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"b-adic cube sets: dimension estimates and subset extraction"};
  app.require_subcommand(1);
  app.fallthrough();
  int workers = 1;
  std::uint64_t seed = 0;
  app.add_option("--workers", workers, "estimator worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for every random choice");

  auto* gen = app.add_subcommand("gen", "generate a set");
  badic_gen_params gp;
  badic_gen_params_init(&gp);
  std::string family, digits, int_digits, gen_out;
  std::uint64_t count = 0;
  std::uint32_t max_children = 0;
  gen->add_option("family", family, "generator family")
      ->required()
      ->check(CLI::IsMember({"digit-cantor", "full-cube", "lattice-window", "integer-cantor", "one-over-k",
                             "prop5-union", "random-branching"}));
  gen->add_option("--base", gp.base);
  gen->add_option("--dim", gp.dim);
  gen->add_option("--depth", gp.depth);
  gen->add_option("--digits", digits, "comma-separated digit set");
  gen->add_option("--int-digits", int_digits, "comma-separated digits of the integer windows");
  gen->add_option("--window-exp,--m", gp.window_exp, "side exponent of the first window");
  gen->add_option("--windows", gp.windows);
  gen->add_option("--frac", gp.frac, "sub-unit levels of windowed families");
  gen->add_option("--count", count, "K for one-over-k");
  gen->add_option("--max-children", max_children);
  gen->add_option("--out", gen_out);

  auto* est = app.add_subcommand("estimate", "finite-scale dimension report");
  std::string kind = "star-local", est_in, est_report, radius;
  int k_max = 0;
  est->add_option("--kind", kind)->check(
      CLI::IsMember({"star-local", "star-global", "assouad-ball", "lower-cover", "lower-pack"}));
  est->add_option("--in", est_in)->required();
  est->add_option("--k-max", k_max, "deepest scale (default: the set's resolution)");
  est->add_option("--R", radius, "ball radius for assouad-ball and lower-pack");
  est->add_option("--report", est_report, "write the per-scale TSV here");

  auto* ext = app.add_subcommand("extract", "extract a subset");
  ext->require_subcommand(1);
  ext->fallthrough();
  auto* ea = ext->add_subcommand("assouad", "subset with a prescribed star estimate");
  badic_assouad_params ap;
  badic_assouad_params_init(&ap);
  std::string a_alpha, a_eps, a_strategy = "greedy", a_in, a_out, a_trace;
  bool strict = false;
  ea->add_option("--alpha", a_alpha)->required();
  ea->add_option("--eps", a_eps)->required();
  ea->add_option("--M", ap.M)->required();
  ea->add_option("--stages", ap.stages);
  ea->add_option("--strategy", a_strategy, "greedy or random:<seed>");
  ea->add_flag("--strict", strict, "refuse when the large-M conditions fail");
  ea->add_option("--ladder", ap.ladder, "build the nested sandwich ladder with this many levels");
  ea->add_option("--in", a_in)->required();
  ea->add_option("--out", a_out);
  ea->add_option("--trace", a_trace);

  auto* el = ext->add_subcommand("lower", "subset with a prescribed lower dimension");
  badic_lower_params lp;
  badic_lower_params_init(&lp);
  std::string l_alpha, l_R0, l_in, l_out, l_report;
  el->add_option("--alpha", l_alpha, "p/q")->required();
  el->add_option("--M", lp.M)->required();
  el->add_option("--depth", lp.depth)->required();
  el->add_option("--R0", l_R0);
  el->add_option("--anchor", lp.anchor, "index of the starting point (default: search)");
  el->add_option("--in", l_in)->required();
  el->add_option("--out", l_out);
  el->add_option("--report", l_report);

  auto* ver = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  int samples = 0;
  ver->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"h-star", "packing-sandwich", "prune-bound", "lemma21"}));
  ver->add_option("--samples", samples, "suite size (default: the suite's own)");

  auto* info = app.add_subcommand("info", "header, leaf count and per-level counts");
  std::string info_in;
  info->add_option("--in", info_in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*gen) {
    gp.family = family.c_str();
    gp.digits = digits.c_str();
    gp.int_digits = int_digits.c_str();
    gp.count = count;
    gp.max_children = max_children;
    gp.seed = seed;
    badic_set* raw = nullptr;
    const auto st = badic_generate(&gp, &raw);
    SetPtr set(raw);
    if (st != BADIC_OK) return fail(st);
    if (!gen_out.empty()) {
      const auto s = badic_set_save(set.get(), gen_out.c_str());
      return s == BADIC_OK ? 0 : fail(s);
    }
    Text text;
    const auto s = badic_set_format(set.get(), &text.p);
    if (s != BADIC_OK) return fail(s);
    std::cout << text.str();
    return 0;
  }

  if (*est) {
    SetPtr set;
    if (int rc = load(est_in, set)) return rc;
    badic_estimate_params p;
    badic_estimate_params_init(&p);
    p.kind = kind.c_str();
    p.k_max = k_max;
    p.workers = workers;
    p.radius = radius.empty() ? nullptr : radius.c_str();
    Text headline, tsv;
    const auto st = badic_estimate(set.get(), &p, &headline.p, &tsv.p);
    if (st != BADIC_OK) return fail(st);
    std::cout << headline.str() << '\n';
    if (!est_report.empty()) return write_file(est_report, tsv.str()) ? 0 : 2;
    std::cout << tsv.str();
    return 0;
  }

  if (*ea) {
    SetPtr set;
    if (int rc = load(a_in, set)) return rc;
    if (a_strategy == "random") a_strategy += ":" + std::to_string(seed);
    ap.alpha = a_alpha.c_str();
    ap.eps = a_eps.c_str();
    ap.strategy = a_strategy.c_str();
    ap.strict = strict ? 1 : 0;
    ap.workers = workers;
    badic_set* raw = nullptr;
    Text trace, summary;
    const auto st = badic_extract_assouad(set.get(), &ap, &raw, &trace.p, &summary.p);
    return emit(st, raw, trace, summary, a_out, a_trace);
  }

  if (*el) {
    SetPtr set;
    if (int rc = load(l_in, set)) return rc;
    lp.alpha = l_alpha.c_str();
    lp.R0 = l_R0.empty() ? nullptr : l_R0.c_str();
    badic_set* raw = nullptr;
    Text report, summary;
    const auto st = badic_extract_lower(set.get(), &lp, &raw, &report.p, &summary.p);
    return emit(st, raw, report, summary, l_out, l_report);
  }

  if (*ver) {
    Text summary, violations;
    const auto st = badic_verify(suite.c_str(), seed, samples, &summary.p, &violations.p);
    if (st != BADIC_OK && st != BADIC_E_DOMAIN) return fail(st);
    std::cout << summary.str() << violations.str();
    return exit_code(st);
  }

  if (*info) {
    SetPtr set;
    if (int rc = load(info_in, set)) return rc;
    Text text;
    const auto st = badic_set_info(set.get(), &text.p);
    if (st != BADIC_OK) return fail(st);
    std::cout << text.str();
    return 0;
  }
  return 2;
}
