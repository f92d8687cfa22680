#include "badic/badic.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "badic/assouad.hpp"
#include "badic/error.hpp"
#include "badic/estimators.hpp"
#include "badic/generators.hpp"
#include "badic/io.hpp"
#include "badic/lower.hpp"
#include "badic/verify.hpp"

struct badic_set {
  badic::SetData data;
};

namespace {

using namespace badic;

thread_local std::string g_last_error;

class ArgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
badic_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const ArgError& e) {
    g_last_error = e.what();
    return BADIC_E_ARG;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return BADIC_E_DOMAIN;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return BADIC_E_PARSE;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return BADIC_E_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BADIC_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return BADIC_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** slot, const std::string& s) {
  if (slot) *slot = dup(s);
}

void require(const void* p, const char* what) {
  if (!p) throw ArgError(std::string(what) + " must not be null");
}

Rational rational_arg(const char* text, const char* name) {
  if (!text) throw ArgError(std::string("--") + name + " is required");
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw ArgError(std::string("--") + name + ": cannot read '" + text + "' as a number");
  }
}

std::vector<unsigned> digit_list(const char* text) {
  std::vector<unsigned> out;
  if (!text || !*text) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw ArgError("digit list '" + std::string(text) + "' must be comma-separated integers");
    out.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  return out;
}

const CubeTree& as_tree(const badic_set* s, const char* what) {
  if (const auto* t = std::get_if<CubeTree>(&s->data)) return *t;
  throw DomainError(std::string(what) + " needs a .bdt cube tree, not a windowed set");
}

std::string tree_info(const CubeTree& t) {
  std::ostringstream os;
  os << "bdt b=" << t.base() << " d=" << t.dim() << " n=" << t.depth() << '\n';
  os << "leaves=" << t.leaf_count() << '\n';
  os << "level\tcount\n";
  for (int k = 0; k <= t.depth(); ++k) os << k << '\t' << t.level_count(k) << '\n';
  return os.str();
}

std::string windowed_info(const WindowedSet& w) {
  std::ostringstream os;
  std::uint64_t leaves = 0;
  for (const auto& win : w.windows()) leaves += win.tree.leaf_count();
  os << "wdt b=" << w.base() << " d=" << w.dim() << " windows=" << w.windows().size() << '\n';
  os << "leaves=" << leaves << " leaf_exp=" << w.leaf_exp() << " max_side_exp=" << w.max_side_exp() << '\n';
  os << "window\toffset\tm\tdepth\tleaves\n";
  for (std::size_t i = 0; i < w.windows().size(); ++i) {
    const auto& win = w.windows()[i];
    os << i + 1 << '\t';
    for (std::size_t j = 0; j < win.offset.size(); ++j) os << (j ? "," : "") << win.offset[j];
    os << '\t' << win.side_exp << '\t' << win.tree.depth() << '\t' << win.tree.leaf_count() << '\n';
  }
  return os.str();
}

DimensionReport estimate_report(const SetData& data, ReportKind kind, int k_max, int workers, const Rational& R) {
  if (const auto* w = std::get_if<WindowedSet>(&data)) {
    if (kind != ReportKind::StarLocal && kind != ReportKind::StarGlobal)
      throw DomainError("kind " + to_string(kind) + " needs a .bdt cube tree");
    const bool global = kind == ReportKind::StarGlobal;
    return star_dimension_report(*w, global, k_max > 0 ? k_max : default_k_max(*w, global));
  }
  const auto& t = std::get<CubeTree>(data);
  const int k = k_max > 0 ? k_max : t.depth();
  switch (kind) {
    case ReportKind::StarLocal: return star_dimension_report(t, k, workers);
    case ReportKind::StarGlobal: {
      const auto w = WindowedSet::from_tree(t);
      return star_dimension_report(w, true, k_max > 0 ? k_max : default_k_max(w, true));
    }
    case ReportKind::LowerCover: return lower_dimension_report(t, k, workers);
    case ReportKind::AssouadBall: return assouad_ball_report(leaf_representatives(t), k, R);
    case ReportKind::LowerPack: return lower_pack_report(leaf_representatives(t), k, R);
  }
  throw DomainError("unknown report kind");
}

AssouadParams assouad_params(const badic_assouad_params* p) {
  AssouadParams a;
  a.alpha = rational_arg(p->alpha, "alpha");
  a.eps = rational_arg(p->eps, "eps");
  if (p->stages < 1) throw ArgError("--stages must be >= 1");
  a.stages = p->stages;
  a.strict = p->strict != 0;
  const std::string strategy = p->strategy ? p->strategy : "greedy";
  if (strategy == "greedy") {
    a.strategy = PruneStrategy::Greedy;
  } else if (strategy == "random" || strategy.rfind("random:", 0) == 0) {
    a.strategy = PruneStrategy::Random;
    if (strategy.size() > 7) {
      const std::string seed = strategy.substr(7);
      if (seed.find_first_not_of("0123456789") != std::string::npos)
        throw ArgError("--strategy random:<seed> needs a nonnegative integer seed");
      a.seed = std::stoull(seed);
    }
  } else {
    throw ArgError("--strategy must be greedy or random:<seed>");
  }
  return a;
}

std::string trace_summary(const ConstructionTrace& t) {
  std::ostringstream os;
  os << "headline=" << format_ratio(t.headline) << " alpha=" << format_ratio(t.alpha) << " eps=" << format_ratio(t.eps)
     << " delta=" << format_ratio(t.delta) << " k=" << t.k_eval << " M=" << t.M << " N=" << t.N
     << " in_range=" << (t.in_range() ? 1 : 0) << '\n';
  if (!t.floor_condition) os << "condition failed: floor(M^alpha) < M^{alpha-eps/2}\n";
  if (!t.corner_condition) os << "condition failed: N+3^d > M^{alpha+eps}\n";
  return os.str();
}

}  // namespace

extern "C" {

const char* badic_last_error(void) { return g_last_error.c_str(); }

void badic_string_free(char* s) { std::free(s); }

badic_status badic_set_load(const char* path, badic_set** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new badic_set{load_set(path)};
    return BADIC_OK;
  });
}

badic_status badic_set_parse(const char* text, badic_set** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new badic_set{parse_set(text)};
    return BADIC_OK;
  });
}

badic_status badic_set_save(const badic_set* set, const char* path) {
  return guarded([&] {
    require(set, "set");
    require(path, "path");
    save_set(path, set->data);
    return BADIC_OK;
  });
}

badic_status badic_set_format(const badic_set* set, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    *out = dup(format_set(set->data));
    return BADIC_OK;
  });
}

void badic_set_free(badic_set* set) { delete set; }

int badic_set_is_windowed(const badic_set* set) {
  return set && std::holds_alternative<WindowedSet>(set->data) ? 1 : 0;
}

badic_status badic_set_info(const badic_set* set, char** out) {
  return guarded([&] {
    require(set, "set");
    require(out, "out");
    if (const auto* t = std::get_if<CubeTree>(&set->data))
      *out = dup(tree_info(*t));
    else
      *out = dup(windowed_info(std::get<WindowedSet>(set->data)));
    return BADIC_OK;
  });
}

void badic_gen_params_init(badic_gen_params* p) {
  if (!p) return;
  *p = badic_gen_params{};
  p->base = 2;
  p->dim = 1;
  p->windows = 1;
}

badic_status badic_generate(const badic_gen_params* p, badic_set** out) {
  return guarded([&] {
    require(p, "params");
    require(out, "out");
    require(p->family, "family");
    GeneratorSpec s;
    s.family = parse_family(p->family);
    s.base = p->base;
    s.dim = p->dim;
    s.depth = p->depth;
    s.digits = digit_list(p->digits);
    s.int_digits = digit_list(p->int_digits);
    s.window_exp = p->window_exp;
    s.windows = p->windows;
    s.frac = p->frac;
    s.count = p->count;
    s.max_children = p->max_children;
    s.seed = p->seed;
    *out = new badic_set{generate(s)};
    return BADIC_OK;
  });
}

void badic_estimate_params_init(badic_estimate_params* p) {
  if (!p) return;
  *p = badic_estimate_params{};
  p->kind = "star-local";
  p->workers = 1;
}

badic_status badic_estimate(const badic_set* set, const badic_estimate_params* p, char** headline, char** tsv) {
  return guarded([&] {
    require(set, "set");
    require(p, "params");
    if (p->workers < 1) throw ArgError("--workers must be >= 1");
    const ReportKind kind = parse_report_kind(p->kind ? p->kind : "star-local");
    const Rational R = p->radius ? rational_arg(p->radius, "R") : Rational(1);
    const auto rep = estimate_report(set->data, kind, p->k_max, p->workers, R);
    put(headline, rep.headline_line());
    put(tsv, rep.to_tsv());
    return BADIC_OK;
  });
}

void badic_assouad_params_init(badic_assouad_params* p) {
  if (!p) return;
  *p = badic_assouad_params{};
  p->stages = 3;
  p->strategy = "greedy";
  p->workers = 1;
}

badic_status badic_extract_assouad(const badic_set* set, const badic_assouad_params* p, badic_set** out, char** trace,
                                   char** summary) {
  return guarded([&] {
    require(set, "set");
    require(p, "params");
    const AssouadParams a = assouad_params(p);
    if (p->M < 2) throw ArgError("--M must be >= 2");

    if (const auto* w = std::get_if<WindowedSet>(&set->data)) {
      if (p->ladder > 0) throw DomainError("the sandwich ladder needs a .bdt cube tree");
      auto r = construct_subset_assouad_global(rebase_to(*w, p->M), a);
      std::ostringstream sum;
      sum << trace_summary(r.trace);
      bool gaps_ok = true;
      for (const auto& g : r.gaps) {
        sum << "gap k=" << g.k << " gap=" << g.gap << " lhs=" << g.lhs << " rhs=" << g.rhs << " ok=" << (g.ok ? 1 : 0)
            << '\n';
        gaps_ok = gaps_ok && g.ok;
      }
      put(trace, r.trace.to_tsv());
      put(summary, sum.str());
      const bool ok = r.trace.ok() && gaps_ok;
      if (out) *out = new badic_set{std::move(r.set)};
      if (!ok) throw DomainError("extracted set fails its checks");
      return BADIC_OK;
    }

    const CubeTree E = rebase_to(as_tree(set, "extract assouad"), p->M);
    if (p->ladder > 0) {
      auto r = sandwich_assemble(E, a.alpha.to_double(), p->ladder, a);
      std::ostringstream sum;
      bool ok = r.nested;
      for (const auto& st : r.stages) {
        sum << st.which << st.n << " N=" << st.N << " headline=" << format_ratio(st.headline)
            << " interval=" << (st.lo_open ? '(' : '[') << format_ratio(st.lo) << ',' << format_ratio(st.hi)
            << (st.hi_open ? ')' : ']') << " ok=" << (st.in_interval() ? 1 : 0) << '\n';
        ok = ok && st.in_interval();
      }
      sum << "k=" << r.k_eval << " nested=" << (r.nested ? 1 : 0) << '\n';
      put(trace, r.to_tsv());
      put(summary, sum.str());
      if (out) *out = new badic_set{r.A.back()};
      if (!ok) throw DomainError("ladder fails its checks");
      return BADIC_OK;
    }

    auto r = construct_subset_assouad(E, a, std::max(1, p->workers));
    put(trace, r.trace.to_tsv());
    put(summary, trace_summary(r.trace));
    const bool ok = r.trace.ok();
    if (out) *out = new badic_set{std::move(r.tree)};
    if (!ok) throw DomainError("extracted set fails its checks");
    return BADIC_OK;
  });
}

void badic_lower_params_init(badic_lower_params* p) {
  if (!p) return;
  *p = badic_lower_params{};
  p->M = 2;
  p->depth = 1;
  p->anchor = -1;
}

badic_status badic_extract_lower(const badic_set* set, const badic_lower_params* p, badic_set** out, char** report,
                                 char** summary) {
  return guarded([&] {
    require(set, "set");
    require(p, "params");
    const CubeTree& E = as_tree(set, "extract lower");
    LowerParams lp;
    lp.alpha = rational_arg(p->alpha, "alpha");
    lp.M = p->M;
    lp.depth = p->depth;
    if (p->R0) lp.R0 = rational_arg(p->R0, "R0");
    if (p->anchor >= 0) lp.anchor = static_cast<std::size_t>(p->anchor);
    const auto t = construct_subset_lower(lower_candidates(E, lp), lp);
    const auto check = check_ball_tree(t);
    const auto rep = verify_lower_bounds(t);
    const PointSet F = t.final_points();

    std::ostringstream sum;
    sum << "points=" << F.size() << " M=" << t.M << " depth=" << t.depth() << " lambda=1/" << t.lambda_inv
        << " anchor=" << t.points.format(t.points[t.centers.front().front()]) << '\n';
    sum << "cardinality=" << (check.cardinality && rep.cardinality_ok ? 1 : 0) << " disjoint=" << (check.disjoint ? 1 : 0)
        << " nested=" << (check.nested ? 1 : 0) << " anchored=" << (check.anchored ? 1 : 0) << '\n';
    sum << "pairs=" << rep.rows.size() << " violations=" << rep.violations() << '\n';
    sum << "box_ratio=" << format_ratio(rep.box_ratio) << " exact=" << (rep.box_ratio_exact ? 1 : 0) << '\n';
    sum << "inadmissible=" << t.inadmissible.size() << '\n';
    if (!check.first_failure.empty()) sum << "first failure: " << check.first_failure << '\n';
    put(report, rep.to_tsv(F));
    put(summary, sum.str());
    if (out) *out = new badic_set{lower_subset_tree(t, E)};
    if (!check.ok() || !rep.cardinality_ok || rep.violations() > 0)
      throw DomainError("lower construction fails its checks");
    return BADIC_OK;
  });
}

badic_status badic_verify(const char* suite, uint64_t seed, int samples, char** summary, char** violations) {
  return guarded([&] {
    require(suite, "suite");
    SuiteOptions o;
    o.seed = seed;
    o.samples = samples;
    const auto r = run_suite(parse_suite(suite), o);
    std::string lines;
    for (const auto& v : r.violations) lines += v + '\n';
    put(summary, r.summary() + '\n');
    put(violations, lines);
    if (!r.ok()) throw DomainError(r.summary());
    return BADIC_OK;
  });
}

}  // extern "C"
