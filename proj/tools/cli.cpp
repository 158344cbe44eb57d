#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gottcalc/decompose.hpp"
#include "gottcalc/error.hpp"
#include "gottcalc/fox.hpp"
#include "gottcalc/oracle.hpp"
#include "gottcalc/profiles.hpp"
#include "gottcalc/ranks.hpp"
#include "gottcalc/relative.hpp"

namespace gottcalc::cli {
namespace {

using Json = nlohmann::ordered_json;

/// One parsed invocation: the subcommand plus the shared flag vocabulary.
struct Command {
  std::string name;
  std::string expr;
  std::string degree;
  std::string profiles;
  std::string format = "text";
  int m = 1;
  int iterations = 1;
  std::string map;
  std::string base;
  bool unchecked = false;
  bool top = false;
  int count = 100;
  std::uint64_t seed = 1;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Context {
  const Command& cmd;
  const Hooks& hooks;
  std::istream& in;
  std::ostream& out;
  bool json() const { return cmd.format == "json"; }
};

Json count_json(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

Json group_json(const AbelianGroup& g) {
  Json torsion = Json::array();
  for (const auto& pp : g.torsion_list()) torsion.push_back({pp.prime, pp.exponent});
  Json factors = Json::array();
  for (const auto& d : invariant_factors(g)) factors.push_back(count_json(d));
  return Json{{"text", to_string(g)}, {"rank", count_json(g.rank())}, {"torsion", torsion},
              {"invariant_factors", factors}};
}

std::string kind_name(TermKind k) {
  switch (k) {
    case TermKind::Gottlieb:
      return "gottlieb";
    case TermKind::Homotopy:
      return "homotopy";
    case TermKind::Relative:
      return "relative";
    case TermKind::GenGottlieb:
      return "generalized";
  }
  return "?";
}

Json sum_json(const FormalSum& s) {
  Json terms = Json::array();
  for (const auto& [t, m] : s.terms()) {
    Json j{{"kind", kind_name(t.kind)}, {"text", to_string(t)}, {"multiplicity", count_json(m)}};
    switch (t.kind) {
      case TermKind::Gottlieb:
      case TermKind::Homotopy:
        j["space"] = t.space;
        j["degree"] = t.degree;
        break;
      case TermKind::Relative:
        j["map"] = t.space;
        j["degree"] = t.degree;
        j["target"] = t.target;
        j["source"] = t.source;
        break;
      case TermKind::GenGottlieb:
        j["source"] = t.space;
        j["suspensions"] = t.degree;
        j["target"] = t.target;
        break;
    }
    terms.push_back(std::move(j));
  }
  return Json{{"text", to_string(s)}, {"terms", terms}};
}

Json evaluation_json(const Evaluation& e) {
  if (const auto* g = std::get_if<AbelianGroup>(&e)) return Json{{"complete", true}, {"group", group_json(*g)}};
  const auto& inc = std::get<Incomplete>(e);
  return Json{{"complete", false}, {"partial", group_json(inc.partial)}, {"unresolved", inc.unresolved}};
}

void print_evaluation_text(std::ostream& out, const Evaluation& e) {
  if (const auto* g = std::get_if<AbelianGroup>(&e)) {
    out << to_string(*g) << '\n';
    return;
  }
  const auto& inc = std::get<Incomplete>(e);
  out << "partial: " << to_string(inc.partial) << '\n';
  for (const auto& u : inc.unresolved) out << "unresolved: " << u << '\n';
}

Degree single_degree(const Command& cmd) {
  if (cmd.degree.empty()) throw UsageError("--degree is required");
  try {
    std::size_t used = 0;
    long long d = std::stoll(cmd.degree, &used);
    if (used != cmd.degree.size()) throw UsageError("--degree expects an integer, got '" + cmd.degree + "'");
    return d;
  } catch (const std::logic_error&) {
    throw UsageError("--degree expects an integer, got '" + cmd.degree + "'");
  }
}

std::pair<Degree, Degree> degree_range(const Command& cmd, std::pair<Degree, Degree> fallback) {
  if (cmd.degree.empty()) return fallback;
  auto dots = cmd.degree.find("..");
  if (dots == std::string::npos) {
    Degree d = single_degree(cmd);
    return {d, d};
  }
  try {
    std::size_t a = 0, b = 0;
    std::string lo = cmd.degree.substr(0, dots), hi = cmd.degree.substr(dots + 2);
    Degree l = std::stoll(lo, &a), h = std::stoll(hi, &b);
    if (a != lo.size() || b != hi.size()) throw std::invalid_argument("range");
    return {l, h};
  } catch (const std::logic_error&) {
    throw UsageError("--degree expects 'd' or 'lo..hi', got '" + cmd.degree + "'");
  }
}

std::optional<ProfileDatabase> load_optional(const Context& ctx) {
  if (ctx.cmd.profiles.empty()) return std::nullopt;
  if (ctx.cmd.profiles == "-") {
    std::ostringstream buf;
    buf << ctx.in.rdbuf();
    return load_profiles(buf.str());
  }
  return load_profiles_file(ctx.cmd.profiles);
}

ProfileDatabase load_required(const Context& ctx) {
  auto db = load_optional(ctx);
  if (!db) throw UsageError("--profiles is required for '" + ctx.cmd.name + "'");
  return std::move(*db);
}

SpaceExpr required_expr(const Command& cmd) {
  if (cmd.expr.empty()) throw UsageError("--expr is required");
  return parse(cmd.expr);
}

void emit(const Context& ctx, const Json& j) { ctx.out << j.dump(2) << '\n'; }

// --- subcommands ------------------------------------------------------------

int run_decompose(const Context& ctx) {
  const SpaceExpr e = required_expr(ctx.cmd);
  const Degree n = single_degree(ctx.cmd);
  auto db = load_optional(ctx);
  const FormalSum s = decompose(e, n, db ? db->declared_shifts() : DeclaredShifts{});
  if (ctx.json()) {
    emit(ctx, Json{{"command", "decompose"}, {"expression", to_string(e)}, {"degree", n}, {"sum", sum_json(s)}});
  } else {
    ctx.out << to_string(s) << '\n';
  }
  return kOk;
}

int run_eval(const Context& ctx) {
  const SpaceExpr e = required_expr(ctx.cmd);
  const Degree n = single_degree(ctx.cmd);
  const ProfileDatabase db = load_required(ctx);
  const FormalSum s = decompose(e, n, db.declared_shifts());
  const Evaluation v = evaluate(s, db);
  if (ctx.json()) {
    emit(ctx, Json{{"command", "eval"},
                   {"expression", to_string(e)},
                   {"degree", n},
                   {"sum", sum_json(s)},
                   {"value", evaluation_json(v)}});
  } else {
    print_evaluation_text(ctx.out, v);
  }
  return is_complete(v) ? kOk : kIncomplete;
}

std::pair<const SpaceProfile*, const SpaceProfile*> rank_operands(const SpaceExpr& e, const ProfileDatabase& db) {
  if (!e.is(SpaceKind::Map) || e.source().is(SpaceKind::Map) || e.target().is(SpaceKind::Map)) {
    throw UsageError("rank expects --expr \"map(X, Y)\" with X and Y profiled spaces");
  }
  return {&db.space(to_string(e.source())), &db.space(to_string(e.target()))};
}

int run_rank(const Context& ctx) {
  const SpaceExpr e = required_expr(ctx.cmd);
  const ProfileDatabase db = load_required(ctx);
  auto [x, y] = rank_operands(e, db);
  if (ctx.cmd.top) {
    const auto r = top_degree_report(*x, *y, ctx.cmd.unchecked);
    if (ctx.json()) {
      Json j{{"command", "rank"}, {"expression", to_string(e)}, {"mode", "top"}};
      j["hypotheses_verified"] = r.hypotheses_verified;
      j["missing_degrees"] = r.missing_degrees;
      if (r.top_degree) {
        j["top_degree"] = *r.top_degree;
        j["gamma_top"] = count_json(r.gamma_top);
        j["gamma_of_map_at_top"] = count_json(r.gamma_of_map_at_top);
      } else {
        j["top_degree"] = nullptr;
      }
      emit(ctx, j);
    } else if (!r.missing_degrees.empty()) {
      ctx.out << "missing gamma degrees:";
      for (auto d : r.missing_degrees) ctx.out << ' ' << d;
      ctx.out << '\n';
    } else if (!r.top_degree) {
      ctx.out << "all ranks zero\n";
    } else {
      ctx.out << "top degree " << *r.top_degree << ": gamma(" << y->name << ") = " << r.gamma_top
              << ", gamma(map) = " << r.gamma_of_map_at_top << '\n';
    }
    if (!ctx.json() && !r.hypotheses_verified) ctx.out << "warning: hypotheses unverified\n";
    return r.missing_degrees.empty() ? kOk : kIncomplete;
  }

  const Degree n = single_degree(ctx.cmd);
  const auto r = gamma_of_map_space(*x, *y, n, ctx.cmd.unchecked);
  if (ctx.json()) {
    Json j{{"command", "rank"}, {"expression", to_string(e)}, {"degree", n}};
    j["gamma"] = r.value ? count_json(*r.value) : Json(nullptr);
    j["partial"] = count_json(r.partial);
    j["missing_degrees"] = r.missing_degrees;
    j["hypotheses_verified"] = r.hypotheses_verified;
    emit(ctx, j);
  } else {
    if (r.value) {
      ctx.out << "gamma[" << n << "](" << to_string(e) << ") = " << *r.value << '\n';
    } else {
      ctx.out << "partial: " << r.partial << '\n' << "missing gamma degrees:";
      for (auto d : r.missing_degrees) ctx.out << ' ' << d;
      ctx.out << '\n';
    }
    if (!r.hypotheses_verified) ctx.out << "warning: hypotheses unverified\n";
  }
  return r.value ? kOk : kIncomplete;
}

int report_sum(const Context& ctx, const char* command, const std::string& label, Degree degree, const FormalSum& s) {
  auto db = load_optional(ctx);
  std::optional<Evaluation> v;
  if (db) v = evaluate(s, *db);
  if (ctx.json()) {
    Json j{{"command", command}, {"expression", label}, {"degree", degree}, {"sum", sum_json(s)}};
    if (v) j["value"] = evaluation_json(*v);
    emit(ctx, j);
  } else {
    ctx.out << to_string(s) << '\n';
    if (v) print_evaluation_text(ctx.out, *v);
  }
  return !v || is_complete(*v) ? kOk : kIncomplete;
}

int run_fox(const Context& ctx) {
  const SpaceExpr y = required_expr(ctx.cmd);
  const Degree n = single_degree(ctx.cmd);
  if (n < 1 || n > std::numeric_limits<int>::max()) throw DomainError("Fox-Gottlieb index must be at least 1");
  return report_sum(ctx, "fox", to_string(y), n, fox_gottlieb(static_cast<int>(n), y));
}

int run_loop_homotopy(const Context& ctx) {
  const SpaceExpr y = required_expr(ctx.cmd);
  const Degree i = single_degree(ctx.cmd);
  return report_sum(ctx, "loop-homotopy", to_string(y), i, iterated_loop_homotopy(i, ctx.cmd.iterations, y));
}

int run_relative(const Context& ctx) {
  if (ctx.cmd.map.empty()) throw UsageError("--map is required for 'relative'");
  const Degree n = single_degree(ctx.cmd);
  const ProfileDatabase db = load_required(ctx);
  const MapProfile& f = db.map(ctx.cmd.map);
  const RelativeResult r = relative_decompose(f, n, ctx.cmd.m, ctx.cmd.iterations);
  const bool direct = r.structure == RelativeStructure::DirectSum;
  std::optional<Evaluation> v;
  if (direct) v = evaluate(r.summands, db);
  if (ctx.json()) {
    Json j{{"command", "relative"}, {"map", f.name}, {"degree", n}, {"m", ctx.cmd.m},
           {"iterations", ctx.cmd.iterations}, {"structure", direct ? "direct_sum" : "split_extension"},
           {"sum", sum_json(r.summands)}};
    if (v) j["value"] = evaluation_json(*v);
    emit(ctx, j);
  } else {
    ctx.out << to_string(r.summands) << '\n';
    if (direct) {
      ctx.out << "structure: direct sum\n";
      print_evaluation_text(ctx.out, *v);
    } else {
      ctx.out << "structure: split extension of the first summand by the rest; extension not determined\n";
    }
  }
  return !v || is_complete(*v) ? kOk : kIncomplete;
}

int run_flags(const Context& ctx) {
  const SpaceExpr e = required_expr(ctx.cmd);
  const ProfileDatabase db = load_required(ctx);
  if (!e.is(SpaceKind::Map)) throw UsageError("flags expects --expr \"map(X, Y)\"");
  const SpaceProfile& y = db.space(to_string(e.target()));
  const FlagReport r = propagate_flags(e.source(), y, db.declared_shifts());
  if (ctx.json()) {
    emit(ctx, Json{{"command", "flags"},
                   {"expression", to_string(e)},
                   {"g_space", to_string(r.g_space)},
                   {"t_space", to_string(r.t_space)},
                   {"source_splits", r.source_splits}});
  } else {
    ctx.out << "g_space: " << to_string(r.g_space) << '\n'
            << "t_space: " << to_string(r.t_space) << '\n'
            << "source splits: " << (r.source_splits ? "yes" : "no") << '\n';
  }
  return kOk;
}

int run_loop_check(const Context& ctx) {
  if (ctx.cmd.expr.empty() || ctx.cmd.base.empty()) throw UsageError("loop-check needs --expr E and --base Y");
  const ProfileDatabase db = load_required(ctx);
  auto [lo, hi] = degree_range(ctx.cmd, {1, 1});
  if (ctx.cmd.degree.empty()) throw UsageError("--degree is required (d or lo..hi)");
  const auto& e = db.space(ctx.cmd.expr);
  const auto& y = db.space(ctx.cmd.base);
  const Verdict v = free_loop_necessary_condition(e.gottlieb, y.gottlieb, lo, hi);
  const char* kind = v.kind == VerdictKind::Pass ? "pass" : v.kind == VerdictKind::Fail ? "fail" : "incomplete";
  if (ctx.json()) {
    Json j{{"command", "loop-check"}, {"candidate", e.name}, {"base", y.name}, {"lo", lo}, {"hi", hi},
           {"verdict", kind}};
    j["failing_degree"] = v.failing_degree ? Json(*v.failing_degree) : Json(nullptr);
    j["unknown_degrees"] = v.unknown_degrees;
    emit(ctx, j);
  } else if (v.kind == VerdictKind::Pass) {
    ctx.out << "PASS: G_d(" << e.name << ") = G_d(" << y.name << ") + G_{d+1}(" << y.name << ") for d in " << lo
            << ".." << hi << '\n';
  } else if (v.kind == VerdictKind::Fail) {
    ctx.out << "FAIL at degree " << *v.failing_degree << '\n';
  } else {
    ctx.out << "INCOMPLETE: unknown degrees";
    for (auto d : v.unknown_degrees) ctx.out << ' ' << d;
    ctx.out << '\n';
  }
  return v.kind == VerdictKind::Incomplete ? kIncomplete : kOk;
}

int run_check(const Context& ctx) {
  auto [lo, hi] = degree_range(ctx.cmd, {1, 4});
  auto db = load_optional(ctx);
  CrosscheckOptions options;
  if (db) options.declared = db->declared_shifts();
  options.seed = ctx.cmd.seed;
  options.engine = ctx.hooks.check_engine;
  const auto strategies = all_strategies();

  std::vector<SpaceExpr> corpus;
  if (!ctx.cmd.expr.empty()) {
    corpus.push_back(parse(ctx.cmd.expr));
  } else {
    if (ctx.cmd.count < 1) throw UsageError("--count must be at least 1");
    std::mt19937_64 rng(ctx.cmd.seed);
    for (int i = 0; i < ctx.cmd.count; ++i) corpus.push_back(random_query(rng, 3));
  }

  int failures = 0;
  Json reports = Json::array();
  for (const auto& e : corpus) {
    const CheckReport r = crosscheck(e, lo, hi, strategies, options);
    if (!r.passed()) ++failures;
    if (ctx.json()) {
      Json entries = Json::array();
      for (const auto& c : r.entries) {
        entries.push_back(Json{{"strategy", to_string(c.candidate)},
                               {"applicable", c.applicable},
                               {"passed", c.passed},
                               {"counterexample", c.counterexample}});
      }
      reports.push_back(Json{{"expression", r.expression}, {"passed", r.passed()}, {"entries", entries}});
    } else if (!ctx.cmd.expr.empty() || !r.passed()) {
      ctx.out << r.to_text();
    }
  }
  if (ctx.json()) {
    emit(ctx, Json{{"command", "check"}, {"lo", lo}, {"hi", hi}, {"expressions", corpus.size()},
                   {"failures", failures}, {"reports", reports}});
  } else {
    ctx.out << "checked " << corpus.size() << " expression(s) on degrees " << lo << ".." << hi << ": " << failures
            << " failure(s)\n";
  }
  return failures == 0 ? kOk : kCheckFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
             const Hooks& hooks) {
  CLI::App app{"Gottlieb groups of function spaces, by decomposition over user-supplied group tables", "gottcalc"};
  app.require_subcommand(1, 1);
  Command cmd;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cmd.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_expr = [&](CLI::App* sub, const char* help) { sub->add_option("--expr", cmd.expr, help); };
  auto add_degree = [&](CLI::App* sub, const char* help) { sub->add_option("--degree", cmd.degree, help); };
  auto add_profiles = [&](CLI::App* sub) {
    sub->add_option("--profiles", cmd.profiles, "Profile document (JSON); '-' reads standard input");
  };

  auto* decompose_cmd = app.add_subcommand("decompose", "Formal decomposition of G_n of a space expression");
  add_expr(decompose_cmd, "Space expression, e.g. \"map(T2, Y)\"");
  add_degree(decompose_cmd, "Degree n >= 1");
  add_profiles(decompose_cmd);
  add_format(decompose_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Decompose and evaluate against profile tables");
  add_expr(eval_cmd, "Space expression");
  add_degree(eval_cmd, "Degree n >= 1");
  add_profiles(eval_cmd);
  add_format(eval_cmd);

  auto* rank_cmd = app.add_subcommand("rank", "Gottlieb numbers of map(X, Y; 0) from Betti numbers and ranks");
  add_expr(rank_cmd, "\"map(X, Y)\" with X and Y profiled");
  add_degree(rank_cmd, "Degree n >= 1");
  add_profiles(rank_cmd);
  rank_cmd->add_flag("--top", cmd.top, "Report the highest degree of positive rank instead");
  rank_cmd->add_flag("--unchecked-hypotheses", cmd.unchecked, "Skip the finiteness/simple-connectivity check");
  add_format(rank_cmd);

  auto* fox_cmd = app.add_subcommand("fox", "Fox-Gottlieb group G tau_n");
  add_expr(fox_cmd, "Target space Y");
  add_degree(fox_cmd, "Index n >= 1");
  add_profiles(fox_cmd);
  add_format(fox_cmd);

  auto* loop_cmd = app.add_subcommand("loop-homotopy", "Homotopy groups pi_i of the iterated free loop space");
  add_expr(loop_cmd, "Target space Y");
  add_degree(loop_cmd, "Degree i >= 2");
  loop_cmd->add_option("--iterations", cmd.iterations, "Number N of free loop iterations");
  add_profiles(loop_cmd);
  add_format(loop_cmd);

  auto* rel_cmd = app.add_subcommand("relative", "Relative free loop decomposition over a profiled map");
  rel_cmd->add_option("--map", cmd.map, "Map profile name");
  add_degree(rel_cmd, "Degree n >= 1");
  rel_cmd->add_option("--m", cmd.m, "Bouquet width m");
  rel_cmd->add_option("--iterations", cmd.iterations, "Iterations N (1 or 2)");
  add_profiles(rel_cmd);
  add_format(rel_cmd);

  auto* flags_cmd = app.add_subcommand("flags", "G-space / T-space status of map(X, Y; 0)");
  add_expr(flags_cmd, "\"map(X, Y)\"");
  add_profiles(flags_cmd);
  add_format(flags_cmd);

  auto* lc_cmd = app.add_subcommand("loop-check", "Necessary condition for E to be the free loop space of Y");
  add_expr(lc_cmd, "Candidate space E (profile name)");
  lc_cmd->add_option("--base", cmd.base, "Base space Y (profile name)");
  add_degree(lc_cmd, "Degree d or range lo..hi");
  add_profiles(lc_cmd);
  add_format(lc_cmd);

  auto* check_cmd = app.add_subcommand("check", "Cross-check the rewrite engine against independent oracles");
  add_expr(check_cmd, "Expression to check (default: a random corpus)");
  add_degree(check_cmd, "Degree d or range lo..hi (default 1..4)");
  check_cmd->add_option("--count", cmd.count, "Size of the random corpus");
  check_cmd->add_option("--seed", cmd.seed, "Random seed");
  add_profiles(check_cmd);
  add_format(check_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gottcalc: " << e.what() << '\n';
    return kUsage;
  }

  cmd.name = app.get_subcommands().front()->get_name();
  const Context ctx{cmd, hooks, in, out};
  try {
    if (cmd.name == "decompose") return run_decompose(ctx);
    if (cmd.name == "eval") return run_eval(ctx);
    if (cmd.name == "rank") return run_rank(ctx);
    if (cmd.name == "fox") return run_fox(ctx);
    if (cmd.name == "loop-homotopy") return run_loop_homotopy(ctx);
    if (cmd.name == "relative") return run_relative(ctx);
    if (cmd.name == "flags") return run_flags(ctx);
    if (cmd.name == "loop-check") return run_loop_check(ctx);
    if (cmd.name == "check") return run_check(ctx);
  } catch (const ProfileError& e) {
    err << "gottcalc: profile error: " << e.what() << '\n';
    return kProfile;
  } catch (const HypothesisError& e) {
    err << "gottcalc: " << e.what() << '\n';
    return kProfile;
  } catch (const ParseError& e) {
    err << "gottcalc: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "gottcalc: error: " << e.what() << '\n';
    return kUsage;
  }
  err << "gottcalc: unknown subcommand\n";
  return kUsage;
}

}  // namespace gottcalc::cli
