#include "lrbac/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lrbac/eval.hpp"
#include "lrbac/oracle.hpp"
#include "lrbac/typing.hpp"

namespace lrbac {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string system = "sufficient";
  std::string role;
  std::string def;
  std::string term;
  std::size_t fuel = default_fuel();
  bool amp = false;
  bool alt_mod = false;
  bool json = false;
  // prove
  std::string claim;
  // oracle
  std::uint64_t seed = 1;
  std::size_t terms = 100;
  int depth = 4;
};

// A usage problem discovered after argument parsing.
struct UsageError : Error {
  using Error::Error;
};

class Report {
 public:
  Report(std::ostream& out, bool json) : out_(out), json_(json) {
    doc_["status"] = "ok";
    doc_["type"] = nullptr;
    doc_["effect"] = nullptr;
    doc_["detail"] = nullptr;
    doc_["trace"] = Json::array();
  }

  Json& doc() { return doc_; }
  void line(const std::string& s) { text_ << s << '\n'; }

  void status(const std::string& s) { doc_["status"] = s; }

  void detail(const std::string& rule, const std::optional<Role>& needed, const std::optional<Role>& context,
              SourceLocation loc, const std::string& message) {
    Json d;
    d["rule_name"] = rule.empty() ? Json(nullptr) : Json(rule);
    d["needed_role"] = needed ? Json(canonical_string(*needed)) : Json(nullptr);
    d["context_role"] = context ? Json(canonical_string(*context)) : Json(nullptr);
    d["location"] = loc.known() ? Json(loc.to_string()) : Json(nullptr);
    d["message"] = message;
    doc_["detail"] = std::move(d);
  }

  int finish(int code) {
    if (json_) {
      out_ << doc_.dump(2) << '\n';
    } else {
      out_ << text_.str();
    }
    return code;
  }

 private:
  std::ostream& out_;
  bool json_;
  Json doc_;
  std::ostringstream text_;
};

std::string read_source(const std::string& file, std::istream& in) {
  if (file == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(file, std::ios::binary);
  if (!f) throw UsageError("cannot open " + file);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Program load_program(const Options& o, std::istream& in) {
  if (o.file.empty()) return {};
  return parse_program(read_source(o.file, in));
}

// The term under analysis: --term, else --def, else the main term.
Term subject(const Options& o, const Program& p) {
  if (!o.term.empty()) return p.expand(parse_term(o.term, p.role_aliases()));
  if (!o.def.empty()) {
    auto d = p.definition(o.def);
    if (!d) throw UsageError("no definition named " + o.def);
    return *d;
  }
  if (o.file.empty()) throw UsageError("a file or --term is required");
  if (!p.main) throw UsageError(o.file + " has no main term; use --def or --term");
  return p.expanded_main();
}

SystemId system_of(const Options& o) {
  auto s = parse_system(o.system);
  if (!s) throw UsageError("unknown system " + o.system + " (expected sufficient or necessary)");
  return *s;
}

Role context_role(const Options& o, const Program& p) {
  if (o.role.empty()) throw UsageError("--role is required");
  return parse_role(o.role, p.role_aliases());
}

int cmd_check(const Options& o, const Program& p, Report& r) {
  SystemId sys = system_of(o);
  Term t = subject(o, p);
  TypeOptions opts;
  opts.alt_mod = o.alt_mod;
  try {
    Type ty = o.amp ? synthesize_amp({}, Role::bottom(), t, sys, opts) : synthesize(sys, {}, t, opts);
    Type shown = canonical_type(ty);
    r.doc()["type"] = to_string(shown);
    r.line("type: " + to_string(shown));
    if (ty.is_comp()) {
      r.doc()["effect"] = canonical_string(ty.role());
      r.line("effect: " + canonical_string(ty.role()));
    }
    return kExitOk;
  } catch (const TypeError& e) {
    r.status("type_error");
    r.detail(e.rule(), e.needed(), e.had(), e.subterm().location(), e.what());
    std::string where = e.subterm().location().known() ? " at " + e.subterm().location().to_string() : "";
    r.line("type_error" + where + ": " + e.what());
    return kExitNegative;
  }
}

int report_outcome(const Outcome& out, const Role& role, Report& r) {
  r.status(out.kind == Outcome::Kind::Value ? "ok" : to_string(out.kind));
  switch (out.kind) {
    case Outcome::Kind::Value:
      r.doc()["value"] = print_term(out.term);
      r.line(print_term(out.term));
      return kExitOk;
    case Outcome::Kind::RoleError:
      r.detail("r-chk", out.needed, out.had, {}, "context role does not dominate the guard");
      r.line("role_error: needed " + canonical_string(out.needed) + ", had " + canonical_string(out.had));
      break;
    case Outcome::Kind::AmpError: {
      std::string site = out.site ? print_term(*out.site) : "";
      r.detail("", std::nullopt, role, out.site ? out.site->location() : SourceLocation{},
               "role modification error at " + site);
      r.line("amp_error: role modification error at " + site);
      break;
    }
    case Outcome::Kind::Stuck:
      r.detail("", std::nullopt, role, {}, out.reason);
      r.line("stuck: " + out.reason);
      break;
    case Outcome::Kind::FuelExhausted:
      r.detail("", std::nullopt, role, {}, "no value after " + std::to_string(out.steps) + " steps");
      r.line("fuel_exhausted: no value after " + std::to_string(out.steps) + " steps");
      break;
  }
  r.doc()["last_term"] = print_term(out.term);
  return kExitNegative;
}

int cmd_eval(const Options& o, const Program& p, Report& r, bool trace) {
  Role role = context_role(o, p);
  Term t = subject(o, p);
  EvalConfig cfg;
  cfg.context_role = role;
  cfg.fuel = o.fuel;
  cfg.amp_mode = o.amp;
  cfg.record_trace = trace;
  Outcome out = evaluate(cfg, t);
  if (trace) {
    std::string shown = "⟨" + canonical_string(role) + "⟩ ⊢ ";
    Json& steps = r.doc()["trace"];
    steps.push_back(print_term(t));
    for (const auto& s : out.trace) {
      steps.push_back(print_term(s.to));
      r.line(shown + print_term(s.from) + " → " + print_term(s.to));
    }
    r.doc()["rules"] = Json::array();
    for (const auto& s : out.trace) r.doc()["rules"].push_back(s.rule);
  }
  r.doc()["steps"] = out.steps;
  if (trace && out.kind == Outcome::Kind::Value) {
    r.status("ok");
    r.doc()["value"] = print_term(out.term);
    return kExitOk;
  }
  return report_outcome(out, role, r);
}

int cmd_prove(const Options& o, const Program& p, Report& r) {
  static const std::vector<std::string> ops = {">=", "<=", "=="};
  for (const auto& op : ops) {
    auto at = o.claim.find(op);
    if (at == std::string::npos) continue;
    auto aliases = p.role_aliases();
    Role lhs = parse_role(o.claim.substr(0, at), aliases);
    Role rhs = parse_role(o.claim.substr(at + op.size()), aliases);
    bool holds = op == "==" ? equiv(lhs, rhs) : op == ">=" ? dominates(lhs, rhs) : dominates(rhs, lhs);
    r.doc()["result"] = holds;
    r.doc()["lhs"] = canonical_string(lhs);
    r.doc()["rhs"] = canonical_string(rhs);
    r.line(holds ? "true" : "false");
    if (!holds) r.status("negative");
    return holds ? kExitOk : kExitNegative;
  }
  throw UsageError("expected \"R1 >= R2\", \"R1 <= R2\" or \"R1 == R2\"");
}

int cmd_sublang(const Options& o, const Program& p, Report& r) {
  Term t = subject(o, p);
  bool in = is_sublanguage(t);
  r.doc()["result"] = in;
  r.line(in ? "in sublanguage" : "not in sublanguage");
  if (!in) r.status("negative");
  return in ? kExitOk : kExitNegative;
}

int cmd_oracle(const Options& o, Report& r) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.terms = o.terms;
  cfg.depth = o.depth;
  cfg.fuel = o.fuel;
  bool ok = true;
  Json rows = Json::array();
  for (const auto& res : run_suite(cfg)) {
    ok = ok && res.failures == 0;
    Json row;
    row["check"] = res.check;
    row["terms"] = res.terms;
    row["failures"] = res.failures;
    row["flagged"] = res.flagged;
    row["fuel_exhausted"] = res.fuel_exhausted;
    row["failing_seed"] = res.failing_seed ? Json(*res.failing_seed) : Json(nullptr);
    row["detail"] = res.detail;
    rows.push_back(std::move(row));
    std::ostringstream s;
    s << (res.failures == 0 ? "PASS " : "FAIL ") << res.check << " terms=" << res.terms
      << " failures=" << res.failures << " flagged=" << res.flagged << " fuel_exhausted=" << res.fuel_exhausted;
    if (res.failing_seed) s << " seed=" << *res.failing_seed << " " << res.detail;
    r.line(s.str());
  }
  r.doc()["oracle"] = std::move(rows);
  if (!ok) r.status("negative");
  return ok ? kExitOk : kExitNegative;
}

void file_options(CLI::App* sub, Options& o) {
  sub->add_option("file", o.file, "Source file, or - for stdin");
  sub->add_option("--def", o.def, "Analyse the named definition instead of the main term");
  sub->add_option("--term", o.term, "Analyse this term, with the file's definitions in scope");
  sub->add_flag("--json", o.json, "Print the JSON envelope");
  sub->add_flag("--amp", o.amp, "Amplification-controlled typing and evaluation");
}

void run_options(CLI::App* sub, Options& o) {
  sub->add_option("--role", o.role, "Context role")->required();
  sub->add_option("--fuel", o.fuel, "Maximum reduction steps");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  Options o;
  CLI::App app{"Role-based access control for a lambda calculus: typing, evaluation and proofs"};
  app.name("lrbac");
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Synthesize the type and effect");
  file_options(check, o);
  check->add_option("--system", o.system, "sufficient (alpha) or necessary (beta)");
  check->add_flag("--alt-mod", o.alt_mod, "Use the single role-modifier rule t-mod-*");

  auto* eval = app.add_subcommand("eval", "Evaluate under a context role");
  file_options(eval, o);
  run_options(eval, o);

  auto* trace = app.add_subcommand("trace", "Print every reduction step");
  file_options(trace, o);
  run_options(trace, o);

  auto* prove = app.add_subcommand("prove", "Decide R1 >= R2, R1 <= R2 or R1 == R2");
  prove->add_option("claim", o.claim, "The claim")->required();
  prove->add_option("--roles", o.file, "Source file whose role aliases are in scope");
  prove->add_flag("--json", o.json, "Print the JSON envelope");

  auto* sublang = app.add_subcommand("sublang", "Check membership in the value/computation sublanguage");
  file_options(sublang, o);

  auto* oracle = app.add_subcommand("oracle", "Run the property harnesses on generated terms");
  oracle->add_option("--seed", o.seed, "First generator seed");
  oracle->add_option("--terms", o.terms, "Terms per harness");
  oracle->add_option("--depth", o.depth, "Generator depth");
  oracle->add_option("--fuel", o.fuel, "Maximum reduction steps");
  oracle->add_flag("--json", o.json, "Print the JSON envelope");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report report(out, o.json);
  try {
    if (*prove) {
      Program p = load_program(o, in);
      return report.finish(cmd_prove(o, p, report));
    }
    if (*oracle) return report.finish(cmd_oracle(o, report));
    Program p = load_program(o, in);
    if (*check) return report.finish(cmd_check(o, p, report));
    if (*eval) return report.finish(cmd_eval(o, p, report, false));
    if (*trace) return report.finish(cmd_eval(o, p, report, true));
    return report.finish(cmd_sublang(o, p, report));
  } catch (const ParseError& e) {
    report.status("parse_error");
    report.detail("", std::nullopt, std::nullopt, e.location(), e.what());
    report.line("parse_error: " + std::string(e.what()));
    return report.finish(kExitUsage);
  } catch (const Error& e) {
    report.status("usage_error");
    report.detail("", std::nullopt, std::nullopt, {}, e.what());
    if (!o.json) err << "lrbac: " << e.what() << '\n';
    return report.finish(kExitUsage);
  }
}

}  // namespace lrbac
