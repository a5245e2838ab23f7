// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "corpus.hpp"
#include "lrbac/eval.hpp"
#include "lrbac/oracle.hpp"
#include "lrbac/typing.hpp"

using namespace lrbac;
using lrbac::testing::load_corpus;

namespace {

struct Result {
  bool passed = true;
  std::ostringstream detail;
  std::vector<std::string> failed;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    passed = false;
    failed.push_back(what);
  }
};

Term p(const std::string& s) { return parse_term(s); }

Outcome run_at(const Role& r, const Term& t, bool trace = false) {
  EvalConfig cfg;
  cfg.context_role = r;
  cfg.record_trace = trace;
  return evaluate(cfg, t);
}

bool trace_contains(const Outcome& o, const Term& t) {
  for (const auto& s : o.trace) {
    if (alpha_equiv(s.to, t)) return true;
  }
  return false;
}

const RoleUniverse kAB = RoleUniverse::of_atoms({"A", "B"});

void acl_traces(Result& r) {
  Program fs = load_corpus("filesystem.lr");
  auto aliases = fs.role_aliases();
  struct Case {
    const char* role;
    const char* file;
    bool value;
    const char* guard;
    const char* data;
  };
  const Case cases[] = {
      {"Admin", "file1", true, "check {Admin} \"data1\"", "[\"data1\"]"},
      {"Admin", "file2", true, "check {Alice & Bob} \"data2\"", "[\"data2\"]"},
      {"Alice", "file1", false, "check {Admin} \"data1\"", nullptr},
      {"Alice", "file2", true, "check {Alice & Bob} \"data2\"", "[\"data2\"]"},
      {"Charlie", "file1", false, "check {Admin} \"data1\"", nullptr},
      {"Charlie", "file2", false, "check {Alice & Bob} \"data2\"", nullptr},
  };
  int matched = 0;
  for (const auto& c : cases) {
    Term t = fs.expand(p(std::string("filesystem \"") + c.file + "\""));
    Outcome o = run_at(parse_role(c.role, aliases), t, true);
    Term guard = parse_term(c.guard, aliases);
    bool ok = trace_contains(o, guard) || alpha_equiv(o.term, guard);
    if (c.value) {
      ok = ok && o.kind == Outcome::Kind::Value && print_term(o.term) == c.data;
    } else {
      ok = ok && o.kind == Outcome::Kind::RoleError && alpha_equiv(o.term, guard);
    }
    r.require(ok, std::string(c.role) + " on " + c.file);
    matched += ok;
  }
  r.detail << matched << "/6 outcomes with the displayed intermediate check";
}

void displayed_types(Result& r) {
  Program fs = load_corpus("filesystem.lr");
  Term f = *fs.definition("filesystem");
  Type a = synthesize(SystemId::Sufficient, {}, f);
  Type b = synthesize(SystemId::Necessary, {}, f);
  Role admin = fs.role_aliases().at("Admin");
  Role alice_bob = parse_role("Alice & Bob");
  r.require(a.kind() == Type::Kind::Arrow && equiv(a.cod().role(), admin | alice_bob | Role::bottom()),
            "sufficient filesystem effect");
  r.require(b.kind() == Type::Kind::Arrow && equiv(b.cod().role(), Role::bottom()),
            "necessary filesystem effect");
  r.require(b.kind() == Type::Kind::Arrow && equiv(b.cod().role(), admin & alice_bob & Role::bottom()),
            "necessary filesystem effect as the meet of the guards");

  Program ws = load_corpus("webserver.lr");
  Type w = synthesize(SystemId::Necessary, {}, *ws.definition("webserver"));
  bool bottom_ok = subtype(SystemId::Necessary, w, parse_type("Str -> [0]Str"));
  bool debug_rejected = !subtype(SystemId::Necessary, w, parse_type("Str -> [Debug]Str"));
  r.require(bottom_ok, "webserver [0] type derivable");
  r.require(debug_rejected, "webserver [Debug] type not derivable");
  r.detail << "filesystem sufficient " << canonical_string(a.cod().role()) << ", necessary "
           << canonical_string(b.cod().role()) << "; webserver [0] derivable " << bottom_ok
           << ", [Debug] rejected " << debug_rejected;
}

void dte_walkthrough(Result& r) {
  Program dte = load_corpus("dte_walkthrough.lr");
  const std::string gt = "{E}((Unit -> [B]Unit) -> Unit -> [0]Unit)";
  const std::string pbody = "(\\g:Unit -> [B]Unit. \\y:Unit. as[B] (g y))";
  const std::string g = "({E} " + pbody + ")";
  const std::vector<std::string> displayed = {
      "dt (assign F) ()",
      "(\\x:Unit. check {A} (); (assign F) " + g + " x) ()",
      "check {A} (); (assign F) " + g + " ()",
      "(assign F) " + g + " ()",
      "(\\x:" + gt + ". \\y:Unit. let g = as[E] (check x) in g F y) " + g + " ()",
      "(\\y:Unit. let g = as[E] (check " + g + ") in g F y) ()",
      "let g = as[E] (check " + g + ") in g F ()",
      "let g = as[E] [" + pbody + "] in g F ()",
      "let g = [" + pbody + "] in g F ()",
      pbody + " F ()",
      "(\\y:Unit. as[B] (F y)) ()",
      "as[B] (F ())",
      "as[B] (check {B} ())",
      "as[B] [()]",
      "[()]",
  };
  Outcome o = run_at(Role::atom("A"), dte.expanded_main(), true);
  std::vector<Term> seen{dte.expanded_main()};
  for (const auto& s : o.trace) seen.push_back(s.to);

  std::size_t next = 0, found = 0;
  for (const auto& d : displayed) {
    Term want = dte.expand(p(d));
    while (next < seen.size() && !alpha_equiv(seen[next], want)) ++next;
    if (next == seen.size()) {
      r.require(false, "displayed term " + std::to_string(found) + " " + d);
      break;
    }
    ++found;
  }
  r.require(o.kind == Outcome::Kind::Value && print_term(o.term) == "[()]", "run ends in [()]");
  r.require(o.steps == 17, "17 steps");
  r.detail << found << "/" << displayed.size() << " displayed terms in order, " << displayed.size() - 1
           << " displayed transitions, " << o.steps << " steps after desugaring";
}

void small_examples(Result& r) {
  Program ft = load_corpus("from_test.lr");
  SafeSetReport rep = safe_set(*ft.definition("test_restricted"), RoleUniverse::of_atoms({"B"}));
  std::size_t errors = rep.roles_with(Outcome::Kind::RoleError).size();
  r.require(errors == 4 && rep.classification.size() == 4, "dn[!B] test fails under all 4 classes");
  Outcome from = run_at(Role::atom("A"), ft.expanded_main());
  r.require(from.kind == Outcome::Kind::Value, "from example under A");
  r.detail << "dn[!B] test: role error in " << errors << "/4 classes; from under A: " << to_string(from.kind);
}

struct Totals {
  std::size_t passed = 0, total = 0, fuel = 0, flagged = 0;
  std::string first_failure;

  void add(const Verdict& v, const std::string& where) {
    ++total;
    fuel += v.fuel_exhausted;
    flagged += v.flagged;
    if (v.passed) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = where + ": " + v.detail;
    }
  }
  bool ok() const { return passed == total; }
};

TermGenConfig gen(std::uint64_t seed, SystemId sys) {
  TermGenConfig cfg;
  cfg.seed = seed;
  cfg.max_depth = 4;
  cfg.universe = kAB;
  cfg.target_system = sys;
  return cfg;
}

void guarantee_harnesses(Result& r) {
  Totals suff, nec;
  GenStats stats;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    suff.add(check_sufficiency(gen_typed_term(gen(seed, SystemId::Sufficient), &stats), kAB, 10000),
             "seed " + std::to_string(seed));
    nec.add(check_necessity(gen_typed_term(gen(seed, SystemId::Necessary), &stats), kAB, 10000),
            "seed " + std::to_string(seed));
  }
  r.require(suff.ok(), "sufficiency " + suff.first_failure);
  r.require(nec.ok(), "necessity " + nec.first_failure);
  r.detail << "sufficiency " << suff.passed << "/500, necessity " << nec.passed << "/500 over 16 classes"
           << "; fuel exhausted " << suff.fuel + nec.fuel << "; generator fallbacks " << stats.fallbacks;
}

void metatheory_harnesses(Result& r) {
  std::vector<Role> classes = enumerate_roles(kAB);
  Totals pres, prog, mono, axioms, order;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    SystemId sys = seed % 2 == 0 ? SystemId::Sufficient : SystemId::Necessary;
    Term t = gen_typed_term(gen(1000 + seed, sys));
    const Role& role = classes[seed % classes.size()];
    std::string where = "seed " + std::to_string(1000 + seed);
    pres.add(check_preservation(sys, t, role), where);
    prog.add(check_progress(sys, t, role), where);
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    mono.add(check_monotonicity(gen_typed_term(gen(2000 + seed, SystemId::Sufficient)), kAB),
             "seed " + std::to_string(2000 + seed));
  }
  RoleUniverse amp_u = RoleUniverse::of({Role::atom("A"), Role::atom("B"), Role::amp(Role::atom("A"))});
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Role a = gen_role(3 * seed, amp_u, 4), b = gen_role(3 * seed + 1, amp_u, 4), c = gen_role(3 * seed + 2, amp_u, 4);
    axioms.add(check_role_axioms(a, b, c), "role seed " + std::to_string(seed));
    SystemId sys = seed % 2 == 0 ? SystemId::Sufficient : SystemId::Necessary;
    auto chain = gen_subtype_chain(seed, kAB, sys, 3, 3);
    order.add(check_subtype_order(sys, chain[0], chain[1], chain[2]), "type seed " + std::to_string(seed));
  }
  r.require(pres.ok(), "preservation " + pres.first_failure);
  r.require(prog.ok(), "progress " + prog.first_failure);
  r.require(mono.ok(), "monotonicity " + mono.first_failure);
  r.require(axioms.ok(), "role axioms " + axioms.first_failure);
  r.require(order.ok(), "subtype order " + order.first_failure);
  r.detail << "preservation " << pres.passed << "/500 (" << pres.flagged << " steps flagged for a manual witness)"
           << ", progress " << prog.passed << "/500, monotonicity " << mono.passed << "/200, role axioms "
           << axioms.passed << "/1000, subtype reflexivity and transitivity " << order.passed << "/1000";
}

void amp_suite(Result& r) {
  auto rule_of = [](const Term& t) -> std::string {
    try {
      synthesize_amp({}, Role::bottom(), t, SystemId::Sufficient);
    } catch (const TypeError& e) {
      return e.rule();
    }
    return "";
  };
  Program un = load_corpus("dte_unguarded.lr");
  std::string un_dt = rule_of(*un.definition("dt"));
  std::string un_assign = rule_of(*un.definition("assign"));
  r.require(un_dt == "t-mod-up′" && un_assign == "t-mod-up′", "unguarded dt and assign rejected by t-mod-up′");

  Program g = load_corpus("dte_guarded.lr");
  Type dt = synthesize_amp({}, Role::bottom(), *g.definition("dt"), SystemId::Sufficient);
  Type assign = synthesize_amp({}, Role::bottom(), *g.definition("assign"), SystemId::Sufficient);
  r.require(dt.kind() == Type::Kind::Guard && equiv(dt.role(), parse_role("amp(B)")), "dt guarded by amp(B)");
  r.require(assign.kind() == Type::Kind::Guard && equiv(assign.role(), parse_role("amp(E)")),
            "assign guarded by amp(E)");

  std::vector<Role> roles;
  const std::vector<Role> gens = {Role::atom("A"), Role::atom("B"), Role::atom("E"), parse_role("amp(B)"),
                                  parse_role("amp(E)")};
  for (unsigned mask = 0; mask < (1u << gens.size()); ++mask) {
    Role acc = Role::bottom();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (mask & (1u << i)) acc = acc | gens[i];
    }
    roles.push_back(acc);
  }
  roles.push_back(Role::top());
  Verdict corpus = check_amp_safety(g.expanded_main(), roles);
  r.require(corpus.passed, "guarded dte amp safety: " + corpus.detail);

  RoleUniverse amp_u = RoleUniverse::of({Role::atom("A"), Role::atom("B"), Role::amp(Role::atom("A"))});
  Totals gen_amp;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    TermGenConfig cfg = gen(3000 + seed, SystemId::Sufficient);
    cfg.universe = amp_u;
    cfg.amp_mode = true;
    gen_amp.add(check_amp_safety(gen_typed_term(cfg), amp_u), "seed " + std::to_string(3000 + seed));
  }
  r.require(gen_amp.ok(), "generated amp terms " + gen_amp.first_failure);
  r.detail << "unguarded dt/assign: " << un_dt << "/" << un_assign << "; guards " << canonical_string(dt.role())
           << ", " << canonical_string(assign.role()) << "; guarded dte safe at " << corpus.cases
           << " roles; generated " << gen_amp.passed << "/200";
}

void structural_checks(Result& r) {
  struct Typing {
    const char* term;
    const char* type;
  };
  const Typing typings[] = {
      {"\\x:Int. x", "Int -> Int"},
      {"\\x:Int. [x]", "Int -> [0]Int"},
      {"\\x:[A][B]Int. let y = x in y", "[A][B]Int -> [A | B]Int"},
      {"\\x:Int. {A} x", "Int -> {A}Int"},
      {"\\x:{A}Int. check x", "{A}Int -> [A]Int"},
      {"\\x:[A]Int. up[B] x", "[A]Int -> [A & !B]Int"},
      {"\\x:[A]Int. dn[B | A] x", "[A]Int -> [A]Int"},
  };
  int typed = 0;
  for (const auto& t : typings) {
    bool ok = false;
    try {
      ok = type_equiv(synthesize(SystemId::Sufficient, {}, p(t.term)), parse_type(t.type));
    } catch (const TypeError&) {
    }
    r.require(ok, std::string("typing of ") + t.term);
    typed += ok;
  }

  Program b = load_corpus("booleans.lr");
  int bools = 0;
  for (const char* name : {"tru", "fls"}) {
    Term t = *b.definition(name);
    Type a = synthesize(SystemId::Sufficient, {}, Term::app(*b.definition("bool_sufficient"), t));
    Type n = synthesize(SystemId::Necessary, {}, Term::app(*b.definition("bool_necessary"), t));
    bool ok = equiv(a.cod().cod().role(), parse_role("A | B")) && equiv(n.cod().cod().role(), parse_role("A & B"));
    r.require(ok, std::string("boolean ") + name);
    bools += ok;
  }

  Totals alt;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    alt.add(check_alt_mod_agreement(gen_typed_term(gen(4000 + seed, SystemId::Sufficient))),
            "seed " + std::to_string(4000 + seed));
  }
  r.require(alt.ok(), "t-mod-* agreement " + alt.first_failure);

  struct Sub {
    const char* term;
    bool in;
  };
  const Sub subs[] = {
      {"\\x:Unit. [x]", true},
      {"\\v:{A}Unit. let x = check v in [x]", true},
      {"\\f:Unit -> [A]Unit. f ()", true},
      {"\\x:{A}Unit. up[B] dn[A] check x", true},
      {"\\x:Bool. if x then [()] else [()]", true},
      {"\\z:Unit. (\\x:Unit. [x]) ((\\y:Unit. [y]) z)", false},
      {"\\x:Unit. x", false},
      {"check (check {A} ())", false},
      {"{A} (check {B} ())", false},
      {"\\x:[A]Unit. let y = x in [y]", false},
  };
  int sub_ok = 0;
  for (const auto& s : subs) {
    bool ok = is_sublanguage(p(s.term)) == s.in;
    r.require(ok, std::string("sublanguage verdict for ") + s.term);
    sub_ok += ok;
  }
  r.detail << "typings " << typed << "/7, booleans " << bools << "/2, t-mod-* agreement " << alt.passed
           << "/300, sublanguage " << sub_ok << "/10";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Result&)>>> criteria = {
      {"ACL traces", acl_traces},
      {"displayed filesystem and webserver types", displayed_types},
      {"DTE walkthrough", dte_walkthrough},
      {"test and from examples", small_examples},
      {"sufficiency and necessity harnesses", guarantee_harnesses},
      {"preservation, progress, monotonicity and role laws", metatheory_harnesses},
      {"amplification suite", amp_suite},
      {"structural typing checks", structural_checks},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !r.passed;
    std::cout << "criterion " << i + 1 << " " << (r.passed ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << r.detail.str() << " (" << secs << "s)" << std::endl;
    for (const auto& f : r.failed) std::cout << "  failed: " << f << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
