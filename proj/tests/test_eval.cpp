#include "corpus.hpp"
#include "doctest.h"
#include "lrbac/eval.hpp"

using namespace lrbac;
using lrbac::testing::load_corpus;

namespace {

Term p(const char* s) { return parse_term(s); }

EvalConfig at(const Role& r) {
  EvalConfig cfg;
  cfg.context_role = r;
  return cfg;
}

Outcome run(const char* role, const Term& t) { return evaluate(at(parse_role(role)), t); }

}  // namespace

TEST_SUITE("evaluator") {
  TEST_CASE("r-mod discards the modifier at a value") {
    StepResult s = step(at(Role::bottom()), p("up[A] [()]"));
    REQUIRE(s.kind == StepResult::Kind::Reduced);
    CHECK(s.rule == "r-mod");
    CHECK(alpha_equiv(*s.next, p("[()]")));
  }

  TEST_CASE("r-chk fails without the guard role") {
    StepResult s = step(at(Role::atom("A")), p("check ({B} ())"));
    REQUIRE(s.kind == StepResult::Kind::RoleError);
    CHECK(equiv(s.needed, Role::atom("B")));
    CHECK(equiv(s.had, Role::atom("A")));
    CHECK(step(at(parse_role("A | B")), p("check ({B} ())")).kind == StepResult::Kind::Reduced);
  }

  TEST_CASE("r-bind substitutes the computation body") {
    StepResult s = step(at(Role::bottom()), p("let x = [\"v\"] in [x]"));
    REQUIRE(s.kind == StepResult::Kind::Reduced);
    CHECK(s.rule == "r-bind");
    CHECK(alpha_equiv(*s.next, p("[\"v\"]")));
  }

  TEST_CASE("call by name") {
    StepResult s = step(at(Role::bottom()), p("(\\x:[A]Unit. [()]) (check {A} ())"));
    REQUIRE(s.kind == StepResult::Kind::Reduced);
    CHECK(s.rule == "r-app");
    CHECK(alpha_equiv(*s.next, p("[()]")));
  }

  TEST_CASE("modifiers change the role for the body only") {
    CHECK(run("0", p("up[B] check {B} ()")).kind == Outcome::Kind::Value);
    CHECK(run("B", p("dn[!B] check {B} ()")).kind == Outcome::Kind::RoleError);
    CHECK(run("A", p("as[B] check {B} ()")).kind == Outcome::Kind::Value);
    CHECK(run("A", p("as[B] check {A} ()")).kind == Outcome::Kind::RoleError);
  }

  TEST_CASE("values and stuck terms") {
    Outcome v = run("0", p("\\x:Unit. x"));
    CHECK(v.kind == Outcome::Kind::Value);
    CHECK(v.steps == 0);
    Outcome s = run("1", p("check ()"));
    CHECK(s.kind == Outcome::Kind::Stuck);
    CHECK_FALSE(s.reason.empty());
    CHECK(run("1", p("let x = () in [x]")).kind == Outcome::Kind::Stuck);
    CHECK(run("1", p("if () then [()] else [()]")).kind == Outcome::Kind::Stuck);
  }

  TEST_CASE("conditionals and equality") {
    Outcome o = run("0", p("if \"a\" == \"a\" then [1] else [2]"));
    REQUIRE(o.kind == Outcome::Kind::Value);
    CHECK(print_term(o.term) == "[1]");
    CHECK(print_term(run("0", p("if 3 == 4 then [1] else [2]")).term) == "[2]");
  }

  TEST_CASE("fuel bounds divergence") {
    EvalConfig cfg = at(Role::top());
    cfg.fuel = 50;
    Outcome o = evaluate(cfg, p("fix (\\x:[0]Unit. x)"));
    CHECK(o.kind == Outcome::Kind::FuelExhausted);
    CHECK(o.steps == 50);
  }

  TEST_CASE("traces record every step") {
    EvalConfig cfg = at(Role::atom("A"));
    cfg.record_trace = true;
    Outcome o = evaluate(cfg, p("let c = check {A} (\\x:Unit. [x]) in c ()"));
    REQUIRE(o.kind == Outcome::Kind::Value);
    REQUIRE(o.trace.size() == o.steps);
    CHECK(o.trace.front().rule == "r-chk");
    for (std::size_t i = 1; i < o.trace.size(); ++i) CHECK(alpha_equiv(o.trace[i - 1].to, o.trace[i].from));
    CHECK(alpha_equiv(o.trace.back().to, o.term));
  }

  TEST_CASE("filesystem access") {
    Program fs = load_corpus("filesystem.lr");
    Term file1 = fs.expand(p("filesystem \"file1\""));
    Term file2 = fs.expand(p("filesystem \"file2\""));
    auto admin = fs.role_aliases().at("Admin");
    Outcome o = evaluate(at(admin), file1);
    REQUIRE(o.kind == Outcome::Kind::Value);
    CHECK(print_term(o.term) == "[\"data1\"]");
    Outcome c = run("Charlie", file2);
    REQUIRE(c.kind == Outcome::Kind::RoleError);
    CHECK(equiv(c.needed, parse_role("Alice & Bob")));
    CHECK(equiv(c.had, Role::atom("Charlie")));
  }

  TEST_CASE("from and test") {
    Program ft = load_corpus("from_test.lr");
    CHECK(evaluate(at(Role::atom("A")), ft.expanded_main()).kind == Outcome::Kind::Value);
    Term restricted = *ft.definition("test_restricted");
    for (const char* r : {"0", "B", "!B", "1"}) {
      CAPTURE(r);
      CHECK(run(r, restricted).kind == Outcome::Kind::RoleError);
    }
  }

  TEST_CASE("marking annotates modifiers") {
    Term m = mark(Role::atom("A"), p("up[B] [()]"));
    REQUIRE(m.modifier().check.has_value());
    CHECK(equiv(*m.modifier().check, Role::atom("A")));
    Term again = mark(Role::atom("A"), p("up[B]^[C] [()]"));
    CHECK(equiv(*again.modifier().check, parse_role("A | C")));
    Term id = p("\\x:Unit. x");
    CHECK(alpha_equiv(mark(Role::atom("A"), id), id));
    Term nested = mark(Role::atom("A"), p("\\x:Unit. dn[B] up[C] [x]"));
    CHECK(nested.body().modifier().check.has_value());
    CHECK(nested.body().body().modifier().check.has_value());
  }

  TEST_CASE("role modification errors") {
    CHECK(amp_error(p("up[B] [()]")));
    CHECK_FALSE(amp_error(p("up[B]^[amp(B)] [()]")));
    CHECK(amp_error(p("up[B]^[B] [()]")));
    CHECK_FALSE(amp_error(p("dn[B] [()]")));
    CHECK(amp_error(p("dn[B] up[C] [()]")));
    CHECK_FALSE(amp_error(p("\\x:Unit. up[B] [x]")));
    CHECK(amp_error(p("let x = up[B] [()] in [x]")));
    CHECK_FALSE(amp_error(p("let x = [()] in up[B] [x]")));
  }

  TEST_CASE("amp mode marks on check and stops at unchecked amplification") {
    EvalConfig cfg = at(parse_role("amp(B)"));
    cfg.amp_mode = true;
    Term guarded = p("let f = check {amp(B)} (up[B] check {B} ()) in [f]");
    CHECK(evaluate(cfg, guarded).kind == Outcome::Kind::Value);
    Outcome bare = evaluate(cfg, p("up[B] check {B} ()"));
    REQUIRE(bare.kind == Outcome::Kind::AmpError);
    REQUIRE(bare.site.has_value());
    CHECK(print_term(*bare.site) == "up[B] check {B} ()");
    cfg.amp_mode = false;
    CHECK(evaluate(cfg, p("up[B] check {B} ()")).kind == Outcome::Kind::Value);
  }

  TEST_CASE("fuel default comes from the environment") {
    CHECK(default_fuel() > 0);
  }
}
