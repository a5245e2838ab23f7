#include "lrbac/eval.hpp"

#include <cstdlib>

namespace lrbac {

std::size_t default_fuel() {
  if (const char* env = std::getenv("LRBAC_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 10000;
}

const char* to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::Value: return "value";
    case Outcome::Kind::RoleError: return "role_error";
    case Outcome::Kind::AmpError: return "amp_error";
    case Outcome::Kind::Stuck: return "stuck";
    case Outcome::Kind::FuelExhausted: return "fuel_exhausted";
  }
  return "?";
}

namespace {

StepResult reduced(Term next, std::string rule) {
  StepResult r;
  r.kind = StepResult::Kind::Reduced;
  r.next = std::move(next);
  r.rule = std::move(rule);
  return r;
}

StepResult stuck(std::string reason) {
  StepResult r;
  r.kind = StepResult::Kind::Stuck;
  r.reason = std::move(reason);
  return r;
}

// Steps `inner` under `role` and rebuilds the surrounding term with the
// successor in child slot `slot`.
StepResult congruence(const Term& outer, std::size_t slot, const Role& role, bool amp_mode) {
  EvalConfig sub;
  sub.context_role = role;
  sub.amp_mode = amp_mode;
  StepResult r = step(sub, outer.children()[slot]);
  if (r.kind != StepResult::Kind::Reduced) return r;
  std::vector<Term> kids = outer.children();
  kids[slot] = *r.next;
  r.next = outer.with_children(std::move(kids));
  return r;
}

StepResult step_in(const Role& role, const Term& t, bool amp_mode) {
  switch (t.kind()) {
    case Term::Kind::Base:
    case Term::Kind::Var:
    case Term::Kind::Abs:
    case Term::Kind::Guard:
    case Term::Kind::Unit:
      return StepResult{};

    case Term::Kind::App: {
      const Term& f = t.fn();
      if (f.kind() == Term::Kind::Abs) return reduced(subst(f.body(), f.name(), t.arg()), "r-app");
      if (is_value(f)) return stuck("application of a non-function value: " + print_term(f));
      return congruence(t, 0, role, amp_mode);
    }

    case Term::Kind::Fix: {
      const Term& f = t.body();
      if (f.kind() == Term::Kind::Abs) return reduced(subst(f.body(), f.name(), t), "r-fix");
      if (is_value(f)) return stuck("fix of a non-function value: " + print_term(f));
      return congruence(t, 0, role, amp_mode);
    }

    case Term::Kind::Check: {
      const Term& g = t.body();
      if (g.kind() == Term::Kind::Guard) {
        if (!dominates(role, g.role())) {
          StepResult r;
          r.kind = StepResult::Kind::RoleError;
          r.needed = g.role();
          r.had = role;
          return r;
        }
        Term body = amp_mode ? mark(g.role(), g.body()) : g.body();
        return reduced(Term::unit(body), "r-chk");
      }
      if (is_value(g)) return stuck("check of a non-guard value: " + print_term(g));
      return congruence(t, 0, role, amp_mode);
    }

    case Term::Kind::Let: {
      const Term& b = t.bound();
      if (b.kind() == Term::Kind::Unit) return reduced(subst(t.body(), t.name(), b.body()), "r-bind");
      if (is_value(b)) return stuck("let bound to a non-computation value: " + print_term(b));
      return congruence(t, 0, role, amp_mode);
    }

    case Term::Kind::Mod: {
      if (is_value(t.body())) return reduced(t.body(), "r-mod");
      return congruence(t, 0, apply_modifier(t.modifier(), role), amp_mode);
    }

    case Term::Kind::If: {
      const Term& c = t.cond();
      if (c.kind() == Term::Kind::Base && c.literal().type == BaseType::Bool) {
        return reduced(c.literal().text == "true" ? t.then_branch() : t.else_branch(), "r-if");
      }
      if (is_value(c)) return stuck("if on a non-boolean value: " + print_term(c));
      return congruence(t, 0, role, amp_mode);
    }

    case Term::Kind::StrEq: {
      if (!is_value(t.lhs())) return congruence(t, 0, role, amp_mode);
      if (!is_value(t.rhs())) return congruence(t, 1, role, amp_mode);
      if (t.lhs().kind() != Term::Kind::Base || t.rhs().kind() != Term::Kind::Base) {
        return stuck("comparison of non-base values: " + print_term(t));
      }
      return reduced(Term::base(Literal::boolean(t.lhs().literal() == t.rhs().literal())), "r-eq");
    }
  }
  return stuck("unknown term");
}

}  // namespace

StepResult step(const EvalConfig& cfg, const Term& t) {
  if (cfg.amp_mode) {
    if (auto site = find_amp_error(t)) {
      StepResult r;
      r.kind = StepResult::Kind::AmpError;
      r.site = site;
      return r;
    }
  }
  return step_in(cfg.context_role, t, cfg.amp_mode);
}

Outcome evaluate(const EvalConfig& cfg, const Term& t) {
  Outcome out;
  Term cur = t;
  for (;;) {
    StepResult r = step(cfg, cur);
    out.term = cur;
    switch (r.kind) {
      case StepResult::Kind::AtValue:
        out.kind = Outcome::Kind::Value;
        return out;
      case StepResult::Kind::RoleError:
        out.kind = Outcome::Kind::RoleError;
        out.needed = r.needed;
        out.had = r.had;
        return out;
      case StepResult::Kind::AmpError:
        out.kind = Outcome::Kind::AmpError;
        out.site = r.site;
        return out;
      case StepResult::Kind::Stuck:
        out.kind = Outcome::Kind::Stuck;
        out.reason = r.reason;
        return out;
      case StepResult::Kind::Reduced:
        break;
    }
    if (out.steps >= cfg.fuel) {
      out.kind = Outcome::Kind::FuelExhausted;
      return out;
    }
    if (cfg.record_trace) out.trace.push_back({cur, *r.next, r.rule});
    cur = *r.next;
    ++out.steps;
  }
}

Term mark(const Role& a, const Term& t) {
  if (t.kind() == Term::Kind::Mod) {
    RoleModifier m = t.modifier();
    m.check = m.check ? (a | *m.check) : a;
    return Term::mod(m, mark(a, t.body())).at(t.location());
  }
  if (t.children().empty()) return t;
  std::vector<Term> kids;
  kids.reserve(t.children().size());
  for (const auto& k : t.children()) kids.push_back(mark(a, k));
  return t.with_children(std::move(kids));
}

std::optional<Term> find_amp_error(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Mod: {
      const auto& m = t.modifier();
      // An unchecked modifier has no authority, as if annotated with 0.
      Role authority = m.check ? *m.check : Role::bottom();
      if (m.direction == Direction::Up && !dominates(authority, Role::amp(m.role))) return t;
      return find_amp_error(t.body());
    }
    case Term::Kind::App:
      return find_amp_error(t.fn());
    case Term::Kind::Let:
      return find_amp_error(t.bound());
    case Term::Kind::Check:
    case Term::Kind::Fix:
      return find_amp_error(t.body());
    case Term::Kind::If:
      return find_amp_error(t.cond());
    case Term::Kind::StrEq:
      if (!is_value(t.lhs())) return find_amp_error(t.lhs());
      return find_amp_error(t.rhs());
    default:
      return std::nullopt;
  }
}

bool amp_error(const Term& t) { return find_amp_error(t).has_value(); }

}  // namespace lrbac
