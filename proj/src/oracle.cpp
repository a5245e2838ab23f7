#include "lrbac/oracle.hpp"

#include <random>

namespace lrbac {

std::vector<Role> SafeSetReport::roles_with(Outcome::Kind k) const {
  std::vector<Role> out;
  for (const auto& [r, kind] : classification) {
    if (kind == k) out.push_back(r);
  }
  return out;
}

SafeSetReport safe_set(const Term& t, const RoleUniverse& u, std::size_t fuel, bool amp_mode) {
  SafeSetReport rep{t, u, {}};
  for (const Role& r : enumerate_roles(u)) {
    EvalConfig cfg;
    cfg.context_role = r;
    cfg.fuel = fuel;
    cfg.amp_mode = amp_mode;
    rep.classification.emplace_back(r, evaluate(cfg, t).kind);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Generator

namespace {

class Generator {
 public:
  explicit Generator(const TermGenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    for (const auto& a : cfg.universe.atoms()) atoms_.push_back(Role::atom(a));
    for (const auto& g : cfg.universe.amp_generators()) amplifiable_.push_back(g);
  }

  std::mt19937_64& rng() { return rng_; }

  Role any_role(int depth) { return role(depth); }

  Type any_type(int depth) {
    int choice = depth <= 0 ? 0 : pick(4);
    switch (choice) {
      case 1: return Type::arrow(any_type(depth - 1), any_type(depth - 1));
      case 2: return Type::guard(role(), any_type(depth - 1));
      case 3: return Type::comp(role(), any_type(depth - 1));
      default: return Type::base(base());
    }
  }

  // A supertype of t: roles grow where `grow` holds, shrink elsewhere, and
  // the direction flips in argument position.
  Type super(const Type& t, bool grow) {
    switch (t.kind()) {
      case Type::Kind::Base:
        return t;
      case Type::Kind::Arrow:
        return Type::arrow(super(t.dom(), !grow), super(t.cod(), grow));
      case Type::Kind::Guard:
      case Type::Kind::Comp: {
        Role r = grow ? (t.role() | role(1)) : (t.role() & role(1));
        Type body = super(t.body(), grow);
        return t.kind() == Type::Kind::Guard ? Type::guard(r, body) : Type::comp(r, body);
      }
    }
    return t;
  }

  Term closed_comp(int depth) {
    fresh_ = 0;
    Env env;
    return comp(depth, env, base(), Role::bottom()).term;
  }

 private:
  struct Typed {
    Term term;
    Type type;
  };
  using Env = std::vector<std::pair<std::string, Type>>;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::size_t weighted(const std::vector<double>& w) {
    std::discrete_distribution<std::size_t> d(w.begin(), w.end());
    return d(rng_);
  }

  Role role(int depth = 2) {
    int choice = depth <= 0 ? pick(3) : pick(7);
    switch (choice) {
      case 0:
      case 1:
        if (atoms_.empty()) return chance(0.5) ? Role::top() : Role::bottom();
        return atoms_[pick(static_cast<int>(atoms_.size()))];
      case 2:
        return pick(2) == 0 ? Role::bottom() : Role::top();
      case 3:
        return !role(depth - 1);
      case 4:
        return role(depth - 1) & role(depth - 1);
      case 5:
        return role(depth - 1) | role(depth - 1);
      default:
        if (cfg_.amp_mode && !amplifiable_.empty()) {
          return Role::amp(amplifiable_[pick(static_cast<int>(amplifiable_.size()))]);
        }
        return role(depth - 1);
    }
  }

  BaseType base() {
    static const BaseType kinds[] = {BaseType::Unit, BaseType::Int, BaseType::Str, BaseType::Bool};
    return kinds[pick(4)];
  }

  Term literal(BaseType b) {
    switch (b) {
      case BaseType::Unit: return Term::base(Literal::unit());
      case BaseType::Int: return Term::base(Literal::integer(pick(10)));
      case BaseType::Str: return Term::base(Literal::string(pick(2) ? "a" : "b"));
      case BaseType::Bool: return Term::base(Literal::boolean(pick(2)));
    }
    return Term::base(Literal::unit());
  }

  std::string fresh(const char* stem) { return stem + std::to_string(fresh_++); }

  Type type_of(const Env& env, const Role& guards, const Term& t) {
    if (cfg_.amp_mode) return synthesize_amp(env, guards, t, cfg_.target_system);
    return synthesize(cfg_.target_system, env, t);
  }

  // A supertype of t in the target system: guard roles and effects grow in
  // the sufficient system and shrink in the necessary one.
  Type widen(const Type& t) {
    bool up = cfg_.target_system == SystemId::Sufficient;
    switch (t.kind()) {
      case Type::Kind::Guard:
      case Type::Kind::Comp: {
        Role r = chance(0.5) ? t.role() : (up ? (t.role() | role(1)) : (t.role() & role(1)));
        return t.kind() == Type::Kind::Guard ? Type::guard(r, t.body()) : Type::comp(r, t.body());
      }
      case Type::Kind::Arrow:
        return Type::arrow(t.dom(), widen(t.cod()));
      case Type::Kind::Base:
        return t;
    }
    return t;
  }

  bool can_amplify(const Role& guards, const Role& r) { return dominates(guards, Role::amp(r)); }

  // Roles the enclosing guards allow amplifying to.
  std::vector<Role> amplifiable(const Role& guards) {
    std::vector<Role> out{Role::bottom()};
    for (const auto& g : amplifiable_) {
      if (can_amplify(guards, g)) out.push_back(g);
    }
    return out;
  }

  Term bool_value(Env& env) {
    std::vector<std::string> base_vars;
    for (const auto& [name, ty] : env) {
      if (ty.kind() == Type::Kind::Base) base_vars.push_back(name);
    }
    int choice = pick(3);
    if (choice == 0 || cfg_.branch_free) return literal(BaseType::Bool);
    if (choice == 1 || base_vars.empty()) {
      BaseType b = base();
      return Term::str_eq(literal(b), literal(b));
    }
    const std::string& x = base_vars[pick(static_cast<int>(base_vars.size()))];
    for (const auto& [name, ty] : env) {
      if (name == x) return Term::str_eq(Term::var(x), literal(ty.base_type()));
    }
    return literal(BaseType::Bool);
  }

  // Variable uses that produce a computation over `target`.
  std::vector<Term> var_uses(const Env& env, BaseType target) {
    std::vector<Term> out;
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      const auto& [name, ty] = *it;
      bool shadowed = false;
      for (auto jt = env.rbegin(); jt != it; ++jt) shadowed = shadowed || jt->first == name;
      if (shadowed) continue;
      switch (ty.kind()) {
        case Type::Kind::Base:
          if (ty.base_type() == target) out.push_back(Term::unit(Term::var(name)));
          break;
        case Type::Kind::Guard:
          if (ty.body().kind() == Type::Kind::Base && ty.body().base_type() == target) {
            out.push_back(Term::check(Term::var(name)));
          }
          break;
        case Type::Kind::Comp:
          if (ty.body().kind() == Type::Kind::Base && ty.body().base_type() == target) {
            out.push_back(Term::var(name));
          }
          break;
        case Type::Kind::Arrow:
          if (ty.dom().kind() == Type::Kind::Base && ty.cod().is_comp() &&
              ty.cod().body().kind() == Type::Kind::Base && ty.cod().body().base_type() == target) {
            out.push_back(Term::app(Term::var(name), literal(ty.dom().base_type())));
          }
          break;
      }
    }
    return out;
  }

  Typed finish(const Env& env, const Role& guards, Term t) {
    Type ty = type_of(env, guards, t);
    return {std::move(t), std::move(ty)};
  }

  Typed leaf(Env& env, BaseType target, const Role& guards) {
    auto uses = var_uses(env, target);
    int choice = pick(uses.empty() ? 2 : 4);
    if (choice >= 2) return finish(env, guards, uses[pick(static_cast<int>(uses.size()))]);
    if (choice == 0) return finish(env, guards, Term::unit(literal(target)));
    return finish(env, guards, Term::check(Term::guard(role(), literal(target))));
  }

  // An argument for an application: a value or, call-by-name, any term.
  Typed arg(int depth, Env& env, const Role& guards) {
    switch (pick(4)) {
      case 0:
        return finish(env, guards, literal(base()));
      case 1: {
        Role r = role();
        Role inner = cfg_.amp_mode ? (guards | r) : guards;
        Term body = chance(0.5) || depth <= 0 ? literal(base()) : comp(depth - 1, env, base(), inner).term;
        return finish(env, guards, Term::guard(r, body));
      }
      case 2: {
        BaseType dom = base();
        std::string y = fresh("y");
        env.emplace_back(y, Type::base(dom));
        Term body = comp(std::max(depth - 1, 0), env, base(), guards).term;
        env.pop_back();
        return finish(env, guards, Term::abs(y, Type::base(dom), body));
      }
      default:
        return comp(std::max(depth - 1, 0), env, base(), guards);
    }
  }

  enum Template { Check, GuardWrap, Up, Dn, Let, App, If, Fix, Leaf };

  Typed comp(int depth, Env& env, BaseType target, const Role& guards) {
    if (depth <= 0) return leaf(env, target, guards);
    std::vector<double> w(9, 0.0);
    w[Check] = 2.5;
    w[GuardWrap] = 2.0;
    w[Up] = 2.5;
    w[Dn] = 2.5;
    w[Let] = 1.0;
    w[App] = 1.0;
    w[If] = cfg_.branch_free ? 0.0 : 0.7;
    w[Fix] = cfg_.exact ? 0.0 : 0.08;
    w[Leaf] = 0.6;
    switch (static_cast<Template>(weighted(w))) {
      case Check: {
        Role r = role();
        if (chance(0.5)) return finish(env, guards, Term::check(Term::guard(r, literal(target))));
        // check {R} [v] is a nested computation; bind it away.
        std::string x = fresh("x");
        Term g = Term::guard(r, Term::unit(literal(target)));
        return finish(env, guards, Term::let(x, Term::check(g), Term::var(x)));
      }
      case GuardWrap: {
        Role r = role();
        Role inner = cfg_.amp_mode ? (guards | r) : guards;
        Typed c = comp(depth - 1, env, target, inner);
        std::string x = fresh("x");
        return finish(env, guards, Term::let(x, Term::check(Term::guard(r, c.term)), Term::var(x)));
      }
      case Up: {
        Typed c = comp(depth - 1, env, target, guards);
        if (!cfg_.amp_mode) return finish(env, guards, Term::mod(RoleModifier::up(role()), c.term));
        auto allowed = amplifiable(guards);
        if (!amplifiable_.empty() && chance(0.3)) {
          const Role& a = amplifiable_[pick(static_cast<int>(amplifiable_.size()))];
          RoleModifier m{Direction::Up, a, Role::amp(a)};
          return finish(env, guards, Term::mod(m, c.term));
        }
        return finish(env, guards, Term::mod(RoleModifier::up(allowed[pick(static_cast<int>(allowed.size()))]), c.term));
      }
      case Dn: {
        Typed c = comp(depth - 1, env, target, guards);
        Role r = role();
        if (cfg_.target_system == SystemId::Sufficient) r = c.type.role() | r;
        return finish(env, guards, Term::mod(RoleModifier::dn(r), c.term));
      }
      case Let: {
        BaseType b = base();
        Typed first = comp(depth - 1, env, b, guards);
        std::string x = fresh("x");
        env.emplace_back(x, Type::base(b));
        Typed second = comp(depth - 1, env, target, guards);
        env.pop_back();
        return finish(env, guards, Term::let(x, first.term, second.term));
      }
      case App: {
        Typed a = arg(depth - 1, env, guards);
        Type annot = cfg_.exact ? a.type : widen(a.type);
        std::string x = fresh("x");
        env.emplace_back(x, annot);
        Typed body = comp(depth - 1, env, target, guards);
        env.pop_back();
        return finish(env, guards, Term::app(Term::abs(x, annot, body.term), a.term));
      }
      case If: {
        Term c = bool_value(env);
        Typed a = comp(depth - 1, env, target, guards);
        Typed b = comp(depth - 1, env, target, guards);
        return finish(env, guards, Term::if_(c, a.term, b.term));
      }
      case Fix: {
        Role ra = cfg_.target_system == SystemId::Sufficient ? Role::top() : Role::bottom();
        Type fn = Type::arrow(Type::base(target), Type::comp(ra, Type::base(target)));
        std::string f = fresh("f");
        std::string n = fresh("n");
        env.emplace_back(f, fn);
        env.emplace_back(n, Type::base(target));
        Typed body = comp(depth - 1, env, target, guards);
        env.pop_back();
        env.pop_back();
        Term rec = Term::fix(Term::abs(f, fn, Term::abs(n, Type::base(target), body.term)));
        return finish(env, guards, Term::app(rec, literal(target)));
      }
      case Leaf:
        break;
    }
    return leaf(env, target, guards);
  }

  const TermGenConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<Role> atoms_;
  std::vector<Role> amplifiable_;
  int fresh_ = 0;
};

void count_nodes(const Term& t, GenStats& stats) {
  if (t.children().empty()) return;
  ++stats.internal_nodes;
  switch (t.kind()) {
    case Term::Kind::Check:
    case Term::Kind::Guard:
    case Term::Kind::Mod:
      ++stats.role_nodes;
      break;
    default:
      break;
  }
  for (const auto& k : t.children()) count_nodes(k, stats);
}

bool accepted(const TermGenConfig& cfg, const Term& t) {
  try {
    if (cfg.amp_mode) {
      synthesize_amp({}, Role::bottom(), t, cfg.target_system);
    } else {
      synthesize(cfg.target_system, {}, t);
    }
    return t.free_vars().empty();
  } catch (const TypeError&) {
    return false;
  }
}

}  // namespace

Term gen_typed_term(const TermGenConfig& cfg, GenStats* stats) {
  constexpr int kAttempts = 20;
  Generator g(cfg);
  GenStats local;
  GenStats& s = stats ? *stats : local;
  ++s.terms;
  for (int i = 0; i < kAttempts; ++i) {
    try {
      Term t = g.closed_comp(cfg.max_depth);
      if (accepted(cfg, t)) {
        count_nodes(t, s);
        return t;
      }
    } catch (const TypeError&) {
    }
    ++s.retries;
  }
  ++s.fallbacks;
  return Term::unit(Term::base(Literal::unit()));
}

Role gen_role(std::uint64_t seed, const RoleUniverse& u, int depth) {
  TermGenConfig cfg;
  cfg.seed = seed;
  cfg.universe = u;
  cfg.amp_mode = !u.amp_generators().empty();
  return Generator(cfg).any_role(depth);
}

Type gen_type(std::uint64_t seed, const RoleUniverse& u, int depth) {
  TermGenConfig cfg;
  cfg.seed = seed;
  cfg.universe = u;
  return Generator(cfg).any_type(depth);
}

std::vector<Type> gen_subtype_chain(std::uint64_t seed, const RoleUniverse& u, SystemId sys, int depth,
                                    std::size_t length) {
  TermGenConfig cfg;
  cfg.seed = seed;
  cfg.universe = u;
  Generator g(cfg);
  std::vector<Type> chain{g.any_type(depth)};
  while (chain.size() < length) chain.push_back(g.super(chain.back(), sys == SystemId::Sufficient));
  return chain;
}

// ---------------------------------------------------------------------------
// Harnesses

namespace {

Verdict fail(Verdict v, std::string detail, std::optional<Role> role = std::nullopt,
             std::optional<Term> term = std::nullopt) {
  v.passed = false;
  v.detail = std::move(detail);
  v.counterexample_role = std::move(role);
  v.counterexample = std::move(term);
  return v;
}

std::optional<Type> try_synthesize(SystemId sys, const Term& t, std::string* why = nullptr) {
  try {
    return synthesize(sys, {}, t);
  } catch (const TypeError& e) {
    if (why) *why = e.what();
    return std::nullopt;
  }
}

Outcome run(const Role& r, const Term& t, std::size_t fuel, bool amp = false, bool trace = false) {
  EvalConfig cfg;
  cfg.context_role = r;
  cfg.fuel = fuel;
  cfg.amp_mode = amp;
  cfg.record_trace = trace;
  return evaluate(cfg, t);
}

}  // namespace

Verdict check_sufficiency(const Term& t, const RoleUniverse& u, std::size_t fuel) {
  Verdict v;
  std::string why;
  auto ty = try_synthesize(SystemId::Sufficient, t, &why);
  if (!ty) return fail(v, "precondition: " + why);
  for (const Role& r : enumerate_roles(u)) {
    if (!dominates_type(r, *ty)) continue;
    ++v.cases;
    Outcome o = run(r, t, fuel);
    if (o.kind == Outcome::Kind::FuelExhausted) ++v.fuel_exhausted;
    if (o.kind != Outcome::Kind::Value && o.kind != Outcome::Kind::FuelExhausted) {
      return fail(v, std::string("dominating role reached ") + to_string(o.kind), r, o.term);
    }
  }
  return v;
}

Verdict check_necessity(const Term& t, const RoleUniverse& u, std::size_t fuel) {
  Verdict v;
  std::string why;
  auto ty = try_synthesize(SystemId::Necessary, t, &why);
  if (!ty) return fail(v, "precondition: " + why);
  for (const Role& r : enumerate_roles(u)) {
    if (dominates_type(r, *ty)) continue;
    ++v.cases;
    Outcome o = run(r, t, fuel);
    if (o.kind == Outcome::Kind::FuelExhausted) ++v.fuel_exhausted;
    if (o.kind != Outcome::Kind::RoleError && o.kind != Outcome::Kind::FuelExhausted) {
      return fail(v, std::string("non-dominating role reached ") + to_string(o.kind), r, o.term);
    }
  }
  return v;
}

Verdict check_preservation(SystemId sys, const Term& t, const Role& r, std::size_t fuel) {
  Verdict v;
  std::string why;
  auto ty = try_synthesize(sys, t, &why);
  if (!ty) return fail(v, "precondition: " + why);
  EvalConfig cfg;
  cfg.context_role = r;
  Term cur = t;
  Type cur_ty = *ty;
  for (std::size_t i = 0; i < fuel; ++i) {
    StepResult s = step(cfg, cur);
    if (s.kind != StepResult::Kind::Reduced) return v;
    ++v.cases;
    auto next_ty = try_synthesize(sys, *s.next, &why);
    if (!next_ty) return fail(v, "successor is ill-typed after " + s.rule + ": " + why, r, *s.next);
    if (sys == SystemId::Sufficient) {
      if (!subtype(sys, *next_ty, cur_ty)) {
        return fail(v,
                    "after " + s.rule + " the type " + to_string(canonical_type(*next_ty)) +
                        " is not a subtype of " + to_string(canonical_type(cur_ty)),
                    r, *s.next);
      }
    } else {
      Type witness = next_ty->is_comp() && cur_ty.is_comp() ? Type::comp(next_ty->role(), cur_ty.body()) : cur_ty;
      if (!subtype(sys, *next_ty, witness)) {
        return fail(v,
                    "after " + s.rule + " the type " + to_string(canonical_type(*next_ty)) +
                        " is not compatible with " + to_string(canonical_type(cur_ty)),
                    r, *s.next);
      }
      if (dominates_type(r, *next_ty) && !dominates_type(r, cur_ty)) {
        ++v.flagged;
        if (v.detail.empty()) v.detail = "needs manual witness after " + s.rule;
      }
    }
    cur = *s.next;
    cur_ty = *next_ty;
  }
  ++v.fuel_exhausted;
  return v;
}

Verdict check_progress(SystemId sys, const Term& t, const Role& r, std::size_t fuel) {
  Verdict v;
  std::string why;
  auto ty = try_synthesize(sys, t, &why);
  if (!ty) return fail(v, "precondition: " + why);
  Outcome o = run(r, t, fuel);
  v.cases = o.steps + 1;
  if (o.kind == Outcome::Kind::FuelExhausted) ++v.fuel_exhausted;
  if (o.kind == Outcome::Kind::Stuck) return fail(v, "stuck: " + o.reason, r, o.term);
  if (o.kind == Outcome::Kind::RoleError && sys == SystemId::Sufficient && dominates_type(r, *ty)) {
    return fail(v, "role error at a role dominating the type", r, o.term);
  }
  return v;
}

Verdict check_monotonicity(const Term& t, const RoleUniverse& u, std::size_t fuel) {
  Verdict v;
  std::vector<Role> classes = enumerate_roles(u);
  std::vector<Outcome> runs;
  runs.reserve(classes.size());
  for (const Role& b : classes) runs.push_back(run(b, t, fuel, false, true));

  for (std::size_t bi = 0; bi < classes.size(); ++bi) {
    const Outcome& below = runs[bi];
    for (std::size_t ai = 0; ai < classes.size(); ++ai) {
      if (ai == bi || !dominates(classes[ai], classes[bi])) continue;
      EvalConfig cfg;
      cfg.context_role = classes[ai];
      for (const auto& st : below.trace) {
        ++v.cases;
        StepResult s = step(cfg, st.from);
        if (s.kind != StepResult::Kind::Reduced || !alpha_equiv(*s.next, st.to)) {
          return fail(v,
                      "step taken at " + canonical_string(classes[bi]) + " differs at " +
                          canonical_string(classes[ai]),
                      classes[ai], st.from);
        }
      }
      if (below.kind == Outcome::Kind::Value && runs[ai].kind != Outcome::Kind::Value) {
        return fail(v,
                    "value at " + canonical_string(classes[bi]) + " but " + to_string(runs[ai].kind) + " at " +
                        canonical_string(classes[ai]),
                    classes[ai], t);
      }
    }
    if (below.kind == Outcome::Kind::FuelExhausted) ++v.fuel_exhausted;
  }
  return v;
}

Verdict check_amp_safety(const Term& t, const std::vector<Role>& roles, std::size_t fuel, SystemId sys) {
  Verdict v;
  try {
    synthesize_amp({}, Role::bottom(), t, sys);
  } catch (const TypeError& e) {
    return fail(v, std::string("precondition: ") + e.what());
  }
  for (const Role& r : roles) {
    ++v.cases;
    Outcome o = run(r, t, fuel, true);
    if (o.kind == Outcome::Kind::FuelExhausted) ++v.fuel_exhausted;
    if (o.kind == Outcome::Kind::AmpError) {
      return fail(v, "role modification error at " + print_term(*o.site), r, o.term);
    }
  }
  return v;
}

Verdict check_amp_safety(const Term& t, const RoleUniverse& u, std::size_t fuel, SystemId sys) {
  return check_amp_safety(t, enumerate_roles(u), fuel, sys);
}

Verdict check_alt_mod_agreement(const Term& t) {
  Verdict v;
  v.cases = 1;
  TypeOptions alt;
  alt.alt_mod = true;
  std::string why_std, why_alt;
  std::optional<Type> standard, single;
  try {
    standard = synthesize(SystemId::Sufficient, {}, t);
  } catch (const TypeError& e) {
    why_std = e.what();
  }
  try {
    single = synthesize(SystemId::Sufficient, {}, t, alt);
  } catch (const TypeError& e) {
    why_alt = e.what();
  }
  if (standard.has_value() != single.has_value()) {
    return fail(v, standard ? "only the split rules accept: " + why_alt : "only t-mod-* accepts: " + why_std,
                std::nullopt, t);
  }
  if (standard && !type_equiv(*standard, *single)) {
    return fail(v, "types differ: " + to_string(*standard) + " vs " + to_string(*single), std::nullopt, t);
  }
  return v;
}

Verdict check_role_axioms(const Role& a, const Role& b, const Role& c) {
  const Role top = Role::top(), bot = Role::bottom();
  const std::vector<std::pair<const char*, std::pair<Role, Role>>> laws = {
      {"join commutes", {a | b, b | a}},
      {"meet commutes", {a & b, b & a}},
      {"join associates", {(a | b) | c, a | (b | c)}},
      {"meet associates", {(a & b) & c, a & (b & c)}},
      {"join distributes", {a | (b & c), (a | b) & (a | c)}},
      {"meet distributes", {a & (b | c), (a & b) | (a & c)}},
      {"join absorbs", {a | (a & b), a}},
      {"meet absorbs", {a & (a | b), a}},
      {"join identity", {a | bot, a}},
      {"meet identity", {a & top, a}},
      {"join complement", {a | !a, top}},
      {"meet complement", {a & !a, bot}},
      {"join idempotent", {a | a, a}},
      {"double negation", {!!a, a}},
      {"de morgan", {!(a | b), (!a) & (!b)}},
      {"amp absorbs join", {a | Role::amp(a), Role::amp(a)}},
      {"amp absorbs meet", {a & Role::amp(a), a}},
      {"amp distributes over join", {Role::amp(a | b), Role::amp(a) | Role::amp(b)}},
      {"amp distributes over meet", {Role::amp(a & b), Role::amp(a) & Role::amp(b)}},
      {"amp of bottom", {Role::amp(bot), bot}},
  };
  Verdict v;
  for (const auto& [name, sides] : laws) {
    ++v.cases;
    if (!equiv(sides.first, sides.second)) {
      return fail(v, std::string(name) + " fails: " + to_string(sides.first) + " vs " + to_string(sides.second),
                  a);
    }
  }
  ++v.cases;
  bool dom = dominates(a, b);
  if (dom != equiv(a, a | b) || dom != equiv(b, a & b)) {
    return fail(v, "dominance disagrees with join and meet for " + to_string(a) + " and " + to_string(b), a);
  }
  return v;
}

Verdict check_subtype_order(SystemId sys, const Type& t1, const Type& t2, const Type& t3) {
  Verdict v;
  for (const Type* t : {&t1, &t2, &t3}) {
    ++v.cases;
    if (!subtype(sys, *t, *t)) return fail(v, "not reflexive at " + to_string(*t));
  }
  if (subtype(sys, t1, t2) && subtype(sys, t2, t3)) {
    ++v.cases;
    if (!subtype(sys, t1, t3)) {
      return fail(v, "not transitive through " + to_string(t1) + ", " + to_string(t2) + ", " + to_string(t3));
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Suite

namespace {

struct Tally {
  SuiteResult result;

  void add(const Verdict& v, std::uint64_t seed) {
    ++result.terms;
    result.flagged += v.flagged;
    result.fuel_exhausted += v.fuel_exhausted;
    if (!v.passed) {
      ++result.failures;
      if (!result.failing_seed) {
        result.failing_seed = seed;
        result.detail = v.detail;
        if (v.counterexample_role) result.detail += " [role " + canonical_string(*v.counterexample_role) + "]";
        if (v.counterexample) result.detail += " [term " + print_term(*v.counterexample) + "]";
      }
    }
  }
};

}  // namespace

std::vector<SuiteResult> run_suite(const SuiteConfig& cfg) {
  RoleUniverse u = RoleUniverse::of_atoms({"A", "B"});
  RoleUniverse amp_u = RoleUniverse::of({Role::atom("A"), Role::atom("B"), Role::amp(Role::atom("A"))});
  std::vector<Role> classes = enumerate_roles(u);
  std::size_t stepwise_fuel = std::min<std::size_t>(cfg.fuel, 1000);

  auto tally = [](const char* name) {
    Tally t;
    t.result.check = name;
    return t;
  };
  Tally suff = tally("sufficiency"), nec = tally("necessity"), pres = tally("preservation"),
        prog = tally("progress"), mono = tally("monotonicity"), amp = tally("amp_safety");
  for (std::size_t i = 0; i < cfg.terms; ++i) {
    std::uint64_t seed = cfg.seed + i;
    TermGenConfig g;
    g.seed = seed;
    g.max_depth = cfg.depth;
    g.universe = u;

    g.target_system = SystemId::Sufficient;
    Term ta = gen_typed_term(g);
    g.target_system = SystemId::Necessary;
    Term tb = gen_typed_term(g);
    suff.add(check_sufficiency(ta, u, cfg.fuel), seed);
    nec.add(check_necessity(tb, u, cfg.fuel), seed);

    SystemId sys = i % 2 == 0 ? SystemId::Sufficient : SystemId::Necessary;
    const Term& t = sys == SystemId::Sufficient ? ta : tb;
    const Role& r = classes[seed % classes.size()];
    pres.add(check_preservation(sys, t, r, stepwise_fuel), seed);
    prog.add(check_progress(sys, t, r, stepwise_fuel), seed);
    mono.add(check_monotonicity(ta, u, stepwise_fuel), seed);

    TermGenConfig ga = g;
    ga.universe = amp_u;
    ga.amp_mode = true;
    ga.target_system = SystemId::Sufficient;
    amp.add(check_amp_safety(gen_typed_term(ga), amp_u, cfg.fuel), seed);
  }
  return {suff.result, nec.result, pres.result, prog.result, mono.result, amp.result};
}

}  // namespace lrbac
