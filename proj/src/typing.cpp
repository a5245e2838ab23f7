#include "lrbac/typing.hpp"

#include <functional>

namespace lrbac {

const char* to_string(SystemId s) { return s == SystemId::Sufficient ? "sufficient" : "necessary"; }

std::optional<SystemId> parse_system(std::string_view s) {
  if (s == "sufficient" || s == "alpha") return SystemId::Sufficient;
  if (s == "necessary" || s == "beta") return SystemId::Necessary;
  return std::nullopt;
}

TypeError::TypeError(std::string rule, const std::string& what, Term subterm, std::optional<Role> needed,
                     std::optional<Role> had)
    : Error(rule + ": " + what),
      rule_(std::move(rule)),
      subterm_(std::move(subterm)),
      needed_(std::move(needed)),
      had_(std::move(had)) {}

namespace {

using Dominates = std::function<bool(const Role&, const Role&)>;

bool subtype_with(SystemId sys, const Type& a, const Type& b, const Dominates& dom) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Base:
      return a.base_type() == b.base_type();
    case Type::Kind::Arrow:
      return subtype_with(sys, b.dom(), a.dom(), dom) && subtype_with(sys, a.cod(), b.cod(), dom);
    case Type::Kind::Guard:
    case Type::Kind::Comp: {
      bool roles = sys == SystemId::Sufficient ? dom(b.role(), a.role()) : dom(a.role(), b.role());
      return roles && subtype_with(sys, a.body(), b.body(), dom);
    }
  }
  return false;
}

// upper = true computes the least upper bound.
std::optional<Type> bound(SystemId sys, const Type& a, const Type& b, bool upper) {
  if (a.kind() != b.kind()) return std::nullopt;
  switch (a.kind()) {
    case Type::Kind::Base:
      if (a.base_type() != b.base_type()) return std::nullopt;
      return a;
    case Type::Kind::Arrow: {
      auto d = bound(sys, a.dom(), b.dom(), !upper);
      auto c = bound(sys, a.cod(), b.cod(), upper);
      if (!d || !c) return std::nullopt;
      return Type::arrow(*d, *c);
    }
    case Type::Kind::Guard:
    case Type::Kind::Comp: {
      auto body = bound(sys, a.body(), b.body(), upper);
      if (!body) return std::nullopt;
      // Going up the order grows roles in the sufficient system and shrinks
      // them in the necessary one.
      bool join = upper == (sys == SystemId::Sufficient);
      Role r = join ? (a.role() | b.role()) : (a.role() & b.role());
      return a.kind() == Type::Kind::Guard ? Type::guard(r, *body) : Type::comp(r, *body);
    }
  }
  return std::nullopt;
}

Type literal_type(const Literal& lit) { return Type::base(lit.type); }

class Checker {
 public:
  Checker(SystemId sys, bool amp, const TypeOptions& opts) : sys_(sys), amp_(amp), opts_(opts) {}

  Type synth(TypingContext& ctx, const Role& guards, const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Base:
        return literal_type(t.literal());

      case Term::Kind::Var:
        for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
          if (it->first == t.name()) return it->second;
        }
        throw TypeError("t-var", "unbound variable " + t.name(), t);

      case Term::Kind::Abs: {
        ctx.emplace_back(t.name(), t.annotation());
        Type body = synth(ctx, guards, t.body());
        ctx.pop_back();
        return Type::arrow(t.annotation(), body);
      }

      case Term::Kind::App: {
        Type f = synth(ctx, guards, t.fn());
        if (f.kind() != Type::Kind::Arrow) {
          throw TypeError("t-app", "applying a term of non-function type " + to_string(f), t.fn());
        }
        Type a = synth(ctx, guards, t.arg());
        if (!subtype(sys_, a, f.dom())) {
          throw TypeError("t-app",
                          "argument type " + to_string(canonical_type(a)) + " is not a subtype of " +
                              to_string(canonical_type(f.dom())),
                          t.arg(), role_of(f.dom()), role_of(a));
        }
        return f.cod();
      }

      case Term::Kind::Fix: {
        Type f = synth(ctx, guards, t.body());
        if (f.kind() != Type::Kind::Arrow) {
          throw TypeError("t-fix", "fix of a term of non-function type " + to_string(f), t.body());
        }
        if (!subtype(sys_, f.cod(), f.dom())) {
          throw TypeError("t-fix",
                          "result type " + to_string(canonical_type(f.cod())) + " is not a subtype of " +
                              to_string(canonical_type(f.dom())),
                          t.body());
        }
        return f.cod();
      }

      case Term::Kind::Guard: {
        Role inner = amp_ ? (guards | t.role()) : guards;
        return Type::guard(t.role(), synth(ctx, inner, t.body()));
      }

      case Term::Kind::Check: {
        Type g = synth(ctx, guards, t.body());
        if (g.kind() != Type::Kind::Guard) {
          throw TypeError("t-chk", "check of a term of non-guard type " + to_string(g), t.body());
        }
        return Type::comp(g.role(), g.body());
      }

      case Term::Kind::Unit:
        return Type::comp(Role::bottom(), synth(ctx, guards, t.body()));

      case Term::Kind::Let: {
        Type m = synth(ctx, guards, t.bound());
        if (!m.is_comp()) {
          throw TypeError("t-bind", "let bound to a term of non-computation type " + to_string(m), t.bound());
        }
        ctx.emplace_back(t.name(), m.body());
        Type n = synth(ctx, guards, t.body());
        ctx.pop_back();
        if (!n.is_comp()) {
          throw TypeError("t-bind", "let body has non-computation type " + to_string(n), t.body());
        }
        return Type::comp(m.role() | n.role(), n.body());
      }

      case Term::Kind::Mod:
        return synth_mod(ctx, guards, t);

      case Term::Kind::If: {
        Type c = synth(ctx, guards, t.cond());
        if (c.kind() != Type::Kind::Base || c.base_type() != BaseType::Bool) {
          throw TypeError("t-if", "condition has type " + to_string(c) + ", expected Bool", t.cond());
        }
        Type a = synth(ctx, guards, t.then_branch());
        Type b = synth(ctx, guards, t.else_branch());
        auto joined = type_lub(sys_, a, b);
        if (!joined) {
          throw TypeError("t-if", "branches have incompatible types " + to_string(a) + " and " + to_string(b), t);
        }
        return *joined;
      }

      case Term::Kind::StrEq: {
        Type a = synth(ctx, guards, t.lhs());
        Type b = synth(ctx, guards, t.rhs());
        if (a.kind() != Type::Kind::Base || b.kind() != Type::Kind::Base || a.base_type() != b.base_type()) {
          throw TypeError("t-eq", "cannot compare " + to_string(a) + " with " + to_string(b), t);
        }
        return Type::bool_();
      }
    }
    throw TypeError("t-var", "unknown term form", t);
  }

 private:
  static std::optional<Role> role_of(const Type& t) {
    if (t.kind() == Type::Kind::Comp || t.kind() == Type::Kind::Guard) return t.role();
    return std::nullopt;
  }

  Type synth_mod(TypingContext& ctx, const Role& guards, const Term& t) {
    const RoleModifier& m = t.modifier();
    bool up = m.direction == Direction::Up;
    std::string rule = up ? "t-mod-up" : "t-mod-dn";
    if (amp_) rule += m.checked() ? "-checked" : (up ? "′" : "");

    if (amp_ && up) {
      Role authority = m.checked() ? (guards | *m.check) : guards;
      Role needed = Role::amp(m.role);
      if (!dominates(authority, needed)) {
        throw TypeError(rule,
                        "amplification to " + canonical_string(m.role) + " needs " + canonical_string(needed) +
                            " but the guards provide " + canonical_string(authority),
                        t, needed, authority);
      }
    }

    Type body = synth(ctx, guards, t.body());
    if (!body.is_comp()) {
      throw TypeError(rule, "role modifier over a term of non-computation type " + to_string(body), t.body());
    }
    const Role& b = body.role();

    if (opts_.alt_mod && sys_ == SystemId::Sufficient) {
      Role candidate = up ? rminus(b, m.role) : b;
      if (!dominates(apply_modifier(m, candidate), b)) {
        throw TypeError("t-mod-*",
                        "no effect C with " + std::string(up ? "up" : "dn") + "[" + canonical_string(m.role) +
                            "] C >= " + canonical_string(b),
                        t, b, apply_modifier(m, candidate));
      }
      return Type::comp(candidate, body.body());
    }

    if (up) return Type::comp(rminus(b, m.role), body.body());
    if (sys_ == SystemId::Sufficient && !dominates(m.role, b)) {
      throw TypeError(rule,
                      "the body needs " + canonical_string(b) + " which dn[" + canonical_string(m.role) +
                          "] does not dominate",
                      t, b, m.role);
    }
    return body;
  }

  SystemId sys_;
  bool amp_;
  TypeOptions opts_;
};

}  // namespace

bool subtype(SystemId sys, const Type& t1, const Type& t2) {
  return subtype_with(sys, t1, t2, [](const Role& a, const Role& b) { return dominates(a, b); });
}

bool subtype(SystemId sys, const Type& t1, const Type& t2, const RoleUniverse& u) {
  return subtype_with(sys, t1, t2, [&u](const Role& a, const Role& b) { return dominates(a, b, u); });
}

std::optional<Type> type_lub(SystemId sys, const Type& a, const Type& b) { return bound(sys, a, b, true); }
std::optional<Type> type_glb(SystemId sys, const Type& a, const Type& b) { return bound(sys, a, b, false); }

Type synthesize(SystemId sys, const TypingContext& ctx, const Term& t, const TypeOptions& opts) {
  TypingContext scratch = ctx;
  Checker c(sys, false, opts);
  return c.synth(scratch, Role::bottom(), t);
}

Type synthesize_amp(const TypingContext& ctx, const Role& guard_context, const Term& t, SystemId sys,
                    const TypeOptions& opts) {
  TypingContext scratch = ctx;
  Checker c(sys, true, opts);
  return c.synth(scratch, guard_context, t);
}

bool dominates_type(const Role& r, const Type& t) {
  return !t.is_comp() || dominates(r, t.role());
}

bool compatible(const Type& t1, const Type& t2) {
  if (t1.is_comp() && t2.is_comp()) return type_equiv(t1.body(), t2.body());
  return type_equiv(t1, t2);
}

Type canonical_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base:
      return t;
    case Type::Kind::Arrow:
      return Type::arrow(canonical_type(t.dom()), canonical_type(t.cod()));
    case Type::Kind::Guard:
      return Type::guard(canonical_form(t.role()), canonical_type(t.body()));
    case Type::Kind::Comp:
      return Type::comp(canonical_form(t.role()), canonical_type(t.body()));
  }
  return t;
}

}  // namespace lrbac
