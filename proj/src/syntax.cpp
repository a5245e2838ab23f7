#include "lrbac/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lexer.hpp"

namespace lrbac {

const char* to_string(BaseType b) {
  switch (b) {
    case BaseType::Unit: return "Unit";
    case BaseType::Int: return "Int";
    case BaseType::Str: return "Str";
    case BaseType::Bool: return "Bool";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Types

struct Type::Node {
  Kind kind;
  BaseType base = BaseType::Unit;
  Role role;
  std::vector<Type> kids;
};

Type Type::base(BaseType b) {
  static const Type unit(std::make_shared<const Node>(Node{Kind::Base, BaseType::Unit, {}, {}}));
  static const Type integer(std::make_shared<const Node>(Node{Kind::Base, BaseType::Int, {}, {}}));
  static const Type str(std::make_shared<const Node>(Node{Kind::Base, BaseType::Str, {}, {}}));
  static const Type boolean(std::make_shared<const Node>(Node{Kind::Base, BaseType::Bool, {}, {}}));
  switch (b) {
    case BaseType::Unit: return unit;
    case BaseType::Int: return integer;
    case BaseType::Str: return str;
    case BaseType::Bool: return boolean;
  }
  return unit;
}

Type Type::arrow(Type dom, Type cod) {
  return Type(std::make_shared<const Node>(Node{Kind::Arrow, BaseType::Unit, {}, {std::move(dom), std::move(cod)}}));
}

Type Type::guard(Role role, Type body) {
  return Type(std::make_shared<const Node>(Node{Kind::Guard, BaseType::Unit, std::move(role), {std::move(body)}}));
}

Type Type::comp(Role effect, Type body) {
  return Type(std::make_shared<const Node>(Node{Kind::Comp, BaseType::Unit, std::move(effect), {std::move(body)}}));
}

Type::Kind Type::kind() const { return node_->kind; }
BaseType Type::base_type() const { return node_->base; }
const Type& Type::dom() const { return node_->kids.at(0); }
const Type& Type::cod() const { return node_->kids.at(1); }
const Type& Type::body() const { return node_->kids.at(0); }
const Role& Type::role() const { return node_->role; }

namespace {

template <typename RoleEq>
bool types_match(const Type& a, const Type& b, RoleEq role_eq) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Base:
      return a.base_type() == b.base_type();
    case Type::Kind::Arrow:
      return types_match(a.dom(), b.dom(), role_eq) && types_match(a.cod(), b.cod(), role_eq);
    case Type::Kind::Guard:
    case Type::Kind::Comp:
      return role_eq(a.role(), b.role()) && types_match(a.body(), b.body(), role_eq);
  }
  return false;
}

void print_type(const Type& t, int level, std::string& out) {
  switch (t.kind()) {
    case Type::Kind::Base:
      out += to_string(t.base_type());
      return;
    case Type::Kind::Arrow: {
      bool wrap = level > 0;
      if (wrap) out += "(";
      print_type(t.dom(), 1, out);
      out += " -> ";
      print_type(t.cod(), 0, out);
      if (wrap) out += ")";
      return;
    }
    case Type::Kind::Guard:
    case Type::Kind::Comp:
      out += t.kind() == Type::Kind::Guard ? "{" : "[";
      out += to_string(t.role());
      out += t.kind() == Type::Kind::Guard ? "}" : "]";
      print_type(t.body(), 2, out);
      return;
  }
}

}  // namespace

bool same_type(const Type& a, const Type& b) {
  return types_match(a, b, [](const Role& x, const Role& y) { return x.same_as(y); });
}

bool type_equiv(const Type& a, const Type& b) {
  return types_match(a, b, [](const Role& x, const Role& y) { return equiv(x, y); });
}

std::string to_string(const Type& t) {
  std::string out;
  print_type(t, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  Kind kind;
  Literal lit;
  std::string name;
  std::optional<Type> annot;
  Role role;
  RoleModifier modifier;
  std::vector<Term> kids;
  std::vector<std::string> fv;
  SourceLocation loc;
};

namespace {

std::vector<std::string> merge_free(const std::vector<Term>& kids, const std::string* binder,
                                    std::size_t bound_from) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    for (const auto& v : kids[i].free_vars()) {
      if (binder && i >= bound_from && v == *binder) continue;
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Term Term::base(Literal lit) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->lit = std::move(lit);
  return Term(n);
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->fv = {name};
  n->name = std::move(name);
  return Term(n);
}

Term Term::abs(std::string param, Type annot, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->name = std::move(param);
  n->annot = std::move(annot);
  n->kids = {std::move(body)};
  n->fv = merge_free(n->kids, &n->name, 0);
  return Term(n);
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->kids = {std::move(fn), std::move(arg)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term Term::fix(Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Fix;
  n->kids = {std::move(t)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term Term::guard(Role role, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Guard;
  n->role = std::move(role);
  n->kids = {std::move(body)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term Term::check(Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Check;
  n->kids = {std::move(t)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term Term::unit(Term t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  n->kids = {std::move(t)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term Term::let(std::string name, Term bound, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Let;
  n->name = std::move(name);
  n->kids = {std::move(bound), std::move(body)};
  n->fv = merge_free(n->kids, &n->name, 1);
  return Term(n);
}

Term Term::mod(RoleModifier m, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mod;
  n->modifier = std::move(m);
  n->kids = {std::move(body)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term Term::if_(Term cond, Term then_branch, Term else_branch) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::If;
  n->kids = {std::move(cond), std::move(then_branch), std::move(else_branch)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term Term::str_eq(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::StrEq;
  n->kids = {std::move(lhs), std::move(rhs)};
  n->fv = merge_free(n->kids, nullptr, 0);
  return Term(n);
}

Term::Kind Term::kind() const { return node_->kind; }
const Literal& Term::literal() const { return node_->lit; }
const std::string& Term::name() const { return node_->name; }
const Type& Term::annotation() const { return *node_->annot; }
const Role& Term::role() const { return node_->role; }
const RoleModifier& Term::modifier() const { return node_->modifier; }
const Term& Term::body() const { return kind() == Kind::Let ? node_->kids.at(1) : node_->kids.at(0); }
const Term& Term::fn() const { return node_->kids.at(0); }
const Term& Term::arg() const { return node_->kids.at(1); }
const Term& Term::bound() const { return node_->kids.at(0); }
const Term& Term::cond() const { return node_->kids.at(0); }
const Term& Term::then_branch() const { return node_->kids.at(1); }
const Term& Term::else_branch() const { return node_->kids.at(2); }
const Term& Term::lhs() const { return node_->kids.at(0); }
const Term& Term::rhs() const { return node_->kids.at(1); }
const std::vector<Term>& Term::children() const { return node_->kids; }
const std::vector<std::string>& Term::free_vars() const { return node_->fv; }

bool Term::has_free(const std::string& x) const {
  return std::binary_search(node_->fv.begin(), node_->fv.end(), x);
}

SourceLocation Term::location() const { return node_->loc; }

Term Term::at(SourceLocation loc) const {
  auto n = std::make_shared<Node>(*node_);
  n->loc = loc;
  return Term(n);
}

Term Term::with_children(std::vector<Term> kids) const {
  auto n = std::make_shared<Node>(*node_);
  n->kids = std::move(kids);
  switch (n->kind) {
    case Kind::Abs:
      n->fv = merge_free(n->kids, &n->name, 0);
      break;
    case Kind::Let:
      n->fv = merge_free(n->kids, &n->name, 1);
      break;
    case Kind::Var:
      break;
    default:
      n->fv = merge_free(n->kids, nullptr, 0);
  }
  return Term(n);
}

bool is_value(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Base:
    case Term::Kind::Var:
    case Term::Kind::Abs:
    case Term::Kind::Guard:
    case Term::Kind::Unit:
      return true;
    default:
      return false;
  }
}

std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& k : t.children()) n += term_size(k);
  return n;
}

// ---------------------------------------------------------------------------
// Substitution and alpha-equivalence

namespace {

std::string strip_suffix(const std::string& name) {
  auto pos = name.rfind('_');
  if (pos == std::string::npos || pos + 1 == name.size()) return name;
  for (std::size_t i = pos + 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return name;
  }
  return name.substr(0, pos);
}

template <typename Avoid>
std::string fresh_name(const std::string& name, Avoid&& taken) {
  std::string base = strip_suffix(name);
  for (int k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!taken(candidate)) return candidate;
  }
}

}  // namespace

Term subst(const Term& body, const std::string& x, const Term& replacement) {
  if (!body.has_free(x)) return body;
  switch (body.kind()) {
    case Term::Kind::Var:
      return replacement;
    case Term::Kind::Abs:
    case Term::Kind::Let: {
      const std::string& y = body.name();
      Term bound_part = body.kind() == Term::Kind::Let ? subst(body.bound(), x, replacement) : body;
      Term inner = body.body();
      std::string name = y;
      if (y != x && replacement.has_free(y) && inner.has_free(x)) {
        name = fresh_name(y, [&](const std::string& c) {
          return c == x || replacement.has_free(c) || inner.has_free(c);
        });
        inner = subst(inner, y, Term::var(name));
      }
      if (y != x) inner = subst(inner, x, replacement);
      if (body.kind() == Term::Kind::Abs) return Term::abs(name, body.annotation(), inner).at(body.location());
      return Term::let(name, bound_part, inner).at(body.location());
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(body.children().size());
      for (const auto& k : body.children()) kids.push_back(subst(k, x, replacement));
      return body.with_children(std::move(kids));
    }
  }
}

namespace {

using Scope = std::vector<std::pair<std::string, std::string>>;

bool alpha_rec(const Term& a, const Term& b, Scope& scope) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Base:
      return a.literal() == b.literal();
    case Term::Kind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        bool left = it->first == a.name();
        bool right = it->second == b.name();
        if (left || right) return left && right;
      }
      return a.name() == b.name();
    }
    case Term::Kind::Abs: {
      if (!same_type(a.annotation(), b.annotation())) return false;
      scope.emplace_back(a.name(), b.name());
      bool ok = alpha_rec(a.body(), b.body(), scope);
      scope.pop_back();
      return ok;
    }
    case Term::Kind::Let: {
      if (!alpha_rec(a.bound(), b.bound(), scope)) return false;
      scope.emplace_back(a.name(), b.name());
      bool ok = alpha_rec(a.body(), b.body(), scope);
      scope.pop_back();
      return ok;
    }
    case Term::Kind::Guard:
      if (!a.role().same_as(b.role())) return false;
      break;
    case Term::Kind::Mod: {
      const auto& ma = a.modifier();
      const auto& mb = b.modifier();
      if (ma.direction != mb.direction || !ma.role.same_as(mb.role)) return false;
      if (ma.check.has_value() != mb.check.has_value()) return false;
      if (ma.check && !ma.check->same_as(*mb.check)) return false;
      break;
    }
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children().size(); ++i) {
    if (!alpha_rec(a.children()[i], b.children()[i], scope)) return false;
  }
  return true;
}

}  // namespace

bool alpha_equiv(const Term& a, const Term& b) {
  Scope scope;
  return alpha_rec(a, b, scope);
}

namespace {

Term freshen_rec(const Term& t, std::set<std::string>& used, std::map<std::string, std::string>& renames) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = renames.find(t.name());
      if (it == renames.end() || it->second == t.name()) return t;
      return Term::var(it->second).at(t.location());
    }
    case Term::Kind::Abs:
    case Term::Kind::Let: {
      Term bound_part = t.kind() == Term::Kind::Let ? freshen_rec(t.bound(), used, renames) : t;
      std::string name = t.name();
      if (name == "_" || used.count(name)) {
        std::string seed = name == "_" ? std::string("_") : name;
        name = fresh_name(seed == "_" ? std::string("") : seed, [&](const std::string& c) { return used.count(c) > 0; });
      }
      used.insert(name);
      auto saved = renames.find(t.name());
      std::optional<std::string> previous;
      if (saved != renames.end()) previous = saved->second;
      renames[t.name()] = name;
      Term body = freshen_rec(t.body(), used, renames);
      if (previous) {
        renames[t.name()] = *previous;
      } else {
        renames.erase(t.name());
      }
      if (t.kind() == Term::Kind::Abs) return Term::abs(name, t.annotation(), body).at(t.location());
      return Term::let(name, bound_part, body).at(t.location());
    }
    default: {
      if (t.children().empty()) return t;
      std::vector<Term> kids;
      for (const auto& k : t.children()) kids.push_back(freshen_rec(k, used, renames));
      return t.with_children(std::move(kids));
    }
  }
}

}  // namespace

Term freshen(const Term& t) {
  std::set<std::string> used(t.free_vars().begin(), t.free_vars().end());
  std::map<std::string, std::string> renames;
  return freshen_rec(t, used, renames);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: 0 open-ended forms (lambda, let, if, sequencing),
// 1 equality, 2 prefix forms, 3 application, 4 atoms.
int level_of(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs:
    case Term::Kind::Let:
    case Term::Kind::If:
      return 0;
    case Term::Kind::StrEq:
      return 1;
    case Term::Kind::Fix:
    case Term::Kind::Check:
    case Term::Kind::Guard:
    case Term::Kind::Mod:
      return 2;
    case Term::Kind::App:
      return 3;
    default:
      return 4;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

bool is_as(const Term& t) {
  if (t.kind() != Term::Kind::Mod) return false;
  const auto& m = t.modifier();
  if (m.direction != Direction::Dn || m.checked() || m.role.kind() != Role::Kind::Bottom) return false;
  const Term& inner = t.body();
  return inner.kind() == Term::Kind::Mod && inner.modifier().direction == Direction::Up &&
         !inner.modifier().checked();
}

void print(const Term& t, int level, std::string& out);

void print_at(const Term& t, int level, std::string& out) {
  if (level_of(t) < level) {
    out += "(";
    print(t, 0, out);
    out += ")";
  } else {
    print(t, level, out);
  }
}

void print_binder(const Term& t, std::string& out) {
  if (t.name().rfind('_', 0) == 0 && !t.body().has_free(t.name())) {
    out += "_";
  } else {
    out += t.name();
  }
}

void print(const Term& t, int /*level*/, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Base: {
      const auto& lit = t.literal();
      out += lit.type == BaseType::Str ? quote(lit.text) : lit.text;
      return;
    }
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::Abs:
      out += "\\";
      print_binder(t, out);
      out += ":" + to_string(t.annotation()) + ". ";
      print_at(t.body(), 0, out);
      return;
    case Term::Kind::Let:
      if (t.name().rfind('_', 0) == 0 && !t.body().has_free(t.name())) {
        print_at(t.bound(), 1, out);
        out += "; ";
        print_at(t.body(), 0, out);
      } else {
        out += "let " + t.name() + " = ";
        print_at(t.bound(), 0, out);
        out += " in ";
        print_at(t.body(), 0, out);
      }
      return;
    case Term::Kind::If:
      out += "if ";
      print_at(t.cond(), 0, out);
      out += " then ";
      print_at(t.then_branch(), 0, out);
      out += " else ";
      print_at(t.else_branch(), 0, out);
      return;
    case Term::Kind::StrEq:
      print_at(t.lhs(), 2, out);
      out += " == ";
      print_at(t.rhs(), 2, out);
      return;
    case Term::Kind::Fix:
      out += "fix ";
      print_at(t.body(), 2, out);
      return;
    case Term::Kind::Check:
      out += "check ";
      print_at(t.body(), 2, out);
      return;
    case Term::Kind::Guard:
      out += "{" + to_string(t.role()) + "} ";
      print_at(t.body(), 2, out);
      return;
    case Term::Kind::Mod: {
      if (is_as(t)) {
        out += "as[" + to_string(t.body().modifier().role) + "] ";
        print_at(t.body().body(), 2, out);
        return;
      }
      const auto& m = t.modifier();
      out += m.direction == Direction::Up ? "up[" : "dn[";
      out += to_string(m.role) + "]";
      if (m.check) out += "^[" + to_string(*m.check) + "]";
      out += " ";
      print_at(t.body(), 2, out);
      return;
    }
    case Term::Kind::App:
      print_at(t.fn(), 3, out);
      out += " ";
      print_at(t.arg(), 4, out);
      return;
    case Term::Kind::Unit:
      out += "[";
      print_at(t.body(), 0, out);
      out += "]";
      return;
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Token;
using detail::TokenStream;

class Parser {
 public:
  Parser(TokenStream& ts, const std::map<std::string, Role>& aliases) : ts_(ts), aliases_(aliases) {}

  Type type() {
    Type dom = type_prefix();
    if (ts_.accept_symbol("->")) return Type::arrow(dom, type());
    return dom;
  }

  Term term() {
    SourceLocation loc = ts_.peek().loc;
    if (ts_.peek().is_symbol("\\")) return lambda();
    if (ts_.accept_keyword("let")) {
      std::string name = binder();
      ts_.expect_symbol("=");
      Term bound = term();
      ts_.expect_keyword("in");
      Term body = term();
      return Term::let(name, bound, body).at(loc);
    }
    if (ts_.accept_keyword("if")) {
      Term c = term();
      ts_.expect_keyword("then");
      Term a = term();
      ts_.expect_keyword("else");
      Term b = term();
      return Term::if_(c, a, b).at(loc);
    }
    Term e = equality();
    if (ts_.peek().is_symbol(";")) {
      SourceLocation semi = ts_.next().loc;
      Term rest = term();
      return Term::let("_", e, rest).at(semi);
    }
    return e;
  }

  Role role() { return detail::parse_role_tokens(ts_, aliases_); }

 private:
  Type type_prefix() {
    if (ts_.accept_symbol("{")) {
      Role r = role();
      ts_.expect_symbol("}");
      return Type::guard(r, type_prefix());
    }
    if (ts_.accept_symbol("[")) {
      Role r = role();
      ts_.expect_symbol("]");
      return Type::comp(r, type_prefix());
    }
    if (ts_.accept_symbol("(")) {
      Type t = type();
      ts_.expect_symbol(")");
      return t;
    }
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "Unit") { ts_.next(); return Type::unit(); }
      if (t.text == "Int") { ts_.next(); return Type::int_(); }
      if (t.text == "Str") { ts_.next(); return Type::str(); }
      if (t.text == "Bool") { ts_.next(); return Type::bool_(); }
    }
    ts_.fail("expected a type");
  }

  std::string binder() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Ident && (t.text == "_" || !detail::is_keyword(t.text))) return ts_.next().text;
    ts_.fail("expected a variable name");
  }

  Term lambda() {
    SourceLocation loc = ts_.next().loc;
    std::string name = binder();
    ts_.expect_symbol(":");
    Type annot = type();
    ts_.expect_symbol(".");
    Term body = term();
    return Term::abs(name, annot, body).at(loc);
  }

  Term equality() {
    Term l = application();
    if (ts_.peek().is_symbol("==")) {
      SourceLocation loc = ts_.next().loc;
      Term r = application();
      return Term::str_eq(l, r).at(loc);
    }
    return l;
  }

  Term prefix_body() {
    const Token& t = ts_.peek();
    if (t.is_symbol("\\") || t.is_ident("let") || t.is_ident("if")) return term();
    return application();
  }

  std::optional<Term> prefix_form() {
    const Token& t = ts_.peek();
    SourceLocation loc = t.loc;
    if (ts_.accept_keyword("check")) return Term::check(prefix_body()).at(loc);
    if (ts_.accept_keyword("fix")) return Term::fix(prefix_body()).at(loc);
    if (ts_.accept_symbol("{")) {
      Role r = role();
      ts_.expect_symbol("}");
      return Term::guard(r, prefix_body()).at(loc);
    }
    bool up = t.is_ident("up");
    bool dn = t.is_ident("dn");
    if (up || dn) {
      ts_.next();
      ts_.expect_symbol("[");
      Role r = role();
      ts_.expect_symbol("]");
      std::optional<Role> annotation;
      if (ts_.accept_symbol("^")) {
        ts_.expect_symbol("[");
        annotation = role();
        ts_.expect_symbol("]");
      }
      RoleModifier m{up ? Direction::Up : Direction::Dn, r, annotation};
      return Term::mod(m, prefix_body()).at(loc);
    }
    if (ts_.accept_keyword("as")) {
      ts_.expect_symbol("[");
      Role r = role();
      ts_.expect_symbol("]");
      Term body = prefix_body();
      return Term::mod(RoleModifier::dn(Role::bottom()), Term::mod(RoleModifier::up(r), body).at(loc)).at(loc);
    }
    return std::nullopt;
  }

  bool starts_atom(const Token& t) const {
    switch (t.kind) {
      case Token::Kind::Int:
      case Token::Kind::String:
        return true;
      case Token::Kind::Ident:
        return t.text == "true" || t.text == "false" || !detail::is_keyword(t.text);
      case Token::Kind::Symbol:
        return t.text == "(" || t.text == "[";
      case Token::Kind::End:
        return false;
    }
    return false;
  }

  Term application() {
    if (auto p = prefix_form()) return *p;
    Term head = atom();
    while (starts_atom(ts_.peek())) {
      SourceLocation loc = ts_.peek().loc;
      Term arg = atom();
      head = Term::app(head, arg).at(loc);
    }
    return head;
  }

  Term atom() {
    const Token& t = ts_.peek();
    SourceLocation loc = t.loc;
    switch (t.kind) {
      case Token::Kind::Int:
        return Term::base(Literal{BaseType::Int, ts_.next().text}).at(loc);
      case Token::Kind::String:
        return Term::base(Literal::string(ts_.next().text)).at(loc);
      case Token::Kind::Ident:
        if (t.text == "true" || t.text == "false") {
          return Term::base(Literal::boolean(ts_.next().text == "true")).at(loc);
        }
        if (t.text == "_") ts_.fail("'_' cannot be used as a variable");
        if (!detail::is_keyword(t.text)) return Term::var(ts_.next().text).at(loc);
        break;
      case Token::Kind::Symbol:
        if (ts_.accept_symbol("(")) {
          if (ts_.accept_symbol(")")) return Term::base(Literal::unit()).at(loc);
          Term inner = term();
          ts_.expect_symbol(")");
          return inner;
        }
        if (ts_.accept_symbol("[")) {
          Term inner = term();
          ts_.expect_symbol("]");
          return Term::unit(inner).at(loc);
        }
        break;
      case Token::Kind::End:
        break;
    }
    ts_.fail("expected a term");
  }

  TokenStream& ts_;
  const std::map<std::string, Role>& aliases_;
};

}  // namespace

Type parse_type(std::string_view src, const std::map<std::string, Role>& aliases) {
  TokenStream ts(detail::tokenize(src));
  Parser p(ts, aliases);
  Type t = p.type();
  if (!ts.at_end()) ts.fail("unexpected trailing input after type");
  return t;
}

Term parse_term(std::string_view src, const std::map<std::string, Role>& aliases) {
  TokenStream ts(detail::tokenize(src));
  Parser p(ts, aliases);
  Term t = p.term();
  if (!ts.at_end()) ts.fail("unexpected trailing input after term");
  return freshen(t);
}

Program parse_program(std::string_view src) {
  TokenStream ts(detail::tokenize(src));
  Program prog;
  std::map<std::string, Role> aliases;
  while (!ts.at_end()) {
    if (ts.accept_keyword("role")) {
      const Token& name = ts.peek();
      if (name.kind != Token::Kind::Ident || detail::is_keyword(name.text)) ts.fail("expected a role name");
      std::string n = ts.next().text;
      ts.expect_symbol("=");
      Parser p(ts, aliases);
      Role r = p.role();
      ts.expect_symbol(";;");
      aliases[n] = r;
      prog.roles.emplace_back(n, r);
      continue;
    }
    if (ts.accept_keyword("def")) {
      const Token& name = ts.peek();
      if (name.kind != Token::Kind::Ident || detail::is_keyword(name.text)) ts.fail("expected a definition name");
      std::string n = ts.next().text;
      ts.expect_symbol("=");
      Parser p(ts, aliases);
      Term body = freshen(p.term());
      ts.expect_symbol(";;");
      prog.definitions.emplace_back(n, body);
      continue;
    }
    if (prog.main) ts.fail("expected end of input after the main term");
    Parser p(ts, aliases);
    prog.main = freshen(p.term());
    ts.accept_symbol(";;");
  }
  return prog;
}

std::map<std::string, Role> Program::role_aliases() const {
  return {roles.begin(), roles.end()};
}

std::optional<Term> Program::definition(const std::string& name) const {
  for (std::size_t i = 0; i < definitions.size(); ++i) {
    if (definitions[i].first != name) continue;
    Term t = definitions[i].second;
    for (std::size_t j = i; j-- > 0;) t = subst(t, definitions[j].first, definitions[j].second);
    return freshen(t);
  }
  return std::nullopt;
}

Term Program::expand(const Term& t) const {
  Term out = t;
  for (std::size_t j = definitions.size(); j-- > 0;) out = subst(out, definitions[j].first, definitions[j].second);
  return freshen(out);
}

Term Program::expanded_main() const {
  if (!main) throw Error("program has no main term");
  return expand(*main);
}

// ---------------------------------------------------------------------------
// Sublanguage

namespace {

bool sub_value_type(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Base:
      return true;
    case Type::Kind::Arrow:
      return sub_value_type(t.dom()) && t.cod().is_comp() && sub_value_type(t.cod().body());
    case Type::Kind::Guard:
      return sub_value_type(t.body());
    case Type::Kind::Comp:
      return false;
  }
  return false;
}

bool sub_comp(const Term& t);

bool sub_value(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Base:
    case Term::Kind::Var:
      return true;
    case Term::Kind::Abs:
      return sub_value_type(t.annotation()) && sub_comp(t.body());
    case Term::Kind::Guard:
      return sub_value(t.body());
    case Term::Kind::StrEq:
      return sub_value(t.lhs()) && sub_value(t.rhs());
    default:
      return false;
  }
}

bool sub_comp(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Unit:
    case Term::Kind::Fix:
    case Term::Kind::Check:
      return sub_value(t.body());
    case Term::Kind::App:
      return sub_value(t.fn()) && sub_value(t.arg());
    case Term::Kind::Let:
      return sub_comp(t.bound()) && sub_comp(t.body());
    case Term::Kind::Mod:
      return sub_comp(t.body());
    case Term::Kind::If:
      return sub_value(t.cond()) && sub_comp(t.then_branch()) && sub_comp(t.else_branch());
    default:
      return false;
  }
}

}  // namespace

bool is_sublanguage(const Term& t) { return sub_value(t) || sub_comp(t); }

}  // namespace lrbac
