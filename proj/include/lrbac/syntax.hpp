#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrbac/error.hpp"
#include "lrbac/role.hpp"

namespace lrbac {

enum class BaseType { Unit, Int, Str, Bool };

const char* to_string(BaseType b);

class Type {
 public:
  enum class Kind { Base, Arrow, Guard, Comp };

  static Type base(BaseType b);
  static Type unit() { return base(BaseType::Unit); }
  static Type int_() { return base(BaseType::Int); }
  static Type str() { return base(BaseType::Str); }
  static Type bool_() { return base(BaseType::Bool); }
  static Type arrow(Type dom, Type cod);
  // {role} body
  static Type guard(Role role, Type body);
  // [effect] body
  static Type comp(Role effect, Type body);

  Kind kind() const;
  BaseType base_type() const;
  const Type& dom() const;
  const Type& cod() const;
  // Body of a guard or computation type.
  const Type& body() const;
  // Guard role or computation effect.
  const Role& role() const;

  bool is_comp() const { return kind() == Kind::Comp; }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Structural identity, roles compared syntactically.
bool same_type(const Type& a, const Type& b);
// Structural identity, roles compared up to equivalence.
bool type_equiv(const Type& a, const Type& b);

std::string to_string(const Type& t);
Type parse_type(std::string_view src, const std::map<std::string, Role>& aliases = {});

struct Literal {
  BaseType type = BaseType::Unit;
  // "()" for unit, decimal digits for Int, raw contents for Str, true/false.
  std::string text = "()";

  static Literal unit() { return {BaseType::Unit, "()"}; }
  static Literal integer(long long v) { return {BaseType::Int, std::to_string(v)}; }
  static Literal string(std::string s) { return {BaseType::Str, std::move(s)}; }
  static Literal boolean(bool b) { return {BaseType::Bool, b ? "true" : "false"}; }

  bool operator==(const Literal&) const = default;
};

class Term {
 public:
  enum class Kind { Base, Var, Abs, App, Fix, Guard, Check, Unit, Let, Mod, If, StrEq };

  static Term base(Literal lit);
  static Term var(std::string name);
  static Term abs(std::string param, Type annot, Term body);
  static Term app(Term fn, Term arg);
  static Term fix(Term t);
  static Term guard(Role role, Term body);
  static Term check(Term t);
  // The computation block [t].
  static Term unit(Term t);
  static Term let(std::string name, Term bound, Term body);
  static Term mod(RoleModifier m, Term body);
  static Term if_(Term cond, Term then_branch, Term else_branch);
  static Term str_eq(Term lhs, Term rhs);

  Kind kind() const;
  const Literal& literal() const;
  // Variable name, or the binder of Abs / Let.
  const std::string& name() const;
  const Type& annotation() const;
  // Guard role.
  const Role& role() const;
  const RoleModifier& modifier() const;

  // Body of Abs, Guard, Unit, Mod, Let; operand of Fix and Check.
  const Term& body() const;
  const Term& fn() const;
  const Term& arg() const;
  const Term& bound() const;
  const Term& cond() const;
  const Term& then_branch() const;
  const Term& else_branch() const;
  const Term& lhs() const;
  const Term& rhs() const;
  const std::vector<Term>& children() const;

  // Sorted, duplicate free.
  const std::vector<std::string>& free_vars() const;
  bool has_free(const std::string& x) const;

  SourceLocation location() const;
  Term at(SourceLocation loc) const;

  // Same kind and payload, new children (in children() order).
  Term with_children(std::vector<Term> kids) const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool is_value(const Term& t);
std::size_t term_size(const Term& t);

// Capture-avoiding substitution of `replacement` for free `x` in `body`.
Term subst(const Term& body, const std::string& x, const Term& replacement);

// Equality up to renaming of bound variables; roles and annotations compared
// syntactically.
bool alpha_equiv(const Term& a, const Term& b);

// Renames binders so that every bound name is distinct and differs from the
// free variables.
Term freshen(const Term& t);

std::string print_term(const Term& t);
Term parse_term(std::string_view src, const std::map<std::string, Role>& aliases = {});

// Conformance to the restricted grammar where values and computations are
// disjoint: values are base values, variables, abstractions over
// computations, and guards of values; computations are [v], v v, fix v,
// check v, let, and role modifiers over computations.
bool is_sublanguage(const Term& t);

// A source file: role aliases (`role Name = ROLE ;;`), definitions
// (`def name = term ;;`) and an optional main term.
struct Program {
  std::vector<std::pair<std::string, Role>> roles;
  std::vector<std::pair<std::string, Term>> definitions;
  std::optional<Term> main;

  std::map<std::string, Role> role_aliases() const;
  // The definition with every earlier definition inlined.
  std::optional<Term> definition(const std::string& name) const;
  // The main term with all definitions inlined. Throws if there is none.
  Term expanded_main() const;
  // Inlines the definitions into an arbitrary term.
  Term expand(const Term& t) const;
};

Program parse_program(std::string_view src);

}  // namespace lrbac
