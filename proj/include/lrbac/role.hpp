#pragma once

// Role algebra: roles are elements of the free boolean algebra over a set of
// atoms, extended with the unary `amp` constructor (the right to amplify to a
// role). Construction is purely structural; every algebraic law lives in
// equiv() / dominates(), which decide the theory by exhaustive valuation.

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrbac/error.hpp"

namespace lrbac {

class Role {
 public:
  enum class Kind { Bottom, Top, Atom, Meet, Join, Neg, Amp };

  // Default-constructed role is the bottom element.
  Role();

  static Role bottom();
  static Role top();
  static Role atom(std::string name);
  static Role meet(Role l, Role r);
  static Role join(Role l, Role r);
  static Role neg(Role r);
  static Role amp(Role r);

  Kind kind() const;
  // Atom name; empty for other kinds.
  const std::string& name() const;
  // Left/right operand of Meet and Join.
  const Role& lhs() const;
  const Role& rhs() const;
  // Operand of Neg and Amp.
  const Role& operand() const;

  bool is_atom() const { return kind() == Kind::Atom; }

  // Syntactic identity (no algebra).
  bool same_as(const Role& other) const;

 private:
  struct Node;
  explicit Role(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

inline Role operator|(Role a, Role b) { return Role::join(std::move(a), std::move(b)); }
inline Role operator&(Role a, Role b) { return Role::meet(std::move(a), std::move(b)); }
inline Role operator!(Role a) { return Role::neg(std::move(a)); }

enum class Direction { Up, Dn };

// A role modifier up[A] / dn[A], optionally carrying the check annotation of
// a checked modifier up[A]^[B].
struct RoleModifier {
  Direction direction = Direction::Up;
  Role role;
  std::optional<Role> check;

  static RoleModifier up(Role r) { return {Direction::Up, std::move(r), std::nullopt}; }
  static RoleModifier dn(Role r) { return {Direction::Dn, std::move(r), std::nullopt}; }
  bool checked() const { return check.has_value(); }
};

// up[A] r = A | r, dn[A] r = A & r. Check annotations are ignored.
Role apply_modifier(const RoleModifier& m, const Role& r);

// b \ a, i.e. b & !a.
Role rminus(const Role& b, const Role& a);

// The finite carrier of the decision procedure: the atoms plus one generator
// per literal psi for which amp(psi) occurs after pushing amp inwards.
class RoleUniverse {
 public:
  RoleUniverse() = default;
  RoleUniverse(std::initializer_list<Role> roles);

  static RoleUniverse of(const std::vector<Role>& roles);
  static RoleUniverse of_atoms(const std::vector<std::string>& atoms);

  // Registers every atom and amp generator mentioned by r.
  void add(const Role& r);
  void add_atom(const std::string& name);

  const std::vector<std::string>& atoms() const { return atoms_; }
  // The literals psi whose amplification is a generator, dependencies first.
  const std::vector<Role>& amp_generators() const { return generators_; }

  std::size_t size() const { return atoms_.size() + generators_.size(); }
  bool covers(const Role& r) const;

  std::optional<std::size_t> atom_index(const std::string& name) const;
  std::optional<std::size_t> generator_index(const std::string& key) const;

 private:
  void add_generator(const Role& literal);

  std::vector<std::string> atoms_;
  std::vector<Role> generators_;
  std::map<std::string, std::size_t> atom_index_;
  std::map<std::string, std::size_t> generator_index_;
};

// Decides r1 == r2 in the free theory plus the amp laws. Throws
// UniverseError when either side mentions something outside u.
bool equiv(const Role& r1, const Role& r2, const RoleUniverse& u);
// r1 >= r2, i.e. r1 == r1 | r2.
bool dominates(const Role& r1, const Role& r2, const RoleUniverse& u);

// Overloads that use the smallest universe covering both arguments.
bool equiv(const Role& r1, const Role& r2);
bool dominates(const Role& r1, const Role& r2);

// One representative per equivalence class over u, at most `limit` of them.
// Requires u.size() <= 3.
std::vector<Role> enumerate_roles(const RoleUniverse& u, std::size_t limit = 1u << 16);

// Pushes amp through complement (to literals) and through meet/join, so that
// amp only ever wraps an atom, a negated atom, or another generator.
Role normalize_amp(const Role& r);

// Structural printing in the concrete role grammar.
std::string to_string(const Role& r);

// Canonical disjunctive normal form: equivalent roles print identically.
// Literals in a term and terms in the disjunction are sorted.
std::string canonical_string(const Role& r);
Role canonical_form(const Role& r);

// Role concrete syntax: 0, 1, identifiers, !r, r & s, r | s, amp(r), (r).
// Identifiers found in `aliases` are replaced by their definition.
Role parse_role(std::string_view src, const std::map<std::string, Role>& aliases = {});

}  // namespace lrbac
