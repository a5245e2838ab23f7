#pragma once

// Executable versions of the metatheory: exhaustive sweeps over role
// classes and a type-directed term generator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrbac/eval.hpp"
#include "lrbac/role.hpp"
#include "lrbac/syntax.hpp"
#include "lrbac/typing.hpp"

namespace lrbac {

struct SafeSetReport {
  Term term;
  RoleUniverse universe;
  // One entry per enumerated role class, in enumeration order.
  std::vector<std::pair<Role, Outcome::Kind>> classification;

  // Roles whose run ended in the given outcome.
  std::vector<Role> roles_with(Outcome::Kind k) const;
};

SafeSetReport safe_set(const Term& t, const RoleUniverse& u, std::size_t fuel = default_fuel(),
                       bool amp_mode = false);

struct TermGenConfig {
  std::uint64_t seed = 0;
  int max_depth = 4;
  RoleUniverse universe = RoleUniverse::of_atoms({"A", "B"});
  SystemId target_system = SystemId::Sufficient;
  bool branch_free = false;
  // Generate for the amplification-controlled system: up[R] only where the
  // enclosing guards supply amp(R).
  bool amp_mode = false;
  // No subsumption anywhere: exact argument annotations, no fix.
  bool exact = false;
};

struct GenStats {
  std::size_t terms = 0;
  std::size_t retries = 0;
  std::size_t fallbacks = 0;
  std::size_t internal_nodes = 0;
  // Internal nodes that are checks, guards or role modifiers.
  std::size_t role_nodes = 0;
};

// A closed term accepted by the target system. Deterministic per config.
Term gen_typed_term(const TermGenConfig& cfg, GenStats* stats = nullptr);

// Random role over the atoms and amp generators of u.
Role gen_role(std::uint64_t seed, const RoleUniverse& u, int depth = 3);
// Random type with roles over u.
Type gen_type(std::uint64_t seed, const RoleUniverse& u, int depth = 3);
// A random type followed by successive supertypes in sys.
std::vector<Type> gen_subtype_chain(std::uint64_t seed, const RoleUniverse& u, SystemId sys, int depth,
                                    std::size_t length);

struct Verdict {
  bool passed = true;
  // Cases examined (roles, steps or role pairs, depending on the check).
  std::size_t cases = 0;
  // Cases ended by fuel exhaustion, counted toward divergence.
  std::size_t fuel_exhausted = 0;
  // Cases where the synthesized type was not a good enough witness.
  std::size_t flagged = 0;
  std::string detail;
  std::optional<Role> counterexample_role;
  std::optional<Term> counterexample;
};

// Well-typed in the sufficient system and run at a role dominating the
// type: never a role error or stuck.
Verdict check_sufficiency(const Term& t, const RoleUniverse& u, std::size_t fuel = default_fuel());

// Well-typed in the necessary system and run at a role not dominating the
// type: never a value.
Verdict check_necessity(const Term& t, const RoleUniverse& u, std::size_t fuel = default_fuel());

// Every step along the run at r preserves typing: the successor's type is a
// subtype in the sufficient system; in the necessary system it is a subtype
// of the computation type with the same effect, and domination carries over.
Verdict check_preservation(SystemId sys, const Term& t, const Role& r, std::size_t fuel = 1000);

// Never stuck along the run at r; in the sufficient system also no role
// error when r dominates the type.
Verdict check_progress(SystemId sys, const Term& t, const Role& r, std::size_t fuel = 1000);

// For all role classes A >= B, every step taken at B is taken identically
// at A, and the set of roles yielding a value is upward closed.
Verdict check_monotonicity(const Term& t, const RoleUniverse& u, std::size_t fuel = 1000);

// Typable in the amplification-controlled system, and no role
// modification error along the run at any role class.
Verdict check_amp_safety(const Term& t, const RoleUniverse& u, std::size_t fuel = default_fuel(),
                         SystemId sys = SystemId::Sufficient);
Verdict check_amp_safety(const Term& t, const std::vector<Role>& roles, std::size_t fuel = default_fuel(),
                         SystemId sys = SystemId::Sufficient);

// The sufficient system with and without the single t-mod-* rule accepts
// the same way and, when both accept, synthesizes equivalent types.
Verdict check_alt_mod_agreement(const Term& t);

// Boolean algebra laws for a, b, c together with the amp laws.
Verdict check_role_axioms(const Role& a, const Role& b, const Role& c);

// Reflexivity on each type, and transitivity whenever t1 <= t2 <= t3.
Verdict check_subtype_order(SystemId sys, const Type& t1, const Type& t2, const Type& t3);

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t terms = 100;
  int depth = 4;
  std::size_t fuel = default_fuel();
};

struct SuiteResult {
  std::string check;
  std::size_t terms = 0;
  std::size_t failures = 0;
  std::size_t flagged = 0;
  std::size_t fuel_exhausted = 0;
  // Replay information for the first failure.
  std::optional<std::uint64_t> failing_seed;
  std::string detail;
};

// Runs every harness on generated terms over a two-atom universe.
std::vector<SuiteResult> run_suite(const SuiteConfig& cfg);

}  // namespace lrbac
