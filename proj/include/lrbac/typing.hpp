#pragma once

// Type synthesis for the sufficient and necessary analyses, and the
// amplification-controlled variant with accumulated guards.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lrbac/error.hpp"
#include "lrbac/role.hpp"
#include "lrbac/syntax.hpp"

namespace lrbac {

enum class SystemId { Sufficient, Necessary };

const char* to_string(SystemId s);
// Accepts sufficient/alpha and necessary/beta.
std::optional<SystemId> parse_system(std::string_view s);

// Later entries shadow earlier ones.
using TypingContext = std::vector<std::pair<std::string, Type>>;

class TypeError : public Error {
 public:
  TypeError(std::string rule, const std::string& what, Term subterm, std::optional<Role> needed = std::nullopt,
            std::optional<Role> had = std::nullopt);

  // Name of the typing rule whose premise failed, e.g. "t-mod-dn".
  const std::string& rule() const { return rule_; }
  const Term& subterm() const { return subterm_; }
  // For role failures: the role that had to be dominated, and the role
  // that failed to dominate it.
  const std::optional<Role>& needed() const { return needed_; }
  const std::optional<Role>& had() const { return had_; }

 private:
  std::string rule_;
  Term subterm_;
  std::optional<Role> needed_;
  std::optional<Role> had_;
};

struct TypeOptions {
  // Replace t-mod-up / t-mod-dn by the single rule t-mod-* (sufficient
  // system only).
  bool alt_mod = false;
};

bool subtype(SystemId sys, const Type& t1, const Type& t2);
bool subtype(SystemId sys, const Type& t1, const Type& t2, const RoleUniverse& u);

// Least upper / greatest lower bound in the subtype order, when the two
// types have the same shape.
std::optional<Type> type_lub(SystemId sys, const Type& a, const Type& b);
std::optional<Type> type_glb(SystemId sys, const Type& a, const Type& b);

Type synthesize(SystemId sys, const TypingContext& ctx, const Term& t, const TypeOptions& opts = {});

// The amplification-controlled system; guard_context is the role of the
// guards enclosing t (bottom at top level).
Type synthesize_amp(const TypingContext& ctx, const Role& guard_context, const Term& t, SystemId sys,
                    const TypeOptions& opts = {});

// r dominates T: T is not a computation type, or it is [B]S with r >= B.
bool dominates_type(const Role& r, const Type& t);

// Equal up to role equivalence, or two computation types over equal bodies.
bool compatible(const Type& t1, const Type& t2);

// Every role in t replaced by its canonical form.
Type canonical_type(const Type& t);

}  // namespace lrbac
