#pragma once

// Small-step, call-by-name evaluation under a context role.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lrbac/role.hpp"
#include "lrbac/syntax.hpp"

namespace lrbac {

// LRBAC_FUEL when set to a non-negative integer, otherwise 10000.
std::size_t default_fuel();

struct EvalConfig {
  Role context_role = Role::top();
  std::size_t fuel = default_fuel();
  // Marking on check and role modification errors.
  bool amp_mode = false;
  bool record_trace = false;
};

struct StepResult {
  enum class Kind { Reduced, AtValue, RoleError, AmpError, Stuck };

  Kind kind = Kind::AtValue;
  std::optional<Term> next;
  // Reduction rule that fired (r-app, r-chk, ...), for Reduced.
  std::string rule;
  // RoleError: guard role and the context role at the check.
  Role needed;
  Role had;
  // AmpError: the offending modifier.
  std::optional<Term> site;
  // Stuck: what went wrong.
  std::string reason;
};

StepResult step(const EvalConfig& cfg, const Term& t);

struct TraceStep {
  Term from;
  Term to;
  std::string rule;
};

struct Outcome {
  enum class Kind { Value, RoleError, AmpError, Stuck, FuelExhausted };

  Kind kind = Kind::Value;
  // The value, or the last term reached.
  Term term = Term::base(Literal::unit());
  Role needed;
  Role had;
  std::optional<Term> site;
  std::string reason;
  std::size_t steps = 0;
  std::vector<TraceStep> trace;
};

const char* to_string(Outcome::Kind k);

Outcome evaluate(const EvalConfig& cfg, const Term& t);

// Annotates every role modifier in t with a, joining with existing
// annotations.
Term mark(const Role& a, const Term& t);

// The first modifier in evaluation position that lacks amplification
// authority, if any.
std::optional<Term> find_amp_error(const Term& t);
bool amp_error(const Term& t);

}  // namespace lrbac
