#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "invbasis/algebra.hpp"
#include "invbasis/search.hpp"
#include "invbasis/term.hpp"

namespace invbasis {

/// Named identities a proof may cite. Names are unique and entries keep the
/// order in which they were added.
class RuleLibrary {
 public:
  RuleLibrary() = default;
  explicit RuleLibrary(const std::vector<Identity>& axioms);

  /// Throws Error when the identity is unnamed or the name is taken.
  void add(Identity rule);
  const Identity* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<Identity>& rules() const noexcept { return rules_; }

 private:
  std::vector<Identity> rules_;
};

enum class Direction { forward, backward };

struct ProofStep {
  std::string rule;
  Direction direction = Direction::forward;
  Position position;
  Substitution binding;
  Term result;
  std::string checkpoint;  // when set, "start = result" is promoted under this name
};

struct ProofScript {
  std::string name;
  Identity goal;
  Term start;
  std::vector<ProofStep> steps;
  std::vector<std::string> uses;
};

class StepError : public Error {
 public:
  enum class Kind {
    unknown_rule,
    uncited_rule,
    invalid_position,
    pattern_mismatch,
    binding_conflict,
    unbound_variable,
    unused_binding,
    result_mismatch,
  };

  StepError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(StepError::Kind kind);

/// Applies one rewrite and returns the computed term. Throws StepError when the
/// rule is unknown, the position is invalid, the rule side does not match, the
/// binding disagrees with the match or leaves a variable of the produced side
/// unbound, or the stated result differs from the computed one.
Term verify_step(const Term& current, const ProofStep& step, const RuleLibrary& lib);

struct ScriptVerdict {
  bool verified = false;
  std::vector<Term> trace;  // start, then each verified result
  std::optional<std::size_t> failed_step;  // 0-based
  std::optional<StepError::Kind> failure_kind;
  std::string reason;
};

/// Checks start == goal.lhs, every step in order, and last result == goal.rhs.
/// Steps may only cite rules listed in `uses`, all of which must be in `lib`.
ScriptVerdict verify_script(const ProofScript& script, const RuleLibrary& lib);

/// Adds the goal (named after the script) and every checkpoint to `lib`.
/// Call only after a successful verify_script.
void promote(const ProofScript& script, RuleLibrary& lib);

/// Parses the JSON proof script format.
ProofScript parse_script(std::string_view json_text);

/// Every single-field corruption of every step: rule renamed (to an unknown
/// name and to each other cited rule), direction flipped, each position entry
/// flipped, each binding value wrapped in an extra inverse, and the stated
/// result wrapped in an extra inverse. Steps with an empty binding get one
/// spurious entry instead.
std::vector<ProofScript> single_field_mutants(const ProofScript& script);

struct NoCountermodel {
  int max_size;
};

struct Countermodel {
  FiniteAlgebra model;
};

using ConsequenceOutcome = std::variant<NoCountermodel, Countermodel, OutOfBudget>;

/// Looks for a model of `axioms` failing `goal` at sizes 1..max_size.
ConsequenceOutcome check_semantic_consequence(const std::vector<Identity>& axioms, const Identity& goal,
                                              int max_size, const SearchLimits& limits = {},
                                              unsigned workers = 1);

}  // namespace invbasis
