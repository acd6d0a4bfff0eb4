#include "invbasis/proofs.hpp"

#include <algorithm>

#include <json.hpp>

namespace invbasis {

RuleLibrary::RuleLibrary(const std::vector<Identity>& axioms) {
  for (const auto& a : axioms) add(a);
}

void RuleLibrary::add(Identity rule) {
  if (rule.name.empty()) throw Error("library rules must be named");
  if (contains(rule.name)) throw Error("rule '" + rule.name + "' is already in the library");
  rules_.push_back(std::move(rule));
}

const Identity* RuleLibrary::find(std::string_view name) const {
  const auto it = std::find_if(rules_.begin(), rules_.end(), [&](const Identity& r) { return r.name == name; });
  return it == rules_.end() ? nullptr : &*it;
}

std::string_view to_string(StepError::Kind kind) {
  switch (kind) {
    case StepError::Kind::unknown_rule: return "unknown rule";
    case StepError::Kind::uncited_rule: return "rule not cited by the script";
    case StepError::Kind::invalid_position: return "invalid position";
    case StepError::Kind::pattern_mismatch: return "pattern mismatch";
    case StepError::Kind::binding_conflict: return "binding conflict";
    case StepError::Kind::unbound_variable: return "unbound variable";
    case StepError::Kind::unused_binding: return "unused binding";
    case StepError::Kind::result_mismatch: return "result mismatch";
  }
  return "?";
}

Term verify_step(const Term& current, const ProofStep& step, const RuleLibrary& lib) {
  using K = StepError::Kind;
  const Identity* rule = lib.find(step.rule);
  if (!rule) throw StepError(K::unknown_rule, "unknown rule '" + step.rule + "'");
  if (!is_valid_position(current, step.position)) {
    throw StepError(K::invalid_position, "position " + render(step.position) + " is not valid in " + render(current));
  }
  const bool fwd = step.direction == Direction::forward;
  const Term& from = fwd ? rule->lhs : rule->rhs;
  const Term& to = fwd ? rule->rhs : rule->lhs;
  const Term& redex = subterm_at(current, step.position);

  auto s = match_term(from, redex);
  if (!s) {
    throw StepError(K::pattern_mismatch, step.rule + (fwd ? " (forward)" : " (backward)") + " does not match " +
                                             render(redex));
  }
  const auto from_vars = variables(from);
  const auto to_vars = variables(to);
  for (const auto& [var, value] : step.binding) {
    if (from_vars.count(var)) {
      if (!(s->at(var) == value)) {
        throw StepError(K::binding_conflict, "binding " + var + " -> " + render(value) + " disagrees with match " +
                                                 var + " -> " + render(s->at(var)));
      }
    } else if (to_vars.count(var)) {
      s->emplace(var, value);
    } else {
      throw StepError(K::unused_binding, "binding for '" + var + "' does not occur in " + step.rule);
    }
  }
  for (const auto& var : to_vars) {
    if (!s->count(var)) {
      throw StepError(K::unbound_variable, "variable '" + var + "' introduced by " + step.rule + " needs a binding");
    }
  }
  Term computed = replace_at(current, step.position, substitute(to, *s));
  if (!(computed == step.result)) {
    throw StepError(K::result_mismatch, "stated result " + render(step.result) + " differs from computed " +
                                            render(computed));
  }
  return computed;
}

ScriptVerdict verify_script(const ProofScript& script, const RuleLibrary& lib) {
  ScriptVerdict v;
  for (const auto& u : script.uses) {
    if (!lib.contains(u)) {
      v.failure_kind = StepError::Kind::unknown_rule;
      v.reason = "cited rule '" + u + "' is not in the library";
      return v;
    }
  }
  if (!(script.start == script.goal.lhs)) {
    v.reason = "start " + render(script.start) + " is not the goal's left-hand side " + render(script.goal.lhs);
    return v;
  }
  Term current = script.start;
  v.trace.push_back(current);
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const auto& step = script.steps[i];
    try {
      if (std::find(script.uses.begin(), script.uses.end(), step.rule) == script.uses.end()) {
        throw StepError(lib.contains(step.rule) ? StepError::Kind::uncited_rule : StepError::Kind::unknown_rule,
                        "rule '" + step.rule + "' is not cited by the script");
      }
      current = verify_step(current, step, lib);
    } catch (const StepError& e) {
      v.failed_step = i;
      v.failure_kind = e.kind();
      v.reason = e.what();
      return v;
    }
    v.trace.push_back(current);
  }
  if (!(current == script.goal.rhs)) {
    v.reason = "chain ends at " + render(current) + ", not at the goal's right-hand side " + render(script.goal.rhs);
    return v;
  }
  v.verified = true;
  return v;
}

void promote(const ProofScript& script, RuleLibrary& lib) {
  for (const auto& step : script.steps) {
    if (!step.checkpoint.empty()) lib.add(Identity{script.start, step.result, step.checkpoint});
  }
  lib.add(Identity{script.goal.lhs, script.goal.rhs, script.name});
}

ProofScript parse_script(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    const auto name = j.at("name").get<std::string>();
    auto goal = parse_identity(j.at("goal").get<std::string>());
    goal.name = name;
    ProofScript s{name, goal, parse_term(j.at("start").get<std::string>()), {}, {}};
    if (j.contains("uses")) s.uses = j.at("uses").get<std::vector<std::string>>();
    for (const auto& js : j.at("steps")) {
      Direction direction = Direction::forward;
      const auto dir = js.value("direction", std::string("forward"));
      if (dir == "backward") {
        direction = Direction::backward;
      } else if (dir != "forward") {
        throw FormatError("direction must be 'forward' or 'backward', got '" + dir + "'");
      }
      Substitution binding;
      if (js.contains("binding")) {
        for (const auto& [var, text] : js.at("binding").items()) {
          if (!is_variable_name(var)) throw FormatError("binding key '" + var + "' is not a variable name");
          binding.emplace(var, parse_term(text.get<std::string>()));
        }
      }
      s.steps.push_back(ProofStep{js.at("rule").get<std::string>(), direction,
                                  Position{js.value("position", std::vector<int>{})}, std::move(binding),
                                  parse_term(js.at("result").get<std::string>()),
                                  js.value("checkpoint", std::string{})});
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed proof script: ") + e.what());
  }
}

std::vector<ProofScript> single_field_mutants(const ProofScript& script) {
  std::vector<ProofScript> out;
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const auto mutate = [&](auto&& change) {
      ProofScript m = script;
      change(m.steps[i]);
      out.push_back(std::move(m));
    };
    const auto& step = script.steps[i];

    mutate([](ProofStep& s) { s.rule = s.rule + "_UNKNOWN"; });
    for (const auto& other : script.uses) {
      if (other != step.rule) mutate([&](ProofStep& s) { s.rule = other; });
    }
    mutate([](ProofStep& s) {
      s.direction = s.direction == Direction::forward ? Direction::backward : Direction::forward;
    });
    for (std::size_t k = 0; k < step.position.path.size(); ++k) {
      mutate([k](ProofStep& s) { s.position.path[k] = 1 - s.position.path[k]; });
    }
    if (step.binding.empty()) {
      mutate([](ProofStep& s) { s.binding.emplace("x", Term::inverse(Term::variable("x"))); });
    }
    for (const auto& [var, value] : step.binding) {
      mutate([&var = var](ProofStep& s) { s.binding.at(var) = Term::inverse(s.binding.at(var)); });
    }
    mutate([](ProofStep& s) { s.result = Term::inverse(s.result); });
  }
  return out;
}

ConsequenceOutcome check_semantic_consequence(const std::vector<Identity>& axioms, const Identity& goal,
                                              int max_size, const SearchLimits& limits, unsigned workers) {
  Identity negated = goal;
  negated.name.clear();
  for (int size = 1; size <= max_size; ++size) {
    const auto out = find_model(SearchProblem{axioms, {negated}, size, limits, workers});
    if (const auto* m = std::get_if<FoundModel>(&out)) return Countermodel{m->algebra};
    if (const auto* o = std::get_if<OutOfBudget>(&out)) return *o;
  }
  return NoCountermodel{max_size};
}

}  // namespace invbasis
