#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invbasis/corpus.hpp"
#include "invbasis/proofs.hpp"
#include "invbasis/search.hpp"

using namespace invbasis;

namespace {

const Corpus& corpus() {
  static const Corpus c;
  return c;
}

ProofStep step(std::string rule, Direction dir, std::vector<int> pos, Substitution binding, const char* result) {
  return ProofStep{std::move(rule), dir, Position{std::move(pos)}, std::move(binding), parse_term(result), {}};
}

StepError::Kind failure_of(const Term& current, const ProofStep& s, const RuleLibrary& lib) {
  try {
    verify_step(current, s, lib);
  } catch (const StepError& e) {
    return e.kind();
  }
  FAIL("step unexpectedly verified");
  return StepError::Kind::result_mismatch;
}

// Replays the bundled scripts in order; calls visit(script, library before it).
template <typename Visit>
void for_each_bundled(Visit&& visit) {
  auto lib = corpus().base_library();
  for (const auto& name : corpus().script_names()) {
    const auto s = corpus().read_script(name);
    visit(s, lib);
    promote(s, lib);
  }
}

}  // namespace

TEST_CASE("verify_step applies a rule at a position") {
  const auto lib = corpus().base_library();
  const auto xpp = Substitution{{"x", parse_term("x''")}};
  const auto out = verify_step(parse_term("x' x''"),
                               step("E1", Direction::forward, {1}, xpp, "x' ((x'' x''') x'')"), lib);
  CHECK(render(out) == "(x' ((x'' x''') x''))");

  CHECK(verify_step(parse_term("(x'' x''') x''"), step("E1", Direction::backward, {}, xpp, "x''"), lib) ==
        parse_term("x''"));
}

TEST_CASE("verify_step distinguishes its failures") {
  const auto lib = corpus().base_library();
  const auto cur = parse_term("x' x''");
  const auto xpp = Substitution{{"x", parse_term("x''")}};
  using K = StepError::Kind;

  CHECK(failure_of(cur, step("E2", Direction::forward, {}, {}, "x"), lib) == K::pattern_mismatch);
  CHECK(failure_of(cur, step("E9", Direction::forward, {}, {}, "x"), lib) == K::unknown_rule);
  CHECK(failure_of(cur, step("E1", Direction::forward, {0, 1}, xpp, "x"), lib) == K::invalid_position);
  CHECK(failure_of(cur, step("E1", Direction::forward, {1}, {{"x", parse_term("x")}}, "x' ((x'' x''') x'')"), lib) ==
        K::binding_conflict);
  CHECK(failure_of(cur, step("E1", Direction::forward, {1}, {{"x", parse_term("x''")}, {"q", parse_term("x")}},
                             "x' ((x'' x''') x'')"),
                   lib) == K::unused_binding);
  CHECK(failure_of(cur, step("E1", Direction::forward, {1}, xpp, "x' ((x'' x'') x'')"), lib) == K::result_mismatch);

  // a rule whose right side has a variable the left side lacks needs an explicit binding
  RuleLibrary grow;
  grow.add(parse_identity("GROW: x = x (y y')"));
  CHECK(failure_of(parse_term("z"), step("GROW", Direction::forward, {}, {}, "z (y y')"), grow) ==
        K::unbound_variable);
  CHECK(verify_step(parse_term("z"), step("GROW", Direction::forward, {}, {{"y", parse_term("z'")}}, "z (z' z'')"),
                    grow) == parse_term("z (z' z'')"));
  CHECK(failure_of(parse_term("z"), step("GROW", Direction::backward, {}, {}, "z"), grow) ==
        K::pattern_mismatch);
}

TEST_CASE("LEMMA_1") {
  const auto lemma = corpus().read_script("LEMMA_1");
  CHECK(render(lemma.goal) == "(x' x'') = (x' x)");
  REQUIRE(lemma.steps.size() == 4);
  CHECK(lemma.steps[0].rule == "E1");
  CHECK(lemma.steps[1].rule == "E3");
  CHECK(lemma.steps[2].rule == "E3");
  CHECK(lemma.steps[3].rule == "E1");

  const auto v = verify_script(lemma, corpus().base_library());
  CHECK(v.verified);
  CHECK(v.trace.size() == 5);

  auto broken = lemma;
  broken.steps[1].position = Position{{1}};
  const auto bv = verify_script(broken, corpus().base_library());
  CHECK_FALSE(bv.verified);
  CHECK(bv.failed_step == 1);
  CHECK(bv.failure_kind == StepError::Kind::pattern_mismatch);
}

TEST_CASE("verify_script checks endpoints and citations") {
  const auto lib = corpus().base_library();
  const auto lemma = corpus().read_script("LEMMA_1");

  auto wrong_start = lemma;
  wrong_start.start = parse_term("x x");
  CHECK_FALSE(verify_script(wrong_start, lib).verified);

  auto short_chain = lemma;
  short_chain.steps.pop_back();
  const auto sv = verify_script(short_chain, lib);
  CHECK_FALSE(sv.verified);
  CHECK_FALSE(sv.failed_step);

  auto uncited = lemma;
  uncited.uses = {"E1"};
  const auto uv = verify_script(uncited, lib);
  CHECK_FALSE(uv.verified);
  CHECK(uv.failure_kind == StepError::Kind::uncited_rule);

  CHECK_FALSE(verify_script(corpus().read_script("LEMMA_5"), lib).verified);
}

TEST_CASE("RuleLibrary keeps names unique") {
  RuleLibrary lib = corpus().base_library();
  CHECK_THROWS_AS(lib.add(parse_identity("E1: x = x")), Error);
  CHECK_THROWS_AS(lib.add(parse_identity("x = x")), Error);
  lib.add(parse_identity("REFL: x = x"));
  CHECK(lib.contains("REFL"));
}

TEST_CASE("the bundled scripts verify in dependency order") {
  std::vector<std::string> names;
  for_each_bundled([&](const ProofScript& s, const RuleLibrary& lib) {
    CAPTURE(s.name);
    const auto v = verify_script(s, lib);
    CHECK_MESSAGE(v.verified, v.reason);
    names.push_back(s.name);
  });
  CHECK(names == std::vector<std::string>{"LEMMA_1", "LEMMA_5", "LEMMA_3B", "LEMMA_6", "LEMMA_50", "EQ_136", "EQ_148",
                                          "LEMMA_396", "EQ_452", "EQ_455", "LEMMA_16", "EQ_HMPH",
                                          "THEOREM_INVOLUTION", "THEOREM_ASSOC"});
}

TEST_CASE("property: every single-field mutant of every bundled script is rejected") {
  std::size_t total = 0;
  for_each_bundled([&](const ProofScript& s, const RuleLibrary& lib) {
    const auto mutants = single_field_mutants(s);
    CHECK(mutants.size() >= 4 * s.steps.size());
    for (std::size_t i = 0; i < mutants.size(); ++i) {
      CAPTURE(s.name);
      CAPTURE(i);
      CHECK_FALSE(verify_script(mutants[i], lib).verified);
    }
    total += mutants.size();
  });
  MESSAGE("mutants checked: " << total);
}

TEST_CASE("property: verified goals hold in every model of E_BASIS up to size 3") {
  std::vector<FiniteAlgebra> models;
  for (int n = 1; n <= 3; ++n) {
    for (auto& m : enumerate_models(corpus().load_axioms("E_BASIS"), n)) models.push_back(std::move(m));
  }
  REQUIRE(models.size() == 1 + 4 + 24);
  for_each_bundled([&](const ProofScript& s, const RuleLibrary&) {
    for (const auto& m : models) CHECK(check_identity(m, s.goal).holds);
  });
}

TEST_CASE("check_semantic_consequence") {
  const auto basis = corpus().load_axioms("E_BASIS");
  const auto antihom = check_semantic_consequence(basis, parse_identity("(x y)' = y' x'"), 3);
  REQUIRE(std::holds_alternative<NoCountermodel>(antihom));
  CHECK(std::get<NoCountermodel>(antihom).max_size == 3);
  CHECK(std::holds_alternative<NoCountermodel>(check_semantic_consequence(basis, parse_identity("x = x"), 3)));

  const auto cand = check_semantic_consequence(corpus().load_axioms("CANDIDATE"), parse_identity("x'' = x"), 3);
  REQUIRE(std::holds_alternative<Countermodel>(cand));
  CHECK(std::get<Countermodel>(cand).model.size() == 2);

  const auto cex = corpus().load_model("CEX12");
  CHECK(satisfies_all(cex, corpus().load_axioms("VARIANT_FAIL")));
  CHECK_FALSE(check_identity(cex, parse_identity("x'' = x")).holds);
}

TEST_CASE("parse_script rejects malformed documents") {
  CHECK_THROWS_AS(parse_script("{"), FormatError);
  CHECK_THROWS_AS(parse_script(R"({"name": "A", "goal": "x = x", "start": "x"})"), FormatError);
  CHECK_THROWS_AS(parse_script(R"({"name": "A", "goal": "x = x", "start": "x",
      "steps": [{"rule": "E1", "direction": "sideways", "result": "x"}]})"),
                  FormatError);
  const auto s = parse_script(R"({"name": "A", "goal": "x = x", "start": "x", "steps": []})");
  CHECK(verify_script(s, RuleLibrary{}).verified);
}
