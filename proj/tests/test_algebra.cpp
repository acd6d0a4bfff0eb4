#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "invbasis/algebra.hpp"
#include "invbasis/corpus.hpp"
#include "invbasis/model_io.hpp"

using namespace invbasis;

namespace {

const Corpus& corpus() {
  static const Corpus c;
  return c;
}

FiniteAlgebra random_algebra(std::mt19937& rng, int n) {
  std::uniform_int_distribution<Element> e(0, n - 1);
  std::vector<Element> mul(static_cast<std::size_t>(n * n)), inv(static_cast<std::size_t>(n));
  for (auto& c : mul) c = e(rng);
  for (auto& c : inv) c = e(rng);
  return FiniteAlgebra(n, mul, inv);
}

// Deliberately simple re-implementations used as oracles.
Element naive_eval(const FiniteAlgebra& a, const Term& t, const std::map<std::string, Element>& asg) {
  if (t.is_variable()) return asg.at(t.name());
  if (t.is_inverse()) return a.inv_table()[naive_eval(a, t.arg(), asg)];
  return a.mul_table()[naive_eval(a, t.left(), asg) * a.size() + naive_eval(a, t.right(), asg)];
}

bool naive_holds(const FiniteAlgebra& a, const Identity& id) {
  const auto vars = variables(id);
  const std::vector<std::string> names(vars.begin(), vars.end());
  std::vector<Element> vals(names.size(), 0);
  while (true) {
    std::map<std::string, Element> asg;
    for (std::size_t i = 0; i < names.size(); ++i) asg[names[i]] = vals[i];
    if (naive_eval(a, id.lhs, asg) != naive_eval(a, id.rhs, asg)) return false;
    std::size_t i = vals.size();
    while (i > 0 && ++vals[i - 1] == a.size()) vals[--i] = 0;
    if (i == 0) return true;
  }
}

bool naive_inverse_algebra(const FiniteAlgebra& a) {
  const int n = a.size();
  const auto m = [&](int x, int y) { return a.mul_table()[x * n + y]; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (m(m(x, y), z) != m(x, m(y, z))) return false;
  for (int x = 0; x < n; ++x) {
    int count = 0, which = -1;
    for (int y = 0; y < n; ++y) {
      if (m(m(x, y), x) == x && m(m(y, x), y) == y) {
        ++count;
        which = y;
      }
    }
    if (count != 1 || a.inv_table()[x] != which) return false;
  }
  return true;
}

std::vector<Identity> sample_identities() {
  return {parse_identity("x = (x x') x"),
          parse_identity("(x x') (y' y) = (y' y) (x x')"),
          parse_identity("(x y) z = x (y z'')"),
          parse_identity("(x y) z = x (y z)"),
          parse_identity("x'' = x"),
          parse_identity("(x y)' = y' x'"),
          parse_identity("x y = y x"),
          parse_identity("x x = x")};
}

}  // namespace

TEST_CASE("FiniteAlgebra validates its tables") {
  CHECK_THROWS_AS(FiniteAlgebra(0, {}, {}), Error);
  CHECK_THROWS_AS(FiniteAlgebra(2, {0, 0, 0}, {0, 0}), Error);
  CHECK_THROWS_AS(FiniteAlgebra(2, {0, 0, 0, 2}, {0, 0}), Error);
  CHECK_THROWS_AS(FiniteAlgebra(2, {0, 0, 0, 0}, {0, -1}), Error);
  const auto a = FiniteAlgebra::from_rows({{0, 1}, {1, 0}}, {0, 1}, "Z2");
  CHECK(a.mul(1, 1) == 0);
  CHECK(a.name() == "Z2");
}

TEST_CASE("eval") {
  const auto cex = corpus().load_model("CEX12");
  CHECK(eval(cex, parse_term("(x x) x"), {{"x", 0}}) == 7);
  CHECK(eval(cex, parse_term("x (x x)"), {{"x", 0}}) == 6);
  const auto t1 = corpus().load_model("TRIVIAL1");
  CHECK(eval(t1, parse_term("((x y') z)''"), {{"x", 0}, {"y", 0}, {"z", 0}}) == 0);
  CHECK_THROWS_AS(eval(cex, parse_term("x y"), {{"x", 0}}), EvalError);
  CHECK_THROWS_AS(eval(cex, parse_term("x"), {{"x", 12}}), EvalError);
}

TEST_CASE("check_identity on CEX12 and DEFECT2") {
  const auto cex = corpus().load_model("CEX12");
  CHECK(check_identity(cex, parse_identity("x = (x x') x")).holds);

  const auto assoc = check_identity(cex, parse_identity("(x y) z = x (y z)"));
  REQUIRE_FALSE(assoc.holds);
  CHECK(assoc.witness->assignment == Assignment{{"x", 0}, {"y", 0}, {"z", 0}});
  CHECK(assoc.witness->lhs_value == 7);
  CHECK(assoc.witness->rhs_value == 6);

  const auto invol = check_identity(cex, parse_identity("x'' = x"));
  REQUIRE_FALSE(invol.holds);
  CHECK(invol.witness->lhs_value == 2);

  const auto defect = corpus().load_model("DEFECT2");
  const auto e3 = check_identity(defect, parse_identity("(x y) z = x (y z'')"));
  REQUIRE_FALSE(e3.holds);
  CHECK(e3.witness->assignment == Assignment{{"x", 1}, {"y", 1}, {"z", 0}});
  CHECK(e3.witness->lhs_value == 0);
  CHECK(e3.witness->rhs_value == 1);
  CHECK(e3.assignments_examined == 7);
}

TEST_CASE("check_axiom_set reports every identity") {
  const auto cex = corpus().load_model("CEX12");
  for (const auto& r : check_axiom_set(cex, corpus().load_axioms("VARIANT_FAIL"))) CHECK(r.holds);

  const auto defect = corpus().load_model("DEFECT2");
  CHECK(satisfies_all(defect, corpus().load_axioms("CANDIDATE")));

  const auto reports = check_axiom_set(corpus().load_model("TRIVIAL1"), corpus().load_axioms("E_BASIS"));
  CHECK(reports.size() == 3);
  for (const auto& r : reports) CHECK(r.holds);

  const auto basis = check_axiom_set(cex, corpus().load_axioms("E_BASIS"));
  CHECK(basis[0].holds);
  CHECK(basis[1].holds);
  CHECK_FALSE(basis[2].holds);
}

TEST_CASE("check_identity budget is a hard error") {
  const auto cex = corpus().load_model("CEX12");
  CheckOptions tight;
  tight.budget = 1000;
  CHECK_THROWS_AS(check_identity(cex, parse_identity("(x y) z = x (y z)"), tight), BudgetError);
}

TEST_CASE("diagnose_inverse") {
  const auto d = diagnose_inverse(corpus().load_model("DEFECT2"));
  CHECK(d.is_inverse_semigroup());
  REQUIRE(d.natural_inversion);
  CHECK(*d.natural_inversion == std::vector<Element>{0, 1});
  CHECK_FALSE(d.unary_matches_natural);
  CHECK(d.unary_mismatch == 0);

  const auto c = diagnose_inverse(corpus().load_model("CEX12"));
  CHECK_FALSE(c.associative);
  CHECK(c.nonassociative_triple == std::array<Element, 3>{0, 0, 0});
  CHECK_FALSE(c.natural_inversion);

  const auto z = diagnose_inverse(corpus().load_model("Z2"));
  CHECK(z.is_inverse_semigroup());
  CHECK(z.unary_matches_natural);
  CHECK(z.idempotents == std::vector<Element>{0});
}

TEST_CASE("canonical_form") {
  const auto t1 = corpus().load_model("TRIVIAL1");
  CHECK(canonical_form(t1) == CanonicalForm{0, 0});

  const auto z2a = FiniteAlgebra::from_rows({{0, 1}, {1, 0}}, {0, 1});
  const auto z2b = FiniteAlgebra::from_rows({{1, 0}, {0, 1}}, {0, 1});
  CHECK(canonical_form(z2a) == canonical_form(z2b));

  const auto defect = corpus().load_model("DEFECT2");
  const auto chain = FiniteAlgebra::from_rows({{0, 0}, {0, 1}}, {0, 1});
  CHECK(canonical_form(defect) != canonical_form(chain));

  CHECK_THROWS_AS(canonical_form(corpus().load_model("CEX12")), Error);
}

TEST_CASE("property: check_identity agrees with a naive checker") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_algebra(rng, 1 + i % 3);
    for (const auto& id : sample_identities()) {
      const auto r = check_identity(a, id);
      CHECK(r.holds == naive_holds(a, id));
      if (!r.holds) {
        CHECK(eval(a, id.lhs, r.witness->assignment) == r.witness->lhs_value);
        CHECK(eval(a, id.rhs, r.witness->assignment) == r.witness->rhs_value);
        CHECK(r.witness->lhs_value != r.witness->rhs_value);
      }
    }
  }
}

TEST_CASE("property: parallel checking matches sequential") {
  std::mt19937 rng(12);
  CheckOptions par;
  par.workers = 4;
  for (int i = 0; i < 50; ++i) {
    const auto a = random_algebra(rng, 3 + i % 4);
    for (const auto& id : sample_identities()) {
      const auto s = check_identity(a, id);
      const auto p = check_identity(a, id, par);
      CHECK(s.holds == p.holds);
      CHECK(s.assignments_examined == p.assignments_examined);
      if (!s.holds) CHECK(s.witness->assignment == p.witness->assignment);
    }
  }
}

TEST_CASE("property: canonical_form is invariant under relabeling") {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 5;
    const auto a = random_algebra(rng, n);
    std::vector<Element> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto b = relabel(a, perm);
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(canonical_form(a) <= encode(a));
  }
}

TEST_CASE("property: both inverse-semigroup characterizations agree on every algebra of size <= 3") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Element> cells(static_cast<std::size_t>(n * n + n), 0);
    while (true) {
      const FiniteAlgebra a(n, std::vector<Element>(cells.begin(), cells.begin() + n * n),
                            std::vector<Element>(cells.begin() + n * n, cells.end()));
      CHECK(diagnose_inverse(a).is_inverse_semigroup() == is_inverse_semigroup_via_idempotents(a));
      std::size_t i = cells.size();
      while (i > 0 && ++cells[i - 1] == n) cells[--i] = 0;
      if (i == 0) break;
    }
  }
}

TEST_CASE("property: both characterizations and the naive oracle agree on random size-3 and size-4 algebras") {
  std::mt19937 rng(14);
  int inverse_seen = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto a = random_algebra(rng, 3 + i % 2);
    const auto d = diagnose_inverse(a);
    CHECK(d.is_inverse_semigroup() == is_inverse_semigroup_via_idempotents(a));
    CHECK(is_inverse_algebra(a) == naive_inverse_algebra(a));
    inverse_seen += d.is_inverse_semigroup();
  }
  // and the bundled models
  for (const auto& name : {"DEFECT2", "Z2", "TRIVIAL1", "CEX12"}) {
    const auto m = corpus().load_model(name);
    CHECK(diagnose_inverse(m).is_inverse_semigroup() == is_inverse_semigroup_via_idempotents(m));
    CHECK(is_inverse_algebra(m) == naive_inverse_algebra(m));
  }
  MESSAGE("inverse semigroups among random samples: " << inverse_seen);
}

TEST_CASE("property: inverse algebras are exactly the models of E_BASIS (size <= 3 exhaustive)") {
  const auto basis = corpus().load_axioms("E_BASIS");
  for (int n = 1; n <= 3; ++n) {
    std::vector<Element> cells(static_cast<std::size_t>(n * n + n), 0);
    while (true) {
      const FiniteAlgebra a(n, std::vector<Element>(cells.begin(), cells.begin() + n * n),
                            std::vector<Element>(cells.begin() + n * n, cells.end()));
      CHECK(naive_inverse_algebra(a) == satisfies_all(a, basis));
      std::size_t i = cells.size();
      while (i > 0 && ++cells[i - 1] == n) cells[--i] = 0;
      if (i == 0) break;
    }
  }
}

TEST_CASE("model text and JSON formats") {
  const auto text = R"(# comment
name T
size 2
mul
0 0
0 1
inv 1 1
)";
  const auto a = read_model(text);
  CHECK(a == corpus().load_model("DEFECT2"));
  CHECK(a.name() == "T");
  CHECK(read_model(write_model(a)) == a);
  CHECK(read_model(R"({"size": 1, "mul": [[0]], "inv": [0]})") == corpus().load_model("TRIVIAL1"));
  CHECK_THROWS_AS(read_model("size 2\nmul 0 0 0\ninv 0 0"), FormatError);
  CHECK_THROWS_AS(read_model(R"({"size": 2, "mul": [[0, 0], [0, 2]], "inv": [0, 0]})"), Error);
}
