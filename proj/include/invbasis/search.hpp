#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "invbasis/algebra.hpp"
#include "invbasis/term.hpp"

namespace invbasis {

struct SearchLimits {
  std::uint64_t node_budget = 10'000'000;
  std::chrono::milliseconds time_budget{0};  // zero: no wall-clock limit
};

struct SearchProblem {
  std::vector<Identity> axioms;
  std::vector<Identity> negated_goals;  // each must fail in a solution
  int size = 1;
  SearchLimits limits;
  unsigned workers = 1;
};

struct FoundModel {
  FiniteAlgebra algebra;
  std::uint64_t nodes;
};

struct Exhausted {
  int size;
  std::uint64_t nodes;
};

struct OutOfBudget {
  enum class Resource { nodes, time };
  Resource resource;
  std::uint64_t nodes;
};

using SearchOutcome = std::variant<FoundModel, Exhausted, OutOfBudget>;

/// Depth-first model search with watched ground instances.
///
/// Cells are assigned in a fixed order: the inv table first (element 0
/// upwards), then the mul table row-major; values are tried in ascending
/// order. After each assignment every ground axiom instance whose evaluation
/// has just become fully determined is checked, and a violated instance
/// prunes the branch. Negated goals are only evaluated on complete tables.
///
/// One node is one (cell, value) assignment. The result, including the node
/// count, does not depend on `workers`.
SearchOutcome find_model(const SearchProblem& problem);

struct EnumerateOptions {
  bool up_to_iso = false;
  SearchLimits limits{1'000'000'000, std::chrono::milliseconds{0}};
  unsigned workers = 1;
  int max_unconstrained_size = 3;
  int max_size = 6;
};

struct EnumerationSummary {
  std::uint64_t models = 0;
  std::uint64_t nodes = 0;
};

using ModelVisitor = std::function<void(const FiniteAlgebra&)>;

/// Visits every model of `axioms` of exactly `size` elements in search order
/// (lexicographic over the cell order used by find_model). With up_to_iso only
/// models equal to their own canonical form are visited.
/// Throws Error when the size bound is exceeded and BudgetError when the node
/// or time budget runs out.
EnumerationSummary enumerate_models(const std::vector<Identity>& axioms, int size, const EnumerateOptions& opts,
                                    const ModelVisitor& visit);

std::vector<FiniteAlgebra> enumerate_models(const std::vector<Identity>& axioms, int size,
                                            const EnumerateOptions& opts = {});

/// Table cells in search order: inv[0..n-1], then mul row-major.
std::vector<Element> search_cells(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_search_cells(int size, std::span<const Element> cells);

/// Plain generate-and-test over all size^(size^2 + size) algebras, in the same
/// order as enumerate_models. Returns the number of algebras visited.
std::uint64_t for_each_algebra(int size, const ModelVisitor& visit);

struct Separation {
  FiniteAlgebra model;
  bool satisfies_first;  // true: satisfies A and fails `falsified` from B
  Identity falsified;
};

struct NoSeparation {
  int max_size;
};

using DifferentiationOutcome = std::variant<Separation, NoSeparation, OutOfBudget>;

/// Searches sizes 1..max_size ascending for a model of A failing some member of
/// B, then (at the same size) for a model of B failing some member of A.
DifferentiationOutcome differentiate_bases(const std::vector<Identity>& a, const std::vector<Identity>& b,
                                           int max_size, const SearchLimits& limits = {}, unsigned workers = 1);

}  // namespace invbasis
