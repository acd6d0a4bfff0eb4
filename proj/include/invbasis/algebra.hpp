#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "invbasis/term.hpp"

namespace invbasis {

using Element = int;

/// Finite algebra of type <2,1> on the carrier {0, ..., size-1}.
///
/// The binary table is stored row-major: mul(a, b) == mul_table()[a * size + b].
/// Construction validates closure and totality, so every instance is well formed.
class FiniteAlgebra {
 public:
  FiniteAlgebra(int size, std::vector<Element> mul, std::vector<Element> inv, std::string name = {});

  static FiniteAlgebra from_rows(const std::vector<std::vector<Element>>& rows,
                                 std::vector<Element> inv, std::string name = {});

  int size() const noexcept { return size_; }
  Element mul(Element a, Element b) const noexcept { return mul_[a * size_ + b]; }
  Element inv(Element a) const noexcept { return inv_[a]; }
  std::span<const Element> mul_table() const noexcept { return mul_; }
  std::span<const Element> inv_table() const noexcept { return inv_; }
  const std::string& name() const noexcept { return name_; }

  FiniteAlgebra with_name(std::string name) const;

  /// Tables only; names are labels and do not take part in equality.
  friend bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.size_ == b.size_ && a.mul_ == b.mul_ && a.inv_ == b.inv_;
  }

 private:
  int size_;
  std::vector<Element> mul_;
  std::vector<Element> inv_;
  std::string name_;
};

using Assignment = std::map<std::string, Element>;

Element eval(const FiniteAlgebra& a, const Term& t, const Assignment& asg);

struct Witness {
  Assignment assignment;
  Element lhs_value;
  Element rhs_value;
};

struct CheckReport {
  Identity identity;
  bool holds = true;
  std::optional<Witness> witness;  // present iff !holds
  std::uint64_t assignments_examined = 0;
};

struct CheckOptions {
  /// Maximum number of assignments a single identity may require.
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
};

/// Exhaustive check over all size^v assignments. Variables are ordered by name
/// and assignments enumerated lexicographically (first variable most significant);
/// a failing report carries the first failing assignment in that order.
/// Throws BudgetError when size^v exceeds the budget.
CheckReport check_identity(const FiniteAlgebra& a, const Identity& id, const CheckOptions& opts = {});

std::vector<CheckReport> check_axiom_set(const FiniteAlgebra& a, const std::vector<Identity>& ids,
                                         const CheckOptions& opts = {});

bool satisfies_all(const FiniteAlgebra& a, const std::vector<Identity>& ids, const CheckOptions& opts = {});

struct InverseDiagnosis {
  bool associative = true;
  std::optional<std::array<Element, 3>> nonassociative_triple;

  // Inverse sets {y : (xy)x = x and (yx)y = y}, one per element.
  std::vector<std::vector<Element>> inverse_sets;
  bool every_element_has_inverse = true;
  std::optional<Element> element_without_inverse;
  bool inverses_unique = true;
  std::optional<Element> element_with_several_inverses;

  std::vector<Element> idempotents;
  bool idempotents_commute = true;
  std::optional<std::pair<Element, Element>> noncommuting_idempotents;

  std::optional<std::vector<Element>> natural_inversion;
  bool unary_matches_natural = false;
  std::optional<Element> unary_mismatch;

  bool is_inverse_semigroup() const noexcept {
    return associative && every_element_has_inverse && inverses_unique;
  }
};

/// Structural inverse-semigroup diagnostics computed directly from the tables.
/// All witnesses are the first offender in ascending element order.
InverseDiagnosis diagnose_inverse(const FiniteAlgebra& a);

/// Second characterization: associative, regular, and idempotents commute.
bool is_inverse_semigroup_via_idempotents(const FiniteAlgebra& a);

/// Inverse semigroup whose unary operation is the natural inversion.
bool is_inverse_algebra(const FiniteAlgebra& a);

/// Image of `a` under the relabeling element i -> perm[i].
FiniteAlgebra relabel(const FiniteAlgebra& a, std::span<const Element> perm);

using CanonicalForm = std::vector<std::uint8_t>;

/// Lexicographically least (mul row-major, then inv) encoding over all
/// relabelings. Throws Error when a.size() > max_size.
CanonicalForm canonical_form(const FiniteAlgebra& a, int max_size = 8);

/// Row-major mul followed by inv, without relabeling.
CanonicalForm encode(const FiniteAlgebra& a);

}  // namespace invbasis
