#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "invbasis/errors.hpp"

namespace invbasis {

/// Immutable term over one binary operation (product) and one unary
/// operation (inverse). Copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { variable, product, inverse };

  static Term variable(std::string name);
  static Term product(Term left, Term right);
  static Term inverse(Term arg);

  Kind kind() const noexcept;
  bool is_variable() const noexcept { return kind() == Kind::variable; }
  bool is_product() const noexcept { return kind() == Kind::product; }
  bool is_inverse() const noexcept { return kind() == Kind::inverse; }

  /// Variable name; empty for non-variables.
  const std::string& name() const noexcept;
  const Term& left() const;
  const Term& right() const;
  const Term& arg() const;

  /// Number of nodes in the tree.
  std::size_t size() const noexcept;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Universally quantified equation lhs = rhs.
struct Identity {
  Term lhs;
  Term rhs;
  std::string name;  // empty when unnamed

  friend bool operator==(const Identity& a, const Identity& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Path from the root. 0 selects the left factor of a product or the argument
/// of an inverse; 1 selects the right factor of a product.
struct Position {
  std::vector<int> path;

  friend bool operator==(const Position&, const Position&) = default;
};

using Substitution = std::map<std::string, Term>;

Term parse_term(std::string_view text);

/// Parses `[NAME:] lhs = rhs`. NAME may start with any letter or underscore.
Identity parse_identity(std::string_view text);

/// Fully parenthesized canonical text, e.g. "((x x') x)".
std::string render(const Term& t);
std::string render(const Identity& id);
std::string render(const Position& p);

Term substitute(const Term& t, const Substitution& s);

bool is_valid_position(const Term& t, const Position& p);
const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

/// First-order syntactic matching: the unique s with substitute(pattern, s) == target.
std::optional<Substitution> match_term(const Term& pattern, const Term& target);

std::set<std::string> variables(const Term& t);
std::set<std::string> variables(const Identity& id);

bool is_variable_name(std::string_view name);

}  // namespace invbasis
