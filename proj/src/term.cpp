#include "invbasis/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

namespace invbasis {

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> kids;
  std::size_t size;
};

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::variable, std::move(name), {}, 1}));
}

Term Term::product(Term left, Term right) {
  const std::size_t n = 1 + left.size() + right.size();
  return Term(std::make_shared<const Node>(
      Node{Kind::product, {}, {std::move(left), std::move(right)}, n}));
}

Term Term::inverse(Term arg) {
  const std::size_t n = 1 + arg.size();
  return Term(std::make_shared<const Node>(Node{Kind::inverse, {}, {std::move(arg)}, n}));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
std::size_t Term::size() const noexcept { return node_->size; }

const Term& Term::left() const {
  if (!is_product()) throw InvalidPosition("left() on a non-product term");
  return node_->kids[0];
}

const Term& Term::right() const {
  if (!is_product()) throw InvalidPosition("right() on a non-product term");
  return node_->kids[1];
}

const Term& Term::arg() const {
  if (!is_inverse()) throw InvalidPosition("arg() on a non-inverse term");
  return node_->kids[0];
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind || a.node_->size != b.node_->size) return false;
  switch (a.kind()) {
    case Term::Kind::variable:
      return a.name() == b.name();
    case Term::Kind::inverse:
      return a.arg() == b.arg();
    case Term::Kind::product:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

bool is_variable_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Recursive descent over
//   term    := factor [ ['*'] factor ]
//   factor  := primary '\''*
//   primary := identifier | '(' term ')'
// A third factor at the same level is rejected: the product is not assumed associative.
class Parser {
 public:
  Parser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  Term parse() {
    skip_space();
    if (at_end()) fail("empty term", pos_);
    Term t = term();
    skip_space();
    if (!at_end()) {
      if (peek() == ')') fail("unbalanced parentheses: unexpected ')'", pos_);
      fail(std::string("unexpected character '") + peek() + "'", pos_);
    }
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, base_ + at);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool starts_factor() const {
    return !at_end() && (peek() == '(' || std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_');
  }

  Term term() {
    Term first = factor();
    skip_space();
    if (!at_end() && peek() == '*') {
      ++pos_;
      skip_space();
      if (!starts_factor()) fail("expected a factor after '*'", pos_);
    } else if (!starts_factor()) {
      return first;
    }
    Term second = factor();
    skip_space();
    if (!at_end() && (peek() == '*' || starts_factor())) {
      fail("ambiguous product, parentheses required", pos_);
    }
    return Term::product(std::move(first), std::move(second));
  }

  Term factor() {
    Term t = primary();
    while (!at_end() && peek() == '\'') {
      ++pos_;
      t = Term::inverse(std::move(t));
    }
    return t;
  }

  Term primary() {
    skip_space();
    if (at_end()) fail("unexpected end of input", pos_);
    const std::size_t start = pos_;
    if (peek() == '(') {
      ++pos_;
      skip_space();
      if (at_end()) fail("unbalanced parentheses: missing ')'", start);
      if (peek() == ')') fail("empty parentheses", pos_);
      Term inner = term();
      skip_space();
      if (at_end()) fail("unbalanced parentheses: missing ')'", start);
      if (peek() != ')') fail(std::string("unexpected character '") + peek() + "'", pos_);
      ++pos_;
      return inner;
    }
    if (peek() == ')') fail("unbalanced parentheses: unexpected ')'", pos_);
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      while (!at_end() && is_ident_char(peek())) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (!is_variable_name(name)) {
        fail("variable '" + name + "' must start with a lowercase letter", start);
      }
      return Term::variable(std::move(name));
    }
    fail(std::string("unexpected character '") + peek() + "'", pos_);
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text, 0).parse(); }

Identity parse_identity(std::string_view text) {
  std::string name;
  std::size_t body = 0;

  // Optional "NAME:" label.
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    std::size_t b = 0;
    while (b < colon && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    std::size_t e = colon;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    const std::string_view label = text.substr(b, e - b);
    const bool ok = !label.empty() &&
                    (std::isalpha(static_cast<unsigned char>(label[0])) || label[0] == '_') &&
                    std::all_of(label.begin(), label.end(), is_ident_char);
    if (!ok) throw ParseError("malformed identity label", b);
    name = std::string(label);
    body = colon + 1;
  }

  const std::size_t eq = text.find('=', body);
  if (eq == std::string_view::npos) throw ParseError("missing '=' in identity", text.size());
  if (const auto again = text.find('=', eq + 1); again != std::string_view::npos) {
    throw ParseError("repeated '=' in identity", again);
  }
  Term lhs = Parser(text.substr(body, eq - body), body).parse();
  Term rhs = Parser(text.substr(eq + 1), eq + 1).parse();
  return Identity{std::move(lhs), std::move(rhs), std::move(name)};
}

std::string render(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::variable:
      return t.name();
    case Term::Kind::inverse:
      return render(t.arg()) + "'";
    case Term::Kind::product:
      return "(" + render(t.left()) + " " + render(t.right()) + ")";
  }
  return {};
}

std::string render(const Identity& id) { return render(id.lhs) + " = " + render(id.rhs); }

std::string render(const Position& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p.path[i]);
  }
  return out + "]";
}

Term substitute(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::variable: {
      const auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::inverse:
      return Term::inverse(substitute(t.arg(), s));
    case Term::Kind::product:
      return Term::product(substitute(t.left(), s), substitute(t.right(), s));
  }
  return t;
}

bool is_valid_position(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int step : p.path) {
    if (cur->is_product() && (step == 0 || step == 1)) {
      cur = step == 0 ? &cur->left() : &cur->right();
    } else if (cur->is_inverse() && step == 0) {
      cur = &cur->arg();
    } else {
      return false;
    }
  }
  return true;
}

const Term& subterm_at(const Term& t, const Position& p) {
  if (!is_valid_position(t, p)) {
    throw InvalidPosition("position " + render(p) + " is not valid for " + render(t));
  }
  const Term* cur = &t;
  for (int step : p.path) {
    cur = cur->is_inverse() ? &cur->arg() : (step == 0 ? &cur->left() : &cur->right());
  }
  return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  if (!is_valid_position(t, p)) {
    throw InvalidPosition("position " + render(p) + " is not valid for " + render(t));
  }
  std::function<Term(const Term&, std::size_t)> go = [&](const Term& cur, std::size_t depth) -> Term {
    if (depth == p.path.size()) return replacement;
    if (cur.is_inverse()) return Term::inverse(go(cur.arg(), depth + 1));
    if (p.path[depth] == 0) return Term::product(go(cur.left(), depth + 1), cur.right());
    return Term::product(cur.left(), go(cur.right(), depth + 1));
  };
  return go(t, 0);
}

namespace {

bool match_into(const Term& pattern, const Term& target, Substitution& s) {
  switch (pattern.kind()) {
    case Term::Kind::variable: {
      const auto [it, inserted] = s.emplace(pattern.name(), target);
      return inserted || it->second == target;
    }
    case Term::Kind::inverse:
      return target.is_inverse() && match_into(pattern.arg(), target.arg(), s);
    case Term::Kind::product:
      return target.is_product() && match_into(pattern.left(), target.left(), s) &&
             match_into(pattern.right(), target.right(), s);
  }
  return false;
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::variable:
      out.insert(t.name());
      break;
    case Term::Kind::inverse:
      collect_variables(t.arg(), out);
      break;
    case Term::Kind::product:
      collect_variables(t.left(), out);
      collect_variables(t.right(), out);
      break;
  }
}

}  // namespace

std::optional<Substitution> match_term(const Term& pattern, const Term& target) {
  Substitution s;
  if (!match_into(pattern, target, s)) return std::nullopt;
  return s;
}

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect_variables(t, out);
  return out;
}

std::set<std::string> variables(const Identity& id) {
  std::set<std::string> out;
  collect_variables(id.lhs, out);
  collect_variables(id.rhs, out);
  return out;
}

}  // namespace invbasis
