#include "invbasis/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace invbasis {

FiniteAlgebra::FiniteAlgebra(int size, std::vector<Element> mul, std::vector<Element> inv, std::string name)
    : size_(size), mul_(std::move(mul)), inv_(std::move(inv)), name_(std::move(name)) {
  if (size_ < 1) throw FormatError("algebra size must be positive");
  if (size_ > 255) throw FormatError("algebra size must be at most 255");
  if (mul_.size() != static_cast<std::size_t>(size_) * size_) {
    throw FormatError("mul table must have size*size entries");
  }
  if (inv_.size() != static_cast<std::size_t>(size_)) throw FormatError("inv table must have size entries");
  const auto in_range = [this](Element e) { return e >= 0 && e < size_; };
  if (!std::all_of(mul_.begin(), mul_.end(), in_range)) throw FormatError("mul table entry out of range");
  if (!std::all_of(inv_.begin(), inv_.end(), in_range)) throw FormatError("inv table entry out of range");
}

FiniteAlgebra FiniteAlgebra::from_rows(const std::vector<std::vector<Element>>& rows, std::vector<Element> inv,
                                       std::string name) {
  std::vector<Element> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw FormatError("mul table must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return FiniteAlgebra(static_cast<int>(rows.size()), std::move(flat), std::move(inv), std::move(name));
}

FiniteAlgebra FiniteAlgebra::with_name(std::string name) const {
  FiniteAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Element eval(const FiniteAlgebra& a, const Term& t, const Assignment& asg) {
  switch (t.kind()) {
    case Term::Kind::variable: {
      const auto it = asg.find(t.name());
      if (it == asg.end()) throw EvalError("unbound variable '" + t.name() + "'");
      if (it->second < 0 || it->second >= a.size()) {
        throw EvalError("value of '" + t.name() + "' out of range");
      }
      return it->second;
    }
    case Term::Kind::inverse:
      return a.inv(eval(a, t.arg(), asg));
    case Term::Kind::product:
      return a.mul(eval(a, t.left(), asg), eval(a, t.right(), asg));
  }
  return 0;
}

namespace {

// Postfix program for a term with variables replaced by slot indices.
struct Program {
  enum Op : int { mul = -1, inv = -2 };  // non-negative entries are variable slots
  std::vector<int> code;

  Element run(const FiniteAlgebra& a, const std::vector<Element>& vals, std::vector<Element>& stack) const {
    stack.clear();
    for (int op : code) {
      if (op >= 0) {
        stack.push_back(vals[op]);
      } else if (op == inv) {
        stack.back() = a.inv(stack.back());
      } else {
        const Element r = stack.back();
        stack.pop_back();
        stack.back() = a.mul(stack.back(), r);
      }
    }
    return stack.back();
  }
};

void compile_into(const Term& t, const std::vector<std::string>& vars, std::vector<int>& code) {
  switch (t.kind()) {
    case Term::Kind::variable:
      code.push_back(static_cast<int>(std::lower_bound(vars.begin(), vars.end(), t.name()) - vars.begin()));
      break;
    case Term::Kind::inverse:
      compile_into(t.arg(), vars, code);
      code.push_back(Program::inv);
      break;
    case Term::Kind::product:
      compile_into(t.left(), vars, code);
      compile_into(t.right(), vars, code);
      code.push_back(Program::mul);
      break;
  }
}

struct Failure {
  std::uint64_t index;
  Element lhs;
  Element rhs;
};

// Scans assignment indices [begin, end) in order and returns the first failure.
std::optional<Failure> scan(const FiniteAlgebra& a, const Program& lhs, const Program& rhs, std::size_t nvars,
                            std::uint64_t begin, std::uint64_t end) {
  const auto n = static_cast<std::uint64_t>(a.size());
  std::vector<Element> vals(nvars, 0);
  std::vector<Element> stack;
  stack.reserve(32);
  // Decode the starting index; the last variable is least significant.
  std::uint64_t rem = begin;
  for (std::size_t i = nvars; i-- > 0;) {
    vals[i] = static_cast<Element>(rem % n);
    rem /= n;
  }
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const Element l = lhs.run(a, vals, stack);
    const Element r = rhs.run(a, vals, stack);
    if (l != r) return Failure{idx, l, r};
    for (std::size_t i = nvars; i-- > 0;) {
      if (++vals[i] < a.size()) break;
      vals[i] = 0;
    }
  }
  return std::nullopt;
}

}  // namespace

CheckReport check_identity(const FiniteAlgebra& a, const Identity& id, const CheckOptions& opts) {
  const auto var_set = variables(id);
  const std::vector<std::string> vars(var_set.begin(), var_set.end());

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (total > opts.budget / static_cast<std::uint64_t>(a.size())) {
      throw BudgetError("identity '" + render(id) + "' needs more than " + std::to_string(opts.budget) +
                        " assignments on a model of size " + std::to_string(a.size()));
    }
    total *= static_cast<std::uint64_t>(a.size());
  }

  Program lhs, rhs;
  compile_into(id.lhs, vars, lhs.code);
  compile_into(id.rhs, vars, rhs.code);

  std::optional<Failure> failure;
  const unsigned workers = std::max(1u, opts.workers);
  if (workers == 1 || total < 4096) {
    failure = scan(a, lhs, rhs, vars.size(), 0, total);
  } else {
    // Contiguous chunks; the lowest failing chunk holds the first failure overall.
    const std::uint64_t chunks = std::min<std::uint64_t>(workers, total);
    std::vector<std::optional<Failure>> found(chunks);
    {
      std::vector<std::jthread> pool;
      for (std::uint64_t c = 0; c < chunks; ++c) {
        pool.emplace_back([&, c] {
          found[c] = scan(a, lhs, rhs, vars.size(), total * c / chunks, total * (c + 1) / chunks);
        });
      }
    }
    for (auto& f : found) {
      if (f) {
        failure = f;
        break;
      }
    }
  }

  CheckReport report{id, true, std::nullopt, total};
  if (failure) {
    Assignment asg;
    std::uint64_t rem = failure->index;
    for (std::size_t i = vars.size(); i-- > 0;) {
      asg[vars[i]] = static_cast<Element>(rem % static_cast<std::uint64_t>(a.size()));
      rem /= static_cast<std::uint64_t>(a.size());
    }
    report.holds = false;
    report.witness = Witness{std::move(asg), failure->lhs, failure->rhs};
    report.assignments_examined = failure->index + 1;
  }
  return report;
}

std::vector<CheckReport> check_axiom_set(const FiniteAlgebra& a, const std::vector<Identity>& ids,
                                         const CheckOptions& opts) {
  std::vector<CheckReport> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(check_identity(a, id, opts));
  return out;
}

bool satisfies_all(const FiniteAlgebra& a, const std::vector<Identity>& ids, const CheckOptions& opts) {
  return std::all_of(ids.begin(), ids.end(), [&](const Identity& id) { return check_identity(a, id, opts).holds; });
}

InverseDiagnosis diagnose_inverse(const FiniteAlgebra& a) {
  const int n = a.size();
  InverseDiagnosis d;

  for (Element x = 0; x < n && d.associative; ++x) {
    for (Element y = 0; y < n && d.associative; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (a.mul(a.mul(x, y), z) != a.mul(x, a.mul(y, z))) {
          d.associative = false;
          d.nonassociative_triple = std::array<Element, 3>{x, y, z};
          break;
        }
      }
    }
  }

  d.inverse_sets.resize(n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (a.mul(a.mul(x, y), x) == x && a.mul(a.mul(y, x), y) == y) d.inverse_sets[x].push_back(y);
    }
    if (d.inverse_sets[x].empty() && d.every_element_has_inverse) {
      d.every_element_has_inverse = false;
      d.element_without_inverse = x;
    }
    if (d.inverse_sets[x].size() > 1 && d.inverses_unique) {
      d.inverses_unique = false;
      d.element_with_several_inverses = x;
    }
  }

  for (Element e = 0; e < n; ++e) {
    if (a.mul(e, e) == e) d.idempotents.push_back(e);
  }
  for (std::size_t i = 0; i < d.idempotents.size() && d.idempotents_commute; ++i) {
    for (std::size_t j = i + 1; j < d.idempotents.size(); ++j) {
      const Element e = d.idempotents[i], f = d.idempotents[j];
      if (a.mul(e, f) != a.mul(f, e)) {
        d.idempotents_commute = false;
        d.noncommuting_idempotents = std::pair{e, f};
        break;
      }
    }
  }

  if (d.is_inverse_semigroup()) {
    std::vector<Element> natural(n);
    for (Element x = 0; x < n; ++x) natural[x] = d.inverse_sets[x].front();
    d.unary_matches_natural = true;
    for (Element x = 0; x < n; ++x) {
      if (natural[x] != a.inv(x)) {
        d.unary_matches_natural = false;
        d.unary_mismatch = x;
        break;
      }
    }
    d.natural_inversion = std::move(natural);
  }
  return d;
}

bool is_inverse_semigroup_via_idempotents(const FiniteAlgebra& a) {
  const int n = a.size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (a.mul(a.mul(x, y), z) != a.mul(x, a.mul(y, z))) return false;

  for (Element x = 0; x < n; ++x) {
    bool regular = false;
    for (Element y = 0; y < n && !regular; ++y) regular = a.mul(a.mul(x, y), x) == x;
    if (!regular) return false;
  }
  for (Element e = 0; e < n; ++e) {
    if (a.mul(e, e) != e) continue;
    for (Element f = 0; f < n; ++f) {
      if (a.mul(f, f) == f && a.mul(e, f) != a.mul(f, e)) return false;
    }
  }
  return true;
}

bool is_inverse_algebra(const FiniteAlgebra& a) {
  const auto d = diagnose_inverse(a);
  return d.is_inverse_semigroup() && d.unary_matches_natural;
}

FiniteAlgebra relabel(const FiniteAlgebra& a, std::span<const Element> perm) {
  const int n = a.size();
  if (perm.size() != static_cast<std::size_t>(n)) throw Error("relabeling must be a permutation of the carrier");
  std::vector<Element> mul(static_cast<std::size_t>(n) * n), inv(n);
  for (Element x = 0; x < n; ++x) {
    inv[perm[x]] = perm[a.inv(x)];
    for (Element y = 0; y < n; ++y) mul[perm[x] * n + perm[y]] = perm[a.mul(x, y)];
  }
  return FiniteAlgebra(n, std::move(mul), std::move(inv), a.name());
}

CanonicalForm encode(const FiniteAlgebra& a) {
  CanonicalForm out;
  out.reserve(a.mul_table().size() + a.inv_table().size());
  for (Element e : a.mul_table()) out.push_back(static_cast<std::uint8_t>(e));
  for (Element e : a.inv_table()) out.push_back(static_cast<std::uint8_t>(e));
  return out;
}

CanonicalForm canonical_form(const FiniteAlgebra& a, int max_size) {
  const int n = a.size();
  if (n > max_size) {
    throw Error("canonical form limited to size " + std::to_string(max_size) + ", got " + std::to_string(n));
  }
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalForm best = encode(a);
  CanonicalForm cand(best.size());
  // The encoding is built cell by cell in target order; abandon a permutation
  // as soon as it is known to be larger than the current best.
  std::vector<Element> where(n);
  do {
    for (Element x = 0; x < n; ++x) where[perm[x]] = x;
    int cmp = 0;
    std::size_t k = 0;
    for (Element i = 0; i < n && cmp <= 0; ++i) {
      for (Element j = 0; j < n; ++j, ++k) {
        cand[k] = static_cast<std::uint8_t>(perm[a.mul(where[i], where[j])]);
        if (cmp == 0 && cand[k] != best[k]) {
          cmp = cand[k] < best[k] ? -1 : 1;
          if (cmp > 0) break;
        }
      }
    }
    if (cmp <= 0) {
      for (Element i = 0; i < n; ++i, ++k) {
        cand[k] = static_cast<std::uint8_t>(perm[a.inv(where[i])]);
        if (cmp == 0 && cand[k] != best[k]) {
          cmp = cand[k] < best[k] ? -1 : 1;
          if (cmp > 0) break;
        }
      }
    }
    if (cmp < 0) best = cand;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace invbasis
