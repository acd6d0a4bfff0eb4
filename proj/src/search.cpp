#include "invbasis/search.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace invbasis {

std::vector<Element> search_cells(const FiniteAlgebra& a) {
  std::vector<Element> cells(a.inv_table().begin(), a.inv_table().end());
  cells.insert(cells.end(), a.mul_table().begin(), a.mul_table().end());
  return cells;
}

FiniteAlgebra algebra_from_search_cells(int size, std::span<const Element> cells) {
  const auto n = static_cast<std::size_t>(size);
  if (cells.size() != n + n * n) throw Error("cell vector has the wrong length");
  return FiniteAlgebra(size, std::vector<Element>(cells.begin() + size, cells.end()),
                       std::vector<Element>(cells.begin(), cells.begin() + size));
}

std::uint64_t for_each_algebra(int size, const ModelVisitor& visit) {
  if (size < 1 || size > 3) throw Error("generate-and-test is limited to sizes 1..3");
  const std::size_t ncells = static_cast<std::size_t>(size) * size + size;
  std::vector<Element> cells(ncells, 0);
  std::uint64_t count = 0;
  while (true) {
    visit(algebra_from_search_cells(size, cells));
    ++count;
    std::size_t i = ncells;
    while (i > 0) {
      --i;
      if (++cells[i] < size) break;
      cells[i] = 0;
      if (i == 0) return count;
    }
  }
}

namespace {

constexpr int kMulOp = -1;
constexpr int kInvOp = -2;

struct Compiled {
  std::vector<int> lhs;
  std::vector<int> rhs;
  int nvars = 0;
};

void compile_side(const Term& t, const std::vector<std::string>& vars, std::vector<int>& code) {
  switch (t.kind()) {
    case Term::Kind::variable:
      code.push_back(static_cast<int>(std::lower_bound(vars.begin(), vars.end(), t.name()) - vars.begin()));
      break;
    case Term::Kind::inverse:
      compile_side(t.arg(), vars, code);
      code.push_back(kInvOp);
      break;
    case Term::Kind::product:
      compile_side(t.left(), vars, code);
      compile_side(t.right(), vars, code);
      code.push_back(kMulOp);
      break;
  }
}

Compiled compile(const Identity& id) {
  const auto vs = variables(id);
  const std::vector<std::string> vars(vs.begin(), vs.end());
  Compiled c;
  compile_side(id.lhs, vars, c.lhs);
  compile_side(id.rhs, vars, c.rhs);
  c.nvars = static_cast<int>(vars.size());
  return c;
}

enum class Status { exhausted, model, nodes, time, aborted };

struct Control {
  std::uint64_t budget = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  const std::atomic<int>* best_branch = nullptr;  // abort when a lower branch already succeeded
  int branch = -1;
};

// One search tree over a partially filled table. Cells are numbered in search
// order, so cell c < n is inv[c] and cell n + a*n + b is mul(a, b).
//
// Every ground axiom instance sits in the watch list of one cell. Assigning a
// cell re-evaluates the instances watching it; an instance that is still
// blocked moves (by appending) to the unassigned cell it is now blocked on and
// the move is recorded on the trail. Undo pops those appends, and the list of
// the assigned cell itself is never modified, so undo restores the lists exactly.
class Engine {
 public:
  using Leaf = std::function<bool(std::span<const Element>)>;  // returns true to stop

  Engine(const std::vector<Identity>& axioms, const std::vector<Identity>& goals, int n)
      : n_(n), ncells_(n + n * n), table_(ncells_, -1), watches_(ncells_) {
    std::size_t max_code = 1;
    for (const auto& id : axioms) {
      axioms_.push_back(compile(id));
      max_code = std::max({max_code, axioms_.back().lhs.size(), axioms_.back().rhs.size()});
    }
    for (const auto& id : goals) {
      goals_.push_back(compile(id));
      max_code = std::max({max_code, goals_.back().lhs.size(), goals_.back().rhs.size()});
    }
    stack_.resize(max_code + 1);

    std::uint64_t total = 0;
    for (const auto& ax : axioms_) {
      std::uint64_t count = 1;
      for (int i = 0; i < ax.nvars; ++i) count *= static_cast<std::uint64_t>(n);
      total += count;
      if (total > (std::uint64_t{1} << 26)) throw BudgetError("too many ground axiom instances");
    }

    for (std::size_t k = 0; k < axioms_.size() && !root_conflict_; ++k) {
      const auto& ax = axioms_[k];
      std::vector<std::uint8_t> vals(ax.nvars, 0);
      while (true) {
        const auto id = static_cast<std::uint32_t>(inst_axiom_.size());
        inst_axiom_.push_back(static_cast<std::uint32_t>(k));
        inst_offset_.push_back(static_cast<std::uint32_t>(inst_vals_.size()));
        inst_vals_.insert(inst_vals_.end(), vals.begin(), vals.end());
        const int r = evaluate(id);
        if (r == kViolated) {
          root_conflict_ = true;
          break;
        }
        if (r >= 0) watches_[r].push_back(id);
        int i = ax.nvars - 1;
        for (; i >= 0; --i) {
          if (++vals[i] < n_) break;
          vals[i] = 0;
        }
        if (i < 0) break;
      }
    }
  }

  bool root_conflict() const noexcept { return root_conflict_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

  /// Explores the whole tree, or only the subtree with cell 0 == first_value.
  Status run(int first_value, const Control& ctl, const Leaf& leaf) {
    ctl_ = &ctl;
    leaf_ = &leaf;
    return dfs(0, first_value);
  }

 private:
  static constexpr int kSatisfied = -1;
  static constexpr int kViolated = -2;

  // Value of a compiled side, or -1 - cell when blocked on an unassigned cell.
  int eval_side(const std::vector<int>& code, const std::uint8_t* vals) {
    int sp = 0;
    for (int op : code) {
      if (op >= 0) {
        stack_[sp++] = vals[op];
      } else if (op == kInvOp) {
        const int cell = stack_[sp - 1];
        const int v = table_[cell];
        if (v < 0) return -1 - cell;
        stack_[sp - 1] = v;
      } else {
        const int r = stack_[--sp];
        const int cell = n_ + stack_[sp - 1] * n_ + r;
        const int v = table_[cell];
        if (v < 0) return -1 - cell;
        stack_[sp - 1] = v;
      }
    }
    return stack_[0];
  }

  // Blocking cell (>= 0), kSatisfied or kViolated.
  int evaluate(std::uint32_t inst) {
    const auto& ax = axioms_[inst_axiom_[inst]];
    const std::uint8_t* vals = inst_vals_.data() + inst_offset_[inst];
    const int l = eval_side(ax.lhs, vals);
    if (l < 0) return -1 - l;
    const int r = eval_side(ax.rhs, vals);
    if (r < 0) return -1 - r;
    return l == r ? kSatisfied : kViolated;
  }

  bool propagate(int cell) {
    const auto& list = watches_[cell];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::uint32_t inst = list[i];
      const int r = evaluate(inst);
      if (r == kViolated) return false;
      if (r >= 0) {
        watches_[r].push_back(inst);
        trail_.push_back(r);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      watches_[trail_.back()].pop_back();
      trail_.pop_back();
    }
  }

  bool goal_fails(const Compiled& g) {
    std::vector<std::uint8_t> vals(g.nvars, 0);
    while (true) {
      if (eval_side(g.lhs, vals.data()) != eval_side(g.rhs, vals.data())) return true;
      int i = g.nvars - 1;
      for (; i >= 0; --i) {
        if (++vals[i] < n_) break;
        vals[i] = 0;
      }
      if (i < 0) return false;
    }
  }

  Status dfs(int depth, int only_value) {
    if (depth == ncells_) {
      for (const auto& g : goals_) {
        if (!goal_fails(g)) return Status::exhausted;
      }
      return (*leaf_)(table_) ? Status::model : Status::exhausted;
    }
    const int lo = only_value >= 0 ? only_value : 0;
    const int hi = only_value >= 0 ? only_value + 1 : n_;
    for (int v = lo; v < hi; ++v) {
      if (nodes_ >= ctl_->budget) return Status::nodes;
      ++nodes_;
      if ((nodes_ & 0xfff) == 0) {
        if (ctl_->deadline && std::chrono::steady_clock::now() > *ctl_->deadline) return Status::time;
        if (ctl_->best_branch && ctl_->best_branch->load(std::memory_order_relaxed) < ctl_->branch) {
          return Status::aborted;
        }
      }
      table_[depth] = v;
      const std::size_t mark = trail_.size();
      const Status s = propagate(depth) ? dfs(depth + 1, -1) : Status::exhausted;
      undo(mark);
      table_[depth] = -1;
      if (s != Status::exhausted) return s;
    }
    return Status::exhausted;
  }

  int n_;
  int ncells_;
  std::vector<int> table_;
  std::vector<Compiled> axioms_;
  std::vector<Compiled> goals_;
  std::vector<std::uint32_t> inst_axiom_;
  std::vector<std::uint32_t> inst_offset_;
  std::vector<std::uint8_t> inst_vals_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<int> trail_;
  std::vector<int> stack_;
  bool root_conflict_ = false;
  std::uint64_t nodes_ = 0;
  const Control* ctl_ = nullptr;
  const Leaf* leaf_ = nullptr;
};

struct BranchResult {
  Status status = Status::exhausted;
  std::uint64_t nodes = 0;
  std::vector<std::vector<Element>> models;
};

Control make_control(const SearchLimits& limits) {
  Control ctl;
  ctl.budget = limits.node_budget;
  if (limits.time_budget.count() > 0) ctl.deadline = std::chrono::steady_clock::now() + limits.time_budget;
  return ctl;
}

// Runs the subtrees below each value of cell 0 on a pool of threads.
// `stop_at_first` ends a branch at its first model and lets branches to the
// right of a successful one abort early.
std::vector<BranchResult> run_branches(const std::vector<Identity>& axioms, const std::vector<Identity>& goals,
                                       int n, const SearchLimits& limits, unsigned workers, bool stop_at_first) {
  std::vector<BranchResult> results(n);
  std::atomic<int> next{0};
  std::atomic<int> best{INT_MAX};
  const Control base = make_control(limits);
  std::exception_ptr error;
  std::mutex error_mutex;

  const auto work = [&] {
    try {
      Engine engine(axioms, goals, n);
      for (int b = next.fetch_add(1); b < n; b = next.fetch_add(1)) {
        if (stop_at_first && best.load() < b) {
          results[b].status = Status::aborted;
          continue;
        }
        Engine local = engine;  // fresh state per branch
        Control ctl = base;
        ctl.best_branch = stop_at_first ? &best : nullptr;
        ctl.branch = b;
        auto& res = results[b];
        const Engine::Leaf leaf = [&](std::span<const Element> cells) {
          res.models.emplace_back(cells.begin(), cells.end());
          return stop_at_first;
        };
        res.status = local.run(b, ctl, leaf);
        res.nodes = local.nodes();
        if (res.status == Status::model) {
          int cur = best.load();
          while (b < cur && !best.compare_exchange_weak(cur, b)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned threads = std::min<unsigned>(workers, static_cast<unsigned>(n));
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

void validate(const SearchProblem& p) {
  if (p.size < 1) throw Error("search size must be at least 1");
  if (p.size > 255) throw Error("search size must be at most 255");
  for (const auto& a : p.axioms) {
    for (const auto& g : p.negated_goals) {
      if (!a.name.empty() && a.name == g.name) {
        throw Error("identity '" + a.name + "' is both an axiom and a negated goal");
      }
    }
  }
}

void verify_model(const FiniteAlgebra& m, const SearchProblem& p) {
  for (const auto& r : check_axiom_set(m, p.axioms)) {
    if (!r.holds) throw std::logic_error("search returned a model violating " + render(r.identity));
  }
  for (const auto& r : check_axiom_set(m, p.negated_goals)) {
    if (r.holds) throw std::logic_error("search returned a model satisfying negated goal " + render(r.identity));
  }
}

}  // namespace

SearchOutcome find_model(const SearchProblem& problem) {
  validate(problem);
  const int n = problem.size;
  const std::uint64_t budget = problem.limits.node_budget;

  if (problem.workers <= 1 || n == 1) {
    Engine engine(problem.axioms, problem.negated_goals, n);
    if (engine.root_conflict()) return Exhausted{n, 0};
    const Control ctl = make_control(problem.limits);
    std::vector<Element> found;
    const Engine::Leaf leaf = [&](std::span<const Element> cells) {
      found.assign(cells.begin(), cells.end());
      return true;
    };
    switch (engine.run(-1, ctl, leaf)) {
      case Status::model: {
        auto m = algebra_from_search_cells(n, found);
        verify_model(m, problem);
        return FoundModel{std::move(m), engine.nodes()};
      }
      case Status::nodes:
        return OutOfBudget{OutOfBudget::Resource::nodes, engine.nodes()};
      case Status::time:
        return OutOfBudget{OutOfBudget::Resource::time, engine.nodes()};
      default:
        return Exhausted{n, engine.nodes()};
    }
  }

  if (Engine(problem.axioms, problem.negated_goals, n).root_conflict()) return Exhausted{n, 0};
  const auto results = run_branches(problem.axioms, problem.negated_goals, n, problem.limits, problem.workers, true);

  // Replay the branches in order, as the sequential search would have met them.
  std::uint64_t spent = 0;
  for (const auto& r : results) {
    if (r.status == Status::time) return OutOfBudget{OutOfBudget::Resource::time, spent + r.nodes};
    if (r.status == Status::nodes || r.nodes > budget - spent) {
      return OutOfBudget{OutOfBudget::Resource::nodes, budget};
    }
    if (r.status == Status::model) {
      auto m = algebra_from_search_cells(n, r.models.front());
      verify_model(m, problem);
      return FoundModel{std::move(m), spent + r.nodes};
    }
    if (r.status == Status::aborted) throw std::logic_error("aborted branch reached during replay");
    spent += r.nodes;
  }
  return Exhausted{n, spent};
}

EnumerationSummary enumerate_models(const std::vector<Identity>& axioms, int size, const EnumerateOptions& opts,
                                    const ModelVisitor& visit) {
  if (size < 1) throw Error("enumeration size must be at least 1");
  if (axioms.empty() && size > opts.max_unconstrained_size) {
    throw Error("enumeration without axioms is bounded to size " + std::to_string(opts.max_unconstrained_size));
  }
  if (size > opts.max_size) throw Error("enumeration is bounded to size " + std::to_string(opts.max_size));

  EnumerationSummary summary;
  const auto emit = [&](std::span<const Element> cells) {
    const auto m = algebra_from_search_cells(size, cells);
    if (opts.up_to_iso && encode(m) != canonical_form(m)) return;
    ++summary.models;
    visit(m);
  };
  const auto budget_error = [&](Status s) {
    if (s == Status::time) throw BudgetError("enumeration exceeded its time budget");
    throw BudgetError("enumeration exceeded its node budget of " + std::to_string(opts.limits.node_budget));
  };

  if (opts.workers <= 1 || size == 1) {
    Engine engine(axioms, {}, size);
    if (engine.root_conflict()) return summary;
    const Control ctl = make_control(opts.limits);
    const Engine::Leaf leaf = [&](std::span<const Element> cells) {
      emit(cells);
      return false;
    };
    const Status s = engine.run(-1, ctl, leaf);
    if (s == Status::nodes || s == Status::time) budget_error(s);
    summary.nodes = engine.nodes();
    return summary;
  }

  if (Engine(axioms, {}, size).root_conflict()) return summary;
  const auto results = run_branches(axioms, {}, size, opts.limits, opts.workers, false);
  std::uint64_t spent = 0;
  for (const auto& r : results) {
    if (r.status == Status::time) budget_error(r.status);
    if (r.status == Status::nodes || r.nodes > opts.limits.node_budget - spent) budget_error(Status::nodes);
    spent += r.nodes;
  }
  for (const auto& r : results) {
    for (const auto& cells : r.models) emit(cells);
  }
  summary.nodes = spent;
  return summary;
}

std::vector<FiniteAlgebra> enumerate_models(const std::vector<Identity>& axioms, int size,
                                            const EnumerateOptions& opts) {
  std::vector<FiniteAlgebra> out;
  enumerate_models(axioms, size, opts, [&](const FiniteAlgebra& m) { out.push_back(m); });
  return out;
}

DifferentiationOutcome differentiate_bases(const std::vector<Identity>& a, const std::vector<Identity>& b,
                                           int max_size, const SearchLimits& limits, unsigned workers) {
  const auto contains = [](const std::vector<Identity>& set, const Identity& id) {
    return std::any_of(set.begin(), set.end(), [&](const Identity& x) { return x == id; });
  };
  // Returns a separation, an out-of-budget marker, or nothing.
  const auto probe = [&](const std::vector<Identity>& base, const std::vector<Identity>& other, int size,
                         bool base_is_first) -> std::optional<DifferentiationOutcome> {
    for (const auto& goal : other) {
      if (contains(base, goal)) continue;
      SearchProblem p{base, {goal}, size, limits, workers};
      p.negated_goals.front().name.clear();
      const auto out = find_model(p);
      if (const auto* m = std::get_if<FoundModel>(&out)) return Separation{m->algebra, base_is_first, goal};
      if (const auto* o = std::get_if<OutOfBudget>(&out)) return *o;
    }
    return std::nullopt;
  };
  for (int size = 1; size <= max_size; ++size) {
    if (auto r = probe(a, b, size, true)) return *r;
    if (auto r = probe(b, a, size, false)) return *r;
  }
  return NoSeparation{max_size};
}

}  // namespace invbasis
