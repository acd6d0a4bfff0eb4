#include "commands.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "invbasis/algebra.hpp"
#include "invbasis/corpus.hpp"
#include "invbasis/model_io.hpp"
#include "invbasis/proofs.hpp"
#include "invbasis/search.hpp"
#include "invbasis/term.hpp"

namespace invbasis::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  bool json = false;
  unsigned workers = 1;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string key_of(const Identity& id) { return id.name.empty() ? render(id) : id.name; }

std::string label(const Identity& id) { return id.name.empty() ? render(id) : id.name + ": " + render(id); }

ojson identity_json(const Identity& id) {
  ojson j;
  j["name"] = id.name;
  j["identity"] = render(id);
  return j;
}

FiniteAlgebra resolve_model(const Corpus& corpus, const std::string& arg) {
  if (fs::is_regular_file(arg)) {
    auto m = read_model_file(arg);
    return m.name().empty() ? m.with_name(arg) : m;
  }
  if (const auto* p = corpus.find(arg); p && p->kind == PresetKind::model) return corpus.load_model(arg);
  throw UsageError("no model file or model preset named '" + arg + "'");
}

// Comma-separated list of identity files, axiom-set presets, named identities
// or inline identities. Duplicates (by name, or by text when unnamed) are dropped.
std::vector<Identity> resolve_identities(const Corpus& corpus, const std::string& arg) {
  std::vector<Identity> out;
  const auto append = [&](const std::vector<Identity>& ids) {
    for (const auto& id : ids) {
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Identity& o) { return key_of(o) == key_of(id); });
      if (!seen) out.push_back(id);
    }
  };
  std::stringstream ss(arg);
  for (std::string raw; std::getline(ss, raw, ',');) {
    const std::string item = trim(raw);
    if (item.empty()) continue;
    if (item.find('=') != std::string::npos) {
      append({parse_identity(item)});
    } else if (fs::is_regular_file(item)) {
      append(parse_identity_list(read_text_file(item)));
    } else if (const auto* p = corpus.find(item); p && p->kind == PresetKind::axioms) {
      append(corpus.load_axioms(item));
    } else if (auto id = corpus.named_identity(item)) {
      append({*id});
    } else {
      throw UsageError("no identity file, axiom preset or named identity '" + item + "'");
    }
  }
  return out;
}

Identity resolve_identity(const Corpus& corpus, const std::string& item) {
  const auto ids = resolve_identities(corpus, item);
  if (ids.size() != 1) throw UsageError("'" + item + "' does not denote a single identity");
  return ids.front();
}

void print_json(const ojson& j) { std::cout << j.dump(2) << "\n"; }

std::string elements(std::span<const Element> xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
  return s + "]";
}

std::string compact(const FiniteAlgebra& m) {
  std::string s = "mul [";
  for (Element x = 0; x < m.size(); ++x) {
    s += (x ? ", " : "") + elements(m.mul_table().subspan(static_cast<std::size_t>(x) * m.size(), m.size()));
  }
  return s + "] inv " + elements(m.inv_table());
}

std::string describe(const Assignment& asg) {
  std::string s;
  for (const auto& [var, val] : asg) s += (s.empty() ? "" : ", ") + var + "=" + std::to_string(val);
  return s;
}

// check ------------------------------------------------------------------

int cmd_check(const Corpus& corpus, const Common& c, const std::string& model_arg, const std::string& axioms_arg) {
  const auto model = resolve_model(corpus, model_arg);
  const auto ids = resolve_identities(corpus, axioms_arg);
  if (ids.empty()) throw UsageError("no identities to check");
  CheckOptions opts;
  opts.workers = c.workers;
  const auto reports = check_axiom_set(model, ids, opts);
  const bool all = std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.holds; });

  if (c.json) {
    ojson j;
    j["model"] = model.name();
    j["size"] = model.size();
    j["reports"] = ojson::array();
    for (const auto& r : reports) {
      ojson jr = identity_json(r.identity);
      jr["holds"] = r.holds;
      jr["assignments_examined"] = r.assignments_examined;
      if (r.witness) {
        jr["witness"] = {{"assignment", r.witness->assignment},
                         {"lhs", r.witness->lhs_value},
                         {"rhs", r.witness->rhs_value}};
      }
      j["reports"].push_back(std::move(jr));
    }
    j["all_hold"] = all;
    print_json(j);
  } else {
    std::cout << "model " << model.name() << " (size " << model.size() << ")\n";
    for (const auto& r : reports) {
      std::cout << label(r.identity);
      if (r.holds) {
        std::cout << "  holds (" << r.assignments_examined << " assignments)\n";
      } else {
        std::cout << "  FAILS at " << describe(r.witness->assignment) << ": lhs " << r.witness->lhs_value
                  << ", rhs " << r.witness->rhs_value << "\n";
      }
    }
    std::cout << (all ? "all identities hold" : "some identities fail") << "\n";
  }
  return all ? established : refuted;
}

// validate-inverse ---------------------------------------------------------

int cmd_validate(const Corpus& corpus, const Common& c, const std::string& model_arg) {
  const auto m = resolve_model(corpus, model_arg);
  const auto d = diagnose_inverse(m);
  const bool ok = d.is_inverse_semigroup() && d.unary_matches_natural;

  std::string mismatch;
  if (d.unary_mismatch) {
    const Element x = *d.unary_mismatch;
    mismatch = std::to_string(x) + "' is " + std::to_string(m.inv(x)) + ", natural inverse of " + std::to_string(x) +
               " is " + std::to_string((*d.natural_inversion)[x]);
  }

  if (c.json) {
    ojson j;
    j["model"] = m.name();
    j["size"] = m.size();
    j["associative"] = d.associative;
    if (d.nonassociative_triple) j["nonassociative_triple"] = *d.nonassociative_triple;
    j["inverse_sets"] = d.inverse_sets;
    j["every_element_has_inverse"] = d.every_element_has_inverse;
    if (d.element_without_inverse) j["element_without_inverse"] = *d.element_without_inverse;
    j["inverses_unique"] = d.inverses_unique;
    if (d.element_with_several_inverses) j["element_with_several_inverses"] = *d.element_with_several_inverses;
    j["inverse_semigroup"] = d.is_inverse_semigroup();
    j["idempotents"] = d.idempotents;
    j["idempotents_commute"] = d.idempotents_commute;
    if (d.noncommuting_idempotents) {
      j["noncommuting_idempotents"] = {d.noncommuting_idempotents->first, d.noncommuting_idempotents->second};
    }
    j["natural_inversion"] = d.natural_inversion ? ojson(*d.natural_inversion) : ojson(nullptr);
    j["unary"] = std::vector<Element>(m.inv_table().begin(), m.inv_table().end());
    j["unary_matches_natural"] = d.unary_matches_natural;
    if (d.unary_mismatch) j["unary_mismatch"] = *d.unary_mismatch;
    print_json(j);
    return ok ? established : refuted;
  }

  const auto yes = [](bool b) { return b ? "yes" : "NO"; };
  std::cout << "model " << m.name() << " (size " << m.size() << ")\n";
  std::cout << "associative: " << yes(d.associative);
  if (d.nonassociative_triple) {
    const auto [x, y, z] = *d.nonassociative_triple;
    std::cout << " ((" << x << " " << y << ") " << z << " = " << m.mul(m.mul(x, y), z) << ", " << x << " (" << y
              << " " << z << ") = " << m.mul(x, m.mul(y, z)) << ")";
  }
  std::cout << "\n";
  std::cout << "every element has an inverse: " << yes(d.every_element_has_inverse);
  if (d.element_without_inverse) std::cout << " (" << *d.element_without_inverse << " has none)";
  std::cout << "\ninverses unique: " << yes(d.inverses_unique);
  if (d.element_with_several_inverses) {
    const Element x = *d.element_with_several_inverses;
    std::cout << " (" << x << " has " << elements(d.inverse_sets[x]) << ")";
  }
  std::cout << "\nidempotents: " << elements(d.idempotents) << "\n";
  std::cout << "idempotents commute: " << yes(d.idempotents_commute);
  if (d.noncommuting_idempotents) {
    std::cout << " (" << d.noncommuting_idempotents->first << ", " << d.noncommuting_idempotents->second << ")";
  }
  std::cout << "\nnatural inversion: " << (d.natural_inversion ? elements(*d.natural_inversion) : "none") << "\n";
  std::cout << "unary: " << elements(m.inv_table()) << "\n";
  std::cout << "inverse semigroup: " << (d.is_inverse_semigroup() ? "yes" : "no");
  if (d.is_inverse_semigroup()) {
    std::cout << "; unary matches natural inversion: " << yes(d.unary_matches_natural);
    if (!mismatch.empty()) std::cout << " (" << mismatch << ")";
  }
  std::cout << "\n";
  return ok ? established : refuted;
}

// find --------------------------------------------------------------------

struct FindArgs {
  std::string problem;
  std::string axioms;
  std::vector<std::string> negate;
  int size = 0;
  int max_size = 0;
  std::uint64_t node_budget = 10'000'000;
  std::int64_t time_ms = 0;
};

ojson outcome_json(const SearchOutcome& out, int size) {
  ojson j;
  if (const auto* m = std::get_if<FoundModel>(&out)) {
    j["status"] = "model";
    const auto model = to_json(m->algebra);
    for (const auto& [k, v] : model.items()) j[k] = v;
    j["nodes"] = m->nodes;
  } else if (const auto* e = std::get_if<Exhausted>(&out)) {
    j["status"] = "exhausted";
    j["size"] = e->size;
    j["nodes"] = e->nodes;
  } else {
    const auto& o = std::get<OutOfBudget>(out);
    j["status"] = "budget_exceeded";
    j["size"] = size;
    j["resource"] = o.resource == OutOfBudget::Resource::nodes ? "nodes" : "time";
    j["nodes"] = o.nodes;
  }
  return j;
}

int cmd_find(const Corpus& corpus, const Common& c, FindArgs a) {
  SearchProblem p;
  if (!a.problem.empty()) {
    if (!a.axioms.empty() || !a.negate.empty()) throw UsageError("--problem cannot be combined with --axioms/--negate");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(a.problem));
      for (const auto& s : doc.at("axioms")) {
        for (auto& id : resolve_identities(corpus, s.get<std::string>())) p.axioms.push_back(id);
      }
      for (const auto& s : doc.value("negated_goals", nlohmann::json::array())) {
        p.negated_goals.push_back(resolve_identity(corpus, s.get<std::string>()));
      }
      if (a.size == 0 && a.max_size == 0) a.size = doc.at("size").get<int>();
      if (doc.contains("limits")) {
        const auto& l = doc.at("limits");
        a.node_budget = l.value("nodes", a.node_budget);
        a.time_ms = l.value("time_ms", a.time_ms);
      }
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("malformed problem file: ") + e.what());
    }
  } else {
    p.axioms = resolve_identities(corpus, a.axioms);
    for (const auto& g : a.negate) p.negated_goals.push_back(resolve_identity(corpus, g));
  }
  if ((a.size > 0) == (a.max_size > 0)) throw UsageError("give exactly one of --size and --max-size");
  p.limits.node_budget = a.node_budget;
  p.limits.time_budget = std::chrono::milliseconds(a.time_ms);
  p.workers = c.workers;

  const int lo = a.size > 0 ? a.size : 1;
  const int hi = a.size > 0 ? a.size : a.max_size;
  std::vector<std::pair<int, SearchOutcome>> attempts;
  for (int n = lo; n <= hi; ++n) {
    p.size = n;
    attempts.emplace_back(n, find_model(p));
    if (!std::holds_alternative<Exhausted>(attempts.back().second)) break;
  }
  const auto& last = attempts.back().second;
  const int code = std::holds_alternative<FoundModel>(last)     ? refuted
                   : std::holds_alternative<OutOfBudget>(last) ? budget_exceeded
                                                               : established;

  if (c.json) {
    if (a.size > 0) {
      print_json(outcome_json(last, a.size));
    } else {
      ojson j;
      j["max_size"] = a.max_size;
      j["status"] = code == refuted ? "model" : code == budget_exceeded ? "budget_exceeded" : "exhausted";
      j["attempts"] = ojson::array();
      for (const auto& [n, out] : attempts) j["attempts"].push_back(outcome_json(out, n));
      print_json(j);
    }
    return code;
  }

  for (const auto& [n, out] : attempts) {
    if (const auto* m = std::get_if<FoundModel>(&out)) {
      std::cout << "size " << n << ": model found after " << m->nodes << " nodes\n" << write_model(m->algebra);
    } else if (const auto* e = std::get_if<Exhausted>(&out)) {
      std::cout << "size " << n << ": exhausted after " << e->nodes << " nodes\n";
    } else {
      const auto& o = std::get<OutOfBudget>(out);
      std::cout << "size " << n << ": budget exceeded ("
                << (o.resource == OutOfBudget::Resource::nodes ? "nodes" : "time") << ") after " << o.nodes
                << " nodes\n";
    }
  }
  if (code == established) {
    std::cout << (p.negated_goals.empty() ? "no model" : "no countermodel") << " up to size " << hi << "\n";
  }
  return code;
}

// enumerate ---------------------------------------------------------------

struct EnumerateArgs {
  std::string axioms;
  int size = 0;
  bool up_to_iso = false;
  bool count_only = false;
  std::string oracle;
  std::uint64_t node_budget = 1'000'000'000;
};

int cmd_enumerate(const Corpus& corpus, const Common& c, const EnumerateArgs& a) {
  std::vector<FiniteAlgebra> models;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> nodes;
  std::vector<Identity> axioms;
  const auto collect = [&](const FiniteAlgebra& m) {
    ++count;
    if (!a.count_only) models.push_back(m);
  };

  if (!a.oracle.empty()) {
    if (a.oracle != "inverse") throw UsageError("unknown oracle '" + a.oracle + "' (expected 'inverse')");
    if (!a.axioms.empty()) throw UsageError("--oracle cannot be combined with --axioms");
    for_each_algebra(a.size, [&](const FiniteAlgebra& m) {
      if (!is_inverse_algebra(m)) return;
      if (a.up_to_iso && encode(m) != canonical_form(m)) return;
      collect(m);
    });
  } else {
    axioms = resolve_identities(corpus, a.axioms);
    EnumerateOptions opts;
    opts.up_to_iso = a.up_to_iso;
    opts.workers = c.workers;
    opts.limits.node_budget = a.node_budget;
    nodes = enumerate_models(axioms, a.size, opts, collect).nodes;
  }

  if (c.json) {
    ojson j;
    j["size"] = a.size;
    j["source"] = a.oracle.empty() ? "axioms" : "oracle:" + a.oracle;
    if (a.oracle.empty()) {
      j["axioms"] = ojson::array();
      for (const auto& id : axioms) j["axioms"].push_back(identity_json(id));
    }
    j["up_to_iso"] = a.up_to_iso;
    j["count"] = count;
    if (nodes) j["nodes"] = *nodes;
    if (!a.count_only) {
      j["models"] = ojson::array();
      for (const auto& m : models) j["models"].push_back(to_json(m));
    }
    print_json(j);
  } else {
    for (const auto& m : models) std::cout << compact(m) << "\n";
    std::cout << count << (a.up_to_iso ? " models up to isomorphism" : " models") << " of size " << a.size << "\n";
  }
  return established;
}

// prove -------------------------------------------------------------------

struct ProveArgs {
  std::string script;
  std::string axioms = "E_BASIS";
  bool all = false;
  bool fuzz = false;
};

std::string_view direction_name(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

int cmd_prove(const Corpus& corpus, const Common& c, const ProveArgs& a) {
  if (a.all == !a.script.empty()) throw UsageError("give exactly one of --script and --all");
  RuleLibrary lib;
  for (auto id : resolve_identities(corpus, a.axioms)) {
    if (id.name.empty()) id.name = render(id);
    lib.add(std::move(id));
  }

  std::vector<ProofScript> chain;
  if (a.all) {
    for (const auto& name : corpus.script_names()) chain.push_back(corpus.read_script(name));
  } else if (fs::is_regular_file(a.script)) {
    chain = corpus.dependency_chain(parse_script(read_text_file(a.script)), lib);
  } else if (const auto* p = corpus.find(a.script); p && p->kind == PresetKind::proof) {
    chain = corpus.dependency_chain(corpus.read_script(a.script), lib);
  } else {
    throw UsageError("no proof script file or proof preset named '" + a.script + "'");
  }

  bool all_verified = true;
  std::uint64_t mutants = 0, rejected = 0;
  std::vector<std::string> survivors;
  ojson jscripts = ojson::array();

  for (const auto& s : chain) {
    const auto v = verify_script(s, lib);
    ojson js;
    js["name"] = s.name;
    js["goal"] = render(s.goal);
    js["verified"] = v.verified;
    js["trace"] = ojson::array();
    for (const auto& t : v.trace) js["trace"].push_back(render(t));
    if (!v.verified) {
      if (v.failed_step) js["failed_step"] = *v.failed_step + 1;
      if (v.failure_kind) js["failure"] = std::string(to_string(*v.failure_kind));
      js["reason"] = v.reason;
    }

    if (!c.json) {
      std::cout << s.name << ": " << render(s.goal) << "\n";
      std::cout << "      " << render(s.start) << "\n";
      for (std::size_t i = 0; i + 1 < v.trace.size(); ++i) {
        const auto& step = s.steps[i];
        std::cout << "  " << (i + 1 < 10 ? " " : "") << i + 1 << ". = " << render(v.trace[i + 1]) << "    ["
                  << step.rule << " " << direction_name(step.direction) << " at " << render(step.position) << "]\n";
      }
      if (!v.verified) {
        if (v.failed_step) std::cout << "  step " << *v.failed_step + 1 << " FAILED: " << v.reason << "\n";
        else std::cout << "  FAILED: " << v.reason << "\n";
      }
    }

    if (a.fuzz && v.verified) {
      std::uint64_t here = 0, killed = 0;
      for (const auto& m : single_field_mutants(s)) {
        ++here;
        if (!verify_script(m, lib).verified) {
          ++killed;
        } else {
          survivors.push_back(s.name + " mutant " + std::to_string(here));
        }
      }
      js["mutants"] = here;
      js["rejected"] = killed;
      mutants += here;
      rejected += killed;
    }
    jscripts.push_back(std::move(js));

    if (!c.json) std::cout << "  " << render(s.goal) << (v.verified ? " VERIFIED" : " NOT VERIFIED") << "\n";
    if (!v.verified) {
      all_verified = false;
      break;
    }
    promote(s, lib);
  }

  const bool fuzz_ok = survivors.empty();
  if (c.json) {
    ojson j;
    j["scripts"] = std::move(jscripts);
    j["verified"] = all_verified;
    if (a.fuzz) {
      j["fuzz"] = {{"mutants", mutants}, {"rejected", rejected}, {"survivors", survivors}};
    }
    print_json(j);
  } else {
    if (a.fuzz) {
      std::cout << "mutation fuzz: " << rejected << " of " << mutants << " mutants rejected\n";
      for (const auto& sv : survivors) std::cout << "  survived: " << sv << "\n";
    }
    const auto& final_goal = chain.back().goal;
    if (all_verified) std::cout << render(final_goal) << " VERIFIED\n";
  }
  return all_verified && fuzz_ok ? established : refuted;
}

// diff-bases --------------------------------------------------------------

int cmd_diff(const Corpus& corpus, const Common& c, const std::string& a_arg, const std::string& b_arg, int max_size,
             std::uint64_t node_budget) {
  const auto a = resolve_identities(corpus, a_arg);
  const auto b = resolve_identities(corpus, b_arg);
  SearchLimits limits;
  limits.node_budget = node_budget;
  const auto out = differentiate_bases(a, b, max_size, limits, c.workers);

  ojson j;
  j["max_size"] = max_size;
  int code = established;
  if (const auto* s = std::get_if<Separation>(&out)) {
    code = refuted;
    j["status"] = "separated";
    j["satisfies"] = s->satisfies_first ? "A" : "B";
    j["falsified"] = identity_json(s->falsified);
    j["model"] = to_json(s->model);
    if (!c.json) {
      std::cout << "separating model of size " << s->model.size() << ": satisfies " << (s->satisfies_first ? "A" : "B")
                << ", fails " << label(s->falsified) << "\n"
                << write_model(s->model);
    }
  } else if (std::holds_alternative<NoSeparation>(out)) {
    j["status"] = "none";
    if (!c.json) std::cout << "no separating model up to size " << max_size << "\n";
  } else {
    code = budget_exceeded;
    j["status"] = "budget_exceeded";
    j["nodes"] = std::get<OutOfBudget>(out).nodes;
    if (!c.json) std::cout << "budget exceeded before a verdict\n";
  }
  if (c.json) print_json(j);
  return code;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json, "Machine-readable output");
  sub->add_option("--workers", c.workers, "Worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Equational workbench for algebras with one binary and one unary operation"};
  app.require_subcommand(1);
  std::string corpus_dir = Corpus::default_root().string();
  app.add_option("--corpus", corpus_dir, "Corpus directory");

  Common common;

  std::string model_arg, axioms_arg;
  auto* check = app.add_subcommand("check", "Check identities on a finite model");
  check->add_option("--model", model_arg, "Model file or preset")->required();
  check->add_option("--axioms", axioms_arg, "Identities: files, presets, names or inline, comma-separated")->required();
  add_common(check, common);

  auto* validate = app.add_subcommand("validate-inverse", "Inverse-semigroup diagnosis of a finite model");
  validate->add_option("--model", model_arg, "Model file or preset")->required();
  add_common(validate, common);

  FindArgs fa;
  auto* find = app.add_subcommand("find", "Search for a model, optionally refuting goals");
  find->add_option("--problem", fa.problem, "Problem file (JSON)");
  find->add_option("--axioms", fa.axioms, "Axioms");
  find->add_option("--negate", fa.negate, "Identity that must fail (repeatable)");
  find->add_option("--size", fa.size, "Carrier size")->check(CLI::Range(1, 255));
  find->add_option("--max-size", fa.max_size, "Try sizes 1..n")->check(CLI::Range(1, 255));
  find->add_option("--node-budget", fa.node_budget, "Node budget per size");
  find->add_option("--time-budget-ms", fa.time_ms, "Wall-clock budget per size (0: none)");
  add_common(find, common);

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate all models of a given size");
  enumerate->add_option("--axioms", ea.axioms, "Axioms (default: none)");
  enumerate->add_option("--size", ea.size, "Carrier size")->required()->check(CLI::Range(1, 255));
  enumerate->add_flag("--up-to-iso", ea.up_to_iso, "Only canonical representatives");
  enumerate->add_flag("--count-only", ea.count_only, "Print the count only");
  enumerate->add_option("--oracle", ea.oracle, "Generate-and-test with a structural oracle instead of axioms (inverse)");
  enumerate->add_option("--node-budget", ea.node_budget, "Node budget");
  add_common(enumerate, common);

  ProveArgs pa;
  auto* prove = app.add_subcommand("prove", "Replay and verify an equational proof script");
  prove->add_option("--script", pa.script, "Proof script file or preset");
  prove->add_option("--axioms", pa.axioms, "Initial rule library (default: E_BASIS)");
  prove->add_flag("--all", pa.all, "Replay every bundled script in order");
  prove->add_flag("--fuzz", pa.fuzz, "Also check that every single-field step mutation is rejected");
  add_common(prove, common);

  std::string a_arg, b_arg;
  int diff_max = 0;
  std::uint64_t diff_budget = 10'000'000;
  auto* diff = app.add_subcommand("diff-bases", "Search for a model separating two axiom sets");
  diff->add_option("--a", a_arg, "First axiom set")->required();
  diff->add_option("--b", b_arg, "Second axiom set")->required();
  diff->add_option("--max-size", diff_max, "Largest size tried")->required()->check(CLI::Range(1, 255));
  diff->add_option("--node-budget", diff_budget, "Node budget per search");
  add_common(diff, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "invbasis: " << e.what() << "\n";
    return usage_error;
  }

  try {
    const Corpus corpus(corpus_dir);
    if (check->parsed()) return cmd_check(corpus, common, model_arg, axioms_arg);
    if (validate->parsed()) return cmd_validate(corpus, common, model_arg);
    if (find->parsed()) return cmd_find(corpus, common, fa);
    if (enumerate->parsed()) return cmd_enumerate(corpus, common, ea);
    if (prove->parsed()) return cmd_prove(corpus, common, pa);
    if (diff->parsed()) return cmd_diff(corpus, common, a_arg, b_arg, diff_max, diff_budget);
  } catch (const BudgetError& e) {
    std::cerr << "invbasis: " << e.what() << "\n";
    return budget_exceeded;
  } catch (const Error& e) {
    std::cerr << "invbasis: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace invbasis::cli
