#include "invbasis/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "invbasis/model_io.hpp"

namespace invbasis {

std::vector<Identity> parse_identity_list(std::string_view text) {
  std::vector<Identity> out;
  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_identity(line));
    } catch (const ParseError& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string_view to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::axioms: return "axioms";
    case PresetKind::model: return "model";
    case PresetKind::proof: return "proof";
  }
  return "?";
}

std::filesystem::path Corpus::default_root() { return INVBASIS_CORPUS_DIR; }

Corpus::Corpus(std::filesystem::path root) : root_(std::move(root)) {
  nlohmann::json registry;
  try {
    registry = nlohmann::json::parse(read_text_file(root_ / "registry.json"));
    for (const auto& p : registry.at("presets")) {
      const auto kind = p.at("kind").get<std::string>();
      PresetInfo info;
      info.name = p.at("name").get<std::string>();
      if (kind == "axioms") {
        info.kind = PresetKind::axioms;
      } else if (kind == "model") {
        info.kind = PresetKind::model;
      } else if (kind == "proof") {
        info.kind = PresetKind::proof;
      } else {
        throw FormatError("unknown preset kind '" + kind + "'");
      }
      info.path = p.at("path").get<std::string>();
      info.note = p.value("note", std::string{});
      if (find(info.name)) throw FormatError("duplicate preset '" + info.name + "'");
      presets_.push_back(std::move(info));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed corpus registry: ") + e.what());
  }
}

const PresetInfo* Corpus::find(std::string_view name) const {
  const auto it = std::find_if(presets_.begin(), presets_.end(), [&](const PresetInfo& p) { return p.name == name; });
  return it == presets_.end() ? nullptr : &*it;
}

const PresetInfo& Corpus::require(std::string_view name, PresetKind kind) const {
  const PresetInfo* p = find(name);
  if (!p) throw PresetError("unknown preset '" + std::string(name) + "'");
  if (p->kind != kind) {
    throw PresetError("preset '" + std::string(name) + "' is " + std::string(to_string(p->kind)) + ", not " +
                      std::string(to_string(kind)));
  }
  return *p;
}

std::vector<Identity> Corpus::load_axioms(std::string_view name) const {
  const auto& p = require(name, PresetKind::axioms);
  try {
    auto ids = parse_identity_list(read_text_file(root_ / p.path));
    for (const auto& id : ids) {
      if (id.name.empty()) throw FormatError("bundled identities must be named");
    }
    return ids;
  } catch (const Error& e) {
    throw PresetError("preset '" + p.name + "' failed to load: " + e.what());
  }
}

FiniteAlgebra Corpus::load_model(std::string_view name) const {
  const auto& p = require(name, PresetKind::model);
  try {
    auto m = read_model_file(root_ / p.path);
    return m.name().empty() ? m.with_name(p.name) : m;
  } catch (const Error& e) {
    throw PresetError("preset '" + p.name + "' failed to load: " + e.what());
  }
}

ProofScript Corpus::read_script(std::string_view name) const {
  const auto& p = require(name, PresetKind::proof);
  try {
    return parse_script(read_text_file(root_ / p.path));
  } catch (const Error& e) {
    throw PresetError("preset '" + p.name + "' failed to load: " + e.what());
  }
}

ProofScript Corpus::load_script(std::string_view name) const {
  auto script = read_script(name);
  const auto chain = replay(script, base_library());
  if (chain.empty() || !chain.back().verdict.verified) {
    const auto& bad = chain.back();
    throw PresetError("preset '" + std::string(name) + "' failed its self-check in " + bad.script.name + ": " +
                      bad.verdict.reason);
  }
  return script;
}

PresetPayload Corpus::load_preset(std::string_view name) const {
  const PresetInfo* p = find(name);
  if (!p) throw PresetError("unknown preset '" + std::string(name) + "'");
  switch (p->kind) {
    case PresetKind::axioms: return load_axioms(name);
    case PresetKind::model: return load_model(name);
    case PresetKind::proof: return load_script(name);
  }
  throw PresetError("unknown preset kind");
}

std::optional<Identity> Corpus::named_identity(std::string_view name) const {
  for (const auto& p : presets_) {
    if (p.kind != PresetKind::axioms) continue;
    for (auto& id : load_axioms(p.name)) {
      if (id.name == name) return id;
    }
  }
  return std::nullopt;
}

std::vector<std::string> Corpus::script_names() const {
  std::vector<std::string> out;
  for (const auto& p : presets_) {
    if (p.kind == PresetKind::proof) out.push_back(p.name);
  }
  return out;
}

RuleLibrary Corpus::base_library() const { return RuleLibrary(load_axioms("E_BASIS")); }

std::vector<ProofScript> Corpus::dependency_chain(const ProofScript& script, const RuleLibrary& lib) const {
  std::vector<ProofScript> bundled;
  std::map<std::string, std::size_t> provider;  // rule name -> index into bundled
  for (const auto& name : script_names()) {
    bundled.push_back(read_script(name));
    const auto idx = bundled.size() - 1;
    provider[bundled.back().name] = idx;
    for (const auto& step : bundled.back().steps) {
      if (!step.checkpoint.empty()) provider[step.checkpoint] = idx;
    }
  }

  std::set<std::size_t> needed;
  std::vector<std::string> todo(script.uses.begin(), script.uses.end());
  while (!todo.empty()) {
    const std::string rule = todo.back();
    todo.pop_back();
    if (lib.contains(rule)) continue;
    const auto it = provider.find(rule);
    if (it == provider.end() || !needed.insert(it->second).second) continue;
    const auto& dep = bundled[it->second];
    todo.insert(todo.end(), dep.uses.begin(), dep.uses.end());
  }
  if (const auto self = provider.find(script.name); self != provider.end()) needed.erase(self->second);

  std::vector<ProofScript> chain;
  for (std::size_t idx : needed) chain.push_back(bundled[idx]);
  chain.push_back(script);
  return chain;
}

std::vector<Corpus::ReplayEntry> Corpus::replay(const ProofScript& script, RuleLibrary lib) const {
  std::vector<ReplayEntry> out;
  for (auto& s : dependency_chain(script, lib)) {
    auto verdict = verify_script(s, lib);
    const bool ok = verdict.verified;
    out.push_back({std::move(s), std::move(verdict)});
    if (!ok) break;
    promote(out.back().script, lib);
  }
  return out;
}

std::vector<Corpus::ReplayEntry> Corpus::replay_all(RuleLibrary lib) const {
  std::vector<ReplayEntry> out;
  for (const auto& name : script_names()) {
    auto script = read_script(name);
    auto verdict = verify_script(script, lib);
    const bool ok = verdict.verified;
    out.push_back({script, std::move(verdict)});
    if (!ok) break;
    promote(out.back().script, lib);
  }
  return out;
}

}  // namespace invbasis
