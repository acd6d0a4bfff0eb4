#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "invbasis/algebra.hpp"
#include "invbasis/proofs.hpp"
#include "invbasis/term.hpp"

namespace invbasis {

/// Identity list format: one `[NAME:] lhs = rhs` per line, `#` comments and
/// blank lines ignored. Errors carry the 1-based line number.
std::vector<Identity> parse_identity_list(std::string_view text);

enum class PresetKind { axioms, model, proof };

std::string_view to_string(PresetKind kind);

struct PresetInfo {
  std::string name;
  PresetKind kind;
  std::filesystem::path path;  // relative to the corpus root
  std::string note;
};

using PresetPayload = std::variant<std::vector<Identity>, FiniteAlgebra, ProofScript>;

/// Bundled axiom sets, models and proof scripts, described by
/// `<root>/registry.json`. Proof scripts are listed in dependency order.
class Corpus {
 public:
  explicit Corpus(std::filesystem::path root = default_root());

  static std::filesystem::path default_root();

  const std::filesystem::path& root() const noexcept { return root_; }
  const std::vector<PresetInfo>& presets() const noexcept { return presets_; }
  const PresetInfo* find(std::string_view name) const;

  /// Parses the payload and self-checks it: models are validated on
  /// construction, proof scripts are replayed with their dependencies.
  /// Throws PresetError for unknown names or failed self-checks.
  PresetPayload load_preset(std::string_view name) const;

  std::vector<Identity> load_axioms(std::string_view name) const;
  FiniteAlgebra load_model(std::string_view name) const;
  ProofScript load_script(std::string_view name) const;

  /// Parses a bundled script without verifying it.
  ProofScript read_script(std::string_view name) const;

  /// A named identity from any bundled axiom set (E1, ASSOC, ...).
  std::optional<Identity> named_identity(std::string_view name) const;

  std::vector<std::string> script_names() const;

  /// Library the bundled scripts start from (the E_BASIS identities).
  RuleLibrary base_library() const;

  /// Bundled scripts that `script` depends on (transitively through cited
  /// rules not already in `lib`), in registry order, followed by `script`.
  std::vector<ProofScript> dependency_chain(const ProofScript& script, const RuleLibrary& lib) const;

  struct ReplayEntry {
    ProofScript script;
    ScriptVerdict verdict;
  };

  /// Verifies, in registry order, every bundled script that `script` depends on
  /// (transitively through its cited rules) and then `script` itself. Stops at
  /// the first failure; the last entry is then the failing one.
  std::vector<ReplayEntry> replay(const ProofScript& script, RuleLibrary lib) const;

  /// Verifies every bundled script in registry order.
  std::vector<ReplayEntry> replay_all(RuleLibrary lib) const;

 private:
  PresetInfo const& require(std::string_view name, PresetKind kind) const;

  std::filesystem::path root_;
  std::vector<PresetInfo> presets_;
};

}  // namespace invbasis
