#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "invbasis/algebra.hpp"

namespace invbasis {

/// Reads either model format:
///
///   text:  `name <id>` (optional), `size <n>`, `mul` followed by n rows of n
///          integers, `inv` followed by one row of n integers; `#` starts a comment.
///   json:  {"name": ..., "size": n, "mul": [[...], ...], "inv": [...]}
///
/// The document is treated as JSON when its first non-blank character is '{'.
FiniteAlgebra read_model(std::string_view text);
FiniteAlgebra read_model_file(const std::filesystem::path& path);

/// Structured form, one mul row per line; the output of write_model parses back
/// to the same algebra and re-serializes byte-identically.
std::string write_model(const FiniteAlgebra& a);

nlohmann::ordered_json to_json(const FiniteAlgebra& a);
FiniteAlgebra model_from_json(const nlohmann::json& j);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace invbasis
