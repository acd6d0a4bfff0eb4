#include "invbasis/model_io.hpp"

#include <fstream>
#include <sstream>

namespace invbasis {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteAlgebra model_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw FormatError("model document must be an object");
    const int size = j.at("size").get<int>();
    const auto rows = j.at("mul").get<std::vector<std::vector<Element>>>();
    auto inv = j.at("inv").get<std::vector<Element>>();
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : std::string{};
    if (static_cast<int>(rows.size()) != size) throw FormatError("mul must have 'size' rows");
    return FiniteAlgebra::from_rows(rows, std::move(inv), std::move(name));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed model document: ") + e.what());
  }
}

namespace {

FiniteAlgebra read_text_model(std::string_view text) {
  // Strip comments, then read whitespace-separated tokens.
  std::string cleaned;
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    cleaned += line;
    cleaned += '\n';
  }
  std::istringstream in(cleaned);
  std::string name;
  int size = -1;
  std::vector<Element> mul, inv;
  bool have_mul = false, have_inv = false;

  const auto read_ints = [&](std::vector<Element>& out, std::size_t count, const char* field) {
    for (std::size_t i = 0; i < count; ++i) {
      long long v;
      if (!(in >> v)) throw FormatError(std::string("model field '") + field + "' is truncated");
      if (v < 0 || v >= size) throw FormatError(std::string("model field '") + field + "' entry out of range");
      out.push_back(static_cast<Element>(v));
    }
  };

  for (std::string key; in >> key;) {
    if (key == "name") {
      if (!(in >> name)) throw FormatError("model field 'name' has no value");
    } else if (key == "size") {
      if (!(in >> size) || size < 1) throw FormatError("model field 'size' must be a positive integer");
    } else if (key == "mul" || key == "inv") {
      if (size < 1) throw FormatError("model field 'size' must precede '" + key + "'");
      if (key == "mul") {
        if (have_mul) throw FormatError("model field 'mul' repeated");
        read_ints(mul, static_cast<std::size_t>(size) * size, "mul");
        have_mul = true;
      } else {
        if (have_inv) throw FormatError("model field 'inv' repeated");
        read_ints(inv, static_cast<std::size_t>(size), "inv");
        have_inv = true;
      }
    } else {
      throw FormatError("unknown model field '" + key + "'");
    }
  }
  if (size < 1) throw FormatError("model is missing 'size'");
  if (!have_mul) throw FormatError("model is missing 'mul'");
  if (!have_inv) throw FormatError("model is missing 'inv'");
  return FiniteAlgebra(size, std::move(mul), std::move(inv), std::move(name));
}

}  // namespace

FiniteAlgebra read_model(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("malformed model document: ") + e.what());
    }
    return model_from_json(j);
  }
  return read_text_model(text);
}

FiniteAlgebra read_model_file(const std::filesystem::path& path) { return read_model(read_text_file(path)); }

nlohmann::ordered_json to_json(const FiniteAlgebra& a) {
  nlohmann::ordered_json j;
  if (!a.name().empty()) j["name"] = a.name();
  j["size"] = a.size();
  std::vector<std::vector<Element>> rows(a.size());
  for (Element x = 0; x < a.size(); ++x) {
    for (Element y = 0; y < a.size(); ++y) rows[x].push_back(a.mul(x, y));
  }
  j["mul"] = rows;
  j["inv"] = std::vector<Element>(a.inv_table().begin(), a.inv_table().end());
  return j;
}

std::string write_model(const FiniteAlgebra& a) {
  const auto row = [](std::span<const Element> xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ", ";
      s += std::to_string(xs[i]);
    }
    return s + "]";
  };
  std::string out = "{\n";
  if (!a.name().empty()) out += "  \"name\": " + nlohmann::json(a.name()).dump() + ",\n";
  out += "  \"size\": " + std::to_string(a.size()) + ",\n";
  out += "  \"mul\": [\n";
  for (Element x = 0; x < a.size(); ++x) {
    out += "    " + row(a.mul_table().subspan(static_cast<std::size_t>(x) * a.size(), a.size()));
    out += x + 1 < a.size() ? ",\n" : "\n";
  }
  out += "  ],\n";
  out += "  \"inv\": " + row(a.inv_table()) + "\n";
  out += "}\n";
  return out;
}

}  // namespace invbasis
