#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "formsum/integer.hpp"

namespace formsum {

using Json = nlohmann::ordered_json;

namespace toml_subset {

// Minimal TOML reader covering what experiment files need: comments,
// [section] and [section.sub] headers, and key = value lines with string,
// integer, boolean or flat-array values.  Floating literals are kept as
// their literal text (strings) so that thresholds stay exact end to end.
// The canonical configuration representation is JSON; TOML is an accepted
// input syntax for it.

inline std::string parse_string_token(const std::string& tok, std::size_t line_no) {
  if (tok.size() >= 2 && (tok.front() == '"' || tok.front() == '\'') && tok.back() == tok.front()) {
    return tok.substr(1, tok.size() - 2);
  }
  throw std::invalid_argument("toml: malformed string on line " + std::to_string(line_no));
}

inline Json parse_scalar(const std::string& raw, std::size_t line_no) {
  std::string tok = raw;
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(tok.begin());
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
  if (tok.empty()) throw std::invalid_argument("toml: empty value on line " + std::to_string(line_no));
  if (tok.front() == '"' || tok.front() == '\'') return parse_string_token(tok, line_no);
  if (tok == "true") return true;
  if (tok == "false") return false;
  const bool neg = tok.front() == '-' || tok.front() == '+';
  const std::string digits = neg ? tok.substr(1) : tok;
  const bool all_digits = !digits.empty() &&
      std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (all_digits) {
    try {
      return std::stoll(tok);
    } catch (const std::out_of_range&) {
      return tok;  // big integers ride along as strings
    }
  }
  // Decimal literals become strings; downstream parsing is exact.
  const bool decimal = std::all_of(digits.begin(), digits.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  });
  if (decimal && std::count(digits.begin(), digits.end(), '.') == 1) return tok;
  throw std::invalid_argument("toml: unsupported value \"" + tok + "\" on line " + std::to_string(line_no) +
                              " (quote it if it is meant as a string)");
}

inline Json parse_value(const std::string& raw, std::size_t line_no) {
  std::string tok = raw;
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(tok.begin());
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') throw std::invalid_argument("toml: unterminated array on line " + std::to_string(line_no));
    Json arr = Json::array();
    std::string inner = tok.substr(1, tok.size() - 2);
    std::string item;
    int depth = 0;
    bool in_str = false;
    char quote = 0;
    auto flush = [&] {
      const bool blank = std::all_of(item.begin(), item.end(),
                                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
      if (!blank) arr.push_back(parse_value(item, line_no));
      item.clear();
    };
    for (char c : inner) {
      if (in_str) {
        item += c;
        if (c == quote) in_str = false;
        continue;
      }
      if (c == '"' || c == '\'') {
        in_str = true;
        quote = c;
        item += c;
      } else if (c == '[') {
        ++depth;
        item += c;
      } else if (c == ']') {
        --depth;
        item += c;
      } else if (c == ',' && depth == 0) {
        flush();
      } else {
        item += c;
      }
    }
    if (!item.empty()) flush();
    return arr;
  }
  return parse_scalar(tok, line_no);
}

inline Json parse(const std::string& text) {
  Json root = Json::object();
  Json* section = &root;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // strip comments outside strings
    std::string stripped;
    bool in_str = false;
    char quote = 0;
    for (char c : line) {
      if (in_str) {
        stripped += c;
        if (c == quote) in_str = false;
        continue;
      }
      if (c == '"' || c == '\'') {
        in_str = true;
        quote = c;
        stripped += c;
      } else if (c == '#') {
        break;
      } else {
        stripped += c;
      }
    }
    std::string trimmed = stripped;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.erase(trimmed.begin());
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
    if (trimmed.empty()) continue;
    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') throw std::invalid_argument("toml: bad section header on line " + std::to_string(line_no));
      const std::string path = trimmed.substr(1, trimmed.size() - 2);
      section = &root;
      std::istringstream parts(path);
      std::string key;
      while (std::getline(parts, key, '.')) {
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.front()))) key.erase(key.begin());
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        if (key.empty()) throw std::invalid_argument("toml: empty section name on line " + std::to_string(line_no));
        section = &(*section)[key];
        if (section->is_null()) *section = Json::object();
      }
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("toml: expected key = value on line " + std::to_string(line_no));
    }
    std::string key = trimmed.substr(0, eq);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    if (key.size() >= 2 && (key.front() == '"' || key.front() == '\'')) key = parse_string_token(key, line_no);
    if (key.empty()) throw std::invalid_argument("toml: empty key on line " + std::to_string(line_no));
    (*section)[key] = parse_value(trimmed.substr(eq + 1), line_no);
  }
  return root;
}

}  // namespace toml_subset

// One experiment: a subcommand plus its inputs, output controls and the
// parallelism degree.  Canonical representation is the JSON produced by
// to_json(); loading that JSON back yields an identical config.
struct ExperimentConfig {
  std::string command;
  Json inputs = Json::object();
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json
  unsigned jobs = 1;

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["out"] = out_dir;
    j["format"] = format;
    j["jobs"] = jobs;
    return j;
  }

  static ExperimentConfig from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    ExperimentConfig cfg;
    if (!j.contains("command") || !j.at("command").is_string()) {
      throw std::invalid_argument("config: missing string field \"command\"");
    }
    cfg.command = j.at("command").get<std::string>();
    if (j.contains("inputs")) {
      if (!j.at("inputs").is_object()) throw std::invalid_argument("config: \"inputs\" must be an object");
      cfg.inputs = j.at("inputs");
    }
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (cfg.format != "csv" && cfg.format != "json") {
      throw std::invalid_argument("config: \"format\" must be csv or json");
    }
    if (j.contains("jobs")) {
      const auto& v = j.at("jobs");
      if (!v.is_number_unsigned() && !v.is_number_integer()) {
        throw std::invalid_argument("config: \"jobs\" must be a non-negative integer");
      }
      const long long n = v.get<long long>();
      if (n < 0) throw std::invalid_argument("config: \"jobs\" must be a non-negative integer");
      cfg.jobs = static_cast<unsigned>(n);
    }
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (key != "command" && key != "inputs" && key != "out" && key != "format" && key != "jobs") {
        throw std::invalid_argument("config: unknown field \"" + key + "\"");
      }
    }
    return cfg;
  }

  static ExperimentConfig from_string(const std::string& text, const std::string& hint = "") {
    const bool looks_toml = hint == "toml" ||
        (hint.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos &&
         text[text.find_first_not_of(" \t\r\n")] != '{');
    if (looks_toml) return from_json(toml_subset::parse(text));
    return from_json(Json::parse(text));
  }

  static ExperimentConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string hint;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") hint = "toml";
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") hint = "json";
    return from_string(buf.str(), hint);
  }
};

// FNV-1a over the canonical JSON dump; stable across runs and platforms.
inline std::string config_digest(const ExperimentConfig& cfg) {
  const std::string dump = cfg.to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

}  // namespace formsum
