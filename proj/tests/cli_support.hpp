#pragma once

// Runs the CLI binary and checks its JSON against docs/output.schema.json.

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace weylkit::fixtures {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

inline std::string shell_quote(const std::string &s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  return q + "'";
}

inline CliRun run_cli(const std::string &args) {
  const std::string cmd = shell_quote(WEYLKIT_CLI) + " " + args + " 2>/dev/null";
  CliRun run;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return run;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    run.out.append(buf.data(), got);
  const int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

/// The subset of JSON Schema the shipped schema uses: type, required,
/// properties, additionalProperties = false, items.
inline bool schema_accepts(const nlohmann::json &schema, const nlohmann::json &doc,
                           std::string &why, const std::string &at = "$") {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    const bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                    (t == "string" && doc.is_string()) || (t == "integer" && doc.is_number_integer()) ||
                    (t == "number" && doc.is_number()) || (t == "boolean" && doc.is_boolean());
    if (!ok) {
      why = at + ": expected " + t;
      return false;
    }
  }
  if (doc.is_object()) {
    for (const auto &key : schema.value("required", nlohmann::json::array()))
      if (!doc.contains(key.get<std::string>())) {
        why = at + ": missing " + key.get<std::string>();
        return false;
      }
    const auto props = schema.value("properties", nlohmann::json::object());
    for (const auto &[key, value] : doc.items()) {
      if (props.contains(key)) {
        if (!schema_accepts(props[key], value, why, at + "." + key))
          return false;
      } else if (schema.contains("additionalProperties") && !schema["additionalProperties"]) {
        why = at + ": unexpected " + key;
        return false;
      }
    }
  }
  if (doc.is_array() && schema.contains("items"))
    for (std::size_t k = 0; k < doc.size(); ++k)
      if (!schema_accepts(schema["items"], doc[k], why, at + "[" + std::to_string(k) + "]"))
        return false;
  return true;
}

inline const nlohmann::json &output_schema() {
  static const nlohmann::json schema = [] {
    std::ifstream in(WEYLKIT_SCHEMA);
    return nlohmann::json::parse(in);
  }();
  return schema;
}

} // namespace weylkit::fixtures
