#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace trajquad::cli {

using Json = nlohmann::ordered_json;

// A command plus its fully resolved parameters (defaults filled in, ranges
// checked). Parameters keep a fixed key order so the echo is stable.
struct RunConfig {
  std::string command;
  Json params = Json::object();

  Json to_json() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

const std::vector<std::string>& commands();

// Validates `raw` ({"command": ..., other keys...}) against the command's
// schema and fills defaults. Throws ConfigError.
RunConfig resolve(const Json& raw);

// Reads the config echo back out of a CSV or JSON output document.
RunConfig parse_echo(const std::string& document);

// Runs the command and writes the document to `out`; returns the exit status
// (0 ok, 3 when a numeric check misses its tolerance). Library errors
// propagate as exceptions.
int run(const RunConfig& cfg, std::ostream& out);

std::string help_text();

// Full command-line entry point: argument parsing, config merge, error to
// exit-code mapping.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace trajquad::cli
