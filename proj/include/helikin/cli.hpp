#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace helikin::cli {

/// Fully resolved parameters of one run: the subcommand plus every option
/// value as text, in a fixed order. Defaults, the --config file and
/// explicit flags are merged into it (flags win).
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> entries;

  /// Value of a key; throws ValidationError when absent.
  const std::string& get(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  /// One `key=value` per line, starting with `command=`.
  std::string to_text() const;
  /// Inverse of to_text. Lines starting with '#' and blank lines are skipped.
  static RunConfig from_text(const std::string& text);

  bool operator==(const RunConfig&) const = default;
};

/// Default configuration of a subcommand (global options included).
RunConfig default_config(const std::string& command);

/// Runs the command line (args excludes the program name). Output goes to
/// `out` unless --output names a file; diagnostics go to `err`.
/// Returns 0 on success, 2 on invalid input, 3 on numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);

}  // namespace helikin::cli
