#pragma once

// Demo suites behind the command-line tool. Each command builds a report of
// named checks (and tables) from fixtures or an input file.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cauchylab/report.hpp"

namespace cauchylab::suites {

struct RunConfig {
  std::string command;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // keyed by check name
  std::optional<std::string> fixture;        // koch, cantor, grid, disc, lipschitz, sphere, line
  std::optional<int> depth;
  std::optional<double> spacing;
  double lip_const = 0.5;
  int ambient = 2;  // Cantor fixture: 1 (middle thirds) or 2 (four-corner dust)
};

const std::vector<std::string>& commands();

/// Runs one command. fixture-gen also writes the fixture to cfg.output.
/// Throws DomainError for unknown commands, fixtures or tolerance names.
report::Report run_suite(const RunConfig& cfg);

/// run_suite plus emission: the report goes to cfg.output (stdout when
/// absent, and always for fixture-gen). Returns 0 when every check passes,
/// 1 when one fails, 2 on an error, which is described on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cauchylab::suites
