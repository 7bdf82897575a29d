#pragma once

// Reports: a list of named checks plus optional numeric tables, emitted as
// canonical JSON (sorted keys, %.12e floats, no whitespace).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cauchylab::report {

struct Check {
  std::string name;
  std::string anchor;  // where the checked statement comes from, in words
  double value;
  double oracle;
  double tolerance;
  bool pass;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::vector<Check> checks;
  std::vector<Table> tables;

  bool all_pass() const;
  /// Records |value - oracle| <= tolerance.
  Check& expect_near(std::string name, std::string anchor, double value, double oracle, double tolerance);
  /// Records value <= bound (the oracle) within tolerance of slack: value <= bound + tolerance.
  Check& expect_at_most(std::string name, std::string anchor, double value, double bound, double tolerance = 0.0);
  /// Records value >= bound - tolerance.
  Check& expect_at_least(std::string name, std::string anchor, double value, double bound, double tolerance = 0.0);
  /// Records a boolean outcome as 1 or 0 against oracle 1.
  Check& expect_true(std::string name, std::string anchor, bool ok);
};

nlohmann::json to_json(const Report& r);

/// Canonical text: object keys sorted, floating values as %.12e, integers
/// as integers, NaN and infinities as the strings "nan", "inf", "-inf".
std::string canonical(const nlohmann::json& j);

/// canonical(to_json(r)); an empty report gives {"checks":[]}.
std::string emit(const Report& r);
/// Writes emit(r) and a newline; throws Error when the file cannot be written.
void emit_report(const Report& r, const std::string& path);

}  // namespace cauchylab::report
