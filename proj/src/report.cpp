#include "cauchylab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "cauchylab/error.hpp"

namespace cauchylab::report {

using nlohmann::json;

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Check& Report::expect_near(std::string name, std::string anchor, double value, double oracle, double tolerance) {
  const bool ok = std::abs(value - oracle) <= tolerance;
  checks.push_back({std::move(name), std::move(anchor), value, oracle, tolerance, ok});
  return checks.back();
}

Check& Report::expect_at_most(std::string name, std::string anchor, double value, double bound, double tolerance) {
  const bool ok = value <= bound + tolerance;
  checks.push_back({std::move(name), std::move(anchor), value, bound, tolerance, ok});
  return checks.back();
}

Check& Report::expect_at_least(std::string name, std::string anchor, double value, double bound, double tolerance) {
  const bool ok = value >= bound - tolerance;
  checks.push_back({std::move(name), std::move(anchor), value, bound, tolerance, ok});
  return checks.back();
}

Check& Report::expect_true(std::string name, std::string anchor, bool ok) {
  checks.push_back({std::move(name), std::move(anchor), ok ? 1.0 : 0.0, 1.0, 0.0, ok});
  return checks.back();
}

json to_json(const Report& r) {
  json out = json::object();
  if (!r.command.empty()) out["command"] = r.command;
  if (r.seed) out["seed"] = *r.seed;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"anchor", c.anchor},
                      {"value", c.value},
                      {"oracle", c.oracle},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  out["checks"] = std::move(checks);
  if (!r.tables.empty()) {
    json tables = json::array();
    for (const auto& t : r.tables) tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
    out["tables"] = std::move(tables);
  }
  return out;
}

namespace {

void write(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      // nlohmann::json keeps object keys in a std::map, so iteration is sorted.
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        write(j[k], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) {
        out += "\"nan\"";
      } else if (std::isinf(v)) {
        out += v > 0 ? "\"inf\"" : "\"-inf\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12e", v);
        out += buf;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string canonical(const json& j) {
  std::string out;
  write(j, out);
  return out;
}

std::string emit(const Report& r) { return canonical(to_json(r)); }

void emit_report(const Report& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << emit(r) << '\n';
  if (!out.flush()) throw Error("cannot write '" + path + "'");
}

}  // namespace cauchylab::report
