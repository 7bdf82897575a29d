#include "cauchylab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cauchylab/error.hpp"

namespace cauchylab::io {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& field, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last) throw ParseError("not a number: '" + field + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value: '" + field + "'", line);
  return v;
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ParseError(std::string("expected a number for '") + key + "'", 0);
  return j.at(key).get<double>();
}

contours::Complex complex_value(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing '") + key + "'", 0);
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(std::string("'") + key + "' must be [re, im]", 0);
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<double> real_vector(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != n)
    throw ParseError(std::string("'") + key + "' must be an array of " + std::to_string(n) + " numbers", 0);
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ParseError(std::string("'") + key + "' must hold numbers", 0);
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

LoadedCloud parse_pointcloud(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_fields(line);
      break;
    }
  }
  if (header.empty()) throw ParseError("empty point-cloud file", 0);
  const bool weighted = header.back() == "w";
  const std::size_t m = header.size() - (weighted ? 1 : 0);
  if (m == 0) throw ParseError("header has no coordinate columns", line_no);
  for (std::size_t k = 0; k < m; ++k)
    if (header[k] != "x" + std::to_string(k + 1))
      throw ParseError("header must read x1,...,xm[,w]; got '" + header[k] + "'", line_no);

  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()),
                       line_no);
    std::vector<double> p(m);
    for (std::size_t k = 0; k < m; ++k) p[k] = parse_number(fields[k], line_no);
    double w = 1.0;
    if (weighted) {
      w = parse_number(fields.back(), line_no);
      if (!(w > 0.0)) throw DomainError("line " + std::to_string(line_no) + ": weight must be positive");
    }
    points.push_back(std::move(p));
    weights.push_back(w);
  }
  if (points.empty()) throw ParseError("point cloud has no rows", line_no);
  const std::size_t rows = points.size();
  geometry::DiscreteMeasure mu(static_cast<int>(m), points, weights);
  const std::size_t merged = mu.merged();
  return {std::move(mu), rows, merged};
}

LoadedCloud parse_pointcloud_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_pointcloud(in);
}

void write_pointcloud(const fixtures::PointCloud& cloud, std::ostream& out) {
  for (int k = 1; k <= cloud.dim; ++k) out << 'x' << k << ',';
  out << "w\n";
  char buf[32];
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    for (double v : cloud.points[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", cloud.weights[i]);
    out << buf << '\n';
  }
}

contours::Contour parse_contour(const json& j) {
  using namespace contours;
  if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array())
    throw ParseError("contour needs a 'segments' array", 0);
  const bool closed = j.value("closed", false);
  std::vector<ContourSegment> segs;
  for (const auto& s : j.at("segments")) {
    const std::string kind = s.value("kind", "");
    const double density = s.contains("density") ? number(s, "density") : 1.0;
    if (kind == "segment") {
      segs.emplace_back(LineSegment{complex_value(s, "a"), complex_value(s, "b")}, density);
    } else if (kind == "arc") {
      segs.emplace_back(
          CircularArc{complex_value(s, "center"), number(s, "radius"), number(s, "theta0"), number(s, "theta1")},
          density);
    } else if (kind == "ray") {
      Ray ray{complex_value(s, "origin"), complex_value(s, "direction")};
      if (s.contains("length") && !s.at("length").is_null()) ray.length = number(s, "length");
      segs.emplace_back(ray, density);
    } else {
      throw ParseError("unknown segment kind '" + kind + "'", 0);
    }
  }
  return Contour(std::move(segs), closed);
}

clifford_analysis::DiscreteSurface parse_surface(const json& j) {
  using namespace clifford_analysis;
  if (!j.is_object() || !j.contains("facets") || !j.at("facets").is_array())
    throw ParseError("surface needs a 'facets' array", 0);
  const double nd = number(j, "n");
  const int n = static_cast<int>(nd);
  if (n < 2 || n != nd) throw ParseError("'n' must be an integer >= 2", 0);
  std::vector<Facet> facets;
  for (const auto& f : j.at("facets")) {
    Facet facet{real_vector(f, "centroid", n), real_vector(f, "normal", n), number(f, "area")};
    if (f.contains("density")) facet.density = number(f, "density");
    facets.push_back(std::move(facet));
  }
  std::optional<double> mesh;
  if (j.contains("mesh_size")) mesh = number(j, "mesh_size");
  return DiscreteSurface(n, std::move(facets), j.value("closed", false), mesh);
}

planes::PlaneBasis parse_plane(const json& j) {
  if (!j.is_object() || !j.contains("vectors") || !j.at("vectors").is_array())
    throw ParseError("plane needs a 'vectors' array", 0);
  const double md = number(j, "m");
  const auto m = static_cast<std::size_t>(md);
  if (m < 1 || static_cast<double>(m) != md) throw ParseError("'m' must be a positive integer", 0);
  const auto& vs = j.at("vectors");
  if (vs.size() != m) throw ParseError("expected " + std::to_string(m) + " vectors", 0);
  planes::CMatrix b(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t c = 0; c < m; ++c) {
    if (!vs[c].is_array() || vs[c].size() != m) throw ParseError("every vector needs m entries", 0);
    for (std::size_t r = 0; r < m; ++r) {
      const auto& e = vs[c][r];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("vector entries must be [re, im]", 0);
      b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {e[0].get<double>(), e[1].get<double>()};
    }
  }
  return planes::PlaneBasis(std::move(b));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace cauchylab::io
