#pragma once

// File formats for the command-line front end: point-cloud CSV and JSON
// descriptions of contours, surfaces and planes.

#include <cstddef>
#include <iosfwd>
#include <string>

#include "cauchylab/clifford_analysis.hpp"
#include "cauchylab/complex_contours.hpp"
#include "cauchylab/complex_planes.hpp"
#include "cauchylab/fixtures.hpp"
#include "cauchylab/geometry_measures.hpp"
#include "json.hpp"

namespace cauchylab::io {

struct LoadedCloud {
  geometry::DiscreteMeasure measure;
  std::size_t rows;
  std::size_t merged;
};

/// CSV with header x1,...,xm and an optional trailing w column. Blank lines
/// are skipped. Malformed rows (wrong arity, non-numeric or non-finite
/// fields) throw ParseError with the 1-based line number; nonpositive
/// weights throw DomainError.
LoadedCloud parse_pointcloud(std::istream& in);
LoadedCloud parse_pointcloud_file(const std::string& path);

/// Header plus one row per point; weights always written.
void write_pointcloud(const fixtures::PointCloud& cloud, std::ostream& out);

/// {"closed": bool, "segments": [...]}, each segment one of
///   {"kind":"segment","a":[re,im],"b":[re,im]}
///   {"kind":"arc","center":[re,im],"radius":r,"theta0":t0,"theta1":t1}
///   {"kind":"ray","origin":[re,im],"direction":[re,im],"length":L or null}
/// with an optional "density" (default 1). Throws ParseError.
contours::Contour parse_contour(const nlohmann::json& j);

/// {"n": n, "closed": bool, "facets": [{"centroid":[...],"normal":[...],
/// "area":a,"density":d}], "mesh_size": h (optional)}.
clifford_analysis::DiscreteSurface parse_surface(const nlohmann::json& j);

/// {"m": m, "vectors": [[[re,im], ... m entries], ... m vectors]}.
planes::PlaneBasis parse_plane(const nlohmann::json& j);

/// Reads a whole JSON file; ParseError on I/O or syntax failure.
nlohmann::json read_json_file(const std::string& path);

}  // namespace cauchylab::io
