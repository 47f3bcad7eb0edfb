#pragma once

// Text output: CSV tables, density files with a JSON header line, and SVG.
// Every number goes through format_double, so files round-trip exactly.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "telegraph/format.hpp"
#include "telegraph/fracepd.hpp"
#include "telegraph/planar.hpp"
#include "telegraph/telegraph1d.hpp"

namespace telegraph::io {

namespace detail {

inline nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace detail

inline void write_paths_csv(std::ostream& os, const PathBatch& b) {
  os << "path_id,x,n_events,direction\n";
  for (std::size_t i = 0; i < b.positions.size(); ++i) {
    os << i << ',' << format_double(b.positions[i]) << ',' << b.event_counts[i] << ','
       << static_cast<int>(b.direction_at_t[i]) << '\n';
  }
}

inline void write_planar_csv(std::ostream& os, const PlanarBatch& b) {
  os << "path_id,x,y,n_events\n";
  for (std::size_t i = 0; i < b.xs.size(); ++i) {
    os << i << ',' << format_double(b.xs[i]) << ',' << format_double(b.ys[i]) << ',' << b.event_counts[i] << '\n';
  }
}

inline void write_polyline_csv(std::ostream& os, const std::vector<PolylinePoint>& pts) {
  os << "phi_angle,x,y\n";
  for (const auto& p : pts) {
    os << format_double(p.phi_angle) << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

inline void write_scan_csv(std::ostream& os, const std::vector<fracepd::ScanPoint>& pts) {
  os << "nu,c1,c2,positive\n";
  for (const auto& p : pts) {
    os << format_double(p.nu) << ',' << format_double(p.c1) << ',' << format_double(p.c2) << ','
       << (p.c2 > 0.0 ? 1 : 0) << '\n';
  }
}

/// Header object {atoms: [{x, w}], support: [lo, hi], t}. Infinite ends are null.
inline nlohmann::ordered_json density_header(const DensityModel1D& m) {
  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (const auto& a : m.atoms) atoms.push_back({{"x", a.x}, {"w", a.weight}});
  nlohmann::ordered_json h;
  h["atoms"] = atoms;
  h["support"] = {detail::number_or_null(m.lo), detail::number_or_null(m.hi)};
  h["t"] = m.t;
  return h;
}

/// First line "# <json header>", then "x,pdf" rows at the given abscissae.
inline void write_density_csv(std::ostream& os, const DensityModel1D& m, const std::vector<double>& xs) {
  os << "# " << density_header(m).dump() << '\n';
  os << "x,pdf\n";
  for (const double x : xs) os << format_double(x) << ',' << format_double(m.pdf(x)) << '\n';
}

/// Planar density on a grid: header with the boundary mass, then "x,y,pdf" rows.
/// Points within the boundary guard are written with an empty pdf field.
inline void write_planar_density_csv(std::ostream& os, const PlanarMotionSpec& spec, const std::vector<double>& xs,
                                     const std::vector<double>& ys) {
  nlohmann::ordered_json h;
  h["boundary_mass"] = std::exp(-spec.lambda * spec.t);
  h["t"] = spec.t;
  h["lambda"] = spec.lambda;
  os << "# " << h.dump() << '\n';
  os << "x,y,pdf\n";
  for (const double x : xs) {
    for (const double y : ys) {
      os << format_double(x) << ',' << format_double(y) << ',';
      try {
        os << format_double(density_planar(spec, x, y));
      } catch (const domain_error&) {
      }
      os << '\n';
    }
  }
}

/// n equispaced points on [lo, hi]; the ends are nudged inward by a relative
/// 1e-9 when `open` so that edge-singular laws are finite at every point.
inline std::vector<double> grid(double lo, double hi, int n, bool open = false) {
  std::vector<double> out;
  if (n == 1) return {0.5 * (lo + hi)};
  const double pad = open ? 1e-9 * (hi - lo) : 0.0;
  for (int k = 0; k < n; ++k) out.push_back(lo + pad + (hi - lo - 2.0 * pad) * k / (n - 1));
  return out;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

struct SvgLayer {
  std::vector<std::pair<double, double>> points;
  std::string css_class;  // "boundary" or "path"
  std::string stroke;
  bool closed = false;
  std::string label;
};

/// Square drawing with equal axis scales; y points up.
inline std::string svg_document(const std::vector<SvgLayer>& layers, int size = 640, std::string_view title = {}) {
  double lo_x = std::numeric_limits<double>::infinity();
  double hi_x = -lo_x;
  double lo_y = lo_x;
  double hi_y = -lo_x;
  for (const auto& l : layers) {
    for (const auto& [x, y] : l.points) {
      lo_x = std::min(lo_x, x);
      hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
  }
  if (!std::isfinite(lo_x)) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
  const double margin = 0.06 * size;
  const double k = (size - 2.0 * margin) / span;
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  const auto px = [&](double x) { return 0.5 * size + k * (x - cx); };
  const auto py = [&](double y) { return 0.5 * size - k * (y - cy); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  if (!title.empty()) os << "  <title>" << title << "</title>\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <line class=\"axis\" x1=\"0\" y1=\"" << format_double(py(0.0)) << "\" x2=\"" << size << "\" y2=\""
     << format_double(py(0.0)) << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  os << "  <line class=\"axis\" x1=\"" << format_double(px(0.0)) << "\" y1=\"0\" x2=\"" << format_double(px(0.0))
     << "\" y2=\"" << size << "\" stroke=\"#bbb\" stroke-width=\"0.5\"/>\n";
  for (const auto& l : layers) {
    if (l.points.empty()) continue;
    os << "  <path class=\"" << l.css_class << "\"";
    if (!l.label.empty()) os << " data-label=\"" << l.label << "\"";
    os << " fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\"" << (l.css_class == "boundary" ? 1.5 : 1.0)
       << "\" d=\"";
    char cmd = 'M';
    for (const auto& [x, y] : l.points) {
      os << cmd << format_double(std::round(px(x) * 1000.0) / 1000.0) << ','
         << format_double(std::round(py(y) * 1000.0) / 1000.0) << ' ';
      cmd = 'L';
    }
    if (l.closed) os << 'Z';
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline SvgLayer boundary_layer(const std::vector<PolylinePoint>& pts, std::string stroke, std::string label = {}) {
  SvgLayer l;
  l.css_class = "boundary";
  l.stroke = std::move(stroke);
  l.closed = true;
  l.label = std::move(label);
  for (const auto& p : pts) l.points.emplace_back(p.x, p.y);
  return l;
}

/// One curve of the superellipse family |x|^n + |y|^n = 1: power speeds with
/// gamma = beta = 1 - n/2, c1 = c2 = 1, observed at t = 1/(1 - gamma).
inline PlanarMotionSpec figure_family_member(double n) {
  const double gamma = 1.0 - 0.5 * n;
  return LameSupport{gamma, gamma, 1.0, 1.0, 1.0 / (1.0 - gamma)}.motion();
}

inline constexpr double figure_family_n[] = {2.0 / 3.0, 1.5, 2.0, 3.0};

/// Four boundary curves n in {2/3, 3/2, 2, 3} and, inside the astroid, four
/// sample paths with 0, 2, 3 and 4 changes of direction.
inline std::string figure_family_svg(int m = 512, std::uint64_t seed = 1) {
  static constexpr const char* colors[] = {"#c0392b", "#2471a3", "#1e8449", "#7d3c98"};
  static constexpr const char* labels[] = {"n=2/3", "n=3/2", "n=2", "n=3"};
  std::vector<SvgLayer> layers;
  for (int i = 0; i < 4; ++i) {
    layers.push_back(boundary_layer(boundary_polyline(figure_family_member(figure_family_n[i]), m), colors[i],
                                    labels[i]));
  }
  const PlanarMotionSpec astroid = figure_family_member(2.0 / 3.0);
  for (const int changes : {0, 2, 3, 4}) {
    SvgLayer l;
    l.css_class = "path";
    l.stroke = "#333";
    l.label = "changes=" + std::to_string(changes);
    l.points = planar_trajectory(astroid, changes, seed);
    layers.push_back(std::move(l));
  }
  return svg_document(layers, 640, "Lame-curve supports and sample paths in the astroid");
}

}  // namespace telegraph::io
