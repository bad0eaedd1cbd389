#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bernlab/anisotropy.hpp"
#include "bernlab/bernoulli.hpp"
#include "bernlab/errors.hpp"
#include "bernlab/geometry.hpp"
#include "bernlab/harmonic.hpp"

namespace bernlab {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleMissing("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Grid field as CSV: a grid-spec header comment, then one x,y,value,kind row
// per node.
inline std::string field_to_csv(const HarmonicField& f) {
  const GridSpec& g = f.grid();
  std::string out = "# grid " + detail::fmt_double(g.x0) + " " + detail::fmt_double(g.y0) + " " +
                    detail::fmt_double(g.h) + " " + std::to_string(g.nx) + " " +
                    std::to_string(g.ny) + "\n";
  out += "# x,y,value,kind\n";
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec2 p = g.point(i, j);
      out += detail::fmt_double(p.x) + "," + detail::fmt_double(p.y) + "," +
             detail::fmt_double(f.value(i, j)) + "," +
             std::to_string(static_cast<int>(f.kind(i, j))) + "\n";
    }
  return out;
}

struct FieldData {
  GridSpec grid;
  std::vector<double> values;
  std::vector<std::uint8_t> kinds;
  double value(int i, int j) const { return values[grid.index(i, j)]; }
  NodeKind kind(int i, int j) const { return static_cast<NodeKind>(kinds[grid.index(i, j)]); }
};

inline FieldData field_from_csv(const std::string& text) {
  FieldData f;
  std::istringstream in(text);
  std::string line;
  bool have_grid = false;
  while (std::getline(in, line)) {
    if (line.rfind("# grid ", 0) == 0) {
      std::istringstream hs(line.substr(7));
      hs >> f.grid.x0 >> f.grid.y0 >> f.grid.h >> f.grid.nx >> f.grid.ny;
      f.values.assign(static_cast<size_t>(f.grid.nx) * f.grid.ny, 0.0);
      f.kinds.assign(f.values.size(), 0);
      have_grid = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (!have_grid) throw std::invalid_argument("field csv: missing grid header");
    double x = 0, y = 0, v = 0;
    int kind = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &x, &y, &v, &kind) != 4)
      throw std::invalid_argument("field csv: bad row '" + line + "'");
    const int i = static_cast<int>(std::lround((x - f.grid.x0) / f.grid.h));
    const int j = static_cast<int>(std::lround((y - f.grid.y0) / f.grid.h));
    f.values[f.grid.index(i, j)] = v;
    f.kinds[f.grid.index(i, j)] = static_cast<std::uint8_t>(kind);
  }
  if (!have_grid) throw std::invalid_argument("field csv: missing grid header");
  return f;
}

// Boundary gradient samples: x,y,nx,ny,grad rows.
inline std::string trace_to_csv(const std::vector<ResidualSample>& samples) {
  std::string out = "# x,y,nx,ny,grad\n";
  for (const auto& s : samples) {
    const Vec2 n = Direction(s.normal_theta).unit();
    out += detail::fmt_double(s.point.x) + "," + detail::fmt_double(s.point.y) + "," +
           detail::fmt_double(n.x) + "," + detail::fmt_double(n.y) + "," +
           detail::fmt_double(s.grad) + "\n";
  }
  return out;
}

// Polar samples of the anisotropy: theta,value rows (jump angles included).
inline std::string polar_csv(const Anisotropy& q, int n = 720) {
  std::vector<double> thetas;
  thetas.reserve(n + q.jumps().size());
  for (int k = 0; k < n; ++k) thetas.push_back(kTwoPi * k / n);
  for (const auto& j : q.jumps()) thetas.push_back(j.theta);
  std::sort(thetas.begin(), thetas.end());
  std::string out = "# theta,value\n";
  for (double t : thetas)
    out += detail::fmt_double(t) + "," + detail::fmt_double(q.eval(t)) + "\n";
  return out;
}

// Plain structured text report of a solution and its per-facet statistics.
inline std::string solution_report_text(const FreeBoundarySolution& sol,
                                        const std::vector<FacetStats>& facets) {
  std::ostringstream out;
  out << "solution report\n";
  out << "  converged: " << (sol.converged ? "true" : "false") << "\n";
  out << "  iterations: " << sol.iterations << "\n";
  out << "  residual_max_rel: " << detail::fmt_double(sol.residual_max_rel) << "\n";
  out << "  h: " << detail::fmt_double(sol.params.h) << "\n";
  out << "  fb_tol: " << detail::fmt_double(sol.params.fb_tol) << "\n";
  out << "  boundary_vertices: " << sol.boundary.size() << "\n";
  out << "  boundary_area: " << detail::fmt_double(sol.boundary.area()) << "\n";
  out << "  q_min: " << detail::fmt_double(sol.q_used.q_min()) << "\n";
  out << "  q_max: " << detail::fmt_double(sol.q_used.q_max()) << "\n";
  int flagged = 0;
  for (const auto& f : facets)
    if (f.below_strong_subsolution || f.above_supersolution) ++flagged;
  out << "  flagged_facets: " << flagged << " of " << facets.size() << "\n";
  out << "  facets:\n";
  for (const auto& f : facets) {
    out << "    facet " << f.facet << ": n_theta=" << detail::fmt_double(f.normal_theta)
        << " len=" << detail::fmt_double(f.length) << " q_sub=" << detail::fmt_double(f.q_sub)
        << " q_super=" << detail::fmt_double(f.q_super)
        << " grad_min=" << detail::fmt_double(f.grad_min)
        << " grad_max=" << detail::fmt_double(f.grad_max)
        << " grad_mean=" << detail::fmt_double(f.grad_mean) << " samples=" << f.samples
        << " flags=" << (f.below_strong_subsolution ? "B" : "-")
        << (f.above_supersolution ? "A" : "-") << (f.jump_facet ? "J" : "-") << "\n";
  }
  return out.str();
}

// Minimal SVG writer with a y-flip so world coordinates read naturally.
class SvgBuilder {
 public:
  SvgBuilder(BBox world, double width_px = 800.0) : world_(world) {
    const double pad = 0.05 * std::max(world.width(), world.height());
    world_.lo.x -= pad;
    world_.lo.y -= pad;
    world_.hi.x += pad;
    world_.hi.y += pad;
    scale_ = width_px / world_.width();
    width_ = width_px;
    height_ = world_.height() * scale_;
  }

  void add_polygon(const ConvexPolygon& p, const std::string& stroke, const std::string& fill,
                   double stroke_width = 1.5) {
    body_ += "<path d=\"" + path_d(p.vertices(), true) + "\" stroke=\"" + stroke + "\" fill=\"" +
             fill + "\" stroke-width=\"" + detail::fmt_double(stroke_width) + "\"/>\n";
  }

  void add_polyline(const std::vector<Vec2>& pts, const std::string& stroke,
                    double stroke_width = 1.0, bool close = false) {
    if (pts.size() < 2) return;
    body_ += "<path d=\"" + path_d(pts, close) + "\" stroke=\"" + stroke +
             "\" fill=\"none\" stroke-width=\"" + detail::fmt_double(stroke_width) + "\"/>\n";
  }

  std::string str() const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      detail::fmt_double(width_) + "\" height=\"" + detail::fmt_double(height_) +
                      "\" viewBox=\"0 0 " + detail::fmt_double(width_) + " " +
                      detail::fmt_double(height_) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
  }

 private:
  std::string path_d(const std::vector<Vec2>& pts, bool close) const {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) {
      d += (i == 0) ? "M " : "L ";
      d += detail::fmt_double((pts[i].x - world_.lo.x) * scale_);
      d += ' ';
      d += detail::fmt_double((world_.hi.y - pts[i].y) * scale_);
      d += ' ';
    }
    if (close) d += 'Z';
    return d;
  }

  BBox world_;
  double scale_ = 1.0, width_ = 0.0, height_ = 0.0;
  std::string body_;
};

// Plot of a solution bundle: core K, free boundary, level lines of the field,
// and a polar overlay of Q (dashed circle of radius proportional to Q(theta)).
inline std::string solution_plot_svg(const ConvexPolygon& boundary, const ConvexPolygon& K,
                                     const HarmonicField* field, const Anisotropy* q,
                                     const std::vector<const ConvexPolygon*>& extra = {}) {
  SvgBuilder svg(boundary.bbox());
  svg.add_polygon(boundary, "#1f4e9c", "none", 2.0);
  svg.add_polygon(K, "#444444", "#dddddd", 1.5);
  if (field) {
    for (double t : {0.2, 0.4, 0.6, 0.8}) {
      const auto pts = level_points(*field, t);
      if (pts.size() > 8) svg.add_polyline(pts, "#2e8b57", 0.8, true);
    }
  }
  if (q) {
    const Vec2 c = K.centroid();
    const double r0 = 0.45 * boundary.diameter() / q->q_max();
    std::vector<Vec2> polar;
    for (int k = 0; k <= 480; ++k) {
      const double th = kTwoPi * k / 480;
      polar.push_back(c + 0.5 * r0 * q->eval(th) * Vec2{std::cos(th), std::sin(th)});
    }
    svg.add_polyline(polar, "#c0392b", 0.8, false);
  }
  for (const ConvexPolygon* p : extra)
    if (p) svg.add_polygon(*p, "#7f9cc4", "none", 1.0);
  return svg.str();
}

// Solution bundle directory: boundary.csv, k.csv, trace.csv, field.csv,
// q_polar.csv, report.txt, plot.svg. All CSV content is deterministic.
inline void write_solution_bundle(const std::filesystem::path& dir,
                                  const FreeBoundarySolution& sol, const ConvexPolygon& K) {
  const auto facets = residual_report(sol);
  write_text_file(dir / "boundary.csv", to_csv(sol.boundary));
  write_text_file(dir / "k.csv", to_csv(K));
  write_text_file(dir / "trace.csv", trace_to_csv(sol.residuals));
  write_text_file(dir / "field.csv", field_to_csv(sol.field));
  write_text_file(dir / "q_polar.csv", polar_csv(sol.q_used));
  write_text_file(dir / "report.txt", solution_report_text(sol, facets));
  write_text_file(dir / "plot.svg",
                  solution_plot_svg(sol.boundary, K, &sol.field, &sol.q_used));
}

// Re-plot a bundle directory from its CSV artifacts. Stage subdirectories
// (stage_*) of a staged run are overlaid when present.
inline std::string plot_bundle(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir / "boundary.csv"))
    throw BundleMissing("no boundary.csv under " + dir.string());
  const auto boundary = polygon_from_csv(read_text_file(dir / "boundary.csv"));
  const auto K = polygon_from_csv(read_text_file(dir / "k.csv"));

  std::vector<ConvexPolygon> stages;
  std::vector<std::filesystem::path> stage_dirs;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_directory() && entry.path().filename().string().rfind("stage_", 0) == 0)
      stage_dirs.push_back(entry.path());
  std::sort(stage_dirs.begin(), stage_dirs.end());
  for (const auto& sd : stage_dirs)
    if (std::filesystem::exists(sd / "boundary.csv"))
      stages.push_back(polygon_from_csv(read_text_file(sd / "boundary.csv")));

  SvgBuilder svg(boundary.bbox());
  svg.add_polygon(boundary, "#1f4e9c", "none", 2.0);
  svg.add_polygon(K, "#444444", "#dddddd", 1.5);
  for (const auto& s : stages) svg.add_polygon(s, "#7f9cc4", "none", 1.0);

  if (std::filesystem::exists(dir / "field.csv")) {
    const auto f = field_from_csv(read_text_file(dir / "field.csv"));
    for (double t : {0.25, 0.5, 0.75}) {
      // grid-edge crossings of the stored field
      std::vector<Vec2> pts;
      for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i + 1 < f.grid.nx; ++i) {
          const double a = f.value(i, j) - t, b = f.value(i + 1, j) - t;
          if ((a > 0) != (b > 0) && a != b)
            pts.push_back(f.grid.point(i, j) + (a / (a - b)) * (f.grid.point(i + 1, j) -
                                                                 f.grid.point(i, j)));
        }
      if (pts.size() > 8) {
        Vec2 c{0, 0};
        for (const Vec2& p : pts) c = c + p;
        c = c / static_cast<double>(pts.size());
        std::sort(pts.begin(), pts.end(), [&](Vec2 a, Vec2 b) {
          return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
        });
        svg.add_polyline(pts, "#2e8b57", 0.8, true);
      }
    }
  }
  return svg.str();
}

}  // namespace bernlab
