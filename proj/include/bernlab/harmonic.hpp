#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "bernlab/errors.hpp"
#include "bernlab/geometry.hpp"

namespace bernlab {

struct GridSpec {
  double x0 = 0.0, y0 = 0.0, h = 1.0;
  int nx = 0, ny = 0;

  int index(int i, int j) const { return j * nx + i; }
  Vec2 point(int i, int j) const { return {x0 + i * h, y0 + j * h}; }
  bool same_as(const GridSpec& o) const {
    return x0 == o.x0 && y0 == o.y0 && h == o.h && nx == o.nx && ny == o.ny;
  }
};

// Node grid covering `box` with one ghost ring, node-symmetric about the box
// center so symmetric domains get symmetric discretizations.
inline GridSpec make_grid(const BBox& box, double h) {
  const double cx = 0.5 * (box.lo.x + box.hi.x);
  const double cy = 0.5 * (box.lo.y + box.hi.y);
  const int nhx = static_cast<int>(std::ceil((0.5 * box.width() + h) / h));
  const int nhy = static_cast<int>(std::ceil((0.5 * box.height() + h) / h));
  return GridSpec{cx - nhx * h, cy - nhy * h, h, 2 * nhx + 1, 2 * nhy + 1};
}

enum class NodeKind : std::uint8_t {
  kOutside = 0,     // outside the outer boundary; holds the outer Dirichlet value
  kUnknown = 1,     // interior annulus node
  kInnerFixed = 2,  // inside the inner body; holds the inner Dirichlet value
};

// Discrete solution of the annular Dirichlet problem on a uniform grid with
// Shortley-Weller cut arms at the polygon boundaries.
class HarmonicField {
 public:
  HarmonicField(GridSpec grid, ConvexPolygon inner, ConvexPolygon outer)
      : grid_(grid),
        inner_(std::move(inner)),
        outer_(std::move(outer)),
        values_(static_cast<size_t>(grid.nx) * grid.ny, 0.0),
        kinds_(static_cast<size_t>(grid.nx) * grid.ny, NodeKind::kOutside) {}

  const GridSpec& grid() const { return grid_; }
  const ConvexPolygon& inner() const { return inner_; }
  const ConvexPolygon& outer() const { return outer_; }

  double value(int i, int j) const { return values_[grid_.index(i, j)]; }
  NodeKind kind(int i, int j) const { return kinds_[grid_.index(i, j)]; }
  double residual_linf() const { return residual_linf_; }

  // Bilinear interpolation; every node carries a value (boundary data extends
  // the field outside the annulus), so cells straddling a boundary stay usable.
  double value_at(Vec2 p) const {
    const double fx = (p.x - grid_.x0) / grid_.h;
    const double fy = (p.y - grid_.y0) / grid_.h;
    const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, grid_.nx - 2);
    const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, grid_.ny - 2);
    const double sx = std::clamp(fx - i, 0.0, 1.0);
    const double sy = std::clamp(fy - j, 0.0, 1.0);
    const double v00 = value(i, j), v10 = value(i + 1, j);
    const double v01 = value(i, j + 1), v11 = value(i + 1, j + 1);
    return (1 - sx) * (1 - sy) * v00 + sx * (1 - sy) * v10 + (1 - sx) * sy * v01 + sx * sy * v11;
  }

  std::vector<double>& mutable_values() { return values_; }
  std::vector<NodeKind>& mutable_kinds() { return kinds_; }
  void set_residual_linf(double r) { residual_linf_ = r; }

 private:
  GridSpec grid_;
  ConvexPolygon inner_, outer_;
  std::vector<double> values_;
  std::vector<NodeKind> kinds_;
  double residual_linf_ = std::numeric_limits<double>::infinity();
};

struct DirichletOptions {
  std::function<double(Vec2)> inner_value;  // default: constant 1
  std::function<double(Vec2)> outer_value;  // default: constant 0
  double residual_tol = 1e-12;              // scaled by the stencil diagonal
  long max_sweeps = 400000;
  double min_gap_cells = 4.0;
  const HarmonicField* warm_start = nullptr;  // must share the grid
  std::optional<GridSpec> grid;               // override the automatic grid
};

namespace detail {

// Minimum distance between the boundaries of nested convex polygons.
inline double boundary_gap(const ConvexPolygon& inner, const ConvexPolygon& outer) {
  double g = std::numeric_limits<double>::infinity();
  for (const Vec2& v : inner.vertices()) g = std::min(g, outer.distance_to_boundary(v));
  for (const Vec2& v : outer.vertices()) g = std::min(g, inner.distance_to_boundary(v));
  return g;
}

// x-interval of the horizontal line y = const inside the polygon offset
// inward by `inward` (negative values inflate). Applying the classification
// margin this way treats horizontal and vertical boundary edges alike.
inline std::optional<std::pair<double, double>> row_interval(const ConvexPolygon& p, double y,
                                                             double inward = 0.0) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.size(); ++i) {
    const Vec2 n = p.edge_outward_normal(i);
    const double rhs = dot(n, p.vertex(i)) - n.y * y - inward;
    if (std::fabs(n.x) < 1e-15) {
      if (rhs < 0.0) return std::nullopt;
      continue;
    }
    const double t = rhs / n.x;
    if (n.x > 0.0) hi = std::min(hi, t); else lo = std::max(lo, t);
    if (lo > hi) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

}  // namespace detail

// Shortley-Weller discretization of
//   Δv = 0 in outer \ inner,  v = inner_value on ∂inner,  v = outer_value on ∂outer,
// solved by SOR to a scaled max-norm residual below residual_tol.
inline HarmonicField solve_dirichlet(const ConvexPolygon& inner, const ConvexPolygon& outer,
                                     double h, const DirichletOptions& opt = {}) {
  if (h <= 0.0) throw std::invalid_argument("solve_dirichlet: h must be positive");
  for (const Vec2& v : inner.vertices())
    if (!outer.contains(v, 0.0))
      throw GeometryTooTight("solve_dirichlet: inner body not inside outer boundary");
  const double gap = detail::boundary_gap(inner, outer);
  if (gap < opt.min_gap_cells * h)
    throw GeometryTooTight("solve_dirichlet: annulus gap below " +
                           std::to_string(opt.min_gap_cells) + " cells");

  const auto g_in = opt.inner_value ? opt.inner_value : [](Vec2) { return 1.0; };
  const auto g_out = opt.outer_value ? opt.outer_value : [](Vec2) { return 0.0; };

  const GridSpec grid = opt.grid ? *opt.grid : make_grid(outer.bbox(), h);
  HarmonicField field(grid, inner, outer);
  auto& values = field.mutable_values();
  auto& kinds = field.mutable_kinds();

  // classification by row slabs; snap pulls on-boundary nodes out of the unknown set
  const double snap = 1e-7 * h;
  double bc_min = std::numeric_limits<double>::infinity(), bc_max = -bc_min;
  std::vector<std::optional<std::pair<double, double>>> inner_rows(grid.ny);
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y0 + j * grid.h;
    const auto in_iv = inner_rows[j] = detail::row_interval(inner, y, -snap);   // inflated
    const auto out_iv = detail::row_interval(outer, y, snap);                   // deflated
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x0 + i * grid.h;
      const int id = grid.index(i, j);
      if (in_iv && x >= in_iv->first && x <= in_iv->second) {
        kinds[id] = NodeKind::kInnerFixed;
        values[id] = g_in({x, y});
      } else if (out_iv && x > out_iv->first && x < out_iv->second) {
        kinds[id] = NodeKind::kUnknown;
      } else {
        kinds[id] = NodeKind::kOutside;
        values[id] = g_out({x, y});
      }
    }
  }

  // Shortley-Weller assembly over the unknown nodes
  struct Row {
    int node;
    int nbr[4];
    double coef[4];
    double inv_diag;
    double rhs;
  };
  std::vector<int> unknown_of(values.size(), -1);
  std::vector<int> unknown_nodes;
  for (int j = 1; j + 1 < grid.ny; ++j)
    for (int i = 1; i + 1 < grid.nx; ++i)
      if (kinds[grid.index(i, j)] == NodeKind::kUnknown) {
        unknown_of[grid.index(i, j)] = static_cast<int>(unknown_nodes.size());
        unknown_nodes.push_back(grid.index(i, j));
      }

  const double min_arm = 1e-6 * h;
  std::vector<Row> rows(unknown_nodes.size());
  const int didx[4] = {1, -1, grid.nx, -grid.nx};
  const Vec2 dvec[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  // a node can see the inner boundary only from a thin band around it
  auto near_inner_band = [&](double x, int j) {
    for (int dj = -1; dj <= 1; ++dj) {
      const int jj = j + dj;
      if (jj < 0 || jj >= grid.ny || !inner_rows[jj]) continue;
      if (x >= inner_rows[jj]->first - 1.5 * h && x <= inner_rows[jj]->second + 1.5 * h)
        return true;
    }
    return false;
  };
  for (size_t u = 0; u < unknown_nodes.size(); ++u) {
    const int id = unknown_nodes[u];
    const int i = id % grid.nx, j = id / grid.nx;
    const Vec2 p = grid.point(i, j);
    Row row{};
    row.node = id;
    double arm[4], known_val[4];
    bool known[4];
    const bool near_inner = near_inner_band(p.x, j);
    for (int d = 0; d < 4; ++d) {
      const int nid = id + didx[d];
      const bool nbr_inner = kinds[nid] == NodeKind::kInnerFixed;
      double cut_in = std::numeric_limits<double>::infinity();
      if (near_inner || nbr_inner) {
        if (const auto iv = inner.clip_line(p, dvec[d]);
            iv && iv->first > 0.0 && iv->first <= h * (1.0 + 1e-9))
          cut_in = std::min(iv->first, h);
      }
      if (cut_in <= h || nbr_inner) {
        const double cut = std::min(cut_in, h);
        arm[d] = std::clamp(cut, min_arm, h);
        known_val[d] = g_in(p + cut * dvec[d]);
        known[d] = true;
      } else if (kinds[nid] == NodeKind::kUnknown) {
        arm[d] = h;
        known_val[d] = 0.0;
        known[d] = false;
      } else {
        const auto ov = outer.clip_line(p, dvec[d]);
        double cut = ov ? std::max(ov->second, 0.0) : h;  // exit through the outer boundary
        cut = std::min(cut, h);
        known_val[d] = g_out(p + cut * dvec[d]);
        arm[d] = std::clamp(cut, min_arm, h);
        known[d] = true;
      }
    }
    const double ce = 2.0 / (arm[0] * (arm[0] + arm[1]));
    const double cw = 2.0 / (arm[1] * (arm[0] + arm[1]));
    const double cn = 2.0 / (arm[2] * (arm[2] + arm[3]));
    const double cs = 2.0 / (arm[3] * (arm[2] + arm[3]));
    const double coefs[4] = {ce, cw, cn, cs};
    double diag = 0.0, rhs = 0.0;
    for (int d = 0; d < 4; ++d) {
      diag += coefs[d];
      if (known[d]) {
        row.nbr[d] = -1;
        row.coef[d] = 0.0;
        rhs += coefs[d] * known_val[d];
        bc_min = std::min(bc_min, known_val[d]);
        bc_max = std::max(bc_max, known_val[d]);
      } else {
        row.nbr[d] = unknown_of[id + didx[d]];
        row.coef[d] = coefs[d];
      }
    }
    row.inv_diag = 1.0 / diag;
    row.rhs = rhs;
    rows[u] = row;
  }
  if (rows.empty()) throw GeometryTooTight("solve_dirichlet: no interior nodes");

  // initial guess: warm start on the identical grid, else a distance ansatz
  std::vector<double> x(rows.size(), 0.0);
  if (opt.warm_start && opt.warm_start->grid().same_as(grid)) {
    for (size_t u = 0; u < rows.size(); ++u) {
      const int id = rows[u].node;
      x[u] = opt.warm_start->value(id % grid.nx, id / grid.nx);
    }
  } else {
    for (size_t u = 0; u < rows.size(); ++u) {
      const int id = rows[u].node;
      const Vec2 p = grid.point(id % grid.nx, id / grid.nx);
      const double din = inner.distance_to_boundary(p);
      const double dout = outer.distance_to_boundary(p);
      x[u] = dout / std::max(dout + din, 1e-30);
    }
  }

  // SOR with the model-problem optimal relaxation factor
  const double span = h * std::max(grid.nx, grid.ny);
  const double omega = 2.0 / (1.0 + std::sin(kPi * h / span));
  double residual = std::numeric_limits<double>::infinity();
  long sweeps = 0;
  while (sweeps < opt.max_sweeps) {
    for (int rep = 0; rep < 20 && sweeps < opt.max_sweeps; ++rep, ++sweeps) {
      for (size_t u = 0; u < rows.size(); ++u) {
        const Row& r = rows[u];
        double s = r.rhs;
        for (int d = 0; d < 4; ++d)
          if (r.nbr[d] >= 0) s += r.coef[d] * x[r.nbr[d]];
        x[u] += omega * (s * r.inv_diag - x[u]);
      }
    }
    residual = 0.0;
    for (size_t u = 0; u < rows.size(); ++u) {
      const Row& r = rows[u];
      double s = r.rhs;
      for (int d = 0; d < 4; ++d)
        if (r.nbr[d] >= 0) s += r.coef[d] * x[r.nbr[d]];
      residual = std::max(residual, std::fabs(s * r.inv_diag - x[u]));
    }
    if (residual <= opt.residual_tol) break;
  }
  if (residual > opt.residual_tol)
    throw SolveDiverged("solve_dirichlet: residual " + std::to_string(residual) + " after " +
                        std::to_string(sweeps) + " sweeps");

  for (size_t u = 0; u < rows.size(); ++u)
    values[rows[u].node] = std::clamp(x[u], bc_min, bc_max);
  field.set_residual_linf(residual);
  return field;
}

// Distance along the inner normal from xi to the level line {v > theta}:
//   h_theta = inf { s > 0 : v(xi + s n) > theta }.
inline double h_theta(const HarmonicField& field, Vec2 xi, Vec2 n, double theta) {
  const double h = field.grid().h;
  double s_max = std::numeric_limits<double>::infinity();
  if (const auto iv = field.inner().clip_line(xi, n); iv && iv->first > 0.0)
    s_max = iv->first;
  if (const auto ov = field.outer().clip_line(xi, n))
    s_max = std::min(s_max, std::max(ov->second, 0.0));
  if (!(s_max > 0.0)) throw NormalProbeFailed("h_theta: probe leaves the annulus immediately");

  // bracket by marching, then bisect on the interpolated field
  double lo = 0.0, hi = -1.0;
  const int max_steps = static_cast<int>(std::ceil(s_max / h)) + 1;
  for (int k = 1; k <= max_steps; ++k) {
    const double s = std::min(k * h, s_max * (1.0 - 1e-12));
    if (field.value_at(xi + s * n) > theta) {
      hi = s;
      break;
    }
    lo = s;
    if (s >= s_max * (1.0 - 1e-12)) break;
  }
  if (hi < 0.0) throw NormalProbeFailed("h_theta: level line not crossed within the annulus");
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (field.value_at(xi + mid * n) > theta) hi = mid; else lo = mid;
  }
  return hi;
}

// Boundary gradient magnitude at xi on the outer boundary via the level-line
// construction: |∇v|(xi) = lim θ/h_θ, Richardson-extrapolated over
// θ ∈ {θ0, θ0/2, θ0/4} with θ0 picked so the probes stay a few cells inside.
inline double probe_gradient(const HarmonicField& field, Vec2 xi, Vec2 inner_normal) {
  const double h = field.grid().h;
  double s_geom = std::numeric_limits<double>::infinity();
  if (const auto iv = field.inner().clip_line(xi, inner_normal); iv && iv->first > 0.0)
    s_geom = iv->first;
  if (const auto ov = field.outer().clip_line(xi, inner_normal))
    s_geom = std::min(s_geom, std::max(ov->second, 0.0));
  const double s0 = std::min(12.0 * h, 0.55 * s_geom);
  if (!(s0 >= 2.5 * h))
    throw NormalProbeFailed("probe_gradient: annulus too thin along the normal");
  const double theta0 = field.value_at(xi + s0 * inner_normal);
  if (!(theta0 > 1e-14))
    throw NormalProbeFailed("probe_gradient: no positive values along the normal");

  double f[3];
  for (int k = 0; k < 3; ++k) {
    const double theta = theta0 / (1 << k);
    double lo = 0.0, hi = s0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (field.value_at(xi + mid * inner_normal) > theta) hi = mid; else lo = mid;
    }
    f[k] = theta / hi;
  }
  const double grad = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
  if (!(grad > 0.0)) throw NormalProbeFailed("probe_gradient: nonpositive extrapolated slope");
  return grad;
}

struct TraceSample {
  Vec2 point;
  Vec2 inner_normal;
  double grad = 0.0;
};

struct BoundaryTrace {
  std::vector<TraceSample> samples;
};

// Gradient trace at points of the outer boundary. Normals come from the
// nearest boundary edge; all magnitudes are positive by the Hopf bound.
inline BoundaryTrace boundary_gradient(const HarmonicField& field, const std::vector<Vec2>& where) {
  BoundaryTrace trace;
  trace.samples.reserve(where.size());
  const double tol = 1e-6 * std::max(1.0, field.outer().diameter());
  for (const Vec2& p : where) {
    if (field.outer().distance_to_boundary(p) > tol)
      throw std::invalid_argument("boundary_gradient: point not on the outer boundary");
    const int e = field.outer().closest_edge(p);
    const Vec2 n = field.outer().edge_inner_normal(e);
    trace.samples.push_back({p, n, probe_gradient(field, p, n)});
  }
  return trace;
}

struct PointChargeEval {
  double value = 0.0;
  Vec2 grad;
  double grad_mag = 0.0;
};

// Potential between a point charge at (0,1) and the plane {y = 0}:
//   v(x) = -log(x1^2 + (x2-1)^2) + log(x1^2 + (x2+1)^2),
// with boundary gradient |∇v|(x1, 0) = 4 / (x1^2 + 1).
inline PointChargeEval point_charge_halfplane(Vec2 x) {
  if (x.y < -1e-12) throw std::invalid_argument("point_charge_halfplane: requires x2 >= 0");
  const Vec2 up{0.0, 1.0}, dn{0.0, -1.0};
  const double d1 = norm2(x - up), d2 = norm2(x - dn);
  if (d1 < 1e-24) throw SingularPoint("point_charge_halfplane: evaluation at the charge");
  PointChargeEval out;
  out.value = -std::log(d1) + std::log(d2);
  out.grad = -2.0 / d1 * (x - up) + 2.0 / d2 * (x - dn);
  out.grad_mag = norm(out.grad);
  return out;
}

inline double point_charge_boundary_gradient(double x1) { return 4.0 / (x1 * x1 + 1.0); }

// Grid-edge crossings of the level set {v = t}, returned in angular order
// around their mean; for convex level sets this is a convex closed polyline.
inline std::vector<Vec2> level_points(const HarmonicField& field, double t) {
  const GridSpec& g = field.grid();
  std::vector<Vec2> pts;
  auto emit = [&](int i0, int j0, int i1, int j1) {
    const double a = field.value(i0, j0) - t, b = field.value(i1, j1) - t;
    if ((a > 0.0) == (b > 0.0)) return;
    if (a == b) return;
    const double w = a / (a - b);
    pts.push_back(g.point(i0, j0) + w * (g.point(i1, j1) - g.point(i0, j0)));
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) emit(i, j, i + 1, j);
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) emit(i, j, i, j + 1);
  if (pts.empty()) return pts;
  Vec2 c{0, 0};
  for (const Vec2& p : pts) c = c + p;
  c = c / static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](Vec2 a, Vec2 b) {
    return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
  });
  return pts;
}

}  // namespace bernlab
