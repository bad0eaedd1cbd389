#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bernlab/anisotropy.hpp"
#include "bernlab/errors.hpp"
#include "bernlab/geometry.hpp"
#include "bernlab/harmonic.hpp"

namespace bernlab {

// Facets whose inner normal is this close (radians) to a jump angle of an
// usc anisotropy are treated as jump facets in residual reports.
inline constexpr double kJumpFacetAngleTol = 0.05;

struct SolverParams {
  double h = 0.0;            // grid spacing; 0 resolves to 0.02 * diam(K)
  double fb_tol = 0.02;      // relative residual tolerance on the free boundary
  double step0 = 0.0;        // initial normal step; 0 resolves to 0.5 * h
  int max_iter = 500;
  double r_reg = 0.0;        // sup/inf-convolution radius; 0 resolves to 4 * h
  int boundary_samples = 0;  // polar samples of the trial boundary; 0 = auto
  double solver_tol = 1e-12;

  SolverParams resolved(const ConvexPolygon& K) const {
    SolverParams p = *this;
    if (p.h <= 0.0) p.h = 0.02 * K.diameter();
    if (p.step0 <= 0.0) p.step0 = 0.5 * p.h;
    if (p.r_reg <= 0.0) p.r_reg = 4.0 * p.h;
    if (!(p.fb_tol > 0.0 && p.fb_tol <= 0.1))
      throw std::invalid_argument("solver params: fb_tol must be in (0, 0.1]");
    if (p.max_iter <= 0) throw std::invalid_argument("solver params: max_iter must be positive");
    return p;
  }
};

struct ResidualSample {
  Vec2 point;
  double normal_theta = 0.0;  // inner normal angle
  double grad = 0.0;
  double q = 0.0;             // boundary speed used in the iteration
  double rel_residual = 0.0;  // (grad - q) / q
};

struct FreeBoundarySolution {
  ConvexPolygon boundary;  // ∂{u > 0}
  HarmonicField field;
  Anisotropy q_used;
  SolverParams params;
  std::vector<ResidualSample> residuals;
  int iterations = 0;
  bool converged = false;
  double residual_max_rel = std::numeric_limits<double>::infinity();
  std::vector<double> support_radius_history;  // max support per iteration
};

// Boundary speeds seen by the two sides of the residual check. Off the jump
// set both equal Q(n); at a jump facet the subsolution side tests the jump
// value while the supersolution side tests the limsup envelope.
struct EffectiveSpeed {
  double q_sub = 0.0;
  double q_super = 0.0;
  bool jump_facet = false;
};

inline EffectiveSpeed effective_speed(const Anisotropy& q, double normal_theta,
                                      double jump_angle_tol = kJumpFacetAngleTol) {
  EffectiveSpeed s;
  if (!q.continuous()) {
    for (const auto& jump : q.jumps()) {
      if (geodesic_angle(normal_theta, jump.theta) <= jump_angle_tol) {
        s.q_sub = jump.value;
        s.q_super = q.eval_limsup_off_jumps(normal_theta);
        s.jump_facet = true;
        return s;
      }
    }
  }
  s.q_sub = s.q_super = q.eval(normal_theta);
  return s;
}

namespace detail {

// Trial boundary in support form: fixed outward normal directions about the
// center, support values as the iteration state. The polygon is the
// intersection of the supporting half-planes (the polar-dual convex hull), so
// every iterate is convex by construction and the boundary condition is always
// evaluated at a fixed normal direction.
struct SupportBoundary {
  Vec2 center;
  std::vector<double> angles;   // outward normal angles, strictly increasing
  std::vector<double> support;  // support values relative to center

  Vec2 direction(int k) const { return {std::cos(angles[k]), std::sin(angles[k])}; }

  ConvexPolygon polygon(double bound) const {
    std::vector<Vec2> poly{{center.x - bound, center.y - bound},
                           {center.x + bound, center.y - bound},
                           {center.x + bound, center.y + bound},
                           {center.x - bound, center.y + bound}};
    for (size_t k = 0; k < angles.size(); ++k) {
      const Vec2 n = direction(static_cast<int>(k));
      std::vector<Vec2> next;
      next.reserve(poly.size() + 1);
      const size_t nn = poly.size();
      for (size_t i = 0; i < nn; ++i) {
        const Vec2 a = poly[i], b = poly[(i + 1) % nn];
        const double da = dot(n, a - center) - support[k];
        const double db = dot(n, b - center) - support[k];
        if (da <= 0.0) {
          next.push_back(a);
          if (db > 0.0) next.push_back(a + (da / (da - db)) * (b - a));
        } else if (db <= 0.0) {
          next.push_back(a + (da / (da - db)) * (b - a));
        }
      }
      poly = std::move(next);
      if (poly.size() < 3) throw GeometryTooTight("trial boundary: support planes collapsed");
    }
    return ConvexPolygon::hull_of(poly);
  }

  void tighten(const ConvexPolygon& poly) {
    for (size_t k = 0; k < angles.size(); ++k) {
      const Vec2 n = direction(static_cast<int>(k));
      support[k] = poly.support(n) - dot(n, center);
    }
  }

  // Contact of the supporting plane k with the polygon: the midpoint of the
  // carried facet, or the touching vertex when the plane is tangent there.
  Vec2 contact(const ConvexPolygon& poly, int k) const {
    const Vec2 n = direction(k);
    const double tol = kEpsGeom * std::max(1.0, poly.diameter());
    double smax = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : poly.vertices()) smax = std::max(smax, dot(n, v));
    Vec2 first{}, last{};
    bool any = false;
    for (const Vec2& v : poly.vertices()) {
      if (dot(n, v) >= smax - tol) {
        if (!any) first = v;
        last = v;
        any = true;
      }
    }
    return 0.5 * (first + last);
  }
};

}  // namespace detail

// Minimal supersolution of the exterior Bernoulli problem for continuous Q by
// trial free-boundary iteration. Start from a ball that bounds the solution
// from outside, alternate a Dirichlet solve with a support step proportional
// to the smoothed relative residual (|∇u| - Q)/Q at the contact point of each
// fixed normal direction, clamped to h. The step size adapts to the residual
// trend. Non-convergence within max_iter returns the best iterate with
// converged=false.
inline FreeBoundarySolution solve_minimal(const ConvexPolygon& K, const Anisotropy& q,
                                          const SolverParams& params_in = {}) {
  if (!q.continuous())
    throw std::invalid_argument("solve_minimal: usc anisotropy requires solve_minimal_usc");
  const SolverParams params = params_in.resolved(K);
  const double h = params.h;

  const Vec2 c = K.centroid();
  double r_circ = 0.0;
  for (const Vec2& v : K.vertices()) r_circ = std::max(r_circ, distance(v, c));
  const double r_init = r_circ + 1.0 / q.q_min() + std::max(4.0 * h, 0.05 * r_circ);

  int m = params.boundary_samples;
  if (m <= 0) m = std::clamp(static_cast<int>(std::lround(kTwoPi * r_init / (2.5 * h))), 64, 360);
  if (m % 2) ++m;

  detail::SupportBoundary sb;
  sb.center = c;
  sb.angles.resize(m);
  sb.support.assign(m, r_init);
  for (int k = 0; k < m; ++k) sb.angles[k] = kTwoPi * k / m;

  const GridSpec grid = make_grid(
      BBox{c - Vec2{r_init + 2 * h, r_init + 2 * h}, c + Vec2{r_init + 2 * h, r_init + 2 * h}}, h);
  const double box_bound = 2.0 * r_init;

  ConvexPolygon boundary = sb.polygon(box_bound);
  std::optional<HarmonicField> field;
  std::vector<ResidualSample> samples(m);

  struct Snapshot {
    ConvexPolygon boundary;
    HarmonicField field;
    std::vector<ResidualSample> samples;
    double res;
  };
  std::optional<Snapshot> best;

  int streak = 0;
  int iter = 0;
  bool converged = false;
  double res = std::numeric_limits<double>::infinity();
  double res_prev = std::numeric_limits<double>::infinity();
  double step = params.step0;
  const double step_min = 0.1 * h, step_max = 6.0 * h;
  std::vector<double> radius_history;
  while (iter < params.max_iter) {
    ++iter;
    sb.tighten(boundary);
    radius_history.push_back(*std::max_element(sb.support.begin(), sb.support.end()));
    DirichletOptions opt;
    opt.residual_tol = params.solver_tol;
    opt.grid = grid;
    if (field) opt.warm_start = &*field;
    field = solve_dirichlet(K, boundary, h, opt);

    std::vector<double> rho(m);
    res = 0.0;
    for (int k = 0; k < m; ++k) {
      const Vec2 x = sb.contact(boundary, k);
      const Vec2 n = -sb.direction(k);  // inner normal
      double g = 0.0;
      try {
        g = probe_gradient(*field, x, n);
      } catch (const NormalProbeFailed& e) {
        // in the trial loop an unprobeable annulus is a tightness condition
        throw GeometryTooTight(std::string("solve_minimal: ") + e.what());
      }
      const double qn = q.eval(Direction::of_vector(n));
      rho[k] = (g - qn) / qn;
      samples[k] = {x, Direction::of_vector(n).theta(), g, qn, rho[k]};
      res = std::max(res, std::fabs(rho[k]));
    }
    if (!best || res < best->res) best = Snapshot{boundary, *field, samples, res};

    if (res <= params.fb_tol) {
      if (++streak >= 3) {
        converged = true;
        break;
      }
    } else {
      streak = 0;
    }

    // step control: back off when the residual grows, accelerate when it falls
    if (res > res_prev * 1.01) step = std::max(step * 0.6, step_min);
    else if (res < res_prev * 0.97) step = std::min(step * 1.15, step_max);
    res_prev = res;

    // damp sample-scale zigzag modes of the pointwise update
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double> sm(m);
      for (int k = 0; k < m; ++k)
        sm[k] = 0.25 * rho[(k + m - 1) % m] + 0.5 * rho[k] + 0.25 * rho[(k + 1) % m];
      rho = std::move(sm);
    }
    for (int k = 0; k < m; ++k) sb.support[k] += std::clamp(step * rho[k], -h, h);
    boundary = sb.polygon(box_bound);
  }

  FreeBoundarySolution sol{std::move(boundary), std::move(*field), q, params,
                           std::move(samples), iter, converged, res,
                           std::move(radius_history)};
  if (!converged && best) {
    sol.boundary = std::move(best->boundary);
    sol.field = std::move(best->field);
    sol.residuals = std::move(best->samples);
    sol.residual_max_rel = best->res;
  }
  return sol;
}

// Minimal supersolution for upper semicontinuous Q via the monotone continuous
// approximation Q^j: solve each stage with Q^j = continuous_approx(q, j) and
// return the stage sequence plus the limit (the final stage, re-evaluated
// against the original usc Q).
inline std::pair<std::vector<FreeBoundarySolution>, FreeBoundarySolution> solve_minimal_usc(
    const ConvexPolygon& K, const Anisotropy& q, const std::vector<double>& j_schedule,
    const SolverParams& params = {}) {
  if (j_schedule.empty()) throw std::invalid_argument("solve_minimal_usc: empty j_schedule");
  for (size_t i = 1; i < j_schedule.size(); ++i)
    if (!(j_schedule[i] > j_schedule[i - 1]))
      throw std::invalid_argument("solve_minimal_usc: j_schedule must be strictly increasing");

  std::vector<FreeBoundarySolution> stages;
  stages.reserve(j_schedule.size());
  for (double j : j_schedule) stages.push_back(solve_minimal(K, q.continuous_approx(j), params));

  FreeBoundarySolution limit = stages.back();
  limit.q_used = q;
  for (ResidualSample& s : limit.residuals) {
    const auto sp = effective_speed(q, s.normal_theta);
    s.q = sp.q_sub;
    s.rel_residual = (s.grad - sp.q_sub) / sp.q_sub;
  }
  return {std::move(stages), std::move(limit)};
}

struct FacetStats {
  int facet = 0;
  double normal_theta = 0.0;
  double length = 0.0;
  double q_sub = 0.0;
  double q_super = 0.0;
  bool jump_facet = false;
  double grad_min = 0.0;
  double grad_max = 0.0;
  double grad_mean = 0.0;
  int samples = 0;
  bool below_strong_subsolution = false;  // min |∇u| < q_sub * (1 - fb_tol)
  bool above_supersolution = false;       // max |∇u| > q_super * (1 + fb_tol)
};

// Per-facet gradient statistics of a solution against the boundary condition:
// the numerical realization of the strong subsolution bound min_F |∇u| >= Q(n)
// paired with the supersolution bound max_F |∇u| <= Q(n).
inline std::vector<FacetStats> residual_report(const FreeBoundarySolution& sol,
                                               double jump_angle_tol = kJumpFacetAngleTol) {
  const double h = sol.params.h;
  const double tol = sol.params.fb_tol;
  std::vector<FacetStats> out;
  out.reserve(sol.boundary.size());
  for (int e = 0; e < sol.boundary.size(); ++e) {
    FacetStats st;
    st.facet = e;
    st.length = sol.boundary.edge_length(e);
    const Vec2 n = sol.boundary.edge_inner_normal(e);
    st.normal_theta = Direction::of_vector(n).theta();
    const auto sp = effective_speed(sol.q_used, st.normal_theta, jump_angle_tol);
    st.q_sub = sp.q_sub;
    st.q_super = sp.q_super;
    st.jump_facet = sp.jump_facet;

    std::vector<double> offsets;
    if (st.length > 8.0 * h) {
      const int k = std::min(static_cast<int>(1 + std::floor((st.length - 8.0 * h) / (2.0 * h))), 16);
      for (int i = 0; i < k; ++i)
        offsets.push_back(4.0 * h + (st.length - 8.0 * h) * (k == 1 ? 0.5 : double(i) / (k - 1)));
    } else {
      offsets.push_back(0.5 * st.length);
    }
    const Vec2 a = sol.boundary.vertex(e);
    const Vec2 dir = (sol.boundary.vertex(e + 1) - a) / st.length;
    double gmin = std::numeric_limits<double>::infinity(), gmax = 0.0, gsum = 0.0;
    for (double s : offsets) {
      const double g = probe_gradient(sol.field, a + s * dir, n);
      gmin = std::min(gmin, g);
      gmax = std::max(gmax, g);
      gsum += g;
    }
    st.samples = static_cast<int>(offsets.size());
    st.grad_min = gmin;
    st.grad_max = gmax;
    st.grad_mean = gsum / st.samples;
    st.below_strong_subsolution = gmin < st.q_sub * (1.0 - tol);
    st.above_supersolution = gmax > st.q_super * (1.0 + tol);
    out.push_back(st);
  }
  return out;
}

enum class Ordering { kEqual, kALeB, kBLeA, kIncomparable };

struct CompareResult {
  bool a_le_b = false;
  bool b_le_a = false;
  double support_excess_ab = 0.0;  // max over directions of (h_a - h_b)
  double support_excess_ba = 0.0;
  double field_excess_ab = 0.0;    // max over common nodes of (u_a - u_b)
  double field_excess_ba = 0.0;
  double slack = 0.0;

  Ordering verdict() const {
    if (a_le_b && b_le_a) return Ordering::kEqual;
    if (a_le_b) return Ordering::kALeB;
    if (b_le_a) return Ordering::kBLeA;
    return Ordering::kIncomparable;
  }
};

// Ordering of two solutions: support-function inclusion of the positivity sets
// plus pointwise field ordering on the coarser grid. Differing grid spacings
// are handled by resampling onto the coarser grid.
inline CompareResult compare(const FreeBoundarySolution& a, const FreeBoundarySolution& b) {
  CompareResult r;
  const double diam = std::max(a.boundary.diameter(), b.boundary.diameter());
  const double h = std::max(a.params.h, b.params.h);
  r.slack = h + std::max(a.params.fb_tol, b.params.fb_tol) * diam;

  std::vector<Vec2> dirs;
  for (int k = 0; k < 720; ++k) dirs.push_back({std::cos(kTwoPi * k / 720), std::sin(kTwoPi * k / 720)});
  for (int e = 0; e < a.boundary.size(); ++e) dirs.push_back(a.boundary.edge_outward_normal(e));
  for (int e = 0; e < b.boundary.size(); ++e) dirs.push_back(b.boundary.edge_outward_normal(e));
  for (const Vec2& d : dirs) {
    r.support_excess_ab = std::max(r.support_excess_ab, a.boundary.support(d) - b.boundary.support(d));
    r.support_excess_ba = std::max(r.support_excess_ba, b.boundary.support(d) - a.boundary.support(d));
  }

  const bool a_coarser = a.params.h >= b.params.h;
  const HarmonicField& coarse = a_coarser ? a.field : b.field;
  const HarmonicField& fine = a_coarser ? b.field : a.field;
  const GridSpec& g = coarse.grid();
  double ab = 0.0, ba = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double vc = coarse.value(i, j);
      const double vf = fine.value_at(g.point(i, j));
      const double va = a_coarser ? vc : vf;
      const double vb = a_coarser ? vf : vc;
      ab = std::max(ab, va - vb);
      ba = std::max(ba, vb - va);
    }
  r.field_excess_ab = ab;
  r.field_excess_ba = ba;

  const double qmax = std::max(a.q_used.q_max(), b.q_used.q_max());
  const double field_tol = r.slack * qmax;
  r.a_le_b = r.support_excess_ab <= r.slack && r.field_excess_ab <= field_tol;
  r.b_le_a = r.support_excess_ba <= r.slack && r.field_excess_ba <= field_tol;
  return r;
}

// Blow-up slope at a free boundary point: u(x0 + s n)/s Richardson-extrapolated
// over dyadic s. For a converged solution it reproduces |∇u|(x0) and satisfies
// the supersolution bound alpha <= Q(n) up to fb_tol.
inline double blowup_slope(const FreeBoundarySolution& sol, Vec2 x0) {
  const double h = sol.params.h;
  const double tol = 1e-6 * std::max(1.0, sol.boundary.diameter());
  if (sol.boundary.distance_to_boundary(x0) > tol)
    throw std::invalid_argument("blowup_slope: point not on the free boundary");
  const int e = sol.boundary.closest_edge(x0);
  const Vec2 n = sol.boundary.edge_inner_normal(e);

  double s_geom = std::numeric_limits<double>::infinity();
  if (const auto iv = sol.field.inner().clip_line(x0, n); iv && iv->first > 0.0)
    s_geom = iv->first;
  if (const auto ov = sol.boundary.clip_line(x0, n)) s_geom = std::min(s_geom, std::max(ov->second, 0.0));
  const double s0 = std::min(12.0 * h, 0.55 * s_geom);
  if (!(s0 >= 2.5 * h)) throw NormalProbeFailed("blowup_slope: annulus too thin at x0");

  double f[3];
  for (int k = 0; k < 3; ++k) {
    const double s = s0 / (1 << k);
    f[k] = sol.field.value_at(x0 + s * n) / s;
  }
  const double alpha = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
  if (!(alpha > 0.0)) throw NormalProbeFailed("blowup_slope: nonpositive slope");
  return alpha;
}

}  // namespace bernlab
