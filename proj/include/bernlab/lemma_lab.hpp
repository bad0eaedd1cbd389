#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "bernlab/bernoulli.hpp"
#include "bernlab/errors.hpp"
#include "bernlab/geometry.hpp"
#include "bernlab/harmonic.hpp"

namespace bernlab {

enum class CheckStatus { kPassed, kFailed, kSkipped };

struct Metric {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool less_is_pass = true;  // pass iff value <= threshold, else value >= threshold
  bool pass = false;
};

struct CheckReport {
  std::string check_id;
  CheckStatus status = CheckStatus::kFailed;
  bool passed = false;
  std::vector<Metric> metrics;
  std::vector<std::string> artifacts;
  double runtime_seconds = 0.0;
  std::string note;
};

struct CheckContext {
  std::filesystem::path out_dir;  // empty: no artifacts written
};

namespace detail {

inline void add_metric(CheckReport& r, const std::string& name, double value, double threshold,
                       bool less_is_pass = true) {
  Metric m{name, value, threshold, less_is_pass, false};
  m.pass = less_is_pass ? value <= threshold : value >= threshold;
  r.metrics.push_back(m);
}

inline void finalize(CheckReport& r, std::chrono::steady_clock::time_point t0) {
  r.passed = true;
  for (const Metric& m : r.metrics) r.passed = r.passed && m.pass;
  if (r.status != CheckStatus::kSkipped)
    r.status = r.passed ? CheckStatus::kPassed : CheckStatus::kFailed;
  r.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void write_artifact(CheckReport& r, const CheckContext& ctx, const std::string& rel,
                           const std::string& content) {
  if (ctx.out_dir.empty()) return;
  const std::filesystem::path path = ctx.out_dir / r.check_id / rel;
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  r.artifacts.push_back(path.string());
}

inline double max_convexity_violation(const std::vector<double>& f) {
  double worst = 0.0;
  const int n = static_cast<int>(f.size());
  for (int k = 1; 2 * k < n; ++k)
    for (int i = 0; i + 2 * k < n; ++i)
      worst = std::max(worst, f[i + k] - 0.5 * (f[i] + f[i + 2 * k]));
  return worst;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// facet_convexity: 1/|∇v| is convex along a boundary facet, and the gradient
// super-level sets along the facet are single intervals.
// ---------------------------------------------------------------------------

struct FacetConvexityConfig {
  double k_halfwidth = 0.5;
  double v_halfwidth = 2.0;
  std::vector<double> h_levels{0.04, 0.02, 0.01};
  double tol_conv = 1e-3;  // relative midpoint-convexity defect bound
  int tau_count = 20;
  int samples = 49;
};

inline CheckReport check_facet_convexity(const FacetConvexityConfig& cfg,
                                         const CheckContext& ctx = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.check_id = "facet_convexity";

  const double facet_len = 2.0 * cfg.v_halfwidth;
  const double h_max = *std::max_element(cfg.h_levels.begin(), cfg.h_levels.end());
  if (facet_len <= 8.0 * h_max) {
    r.status = CheckStatus::kSkipped;
    r.note = "facet shorter than 8h at the coarsest level";
    detail::finalize(r, t0);
    r.passed = true;
    return r;
  }

  const auto K = ConvexPolygon::box({-cfg.k_halfwidth, -cfg.k_halfwidth},
                                    {cfg.k_halfwidth, cfg.k_halfwidth});
  const auto V = ConvexPolygon::box({-cfg.v_halfwidth, -cfg.v_halfwidth},
                                    {cfg.v_halfwidth, cfg.v_halfwidth});

  std::vector<double> defects;
  int interval_violations = 0;
  for (double h : cfg.h_levels) {
    const auto field = solve_dirichlet(K, V, h);
    // uniform grid-aligned samples on the bottom facet, 4h corner exclusion
    const double lo = -cfg.v_halfwidth + 4.0 * h;
    const double hi = cfg.v_halfwidth - 4.0 * h;
    const double step = std::ceil(((hi - lo) / (cfg.samples - 1)) / h) * h;
    std::vector<double> xs, grads, invg;
    for (double x = lo; x <= hi + 1e-12; x += step) {
      xs.push_back(x);
      grads.push_back(probe_gradient(field, {x, -cfg.v_halfwidth}, {0.0, 1.0}));
      invg.push_back(1.0 / grads.back());
    }
    double scale = 0.0;
    for (double v : invg) scale = std::max(scale, v);
    defects.push_back(detail::max_convexity_violation(invg) / scale);

    // super-level sets {|∇v| > tau} along the facet must be single intervals
    const double gmin = *std::min_element(grads.begin(), grads.end());
    const double gmax = *std::max_element(grads.begin(), grads.end());
    for (int t = 0; t < cfg.tau_count; ++t) {
      const double tau = gmin + (gmax - gmin) * (t + 0.5) / cfg.tau_count;
      int runs = 0;
      bool in_run = false;
      for (double g : grads) {
        const bool above = g > tau;
        if (above && !in_run) ++runs;
        in_run = above;
      }
      if (runs > 1) ++interval_violations;
    }

    std::string csv = "# x,grad,inv_grad\n";
    for (size_t i = 0; i < xs.size(); ++i)
      csv += bernlab::detail::fmt_double(xs[i]) + "," + bernlab::detail::fmt_double(grads[i]) +
             "," + bernlab::detail::fmt_double(invg[i]) + "\n";
    detail::write_artifact(r, ctx, "trace_h" + std::to_string(h) + ".csv", csv);
  }

  for (size_t l = 0; l < cfg.h_levels.size(); ++l)
    detail::add_metric(r, "invg_defect_rel_h" + std::to_string(cfg.h_levels[l]), defects[l],
                       cfg.tol_conv);
  double worst_increase = 0.0;
  for (size_t l = 0; l + 1 < defects.size(); ++l)
    worst_increase = std::max(worst_increase, defects[l + 1] - defects[l]);
  detail::add_metric(r, "defect_increase_under_refinement", worst_increase, 0.0);
  detail::add_metric(r, "superlevel_interval_violations", interval_violations, 0.0);

  detail::finalize(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// counterexample: the point-charge half-plane field. The numerical boundary
// gradient matches 4/(x1^2+1); 1/|∇v| is convex along the boundary while the
// spec's triple (2, 4, 2) at x1 = -1, 0, 1 violates its midpoint inequality.
// ---------------------------------------------------------------------------

struct CounterexampleConfig {
  double h = 0.03;
  double x_range = 3.0;
  int samples = 61;
  double max_rel_err = 0.02;
};

inline CheckReport check_counterexample(const CounterexampleConfig& cfg,
                                        const CheckContext& ctx = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.check_id = "counterexample";

  // U = {v > 1} is the Apollonius disk of the two charges
  const double e = std::exp(1.0);
  const double cy = (e + 1.0) / (e - 1.0);
  const double rad = std::sqrt(cy * cy - 1.0);
  const auto inner = ConvexPolygon::regular_polygon({0.0, cy}, rad, 256);
  const auto outer = ConvexPolygon::box({-6.0, 0.0}, {6.0, 6.0});

  auto formula = [](Vec2 p) {
    const double d1 = p.x * p.x + (p.y - 1.0) * (p.y - 1.0);
    const double d2 = p.x * p.x + (p.y + 1.0) * (p.y + 1.0);
    return -std::log(std::max(d1, 1e-30)) + std::log(d2);
  };
  DirichletOptions opt;
  opt.inner_value = [&](Vec2 p) { return std::min(formula(p), 50.0); };
  opt.outer_value = formula;  // exact data on the truncation boundary; 0 on y=0
  const auto field = solve_dirichlet(inner, outer, cfg.h, opt);

  double worst_rel = 0.0;
  std::string csv = "# x1,grad_numeric,grad_formula\n";
  std::vector<double> xs(cfg.samples), num(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i) {
    const double x = -cfg.x_range + 2.0 * cfg.x_range * i / (cfg.samples - 1);
    xs[i] = x;
    num[i] = probe_gradient(field, {x, 0.0}, {0.0, 1.0});
    const double exact = point_charge_boundary_gradient(x);
    worst_rel = std::max(worst_rel, std::fabs(num[i] - exact) / exact);
    csv += bernlab::detail::fmt_double(x) + "," + bernlab::detail::fmt_double(num[i]) + "," +
           bernlab::detail::fmt_double(exact) + "\n";
  }
  detail::write_artifact(r, ctx, "boundary_gradient.csv", csv);
  detail::add_metric(r, "max_rel_err_vs_formula", worst_rel, cfg.max_rel_err);

  // (ii) 1/|∇v| = (x1^2+1)/4 is convex: exact quadratic, zero defect
  std::vector<double> invg(cfg.samples);
  for (int i = 0; i < cfg.samples; ++i)
    invg[i] = 1.0 / point_charge_boundary_gradient(xs[i]);
  detail::add_metric(r, "inv_grad_convexity_defect", detail::max_convexity_violation(invg),
                     1e-12);

  // (iii) |∇v| fails its midpoint inequality on the triple (-1, 0, 1):
  // values (2, 4, 2), and 4 <= (2+2)/2 is false by a margin of 2.
  const double f_m1 = point_charge_boundary_gradient(-1.0);
  const double f_0 = point_charge_boundary_gradient(0.0);
  const double f_p1 = point_charge_boundary_gradient(1.0);
  detail::add_metric(r, "triple_values_match_2_4_2",
                     std::fabs(f_m1 - 2.0) + std::fabs(f_0 - 4.0) + std::fabs(f_p1 - 2.0), 1e-12);
  detail::add_metric(r, "midpoint_inequality_excess", f_0 - 0.5 * (f_m1 + f_p1), 1.99, false);
  // the same violation must be visible in the numeric trace
  auto at = [&](double x) {
    double best = 1e300, val = 0.0;
    for (int i = 0; i < cfg.samples; ++i)
      if (std::fabs(xs[i] - x) < best) { best = std::fabs(xs[i] - x); val = num[i]; }
    return val;
  };
  detail::add_metric(r, "numeric_midpoint_inequality_excess",
                     at(0.0) - 0.5 * (at(-1.0) + at(1.0)), 1.9, false);

  detail::finalize(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// comparison: ordering of minimal solutions under Q- and K-monotonicity,
// checked against the radial root-find oracle signs.
// ---------------------------------------------------------------------------

struct ComparisonConfig {
  double h = 0.04;
  double fb_tol = 0.015;
  int k_segments = 128;
};

inline CheckReport check_comparison(const ComparisonConfig& cfg, const CheckContext& ctx = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.check_id = "comparison";

  SolverParams p;
  p.h = cfg.h;
  p.fb_tol = cfg.fb_tol;
  p.step0 = 3.0 * cfg.h;

  const auto k1 = ConvexPolygon::regular_polygon({0, 0}, 1.0, cfg.k_segments);
  const auto k2 = ConvexPolygon::regular_polygon({0, 0}, 1.25, cfg.k_segments);
  std::vector<Anisotropy::Knot> knots;
  for (int k = 0; k < 24; ++k) {
    const double th = kTwoPi * k / 24;
    knots.push_back({th, 1.0 + 0.3 * std::cos(th) * std::cos(th)});
  }
  const auto q_aniso = Anisotropy::piecewise_linear(knots);

  const auto s_q1 = solve_minimal(k1, Anisotropy::constant(1.0), p);
  const auto s_q2 = solve_minimal(k1, Anisotropy::constant(2.0), p);
  const auto s_big = solve_minimal(k2, Anisotropy::constant(1.0), p);
  const auto s_ani = solve_minimal(k1, q_aniso, p);
  const auto s_cap = solve_minimal(k1, Anisotropy::constant(1.3), p);

  for (const auto* s : {&s_q1, &s_q2, &s_big, &s_ani, &s_cap})
    detail::add_metric(r, "converged", s->converged ? 1.0 : 0.0, 1.0, false);

  // oracle radii fix the expected signs
  auto radial = [](double rho, double q) {
    double lo = rho * (1 + 1e-14), hi = rho + 1.0 / q + 1.0;
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (lo + hi);
      (m * std::log(m / rho) < 1.0 / q ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
  };
  detail::add_metric(r, "radial_q1_hausdorff",
                     hausdorff(s_q1.boundary,
                               ConvexPolygon::regular_polygon({0, 0}, radial(1.0, 1.0), 1024)),
                     0.01 * radial(1.0, 1.0));
  detail::add_metric(r, "radial_q2_hausdorff",
                     hausdorff(s_q2.boundary,
                               ConvexPolygon::regular_polygon({0, 0}, radial(1.0, 2.0), 1024)),
                     0.01 * radial(1.0, 2.0));

  // the four oracle pairs, signs per the radial ordering
  const struct {
    const char* name;
    const FreeBoundarySolution* lo;
    const FreeBoundarySolution* hi;
  } pairs[] = {
      {"pair_q2_below_q1", &s_q2, &s_q1},       // larger speed, smaller support
      {"pair_k1_below_k125", &s_q1, &s_big},    // larger core, larger solution
      {"pair_qcap_below_aniso", &s_cap, &s_ani},  // Q==1.3 >= Q_aniso
      {"pair_aniso_below_q1", &s_ani, &s_q1},   // Q_aniso >= 1
  };
  for (const auto& pr : pairs) {
    const auto cmp = compare(*pr.lo, *pr.hi);
    detail::add_metric(r, std::string(pr.name) + "_verdict",
                       cmp.verdict() == Ordering::kALeB ? 1.0 : 0.0, 1.0, false);
    detail::add_metric(r, std::string(pr.name) + "_support_excess", cmp.support_excess_ab,
                       cmp.slack);
  }

  // an independent radial supersolution with speed q_min contains the
  // anisotropic minimal solution
  const double r_env = radial(1.0, q_aniso.q_min());
  double excess = 0.0;
  for (int k = 0; k < 720; ++k) {
    const Vec2 d{std::cos(kTwoPi * k / 720), std::sin(kTwoPi * k / 720)};
    excess = std::max(excess, s_ani.boundary.support(d) - r_env);
  }
  detail::add_metric(r, "radial_envelope_excess", excess, cfg.h + cfg.fb_tol * 2.0 * r_env);

  // sup-convolution regularization: the converged boundary dilated by r_reg,
  // re-solved as a fixed-boundary Dirichlet problem, lies above the solution
  {
    const double r_reg = s_q1.params.r_reg;
    const auto fat_boundary = dilate(s_q1.boundary, r_reg);
    DirichletOptions dopt;
    dopt.residual_tol = s_q1.params.solver_tol;
    auto fat_field = solve_dirichlet(k1, fat_boundary, cfg.h, dopt);
    FreeBoundarySolution fat{fat_boundary,   std::move(fat_field), Anisotropy::constant(1.0),
                             s_q1.params,    {},                   1,
                             true,           0.0,                  {}};
    const auto cmp = compare(s_q1, fat);
    detail::add_metric(r, "dilated_resolve_contains_verdict", cmp.a_le_b ? 1.0 : 0.0, 1.0,
                       false);
    detail::add_metric(r, "dilated_resolve_support_excess", cmp.support_excess_ab, cmp.slack);
  }

  // self-comparison returns equality
  const auto self = compare(s_q1, s_q1);
  detail::add_metric(r, "self_compare_equal", self.verdict() == Ordering::kEqual ? 1.0 : 0.0,
                     1.0, false);

  if (!ctx.out_dir.empty()) {
    detail::write_artifact(r, ctx, "q1_boundary.csv", to_csv(s_q1.boundary));
    detail::write_artifact(r, ctx, "q2_boundary.csv", to_csv(s_q2.boundary));
    detail::write_artifact(r, ctx, "aniso_boundary.csv", to_csv(s_ani.boundary));
  }

  detail::finalize(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// straszewicz: extreme points of the disk-point hull are approached by exposed
// points as the polygonal resolution refines, at rate C/N with C = 4*pi.
// ---------------------------------------------------------------------------

struct StraszewiczConfig {
  std::vector<int> resolutions{64, 256, 1024};
  double bound_factor = 2.0 * kTwoPi;  // distance bound = bound_factor / N
};

inline CheckReport check_straszewicz(const StraszewiczConfig& cfg, const CheckContext& ctx = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.check_id = "straszewicz";

  const Vec2 tang_up{0.5, std::sqrt(3.0) / 2.0};
  const Vec2 tang_dn{0.5, -std::sqrt(3.0) / 2.0};
  double prev = std::numeric_limits<double>::infinity();
  double worst_increase = -std::numeric_limits<double>::infinity();
  std::string csv = "# n,distance,bound\n";
  for (int n : cfg.resolutions) {
    auto disk = ConvexPolygon::regular_polygon({0, 0}, 1.0, n);
    std::vector<Vec2> pts = disk.vertices();
    pts.push_back({2.0, 0.0});
    const auto hull = ConvexPolygon::hull_of(pts);
    const auto exposed = exposed_points(hull);
    auto nearest = [&](Vec2 t) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& p : exposed) best = std::min(best, distance(p, t));
      return best;
    };
    const double d = std::max(nearest(tang_up), nearest(tang_dn));
    detail::add_metric(r, "distance_n" + std::to_string(n), d, cfg.bound_factor / n);
    if (std::isfinite(prev)) worst_increase = std::max(worst_increase, d - prev);
    prev = d;
    csv += std::to_string(n) + "," + bernlab::detail::fmt_double(d) + "," +
           bernlab::detail::fmt_double(cfg.bound_factor / n) + "\n";
  }
  detail::add_metric(r, "distance_increase_under_refinement",
                     std::isfinite(worst_increase) ? worst_increase : 0.0, 0.0);

  // polygon body: every extreme point is exposed, distance exactly zero
  const auto square = ConvexPolygon::box({-1, -1}, {1, 1});
  const auto sq_exposed = exposed_points(square);
  double worst = 0.0;
  for (const Vec2& v : extreme_points(square)) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& p : sq_exposed) best = std::min(best, distance(p, v));
    worst = std::max(worst, best);
  }
  detail::add_metric(r, "polygon_extreme_to_exposed_distance", worst, 0.0);

  detail::write_artifact(r, ctx, "distances.csv", csv);
  detail::finalize(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// monotone_usc: the staged continuous approximation of a jump anisotropy gives
// monotonically growing supports that converge in Hausdorff distance, and the
// limit satisfies both residual sides away from the jump.
// ---------------------------------------------------------------------------

struct MonotoneUscConfig {
  double h = 0.05;
  double fb_tol = 0.02;
  double jump_theta = 0.0;
  double jump_value = 2.0;
  double base_value = 1.0;
  std::vector<double> j_schedule{2.0, 4.0, 8.0, 16.0};
  int k_segments = 96;
};

inline CheckReport check_monotone_usc(const MonotoneUscConfig& cfg, const CheckContext& ctx = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.check_id = "monotone_usc";

  const auto K = ConvexPolygon::regular_polygon({0, 0}, 1.0, cfg.k_segments);
  const auto q = Anisotropy::usc_jumps(Anisotropy::constant(cfg.base_value),
                                       {{cfg.jump_theta, cfg.jump_value}});
  SolverParams p;
  p.h = cfg.h;
  p.fb_tol = cfg.fb_tol;
  p.step0 = 3.0 * cfg.h;

  const auto [stages, limit] = solve_minimal_usc(K, q, cfg.j_schedule, p);

  // monotone support growth with j, up to one grid spacing
  double worst_excess = 0.0;
  for (size_t a = 0; a + 1 < stages.size(); ++a) {
    for (int k = 0; k < 720; ++k) {
      const Vec2 d{std::cos(kTwoPi * k / 720), std::sin(kTwoPi * k / 720)};
      worst_excess = std::max(
          worst_excess, stages[a].boundary.support(d) - stages[a + 1].boundary.support(d));
    }
  }
  detail::add_metric(r, "monotone_inclusion_excess", worst_excess, cfg.h);

  // Cauchy tail: distance to the final stage strictly decreases
  std::vector<double> dist;
  for (size_t a = 0; a + 1 < stages.size(); ++a)
    dist.push_back(hausdorff(stages[a].boundary, stages.back().boundary));
  double min_decrease = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a + 1 < dist.size(); ++a)
    min_decrease = std::min(min_decrease, dist[a] - dist[a + 1]);
  detail::add_metric(r, "hausdorff_tail_min_decrease", min_decrease, 1e-9, false);

  // radial sandwich from the oracle radii for q_max and q_min
  auto radial = [](double q_const) {
    double lo = 1.0 + 1e-14, hi = 1.0 + 1.0 / q_const + 1.0;
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (lo + hi);
      (m * std::log(m) < 1.0 / q_const ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
  };
  const double r_lo = radial(cfg.jump_value), r_hi = radial(cfg.base_value);
  double sandwich = 0.0;
  for (const auto& s : stages)
    for (const Vec2& v : s.boundary.vertices()) {
      sandwich = std::max(sandwich, r_lo - norm(v));
      sandwich = std::max(sandwich, norm(v) - r_hi);
    }
  detail::add_metric(r, "radial_sandwich_excess", sandwich, 2.0 * cfg.h);

  // the limit's residual report: both sides pass at non-jump facets; facets
  // within the last stage's cone plus two direction spacings count as jump
  const double spacing = kTwoPi / std::max<size_t>(limit.residuals.size(), 1);
  const double cone = (cfg.jump_value - cfg.base_value) / cfg.j_schedule.back();
  const double jump_tol = cone + 2.0 * spacing;
  int flagged = 0;
  for (const auto& f : residual_report(limit, jump_tol)) {
    if (f.jump_facet) continue;
    if (f.below_strong_subsolution || f.above_supersolution) ++flagged;
  }
  detail::add_metric(r, "nonjump_facet_flags", flagged, 0.0);
  detail::add_metric(r, "jump_facet_angle_tol", jump_tol, jump_tol);

  // Q^j invariants on a dense angular grid (exact bounds)
  std::vector<Anisotropy> qjs;
  for (double j : cfg.j_schedule) qjs.push_back(q.continuous_approx(j));
  double mono_viol = 0.0, dom_viol = 0.0, lip_viol = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double th = kTwoPi * k / 10000;
    const double qv = q.eval(th);
    for (size_t a = 0; a < qjs.size(); ++a) {
      dom_viol = std::max(dom_viol, qv - qjs[a].eval(th));
      if (a + 1 < qjs.size())
        mono_viol = std::max(mono_viol, qjs[a + 1].eval(th) - qjs[a].eval(th));
    }
  }
  for (size_t a = 0; a < qjs.size(); ++a) {
    for (int k = 0; k < 2000; ++k) {
      const double t1 = kTwoPi * k / 2000;
      const double t2 = kTwoPi * ((k * 37) % 2000) / 2000;
      lip_viol = std::max(lip_viol, std::fabs(qjs[a].eval(t1) - qjs[a].eval(t2)) -
                                        cfg.j_schedule[a] * geodesic_angle(t1, t2));
    }
  }
  detail::add_metric(r, "qj_dominates_q_violation", dom_viol, 1e-12);
  detail::add_metric(r, "qj_monotone_in_j_violation", mono_viol, 1e-12);
  detail::add_metric(r, "qj_lipschitz_violation", lip_viol, 1e-12);

  if (!ctx.out_dir.empty()) {
    for (size_t a = 0; a < stages.size(); ++a)
      detail::write_artifact(r, ctx, "stage_j" + std::to_string(cfg.j_schedule[a]) + ".csv",
                             to_csv(stages[a].boundary));
    detail::write_artifact(r, ctx, "limit.csv", to_csv(limit.boundary));
  }

  detail::finalize(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// suite driver
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& default_check_names() {
  static const std::vector<std::string> names{"facet_convexity", "counterexample", "comparison",
                                              "straszewicz", "monotone_usc"};
  return names;
}

struct SuiteConfig {
  std::vector<std::string> checks = default_check_names();
  std::filesystem::path out_dir;
  int jobs = 1;
  FacetConvexityConfig facet_convexity;
  CounterexampleConfig counterexample;
  ComparisonConfig comparison;
  StraszewiczConfig straszewicz;
  MonotoneUscConfig monotone_usc;
};

// Runs the enabled checks (declaration order preserved in the result). A
// throwing check is recorded as FAILED with its message; the suite continues.
inline std::vector<CheckReport> run_all(const SuiteConfig& cfg) {
  std::vector<std::function<CheckReport()>> tasks;
  CheckContext ctx{cfg.out_dir};
  for (const std::string& name : cfg.checks) {
    if (name == "facet_convexity")
      tasks.emplace_back([=] { return check_facet_convexity(cfg.facet_convexity, ctx); });
    else if (name == "counterexample")
      tasks.emplace_back([=] { return check_counterexample(cfg.counterexample, ctx); });
    else if (name == "comparison")
      tasks.emplace_back([=] { return check_comparison(cfg.comparison, ctx); });
    else if (name == "straszewicz")
      tasks.emplace_back([=] { return check_straszewicz(cfg.straszewicz, ctx); });
    else if (name == "monotone_usc")
      tasks.emplace_back([=] { return check_monotone_usc(cfg.monotone_usc, ctx); });
    else
      throw ConfigInvalid("unknown check name: " + name);
  }

  auto guarded = [&](size_t i) {
    try {
      return tasks[i]();
    } catch (const std::exception& e) {
      CheckReport r;
      r.check_id = cfg.checks[i];
      r.status = CheckStatus::kFailed;
      r.passed = false;
      r.note = e.what();
      return r;
    }
  };

  std::vector<CheckReport> reports(tasks.size());
  if (cfg.jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) reports[i] = guarded(i);
  } else {
    std::vector<std::future<CheckReport>> futs;
    futs.reserve(tasks.size());
    for (size_t i = 0; i < tasks.size(); ++i)
      futs.push_back(std::async(std::launch::async, guarded, i));
    for (size_t i = 0; i < tasks.size(); ++i) reports[i] = futs[i].get();
  }
  return reports;
}

inline std::string summary_table(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  out << "check              status   key metric                                   runtime\n";
  out << "-----------------  -------  -------------------------------------------  -------\n";
  for (const auto& r : reports) {
    const char* status = r.status == CheckStatus::kPassed   ? "PASSED"
                         : r.status == CheckStatus::kSkipped ? "SKIPPED"
                                                              : "FAILED";
    std::string key = r.note.empty() ? "" : r.note;
    if (key.empty()) {
      const Metric* pick = nullptr;
      for (const auto& m : r.metrics)
        if (!m.pass) { pick = &m; break; }
      if (!pick && !r.metrics.empty()) pick = &r.metrics.front();
      if (pick) {
        std::ostringstream ks;
        ks << pick->name << "=" << pick->value << (pick->less_is_pass ? " <= " : " >= ")
           << pick->threshold;
        key = ks.str();
      }
    }
    if (key.size() > 45) key = key.substr(0, 42) + "...";
    out << r.check_id;
    for (size_t i = r.check_id.size(); i < 19; ++i) out << ' ';
    out << status;
    for (size_t i = std::string(status).size(); i < 9; ++i) out << ' ';
    out << key;
    for (size_t i = key.size(); i < 45; ++i) out << ' ';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%6.1fs", r.runtime_seconds);
    out << buf << "\n";
  }
  return out.str();
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (r.status == CheckStatus::kFailed) return false;
  return true;
}

}  // namespace bernlab
