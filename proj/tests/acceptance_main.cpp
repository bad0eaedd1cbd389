// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "bernlab/bernoulli.hpp"
#include "bernlab/geometry.hpp"
#include "bernlab/harmonic.hpp"
#include "bernlab/lemma_lab.hpp"

using namespace bernlab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Criterion {
  int id;
  const char* title;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  Criterion(int id, const char* title) : id(id), title(title) {}

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  void finish() {
    std::printf("criterion %d: %s — %s (%.1fs)%s%s\n", id, ok ? "PASS" : "FAIL", title, seconds(),
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }
};

double radial_radius(double rho, double q) {
  double lo = rho * (1 + 1e-14), hi = rho + 1.0 / q + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (m * std::log(m / rho) < 1.0 / q ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

const FreeBoundarySolution& radial_solution_h002() {
  static const FreeBoundarySolution sol = [] {
    SolverParams p;
    p.h = 0.02;
    p.fb_tol = 0.01;
    p.step0 = 0.06;
    return solve_minimal(ConvexPolygon::regular_polygon({0, 0}, 1.0, 128),
                         Anisotropy::constant(1.0), p);
  }();
  return sol;
}

// 1. Radial Bernoulli oracle at h = 0.02: boundary within 1% of R*, under 60 s.
void criterion_1() {
  Criterion c(1, "radial Bernoulli oracle (R* within 1% at h=0.02, <60s)");
  const auto& sol = radial_solution_h002();
  const double rstar = radial_radius(1.0, 1.0);
  c.expect(std::fabs(rstar - 1.7632) < 5e-4, "oracle radius mismatch");
  c.expect(sol.converged, "solver did not converge");
  const double d = hausdorff(sol.boundary, ConvexPolygon::regular_polygon({0, 0}, rstar, 2048));
  c.expect(d <= 0.01 * rstar, "hausdorff " + fmt(d) + " > 1% of R*");
  c.expect(c.seconds() < 60.0, "runtime over 60s");
  c.detail += (c.detail.empty() ? "" : "; ") + std::string("hausdorff=") + fmt(d) +
              ", R*=" + fmt(rstar);
  c.finish();
}

// 2. Counterexample reproduction: 4/(x1^2+1) within 2%, triple violation, <30 s.
void criterion_2() {
  Criterion c(2, "point-charge counterexample (2% max rel err, (2,4,2) violation, <30s)");
  const auto r = check_counterexample({}, {});
  c.expect(r.status == CheckStatus::kPassed, "check failed");
  for (const auto& m : r.metrics) {
    c.expect(m.pass, m.name + "=" + fmt(m.value));
    if (m.name == "max_rel_err_vs_formula")
      c.detail += (c.detail.empty() ? "" : "; ") + std::string("max_rel_err=") + fmt(m.value);
  }
  c.expect(c.seconds() < 30.0, "runtime over 30s");
  c.finish();
}

// 3. Facet gradient convexity across h in {0.04, 0.02, 0.01}.
void criterion_3() {
  Criterion c(3, "facet gradient convexity (defect <= 1e-3, non-increasing, tau sweep)");
  const auto r = check_facet_convexity({}, {});  // defaults pin the criterion values
  c.expect(r.status == CheckStatus::kPassed, "check failed");
  for (const auto& m : r.metrics) c.expect(m.pass, m.name + "=" + fmt(m.value));
  c.finish();
}

// 4. Comparison ordering with oracle signs and slack <= h + 0.02*diam.
void criterion_4() {
  Criterion c(4, "comparison ordering (4 oracle pairs, slack <= h + 0.02*diam)");
  ComparisonConfig cfg;  // h = 0.04, fb_tol = 0.015
  const auto r = check_comparison(cfg, {});
  c.expect(r.status == CheckStatus::kPassed, "check failed");
  for (const auto& m : r.metrics) c.expect(m.pass, m.name + "=" + fmt(m.value));
  // the support slack used by compare() is h + fb_tol*diam with fb_tol < 0.02
  for (const auto& m : r.metrics) {
    if (m.name.find("_support_excess") == std::string::npos) continue;
    const double diam_bound = 2.0 * (radial_radius(1.25, 1.0) + 0.1);
    c.expect(m.threshold <= cfg.h + 0.02 * diam_bound,
             m.name + " slack " + fmt(m.threshold) + " above criterion bound");
  }
  c.finish();
}

// 5. Monotone usc approximation with j-schedule {2,4,8,16}.
void criterion_5() {
  Criterion c(5, "monotone usc approximation (inclusion, Cauchy tail, Q^j invariants)");
  const auto r = check_monotone_usc({}, {});  // defaults pin the criterion schedule
  c.expect(r.status == CheckStatus::kPassed, "check failed");
  for (const auto& m : r.metrics) c.expect(m.pass, m.name + "=" + fmt(m.value));
  c.finish();
}

// 6. Saturation: converged solutions have every facet within 2% of Q(n).
void criterion_6() {
  Criterion c(6, "saturation (facet min/max of |grad u| within 2% of Q)");
  const auto& radial = radial_solution_h002();
  c.expect(radial.converged, "radial solve did not converge");
  int bad = 0;
  for (const auto& f : residual_report(radial)) {
    if (f.grad_min < f.q_sub * 0.98) ++bad;
    if (f.grad_max > f.q_super * 1.02) ++bad;
  }
  c.expect(bad == 0, "radial: " + std::to_string(bad) + " facet bounds outside 2%");

  std::vector<Anisotropy::Knot> knots;
  for (int k = 0; k < 24; ++k) {
    const double th = kTwoPi * k / 24;
    knots.push_back({th, 1.0 + 0.3 * std::cos(th) * std::cos(th)});
  }
  SolverParams p;
  p.h = 0.03;
  p.fb_tol = 0.015;
  p.step0 = 0.09;
  const auto aniso = solve_minimal(ConvexPolygon::regular_polygon({0, 0}, 1.0, 128),
                                   Anisotropy::piecewise_linear(knots), p);
  c.expect(aniso.converged, "anisotropic solve did not converge");
  bad = 0;
  for (const auto& f : residual_report(aniso)) {
    if (f.grad_min < f.q_sub * 0.98) ++bad;
    if (f.grad_max > f.q_super * 1.02) ++bad;
  }
  c.expect(bad == 0, "anisotropic: " + std::to_string(bad) + " facet bounds outside 2%");
  c.finish();
}

// 7. Geometry kernel exactness: randomized property suite plus the quantified
// Straszewicz bound.
void criterion_7() {
  Criterion c(7, "geometry kernel exactness (1000 random polygons, Straszewicz bound)");
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> npts(4, 24);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.5, 3.0);
  int violations = 0;
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    ConvexPolygon v = [&] {
      for (;;) {
        const int n = npts(rng);
        const double s = scale(rng);
        const Vec2 off{coord(rng), coord(rng)};
        std::vector<Vec2> pts(n);
        for (Vec2& p : pts) p = off + s * Vec2{coord(rng), coord(rng)};
        try {
          return ConvexPolygon::hull_of(pts);
        } catch (const std::invalid_argument&) {
        }
      }
    }();
    ++checked;
    const double sc = std::max(1.0, v.diameter());

    // hull of extreme points reconstructs the polygon
    const auto rebuilt = ConvexPolygon::hull_of(extreme_points(v));
    if (!(rebuilt.size() == v.size() && rebuilt.approx_equal(v, kEpsGeom * sc))) ++violations;
    if (hausdorff(rebuilt, v) > kEpsGeom * sc) ++violations;

    // facet extraction consistency
    for (int k = 0; k < 4; ++k) {
      const Direction n(kTwoPi * (trial * 4 + k) / 4000.0);
      const auto f = facet_of(v, n);
      double lo = std::numeric_limits<double>::infinity();
      for (const Vec2& p : v.vertices()) lo = std::min(lo, dot(p, n.unit()));
      if (dot(f.a, n.unit()) > lo + 1e-7 * sc || dot(f.b, n.unit()) > lo + 1e-7 * sc)
        ++violations;
    }

    // support additivity of dilation within the arc bound; inclusion both ways
    const double r = 0.25 * sc;
    const auto fat = dilate(v, r);
    const double arc_err = r * (1.0 - std::cos(kDefaultArcRes / 2.0));
    for (int k = 0; k < 16; ++k) {
      const Vec2 d{std::cos(kTwoPi * k / 16), std::sin(kTwoPi * k / 16)};
      if (std::fabs(fat.support(d) - v.support(d) - r) > arc_err + kEpsGeom * sc) ++violations;
      if (v.support(d) > fat.support(d)) ++violations;
    }

    // erode/dilate identities on polygons with enough thickness
    if (trial % 5 == 0) {
      const double ir = v.inradius();
      if (ir > 0.05 * sc) {
        const double re = 0.5 * ir;
        const auto thin = erode(v, re);
        for (int k = 0; k < 8; ++k) {
          const Vec2 d{std::cos(kTwoPi * k / 8), std::sin(kTwoPi * k / 8)};
          if (thin.support(d) > v.support(d) + kEpsGeom * sc) ++violations;
        }
        const auto opened = dilate(thin, re);
        for (const Vec2& p : opened.vertices())
          if (!v.contains(p, 1e-8 * sc)) ++violations;
      }
    }

    // exposed points are vertices and only vertices
    const auto exp_pts = exposed_points(v);
    if (exp_pts.size() > static_cast<size_t>(v.size())) ++violations;
  }
  c.expect(checked == 1000, "generator failed");
  c.expect(violations == 0, std::to_string(violations) + " property violations");

  const Vec2 t_up{0.5, std::sqrt(3.0) / 2.0}, t_dn{0.5, -std::sqrt(3.0) / 2.0};
  for (int n : {64, 256, 1024}) {
    auto pts = ConvexPolygon::regular_polygon({0, 0}, 1.0, n).vertices();
    pts.push_back({2.0, 0.0});
    const auto hull = ConvexPolygon::hull_of(pts);
    const auto exposed = exposed_points(hull);
    auto nearest = [&](Vec2 t) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& p : exposed) best = std::min(best, distance(p, t));
      return best;
    };
    const double d = std::max(nearest(t_up), nearest(t_dn));
    c.expect(d <= 2.0 * kTwoPi / n,
             "straszewicz bound at n=" + std::to_string(n) + ": " + fmt(d));
  }
  c.finish();
}

// 8. Determinism: the default suite produces bit-identical CSVs across runs.
void criterion_8() {
  Criterion c(8, "determinism (bit-identical CSVs for repeated default-suite runs)");
  const fs::path dir_a = fs::temp_directory_path() / "bernlab_accept_det_a";
  const fs::path dir_b = fs::temp_directory_path() / "bernlab_accept_det_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  SuiteConfig cfg;  // defaults: all five checks
  cfg.out_dir = dir_a;
  const auto ra = run_all(cfg);
  cfg.out_dir = dir_b;
  const auto rb = run_all(cfg);
  c.expect(ra.size() == rb.size() && ra.size() == 5, "unexpected report count");
  for (size_t i = 0; i < ra.size() && i < rb.size(); ++i)
    c.expect(ra[i].status == rb[i].status, ra[i].check_id + ": verdict changed between runs");
  for (const auto& r : ra)
    c.expect(r.status != CheckStatus::kFailed, r.check_id + " failed: " + r.note);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int csv_count = 0, mismatches = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    ++csv_count;
    const auto rel = fs::relative(entry.path(), dir_a);
    if (!fs::exists(dir_b / rel) || slurp(entry.path()) != slurp(dir_b / rel)) ++mismatches;
  }
  c.expect(csv_count >= 8, "too few CSV artifacts: " + std::to_string(csv_count));
  c.expect(mismatches == 0, std::to_string(mismatches) + " CSVs differ between runs");
  c.detail += (c.detail.empty() ? "" : "; ") + std::to_string(csv_count) + " CSVs compared";
  c.finish();
}

}  // namespace

int main() {
  std::printf("bernlab acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d of 8 criteria passed\n", 8 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
