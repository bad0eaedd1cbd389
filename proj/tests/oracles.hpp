// Test-side oracles, independent of the library implementation paths they
// check: closed forms, root finds, brute-force enumerations.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bernlab/geometry.hpp"

namespace oracles {

using bernlab::ConvexPolygon;
using bernlab::Vec2;

// Radius R of the exterior radial Bernoulli solution around B_rho with
// constant boundary speed q: the root of 1/(R ln(R/rho)) = q.
inline double radial_bernoulli_radius(double rho, double q) {
  auto f = [&](double r) { return r * std::log(r / rho) - 1.0 / q; };
  double lo = rho * (1.0 + 1e-14);
  double hi = rho + 1.0 / q + 1.0;
  if (f(lo) >= 0.0 || f(hi) <= 0.0) throw std::runtime_error("radial oracle: bad bracket");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// |grad v| on |x| = R for the annulus field ln(R/|x|)/ln(R/rho).
inline double radial_boundary_gradient(double rho, double R) {
  return 1.0 / (R * std::log(R / rho));
}

// Annulus solution value at radius r (v = 1 on |x| = rho, v = 0 on |x| = R).
inline double annulus_value(double rho, double R, double r) {
  return std::log(R / r) / std::log(R / rho);
}

inline std::vector<Vec2> sample_boundary(const ConvexPolygon& p, int n) {
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(n));
  const double per = p.perimeter();
  int edge = 0;
  double edge_start = 0.0;
  for (int k = 0; k < n; ++k) {
    const double s = per * k / n;
    while (edge_start + p.edge_length(edge) < s && edge < p.size() - 1) {
      edge_start += p.edge_length(edge);
      ++edge;
    }
    const double t = (s - edge_start) / p.edge_length(edge);
    out.push_back(p.vertex(edge) + t * (p.vertex(edge + 1) - p.vertex(edge)));
  }
  return out;
}

// Brute-force symmetric Hausdorff distance from dense boundary samples.
// For nested convex bodies this matches the support-function route.
inline double brute_hausdorff(const ConvexPolygon& a, const ConvexPolygon& b, int n = 2000) {
  const auto pa = sample_boundary(a, n);
  const auto pb = sample_boundary(b, n);
  auto one_sided = [](const std::vector<Vec2>& from, const ConvexPolygon& to,
                      const std::vector<Vec2>& to_pts) {
    double worst = 0.0;
    for (const Vec2& p : from) {
      if (to.contains(p, 0.0)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const Vec2& q : to_pts) best = std::min(best, bernlab::distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(pa, b, pb), one_sided(pb, a, pa));
}

// Brute-force sup-convolution sup_t (q(t) - j*d_geo(theta, t)) on a dense grid.
// Point jumps of q are invisible to a generic grid, so their angles must be
// passed as extra candidates.
inline double brute_sup_convolution(const std::function<double(double)>& q, double j,
                                    double theta, int grid = 100000,
                                    const std::vector<double>& extra = {}) {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double t = bernlab::kTwoPi * k / grid;
    best = std::max(best, q(t) - j * bernlab::geodesic_angle(theta, t));
  }
  for (double t : extra) best = std::max(best, q(t) - j * bernlab::geodesic_angle(theta, t));
  return best;
}

// One-sided second-order boundary derivative along the inner normal,
// for a field vanishing at xi: v'(0) ~ (4 v(xi+h n) - v(xi+2h n)) / (2h).
inline double one_sided_gradient(const std::function<double(Vec2)>& value, Vec2 xi, Vec2 n,
                                 double h) {
  return (4.0 * value(xi + h * n) - value(xi + 2.0 * h * n)) / (2.0 * h);
}

// Largest midpoint-convexity violation max(0, f(mid) - (f(a)+f(b))/2) over all
// equally spaced index triples (i, i+k, i+2k) of a sampled trace.
inline double max_midpoint_convexity_violation(const std::vector<double>& f) {
  double worst = 0.0;
  const int n = static_cast<int>(f.size());
  for (int k = 1; 2 * k < n; ++k)
    for (int i = 0; i + 2 * k < n; ++i)
      worst = std::max(worst, f[i + k] - 0.5 * (f[i] + f[i + 2 * k]));
  return worst;
}

}  // namespace oracles
