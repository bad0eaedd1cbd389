#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bernlab/geometry.hpp"

namespace bernlab {

enum class AnisotropyKind { kConstant, kPiecewiseLinear, kUscJumps };

// Boundary speed Q on S^1: strictly positive, bounded, and either continuous
// (constant / piecewise linear in the angle) or upper semicontinuous with
// finitely many upward jumps on top of a continuous base. Jump values are
// attained exactly at their angles, so Q(n) >= limsup_{n'->n} Q(n') holds by
// construction. Immutable.
class Anisotropy {
 public:
  struct Knot {
    double theta;  // canonical in [0, 2*pi)
    double value;
  };

  static Anisotropy constant(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("anisotropy: constant value must be positive");
    Anisotropy q;
    q.kind_ = AnisotropyKind::kConstant;
    q.qmin_ = q.qmax_ = q.base_const_ = c;
    return q;
  }

  // Knots are linearly interpolated in the angle, periodically.
  static Anisotropy piecewise_linear(std::vector<Knot> knots) {
    Anisotropy q;
    q.kind_ = AnisotropyKind::kPiecewiseLinear;
    q.knots_ = normalize_knots(std::move(knots));
    q.qmin_ = q.qmax_ = q.knots_.front().value;
    for (const Knot& k : q.knots_) {
      q.qmin_ = std::min(q.qmin_, k.value);
      q.qmax_ = std::max(q.qmax_, k.value);
    }
    return q;
  }

  // Upper semicontinuous Q: continuous base plus point jumps, each strictly
  // above the base value at its angle.
  static Anisotropy usc_jumps(Anisotropy base, std::vector<Knot> jumps) {
    if (base.kind_ == AnisotropyKind::kUscJumps)
      throw std::invalid_argument("anisotropy: base of usc_jumps must be continuous");
    if (jumps.empty()) throw std::invalid_argument("anisotropy: usc_jumps needs at least one jump");
    Anisotropy q = std::move(base);
    q.kind_ = AnisotropyKind::kUscJumps;
    for (Knot& j : jumps) {
      j.theta = canonical_angle(j.theta);
      if (!(j.value > q.eval_continuous(j.theta)))
        throw std::invalid_argument("anisotropy: jump value must exceed the base value");
      q.qmax_ = std::max(q.qmax_, j.value);
    }
    std::sort(jumps.begin(), jumps.end(), [](const Knot& a, const Knot& b) { return a.theta < b.theta; });
    q.jumps_ = std::move(jumps);
    return q;
  }

  AnisotropyKind kind() const { return kind_; }
  bool continuous() const { return kind_ != AnisotropyKind::kUscJumps; }
  const std::vector<Knot>& knots() const { return knots_; }
  const std::vector<Knot>& jumps() const { return jumps_; }

  double q_min() const { return qmin_; }
  double q_max() const { return qmax_; }
  std::pair<double, double> bounds() const { return {qmin_, qmax_}; }

  // Exact pointwise value; jump values apply at their angles only.
  double eval(double theta) const {
    theta = canonical_angle(theta);
    if (kind_ == AnisotropyKind::kUscJumps) {
      for (const Knot& j : jumps_)
        if (geodesic_angle(theta, j.theta) <= kJumpAngleEps) return j.value;
    }
    return eval_continuous(theta);
  }
  double eval(const Direction& n) const { return eval(n.theta()); }

  // The continuous envelope: limsup of nearby values off the jump set.
  double eval_limsup_off_jumps(double theta) const { return eval_continuous(canonical_angle(theta)); }

  // Monotone continuous approximation by sup-convolution:
  //   Q^j(theta) = sup_t ( Q(t) - j * d_geo(theta, t) ),
  // exact for these representations (the sup is attained at theta itself, a
  // base knot, or a jump angle). Returns a continuous anisotropy; Q^j is
  // j-Lipschitz in the angle, decreases pointwise in j, and dominates Q.
  Anisotropy continuous_approx(double j) const {
    if (!(j > 0.0)) throw std::invalid_argument("continuous_approx: j must be positive");
    if (kind_ == AnisotropyKind::kConstant) return *this;

    // candidate cone apexes (angle, value)
    std::vector<Knot> apex = knots_;
    for (const Knot& jm : jumps_) apex.push_back(jm);

    // breakpoints: base knots, apex angles, their antipodes
    std::vector<double> brk;
    for (const Knot& k : knots_) brk.push_back(k.theta);
    for (const Knot& a : apex) {
      brk.push_back(a.theta);
      brk.push_back(canonical_angle(a.theta + kPi));
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

    auto value_at = [&](double th) {
      double best = eval_continuous(th);
      for (const Knot& a : apex) best = std::max(best, a.value - j * geodesic_angle(th, a.theta));
      return best;
    };

    // Between consecutive breakpoints every constituent is linear in theta;
    // insert pairwise crossings so the output is exact piecewise linear.
    std::vector<Knot> out;
    const size_t nb = brk.size();
    for (size_t i = 0; i < nb; ++i) {
      const double t0 = brk[i];
      const double t1 = (i + 1 < nb) ? brk[i + 1] : brk[0] + kTwoPi;
      if (t1 - t0 <= 1e-14) continue;
      std::vector<double> cuts{t0};
      // every constituent is linear on (t0, t1): record exact (value at t0, slope)
      const double mid = 0.5 * (t0 + t1);
      std::vector<std::pair<double, double>> lines;
      lines.emplace_back(eval_continuous(canonical_angle(t0)), base_slope_at(canonical_angle(mid)));
      for (const Knot& a : apex) {
        const double delta = canonical_angle(mid - a.theta);
        const double slope = (delta < kPi) ? -j : j;
        lines.emplace_back(a.value - j * geodesic_angle(t0, a.theta), slope);
      }
      for (size_t p = 0; p < lines.size(); ++p)
        for (size_t q = p + 1; q < lines.size(); ++q) {
          const double ds = lines[p].second - lines[q].second;
          if (std::fabs(ds) < 1e-13) continue;
          const double t = t0 + (lines[q].first - lines[p].first) / ds;
          if (t > t0 + 1e-13 && t < t1 - 1e-13) cuts.push_back(t);
        }
      std::sort(cuts.begin(), cuts.end());
      for (double t : cuts) {
        const double th = canonical_angle(t);
        if (!out.empty() && geodesic_angle(out.back().theta, th) < 1e-12) continue;
        out.push_back({th, value_at(th)});
      }
    }
    return piecewise_linear(std::move(out));
  }

  static double canonical_angle(double theta) {
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi) theta = 0.0;
    return theta;
  }

  // Angle identity tolerance for jump attainment.
  static constexpr double kJumpAngleEps = 1e-12;

 private:
  Anisotropy() = default;

  static std::vector<Knot> normalize_knots(std::vector<Knot> knots) {
    if (knots.empty()) throw std::invalid_argument("anisotropy: empty knot list");
    for (Knot& k : knots) {
      k.theta = canonical_angle(k.theta);
      if (!(k.value > 0.0)) throw std::invalid_argument("anisotropy: knot values must be positive");
    }
    std::sort(knots.begin(), knots.end(), [](const Knot& a, const Knot& b) { return a.theta < b.theta; });
    std::vector<Knot> out;
    for (const Knot& k : knots) {
      if (!out.empty() && k.theta - out.back().theta < 1e-12) continue;
      out.push_back(k);
    }
    return out;
  }

  double eval_continuous(double theta) const {
    if (knots_.empty()) return base_const_;
    const auto [a, b] = bracket(theta);
    double ta = a.theta, tb = b.theta, t = theta;
    if (tb <= ta) tb += kTwoPi;           // wrapped segment
    if (t < ta) t += kTwoPi;
    const double w = (t - ta) / (tb - ta);
    return a.value + w * (b.value - a.value);
  }

  double base_slope_at(double theta) const {
    if (knots_.size() <= 1) return 0.0;
    const auto [a, b] = bracket(theta);
    double ta = a.theta, tb = b.theta;
    if (tb <= ta) tb += kTwoPi;
    return (b.value - a.value) / (tb - ta);
  }

  std::pair<Knot, Knot> bracket(double theta) const {
    const auto& ks = knots_;
    if (ks.size() == 1) return {ks[0], ks[0]};
    auto it = std::upper_bound(ks.begin(), ks.end(), theta,
                               [](double t, const Knot& k) { return t < k.theta; });
    const Knot& b = (it == ks.end()) ? ks.front() : *it;
    const Knot& a = (it == ks.begin()) ? ks.back() : *(it - 1);
    return {a, b};
  }

  AnisotropyKind kind_ = AnisotropyKind::kConstant;
  std::vector<Knot> knots_;
  std::vector<Knot> jumps_;
  double qmin_ = 1.0, qmax_ = 1.0;
  double base_const_ = 1.0;  // base value when the knot list is empty
};

}  // namespace bernlab
