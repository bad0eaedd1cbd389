#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bernlab/errors.hpp"

namespace bernlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Absolute tolerance for vertex dedup and collinearity at unit scale.
inline constexpr double kEpsGeom = 1e-9;

// Default angular resolution of circular arcs emitted by dilate().
inline constexpr double kDefaultArcRes = kTwoPi / 256.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 rot90ccw(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  if (n <= 0.0) throw std::invalid_argument("normalized: zero vector");
  return v / n;
}

inline bool lex_less(Vec2 a, Vec2 b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// Unit direction on S^1, canonical angle in [0, 2*pi).
class Direction {
 public:
  explicit Direction(double theta) {
    theta_ = std::fmod(theta, kTwoPi);
    if (theta_ < 0.0) theta_ += kTwoPi;
    if (theta_ >= kTwoPi) theta_ = 0.0;
    u_ = {std::cos(theta_), std::sin(theta_)};
  }

  static Direction of_vector(Vec2 v) {
    if (norm(v) <= 0.0) throw std::invalid_argument("Direction: zero vector");
    return Direction(std::atan2(v.y, v.x));
  }

  double theta() const { return theta_; }
  const Vec2& unit() const { return u_; }

 private:
  double theta_ = 0.0;
  Vec2 u_{1.0, 0.0};
};

// Geodesic distance on the unit circle: min(|dθ|, 2π − |dθ|).
inline double geodesic_angle(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}
inline double geodesic_angle(const Direction& a, const Direction& b) {
  return geodesic_angle(a.theta(), b.theta());
}

struct BBox {
  Vec2 lo, hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

// Oriented segment of a supporting line; `normal` is the inner normal of the
// body along the facet. Coincident endpoints mean an exposed point.
struct Facet {
  Vec2 a, b;
  Direction normal{0.0};
  double length() const { return distance(a, b); }
  bool trivial(double tol = kEpsGeom) const { return length() <= tol; }
  Vec2 midpoint() const { return 0.5 * (a + b); }
};

// Closed convex region stored as a strictly convex CCW vertex list.
// Canonical form: coincident/collinear vertices removed, first vertex is the
// lexicographic minimum. Immutable after construction.
class ConvexPolygon {
 public:
  // Validates CCW orientation and convexity; removes duplicate and collinear
  // vertices; throws std::invalid_argument on fewer than 3 surviving vertices,
  // clockwise input, or a concave corner.
  static ConvexPolygon from_vertices(std::vector<Vec2> pts) {
    dedup(pts);
    if (pts.size() < 3) throw std::invalid_argument("polygon: fewer than 3 distinct vertices");
    double area2 = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
      const Vec2 a = pts[i], b = pts[(i + 1) % pts.size()];
      area2 += cross(a, b);
    }
    if (area2 <= 0.0) throw std::invalid_argument("polygon: vertices not counter-clockwise");
    drop_collinear(pts);
    if (pts.size() < 3) throw std::invalid_argument("polygon: degenerate after collinear removal");
    for (size_t i = 0; i < pts.size(); ++i) {
      const Vec2 p = pts[(i + pts.size() - 1) % pts.size()];
      const Vec2 q = pts[i];
      const Vec2 r = pts[(i + 1) % pts.size()];
      if (cross(q - p, r - q) <= 0.0) throw std::invalid_argument("polygon: not strictly convex");
    }
    canonicalize(pts);
    return ConvexPolygon(std::move(pts));
  }

  // Convex hull (Andrew monotone chain) of an arbitrary point set.
  static ConvexPolygon hull_of(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) throw std::invalid_argument("hull: fewer than 3 distinct points");
    const size_t n = pts.size();
    std::vector<Vec2> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
      while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
      h[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {
      while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
      h[k++] = pts[i];
    }
    h.resize(k - 1);
    return from_vertices(std::move(h));
  }

  static ConvexPolygon box(Vec2 lo, Vec2 hi) {
    return from_vertices({{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}});
  }

  static ConvexPolygon regular_polygon(Vec2 center, double radius, int n, double phase = 0.0) {
    if (n < 3 || radius <= 0.0) throw std::invalid_argument("regular_polygon: bad parameters");
    std::vector<Vec2> v(n);
    for (int k = 0; k < n; ++k) {
      const double a = phase + kTwoPi * k / n;
      v[k] = center + radius * Vec2{std::cos(a), std::sin(a)};
    }
    return from_vertices(std::move(v));
  }

  int size() const { return static_cast<int>(verts_.size()); }
  const std::vector<Vec2>& vertices() const { return verts_; }
  Vec2 vertex(int i) const {
    const int n = size();
    return verts_[((i % n) + n) % n];
  }

  double support(Vec2 d) const {
    double s = dot(verts_[0], d);
    for (size_t i = 1; i < verts_.size(); ++i) s = std::max(s, dot(verts_[i], d));
    return s;
  }
  double support(const Direction& d) const { return support(d.unit()); }

  int support_argmax(Vec2 d) const {
    int best = 0;
    double s = dot(verts_[0], d);
    for (int i = 1; i < size(); ++i) {
      const double t = dot(verts_[i], d);
      if (t > s) { s = t; best = i; }
    }
    return best;
  }

  // Largest signed distance to an edge line; <= 0 inside.
  double max_edge_signed_distance(Vec2 p) const {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) m = std::max(m, dot(edge_outward_normal(i), p - verts_[i]));
    return m;
  }

  bool contains(Vec2 p, double tol = kEpsGeom) const { return max_edge_signed_distance(p) <= tol; }

  double distance_to_boundary(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
      const Vec2 a = verts_[i], b = vertex(i + 1);
      const Vec2 e = b - a;
      const double t = std::clamp(dot(p - a, e) / norm2(e), 0.0, 1.0);
      best = std::min(best, distance(p, a + t * e));
    }
    return best;
  }

  // Parameter interval [t0, t1] of {o + t*d : t in R} inside the polygon.
  std::optional<std::pair<double, double>> clip_line(Vec2 o, Vec2 d) const {
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
      const Vec2 n = edge_outward_normal(i);
      const double nd = dot(n, d);
      const double rhs = dot(n, verts_[i] - o);
      if (std::fabs(nd) < 1e-15) {
        if (rhs < -kEpsGeom) return std::nullopt;
        continue;
      }
      const double t = rhs / nd;
      if (nd > 0.0) t1 = std::min(t1, t); else t0 = std::max(t0, t);
      if (t0 > t1) return std::nullopt;
    }
    return std::make_pair(t0, t1);
  }

  Vec2 edge_outward_normal(int i) const {
    const Vec2 e = vertex(i + 1) - vertex(i);
    return normalized(Vec2{e.y, -e.x});
  }
  Vec2 edge_inner_normal(int i) const { return -edge_outward_normal(i); }
  double edge_length(int i) const { return distance(vertex(i), vertex(i + 1)); }
  Vec2 edge_midpoint(int i) const { return 0.5 * (vertex(i) + vertex(i + 1)); }

  // Index of the edge whose segment is closest to p.
  int closest_edge(Vec2 p) const {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i) {
      const Vec2 a = verts_[i], b = vertex(i + 1);
      const Vec2 e = b - a;
      const double t = std::clamp(dot(p - a, e) / norm2(e), 0.0, 1.0);
      const double d = distance(p, a + t * e);
      if (d < bd) { bd = d; best = i; }
    }
    return best;
  }

  BBox bbox() const {
    BBox b{verts_[0], verts_[0]};
    for (const Vec2& v : verts_) {
      b.lo.x = std::min(b.lo.x, v.x);
      b.lo.y = std::min(b.lo.y, v.y);
      b.hi.x = std::max(b.hi.x, v.x);
      b.hi.y = std::max(b.hi.y, v.y);
    }
    return b;
  }

  double area() const {
    double a2 = 0.0;
    for (int i = 0; i < size(); ++i) a2 += cross(verts_[i], vertex(i + 1));
    return 0.5 * a2;
  }

  double perimeter() const {
    double p = 0.0;
    for (int i = 0; i < size(); ++i) p += edge_length(i);
    return p;
  }

  Vec2 centroid() const {
    Vec2 c{0.0, 0.0};
    double a2 = 0.0;
    for (int i = 0; i < size(); ++i) {
      const double w = cross(verts_[i], vertex(i + 1));
      c = c + w * (verts_[i] + vertex(i + 1));
      a2 += w;
    }
    return c / (3.0 * a2);
  }

  double diameter() const { return diameter_; }

  // Radius of the largest inscribed disk, by bisection on erosion feasibility.
  double inradius() const {
    const BBox b = bbox();
    double lo = 0.0, hi = 0.5 * std::min(b.width(), b.height()) + kEpsGeom;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (shrink_nonempty(mid)) lo = mid; else hi = mid;
    }
    return lo;
  }

  bool approx_equal(const ConvexPolygon& o, double tol) const {
    if (size() != o.size()) return false;
    for (int i = 0; i < size(); ++i)
      if (distance(verts_[i], o.verts_[i]) > tol) return false;
    return true;
  }

  // Vertex list of the polygon clipped by all edges offset inward by r.
  // Empty result means r >= inradius.
  std::vector<Vec2> shrink_vertices(double r) const {
    std::vector<Vec2> cur = verts_;
    for (int i = 0; i < size(); ++i) {
      const Vec2 n = edge_outward_normal(i);
      const double off = dot(n, verts_[i]) - r;  // keep dot(n, x) <= off
      std::vector<Vec2> next;
      next.reserve(cur.size() + 1);
      const size_t m = cur.size();
      for (size_t k = 0; k < m; ++k) {
        const Vec2 a = cur[k], b = cur[(k + 1) % m];
        const double da = dot(n, a) - off, db = dot(n, b) - off;
        if (da <= 0.0) {
          next.push_back(a);
          if (db > 0.0) next.push_back(a + (da / (da - db)) * (b - a));
        } else if (db <= 0.0) {
          next.push_back(a + (da / (da - db)) * (b - a));
        }
      }
      cur = std::move(next);
      if (cur.size() < 3) return {};
    }
    return cur;
  }

 private:
  explicit ConvexPolygon(std::vector<Vec2> v) : verts_(std::move(v)) {
    double d2 = 0.0;
    for (size_t i = 0; i < verts_.size(); ++i)
      for (size_t j = i + 1; j < verts_.size(); ++j)
        d2 = std::max(d2, norm2(verts_[i] - verts_[j]));
    diameter_ = std::sqrt(d2);
  }

  static void dedup(std::vector<Vec2>& pts) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const Vec2& p : pts) {
      if (out.empty() || distance(out.back(), p) > kEpsGeom) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= kEpsGeom) out.pop_back();
    pts = std::move(out);
  }

  static void drop_collinear(std::vector<Vec2>& pts) {
    bool changed = true;
    while (changed && pts.size() > 3) {
      changed = false;
      for (size_t i = 0; i < pts.size(); ++i) {
        const Vec2 p = pts[(i + pts.size() - 1) % pts.size()];
        const Vec2 q = pts[i];
        const Vec2 r = pts[(i + 1) % pts.size()];
        const double c = cross(q - p, r - q);
        if (c >= 0.0 && c <= kEpsGeom * (distance(p, q) + distance(q, r))) {
          pts.erase(pts.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
      }
    }
  }

  static void canonicalize(std::vector<Vec2>& pts) {
    const auto it = std::min_element(pts.begin(), pts.end(), lex_less);
    std::rotate(pts.begin(), it, pts.end());
  }

  bool shrink_nonempty(double r) const {
    const auto v = shrink_vertices(r);
    if (v.size() < 3) return false;
    double a2 = 0.0;
    for (size_t i = 0; i < v.size(); ++i) a2 += cross(v[i], v[(i + 1) % v.size()]);
    return a2 > 2.0 * kEpsGeom * kEpsGeom;
  }

  std::vector<Vec2> verts_;
  double diameter_ = 0.0;
};

inline ConvexPolygon translate(const ConvexPolygon& p, Vec2 t) {
  std::vector<Vec2> v = p.vertices();
  for (Vec2& x : v) x = x + t;
  return ConvexPolygon::from_vertices(std::move(v));
}

inline ConvexPolygon scale_about(const ConvexPolygon& p, Vec2 c, double s) {
  if (s <= 0.0) throw std::invalid_argument("scale_about: nonpositive factor");
  std::vector<Vec2> v = p.vertices();
  for (Vec2& x : v) x = c + s * (x - c);
  return ConvexPolygon::from_vertices(std::move(v));
}

// Reflection across the x-axis (reverses orientation, so the list is flipped).
inline ConvexPolygon mirror_y(const ConvexPolygon& p) {
  std::vector<Vec2> v = p.vertices();
  for (Vec2& x : v) x.y = -x.y;
  std::reverse(v.begin(), v.end());
  return ConvexPolygon::from_vertices(std::move(v));
}

inline double support(const ConvexPolygon& body, const Direction& d) { return body.support(d); }

// Minkowski sum body + B_r with arcs sampled on the exact offset circle at
// angular resolution <= arc_res. The result contains body, is contained in
// the exact dilation, and its Hausdorff error is <= r*(1 - cos(arc_res/2)).
inline ConvexPolygon dilate(const ConvexPolygon& body, double r, double arc_res = kDefaultArcRes) {
  if (r <= 0.0) throw std::invalid_argument("dilate: r must be positive");
  if (arc_res <= 0.0 || arc_res > kPi) throw std::invalid_argument("dilate: bad arc_res");
  const int n = body.size();
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(n) * 4);
  for (int i = 0; i < n; ++i) {
    const Vec2 n_in = body.edge_outward_normal(i - 1);
    const Vec2 n_out = body.edge_outward_normal(i);
    const double a0 = std::atan2(n_in.y, n_in.x);
    double sweep = std::atan2(n_out.y, n_out.x) - a0;
    sweep = std::fmod(sweep, kTwoPi);
    if (sweep < 0.0) sweep += kTwoPi;
    const int steps = std::max(1, static_cast<int>(std::ceil(sweep / arc_res)));
    const Vec2 v = body.vertex(i);
    for (int k = 0; k <= steps; ++k) {
      const double a = a0 + sweep * k / steps;
      out.push_back(v + r * Vec2{std::cos(a), std::sin(a)});
    }
  }
  return ConvexPolygon::from_vertices(std::move(out));
}

// Erosion {x : B_r(x) ⊂ body}: intersection of inward-offset edge half-planes.
inline ConvexPolygon erode(const ConvexPolygon& body, double r) {
  if (r <= 0.0) throw std::invalid_argument("erode: r must be positive");
  std::vector<Vec2> v = body.shrink_vertices(r);
  if (v.size() < 3) throw EmptyErosion("erode: radius meets or exceeds inradius");
  try {
    return ConvexPolygon::hull_of(std::move(v));
  } catch (const std::invalid_argument&) {
    throw EmptyErosion("erode: radius meets or exceeds inradius");
  }
}

// Minkowski sum of two convex polygons by the CCW edge-vector merge.
inline ConvexPolygon minkowski_sum(const ConvexPolygon& a, const ConvexPolygon& b) {
  const auto start_index = [](const ConvexPolygon& p) {
    int best = 0;
    for (int i = 1; i < p.size(); ++i) {
      const Vec2 v = p.vertex(i), w = p.vertex(best);
      if (v.y < w.y || (v.y == w.y && v.x < w.x)) best = i;
    }
    return best;
  };
  const int na = a.size(), nb = b.size();
  int ia = start_index(a), ib = start_index(b);
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(na + nb));
  Vec2 cur = a.vertex(ia) + b.vertex(ib);
  int ka = 0, kb = 0;
  while (ka < na || kb < nb) {
    out.push_back(cur);
    const Vec2 ea = a.vertex(ia + 1) - a.vertex(ia);
    const Vec2 eb = b.vertex(ib + 1) - b.vertex(ib);
    double c = 0.0;
    if (ka >= na) c = -1.0;
    else if (kb >= nb) c = 1.0;
    else c = cross(ea, eb);
    if (c > 0.0) {
      cur = cur + ea; ++ia; ++ka;
    } else if (c < 0.0) {
      cur = cur + eb; ++ib; ++kb;
    } else {
      cur = cur + ea + eb; ++ia; ++ib; ++ka; ++kb;
    }
  }
  return ConvexPolygon::from_vertices(std::move(out));
}

// Exposed face of `body` in direction n: the boundary points minimizing x·n,
// as a (possibly degenerate) segment with inner normal n.
inline Facet facet_of(const ConvexPolygon& body, const Direction& n) {
  const Vec2 d = n.unit();
  const int m = body.size();
  double lo = dot(body.vertex(0), d);
  for (int i = 1; i < m; ++i) lo = std::min(lo, dot(body.vertex(i), d));
  const double tol = kEpsGeom * std::max(1.0, body.diameter());
  std::vector<char> in(m, 0);
  for (int i = 0; i < m; ++i) in[i] = dot(body.vertex(i), d) <= lo + tol ? 1 : 0;
  // The argmin set is a contiguous cyclic run; find its CCW start.
  int start = -1;
  for (int i = 0; i < m; ++i) {
    if (in[i] && !in[(i + m - 1) % m]) { start = i; break; }
  }
  if (start < 0) {                       // all vertices tie (tiny body)
    Facet f{body.vertex(0), body.vertex(0), n};
    return f;
  }
  int end = start;
  while (in[(end + 1) % m]) end = (end + 1) % m;
  return Facet{body.vertex(start), body.vertex(end), n};
}

// Extreme points of the polygon: exactly its (strictly convex) vertices.
inline std::vector<Vec2> extreme_points(const ConvexPolygon& body) { return body.vertices(); }

// Vertices that uniquely minimize x·n for the normal-cone bisector direction n,
// with a support margin above tol (default 1e-7 * diameter).
inline std::vector<Vec2> exposed_points(const ConvexPolygon& body, double tol = -1.0) {
  if (tol < 0.0) tol = 1e-7 * body.diameter();
  std::vector<Vec2> out;
  const int m = body.size();
  for (int i = 0; i < m; ++i) {
    const Vec2 bisector = normalized(body.edge_outward_normal(i - 1) + body.edge_outward_normal(i));
    const Vec2 n = -bisector;  // minimize x·n  <=>  support in -n
    double smin = std::numeric_limits<double>::infinity();
    double s2 = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int j = 0; j < m; ++j) {
      const double s = dot(body.vertex(j), n);
      if (s < smin) { s2 = smin; smin = s; arg = j; }
      else if (s < s2) { s2 = s; }
    }
    if (arg == i && s2 - smin > tol) out.push_back(body.vertex(i));
  }
  return out;
}

// Hausdorff distance between convex bodies via the support-function identity
// d_H(A,B) = sup_d |h_A(d) - h_B(d)|. Candidate directions: edge normals of
// both, all pairwise vertex-difference directions (the only possible interior
// critical points), and a uniform fallback when the pair set is too large.
inline double hausdorff(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<Vec2> dirs;
  for (int i = 0; i < a.size(); ++i) dirs.push_back(a.edge_outward_normal(i));
  for (int i = 0; i < b.size(); ++i) dirs.push_back(b.edge_outward_normal(i));
  const size_t pairs = static_cast<size_t>(a.size()) * static_cast<size_t>(b.size());
  if (pairs <= 65536) {
    for (const Vec2& va : a.vertices())
      for (const Vec2& vb : b.vertices()) {
        const Vec2 d = va - vb;
        const double n = norm(d);
        if (n > kEpsGeom) dirs.push_back(d / n);
      }
  } else {
    for (int k = 0; k < 8192; ++k) {
      const double t = kTwoPi * k / 8192;
      dirs.push_back({std::cos(t), std::sin(t)});
    }
  }
  double h = 0.0;
  for (const Vec2& d : dirs) h = std::max(h, std::fabs(a.support(d) - b.support(d)));
  return h;
}

namespace detail {
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

// CSV serialization: one "x,y" pair per line, CCW.
inline std::string to_csv(const ConvexPolygon& p) {
  std::string out;
  for (const Vec2& v : p.vertices()) {
    out += detail::fmt_double(v.x);
    out += ',';
    out += detail::fmt_double(v.y);
    out += '\n';
  }
  return out;
}

inline ConvexPolygon polygon_from_csv(const std::string& text) {
  std::vector<Vec2> pts;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("polygon csv: missing comma in '" + line + "'");
    pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return ConvexPolygon::from_vertices(std::move(pts));
}

// SVG path data ("d" attribute) for the closed polygon.
inline std::string svg_path(const ConvexPolygon& p) {
  std::string d;
  const auto& vs = p.vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    d += (i == 0) ? "M " : "L ";
    d += detail::fmt_double(vs[i].x);
    d += ' ';
    d += detail::fmt_double(vs[i].y);
    d += ' ';
  }
  d += 'Z';
  return d;
}

}  // namespace bernlab
