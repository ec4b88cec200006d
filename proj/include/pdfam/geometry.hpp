#pragma once

// Euclidean primitives on finite point sets: point clouds, rays, angles
// between vectors and unoriented segments, angular deviation/thickness of a
// point sequence relative to a ray, and the minimum enclosing ball of three
// points.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pdfam/error.hpp"

namespace pdfam {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Default tolerance (radians) for comparing angles against thresholds.
inline constexpr double kAngleTolerance = 1e-9;

/// Coordinates closer than this are treated as the same point.
inline constexpr double kCoincidenceTolerance = 1e-12;

/// Ordered set of points in R^dim, stored row-major.
class PointCloud {
 public:
  PointCloud() = default;

  PointCloud(std::size_t dim, std::vector<double> coords)
      : dim_(dim), coords_(std::move(coords)) {
    if (dim_ == 0) throw InvalidInput("point cloud dimension must be >= 1");
    if (coords_.size() % dim_ != 0)
      throw InvalidInput("coordinate count is not a multiple of the dimension");
    for (double x : coords_)
      if (!std::isfinite(x)) throw InvalidInput("non-finite coordinate");
  }

  static PointCloud from_rows(const std::vector<Point>& rows) {
    if (rows.empty()) throw InvalidInput("point cloud must contain at least one point");
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != dim)
        throw InvalidInput("point " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) + " coordinates, expected " +
                           std::to_string(dim));
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    return PointCloud(dim, std::move(flat));
  }

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  PointView operator[](std::size_t i) const noexcept {
    return PointView(coords_.data() + i * dim_, dim_);
  }

  Point point(std::size_t i) const {
    auto p = (*this)[i];
    return Point(p.begin(), p.end());
  }

  void push_back(PointView p) {
    if (dim_ == 0) dim_ = p.size();
    if (p.size() != dim_) throw InvalidInput("point dimension mismatch");
    for (double x : p)
      if (!std::isfinite(x)) throw InvalidInput("non-finite coordinate");
    coords_.insert(coords_.end(), p.begin(), p.end());
  }

  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

// ---------------------------------------------------------------------------
// Vector helpers

inline double dot(PointView a, PointView b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(PointView a) noexcept { return std::sqrt(dot(a, a)); }

inline Point subtract(PointView a, PointView b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline double distance(PointView a, PointView b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool coincident(PointView a, PointView b, double tol = kCoincidenceTolerance) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

inline void require_same_dim(PointView a, PointView b) {
  if (a.size() != b.size()) throw InvalidInput("dimension mismatch");
}

/// Angle in [0, pi] between two nonzero vectors.
///
/// Uses 2*atan2(|u^ - v^|, |u^ + v^|) on the normalized vectors, which stays
/// accurate near 0 and pi where acos loses precision.
inline double vector_angle(PointView u, PointView v) {
  require_same_dim(u, v);
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu <= kCoincidenceTolerance || nv <= kCoincidenceTolerance)
    throw InvalidInput("degenerate segment");
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i] / nu;
    const double b = v[i] / nv;
    diff += (a - b) * (a - b);
    sum += (a + b) * (a + b);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

/// Largest pairwise distance.
inline double diameter(const PointCloud& cloud) noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j)
      d = std::max(d, distance(cloud[i], cloud[j]));
  return d;
}

// ---------------------------------------------------------------------------
// Rays

/// Half-line from `vertex` along a unit `direction`.
class Ray {
 public:
  Ray(Point vertex, Point direction) : vertex_(std::move(vertex)), direction_(std::move(direction)) {
    if (vertex_.size() != direction_.size() || vertex_.empty())
      throw InvalidInput("ray vertex and direction must have the same nonzero dimension");
    const double n = norm(direction_);
    if (!(n > kCoincidenceTolerance) || !std::isfinite(n))
      throw InvalidInput("ray direction must be a nonzero finite vector");
    for (double& x : direction_) x /= n;
  }

  const Point& vertex() const noexcept { return vertex_; }
  const Point& direction() const noexcept { return direction_; }
  std::size_t dim() const noexcept { return vertex_.size(); }

  Point at(double t) const {
    Point p = vertex_;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * direction_[i];
    return p;
  }

 private:
  Point vertex_;
  Point direction_;
};

// ---------------------------------------------------------------------------
// Angles

/// Angle in [0, pi/2] between the unoriented lines through [a,b] and [c,d].
inline double segment_angle(PointView a, PointView b, PointView c, PointView d) {
  require_same_dim(a, b);
  require_same_dim(c, d);
  require_same_dim(a, c);
  const double phi = vector_angle(subtract(b, a), subtract(d, c));
  return std::min(phi, std::numbers::pi - phi);
}

/// Unoriented angle between the line through a ray and the segment [p,q].
inline double line_segment_angle(const Ray& ray, PointView p, PointView q) {
  require_same_dim(p, ray.direction());
  const double phi = vector_angle(subtract(q, p), ray.direction());
  return std::min(phi, std::numbers::pi - phi);
}

/// omega(T;R): maximum unoriented angle between the ray's line and any
/// segment [p,q] over distinct points of T.
inline double angular_deviation(const PointCloud& tail, const Ray& ray) {
  if (tail.size() < 2) throw InvalidInput("angular deviation needs at least two points");
  if (tail.dim() != ray.dim()) throw InvalidInput("dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i)
    for (std::size_t j = i + 1; j < tail.size(); ++j) {
      if (coincident(tail[i], tail[j])) throw InvalidInput("coincident points");
      worst = std::max(worst, line_segment_angle(ray, tail[i], tail[j]));
    }
  return worst;
}

/// theta(T;R): maximum oriented angle between the ray direction and p_i - p_1,
/// i >= 2. T[0] must be the ray's vertex.
inline double angular_thickness(const PointCloud& tail, const Ray& ray) {
  if (tail.size() < 2) throw InvalidInput("angular thickness needs at least two points");
  if (tail.dim() != ray.dim()) throw InvalidInput("dimension mismatch");
  if (!coincident(tail[0], ray.vertex()))
    throw InvalidInput("first point of the sequence must be the ray vertex");
  double worst = 0.0;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (coincident(tail[i], tail[0])) throw InvalidInput("coincident points");
    worst = std::max(worst, vector_angle(ray.direction(), subtract(tail[i], tail[0])));
  }
  return worst;
}

/// mu(R;A): minimum oriented angle between the ray direction and p - A[v] over
/// p != A[v]. Returns +inf when A has no other point.
inline double min_ray_angle(const PointCloud& cloud, std::size_t v, const Ray& ray) {
  if (v >= cloud.size()) throw InvalidInput("vertex index out of range");
  if (cloud.dim() != ray.dim()) throw InvalidInput("dimension mismatch");
  if (!coincident(cloud[v], ray.vertex())) throw InvalidInput("ray vertex must equal A[v]");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (i == v) continue;
    if (coincident(cloud[i], cloud[v])) throw InvalidInput("coincident points");
    best = std::min(best, vector_angle(ray.direction(), subtract(cloud[i], cloud[v])));
  }
  return best;
}

/// True iff the angle of triangle pqv at v is at least pi/2, i.e. the exact
/// sign test (p - v).(q - v) <= 0.
inline bool non_acute_at(PointView v, PointView p, PointView q) {
  require_same_dim(v, p);
  require_same_dim(v, q);
  if (coincident(v, p) || coincident(v, q) || coincident(p, q))
    throw InvalidInput("coincident points");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += (p[i] - v[i]) * (q[i] - v[i]);
  return s <= 0.0;
}

/// Radius of the smallest ball containing {p, q, r}.
///
/// Half the longest side when the opposite angle is non-acute (this includes
/// collinear and coincident triples), otherwise the circumradius. The result
/// is snapped to exactly half the longest side when the two agree to 1e-12
/// relative, so right triangles enter a filtration together with their
/// hypotenuse.
inline double enclosing_radius_3(PointView p, PointView q, PointView r) {
  require_same_dim(p, q);
  require_same_dim(p, r);
  const double dpq = distance(p, q);
  const double dqr = distance(q, r);
  const double dpr = distance(p, r);

  // Longest side [a,b] with opposite vertex c.
  PointView a = p, b = q, c = r;
  double longest = dpq;
  if (dqr > longest) { a = q; b = r; c = p; longest = dqr; }
  if (dpr > longest) { a = p; b = r; c = q; longest = dpr; }

  const double half = 0.5 * longest;
  if (half == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (a[i] - c[i]) * (b[i] - c[i]);
  if (s <= 0.0) return half;

  const double gamma = vector_angle(subtract(a, c), subtract(b, c));
  const double circum = longest / (2.0 * std::sin(gamma));
  if (!(circum > half * (1.0 + 1e-12))) return half;
  return circum;
}

}  // namespace pdfam
