#pragma once

// Planar Delaunay triangulation by gift wrapping.
//
// Starting from a convex hull edge, every directed edge with unexplored
// territory on its left is extended by the point whose circle through the
// edge bulges least into that side (the empty-circle neighbour). Points tied
// for that circle form a cocircular cell, which is triangulated as a fan from
// its smallest vertex index, so degenerate inputs get a deterministic
// triangulation. Quadratic in the number of points, which is ample for the
// cloud sizes this library targets.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "pdfam/error.hpp"
#include "pdfam/geometry.hpp"

namespace pdfam {

struct DelaunayTriangulation {
  /// Triangles as strictly increasing vertex triples, sorted.
  std::vector<std::array<std::size_t, 3>> triangles;
  /// Cocircular cell each triangle was cut from; triangles of one cell share
  /// a circumcircle.
  std::vector<std::size_t> cell_of;
  /// Edges as (i, j) with i < j, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

namespace detail {

inline double orient2d(PointView a, PointView b, PointView c) noexcept {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

/// Sign of the orientation with a relative tolerance: near-collinear triples
/// count as collinear (0).
inline int orientation(PointView a, PointView b, PointView c) noexcept {
  const double o = orient2d(a, b, c);
  const double scale = distance(a, b) * distance(a, c);
  if (std::abs(o) <= 1e-12 * scale) return 0;
  return o > 0 ? 1 : -1;
}

}  // namespace detail

inline DelaunayTriangulation delaunay_2d(const PointCloud& cloud) {
  if (cloud.dim() != 2) throw InvalidInput("Delaunay implemented for the plane only");
  const std::size_t n = cloud.size();
  DelaunayTriangulation out;
  if (n <= 1) return out;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coincident(cloud[i], cloud[j]))
        throw InvalidInput("coincident points " + std::to_string(i) + " and " + std::to_string(j));

  // Lexicographically smallest point is a hull vertex.
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (cloud[i][0] < cloud[start][0] ||
        (cloud[i][0] == cloud[start][0] && cloud[i][1] < cloud[start][1]))
      start = i;
  }
  // Hull successor: every point lies left of or on start->next; nearest on ties.
  std::size_t next = start == 0 ? 1 : 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == start || r == next) continue;
    const int o = detail::orientation(cloud[start], cloud[next], cloud[r]);
    if (o < 0 ||
        (o == 0 && distance(cloud[start], cloud[r]) < distance(cloud[start], cloud[next]) &&
         dot(subtract(cloud[r], cloud[start]), subtract(cloud[next], cloud[start])) > 0))
      next = r;
  }

  bool collinear = true;
  for (std::size_t r = 0; r < n && collinear; ++r)
    if (detail::orientation(cloud[start], cloud[next], cloud[r]) != 0) collinear = false;

  if (collinear) {
    const Point axis = subtract(cloud[next], cloud[start]);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> proj(n);
    for (std::size_t i = 0; i < n; ++i) proj[i] = dot(subtract(cloud[i], cloud[start]), axis);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return proj[a] < proj[b] || (proj[a] == proj[b] && a < b);
    });
    for (std::size_t k = 0; k + 1 < n; ++k)
      out.edges.emplace_back(std::min(order[k], order[k + 1]), std::max(order[k], order[k + 1]));
    std::sort(out.edges.begin(), out.edges.end());
    return out;
  }

  std::set<std::pair<std::size_t, std::size_t>> owned;  // directed edges with a triangle on the left
  std::vector<std::pair<std::size_t, std::size_t>> pending{{start, next}};
  std::map<std::array<std::size_t, 3>, std::size_t> triangles;  // -> cell id
  std::size_t cells = 0;

  while (!pending.empty()) {
    const auto [a, b] = pending.back();
    pending.pop_back();
    if (owned.contains({a, b})) continue;

    const PointView pa = cloud[a];
    const PointView pb = cloud[b];
    const double half = 0.5 * distance(pa, pb);
    const double ex = (pb[0] - pa[0]) / (2.0 * half);
    const double ey = (pb[1] - pa[1]) / (2.0 * half);
    const double mx = 0.5 * (pa[0] + pb[0]);
    const double my = 0.5 * (pa[1] + pb[1]);

    // Offset t of the circumcentre along the left normal (-ey, ex).
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == a || r == b) continue;
      if (detail::orientation(pa, pb, cloud[r]) <= 0) continue;
      const double dx = cloud[r][0] - mx;
      const double dy = cloud[r][1] - my;
      const double u = dx * ex + dy * ey;
      const double w = -dx * ey + dy * ex;
      cand.emplace_back((u * u + w * w - half * half) / (2.0 * w), r);
    }
    if (cand.empty()) continue;  // hull edge

    double tmin = cand.front().first;
    for (const auto& c : cand) tmin = std::min(tmin, c.first);
    const double tol = 1e-10 * (half + std::abs(tmin));
    const double cx = mx - tmin * ey;
    const double cy = my + tmin * ex;

    std::vector<std::size_t> cell{a, b};
    for (const auto& c : cand)
      if (c.first <= tmin + tol) cell.push_back(c.second);

    // Counter-clockwise around the circumcentre, then fan from the smallest index.
    std::vector<double> ang(n);
    for (std::size_t v : cell) ang[v] = std::atan2(cloud[v][1] - cy, cloud[v][0] - cx);
    const double base = ang[a];
    auto rel = [&](std::size_t v) {
      double t = ang[v] - base;
      while (t < 0) t += 2.0 * std::numbers::pi;
      return v == a ? 0.0 : t;
    };
    std::sort(cell.begin(), cell.end(), [&](std::size_t x, std::size_t y) { return rel(x) < rel(y); });
    std::rotate(cell.begin(), std::min_element(cell.begin(), cell.end()), cell.end());

    const std::size_t cell_id = cells++;
    for (std::size_t k = 1; k + 1 < cell.size(); ++k) {
      const std::array<std::size_t, 3> tri{cell[0], cell[k], cell[k + 1]};
      for (int s = 0; s < 3; ++s) {
        const std::size_t x = tri[s];
        const std::size_t y = tri[(s + 1) % 3];
        owned.insert({x, y});
        pending.emplace_back(y, x);
      }
      auto sorted = tri;
      std::sort(sorted.begin(), sorted.end());
      triangles.emplace(sorted, cell_id);
    }
  }

  for (const auto& [tri, cell_id] : triangles) {
    out.triangles.push_back(tri);
    out.cell_of.push_back(cell_id);
  }
  std::map<std::pair<std::size_t, std::size_t>, int> incidence;
  for (const auto& t : out.triangles) {
    ++incidence[{t[0], t[1]}];
    ++incidence[{t[0], t[2]}];
    ++incidence[{t[1], t[2]}];
  }
  for (const auto& [e, count] : incidence) {
    if (count > 2) throw ConsistencyError("Delaunay triangulation has an edge in more than two triangles");
    out.edges.push_back(e);
  }
  return out;
}

}  // namespace pdfam
