#pragma once

// Filtered 2-skeleta for the Vietoris-Rips, Cech and planar Delaunay (alpha)
// filtrations. Every simplex carries the scale alpha at which it enters; an
// edge [p,q] enters VR and Cech at d(p,q)/2.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pdfam/delaunay.hpp"
#include "pdfam/error.hpp"
#include "pdfam/geometry.hpp"

namespace pdfam {

enum class FiltrationKind { VietorisRips, Cech, Delaunay2D };

inline std::string_view to_string(FiltrationKind kind) noexcept {
  switch (kind) {
    case FiltrationKind::VietorisRips: return "vr";
    case FiltrationKind::Cech: return "cech";
    case FiltrationKind::Delaunay2D: return "delaunay";
  }
  return "?";
}

inline FiltrationKind parse_kind(std::string_view s) {
  if (s == "vr" || s == "rips") return FiltrationKind::VietorisRips;
  if (s == "cech") return FiltrationKind::Cech;
  if (s == "delaunay" || s == "alpha") return FiltrationKind::Delaunay2D;
  throw InvalidInput("unknown filtration kind '" + std::string(s) + "'");
}

struct FilteredSimplex {
  std::array<std::size_t, 3> vertices{};  // first `size` entries, strictly increasing
  std::size_t size = 1;
  double value = 0.0;

  std::size_t dim() const noexcept { return size - 1; }
  std::span<const std::size_t> verts() const noexcept { return {vertices.data(), size}; }
  friend bool operator==(const FilteredSimplex&, const FilteredSimplex&) = default;
};

/// Filtration order: value, then dimension, then lexicographic vertices.
/// Faces precede cofaces at equal values.
inline bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b) noexcept {
  if (a.value != b.value) return a.value < b.value;
  if (a.size != b.size) return a.size < b.size;
  return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + a.size,
                                      b.vertices.begin(), b.vertices.begin() + b.size);
}

class FilteredComplex {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  FilteredComplex() = default;

  /// Takes simplices in any order; sorts them into filtration order. Vertex
  /// lists are normalized to increasing order. Face closure is not checked
  /// here (see validate()).
  FilteredComplex(std::size_t n_vertices, std::vector<FilteredSimplex> simplices,
                  FiltrationKind kind, double max_scale, bool explicit_cap = false)
      : n_vertices_(n_vertices),
        simplices_(std::move(simplices)),
        kind_(kind),
        max_scale_(max_scale),
        explicit_cap_(explicit_cap) {
    for (auto& s : simplices_) {
      if (s.size < 1 || s.size > 3) throw InvalidInput("simplices must have 1 to 3 vertices");
      std::sort(s.vertices.begin(), s.vertices.begin() + s.size);
      for (std::size_t k = 0; k < s.size; ++k)
        if (s.vertices[k] >= n_vertices_) throw InvalidInput("simplex vertex out of range");
      for (std::size_t k = 1; k < s.size; ++k)
        if (s.vertices[k] == s.vertices[k - 1]) throw InvalidInput("repeated vertex in simplex");
      if (!(s.value >= 0.0) || !std::isfinite(s.value))
        throw InvalidInput("simplex value must be finite and non-negative");
    }
    std::sort(simplices_.begin(), simplices_.end(), filtration_less);
    index_.reserve(simplices_.size());
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
      if (!index_.emplace(key(simplices_[i].verts()), i).second)
        throw InvalidInput("duplicate simplex");
    }
  }

  std::size_t n_vertices() const noexcept { return n_vertices_; }
  const std::vector<FilteredSimplex>& simplices() const noexcept { return simplices_; }
  FiltrationKind kind() const noexcept { return kind_; }
  /// Scale cap used by the builder (+inf when nothing was cut off by a cap).
  double max_scale() const noexcept { return max_scale_; }
  /// True when the caller supplied the cap, so diagrams may be truncated.
  bool explicit_cap() const noexcept { return explicit_cap_; }

  std::size_t find(std::span<const std::size_t> verts) const {
    std::array<std::size_t, 3> v{};
    std::copy(verts.begin(), verts.end(), v.begin());
    std::sort(v.begin(), v.begin() + verts.size());
    auto it = index_.find(key({v.data(), verts.size()}));
    return it == index_.end() ? npos : it->second;
  }
  std::size_t find_edge(std::size_t a, std::size_t b) const {
    const std::array<std::size_t, 2> v{a, b};
    return find(v);
  }
  std::size_t find_triangle(std::size_t a, std::size_t b, std::size_t c) const {
    const std::array<std::size_t, 3> v{a, b, c};
    return find(v);
  }

  /// Indices (into simplices()) of all dimension-d simplices, in filtration order.
  std::vector<std::size_t> of_dim(std::size_t d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < simplices_.size(); ++i)
      if (simplices_[i].dim() == d) out.push_back(i);
    return out;
  }

  /// Throws InvalidInput unless every face of every simplex is present with a
  /// value no larger than the simplex's own.
  void validate() const {
    for (const auto& s : simplices_) {
      if (s.size == 1) continue;
      for (std::size_t drop = 0; drop < s.size; ++drop) {
        std::array<std::size_t, 2> face{};
        std::size_t k = 0;
        for (std::size_t j = 0; j < s.size; ++j)
          if (j != drop) face[k++] = s.vertices[j];
        const std::size_t f = find({face.data(), s.size - 1});
        if (f == npos) throw InvalidInput("complex is not face-closed");
        if (simplices_[f].value > s.value) throw InvalidInput("complex is not monotone");
      }
    }
  }

 private:
  static std::uint64_t key(std::span<const std::size_t> v) noexcept {
    std::uint64_t k = 0;
    for (std::size_t x : v) k = (k << 21) | (static_cast<std::uint64_t>(x) + 1);
    return k;
  }

  std::size_t n_vertices_ = 0;
  std::vector<FilteredSimplex> simplices_;
  FiltrationKind kind_ = FiltrationKind::VietorisRips;
  double max_scale_ = std::numeric_limits<double>::infinity();
  bool explicit_cap_ = false;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

namespace detail {

inline FilteredSimplex vertex_simplex(std::size_t i) { return {{i, 0, 0}, 1, 0.0}; }
inline FilteredSimplex edge_simplex(std::size_t i, std::size_t j, double v) { return {{i, j, 0}, 2, v}; }
inline FilteredSimplex triangle_simplex(std::size_t i, std::size_t j, std::size_t k, double v) {
  return {{i, j, k}, 3, v};
}

inline void require_nonempty(const PointCloud& cloud) {
  if (cloud.size() == 0) throw InvalidInput("empty point cloud");
  if (cloud.size() > (std::size_t{1} << 20)) throw InvalidInput("point cloud too large");
}

template <class TriangleValue>
FilteredComplex build_full(const PointCloud& cloud, FiltrationKind kind, double cap, bool explicit_cap,
                           TriangleValue&& triangle_value) {
  const std::size_t n = cloud.size();
  std::vector<double> half(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) half[i * n + j] = half[j * n + i] = 0.5 * distance(cloud[i], cloud[j]);

  std::vector<FilteredSimplex> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(vertex_simplex(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (half[i * n + j] <= cap) s.push_back(edge_simplex(i, j, half[i * n + j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (half[i * n + j] > cap) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (half[i * n + k] > cap || half[j * n + k] > cap) continue;
        const double v = triangle_value(i, j, k, half);
        if (v <= cap) s.push_back(triangle_simplex(i, j, k, v));
      }
    }
  return FilteredComplex(n, std::move(s), kind, cap, explicit_cap);
}

}  // namespace detail

/// Vietoris-Rips 2-skeleton. Default cap diam/2, where the complex is a full
/// simplex.
inline FilteredComplex build_vr(const PointCloud& cloud, std::optional<double> max_scale = std::nullopt) {
  detail::require_nonempty(cloud);
  const double cap = max_scale.value_or(0.5 * diameter(cloud));
  const std::size_t n = cloud.size();
  return detail::build_full(cloud, FiltrationKind::VietorisRips, cap, max_scale.has_value(),
                            [n](std::size_t i, std::size_t j, std::size_t k, const std::vector<double>& h) {
                              return std::max({h[i * n + j], h[i * n + k], h[j * n + k]});
                            });
}

/// Cech 2-skeleton: triangles enter at their minimum enclosing ball radius.
/// Without a cap all triangles are kept (the full 2-skeleton has trivial H1).
inline FilteredComplex build_cech(const PointCloud& cloud, std::optional<double> max_scale = std::nullopt) {
  detail::require_nonempty(cloud);
  const double cap = max_scale.value_or(std::numeric_limits<double>::infinity());
  return detail::build_full(cloud, FiltrationKind::Cech, cap, max_scale.has_value(),
                            [&cloud](std::size_t i, std::size_t j, std::size_t k, const std::vector<double>&) {
                              return enclosing_radius_3(cloud[i], cloud[j], cloud[k]);
                            });
}

/// Circumradius of a planar triangle, snapped to half the longest side when
/// they agree to 1e-12 relative (right triangles).
inline double circumradius(PointView p, PointView q, PointView r) {
  const double dpq = distance(p, q);
  const double dqr = distance(q, r);
  const double dpr = distance(p, r);
  PointView a = p, b = q, c = r;
  double longest = dpq;
  if (dqr > longest) { a = q; b = r; c = p; longest = dqr; }
  if (dpr > longest) { a = p; b = r; c = q; longest = dpr; }
  const double gamma = vector_angle(subtract(a, c), subtract(b, c));
  const double half = 0.5 * longest;
  const double radius = longest / (2.0 * std::sin(gamma));
  if (!(radius > half * (1.0 + 1e-12))) return half;
  return radius;
}

/// Alpha-complex filtration on the planar Delaunay triangulation: triangles
/// enter at their circumradius; an edge enters at half its length when its
/// open diametral disk holds no point of the cloud (Gabriel), otherwise with
/// its earliest incident triangle.
inline FilteredComplex build_delaunay_2d(const PointCloud& cloud, std::optional<double> max_scale = std::nullopt) {
  detail::require_nonempty(cloud);
  if (cloud.dim() != 2) throw InvalidInput("Delaunay implemented for the plane only");
  const DelaunayTriangulation dt = delaunay_2d(cloud);
  const std::size_t n = cloud.size();

  // One radius per cocircular cell so that its triangles tie exactly.
  std::vector<double> tri_value(dt.triangles.size());
  std::unordered_map<std::size_t, double> cell_radius;
  for (std::size_t t = 0; t < dt.triangles.size(); ++t) {
    const auto& v = dt.triangles[t];
    const double r = circumradius(cloud[v[0]], cloud[v[1]], cloud[v[2]]);
    auto [it, fresh] = cell_radius.emplace(dt.cell_of[t], r);
    if (!fresh) it->second = std::min(it->second, r);
  }
  for (std::size_t t = 0; t < dt.triangles.size(); ++t) tri_value[t] = cell_radius[dt.cell_of[t]];

  std::unordered_map<std::uint64_t, double> min_coface;
  auto ekey = [n](std::size_t a, std::size_t b) { return static_cast<std::uint64_t>(a) * n + b; };
  for (std::size_t t = 0; t < dt.triangles.size(); ++t) {
    const auto& v = dt.triangles[t];
    for (auto [a, b] : {std::pair{v[0], v[1]}, std::pair{v[0], v[2]}, std::pair{v[1], v[2]}}) {
      auto [it, fresh] = min_coface.emplace(ekey(a, b), tri_value[t]);
      if (!fresh) it->second = std::min(it->second, tri_value[t]);
    }
  }

  const double cap = max_scale.value_or(std::numeric_limits<double>::infinity());
  std::vector<FilteredSimplex> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(detail::vertex_simplex(i));
  for (auto [a, b] : dt.edges) {
    const double half = 0.5 * distance(cloud[a], cloud[b]);
    bool gabriel = true;
    for (std::size_t r = 0; r < n && gabriel; ++r) {
      if (r == a || r == b) continue;
      // Strictly inside the diametral disk <=> obtuse angle at r.
      double d = 0.0;
      for (std::size_t k = 0; k < 2; ++k) d += (cloud[a][k] - cloud[r][k]) * (cloud[b][k] - cloud[r][k]);
      if (d < 0.0) gabriel = false;
    }
    double value = half;
    if (!gabriel) {
      auto it = min_coface.find(ekey(a, b));
      if (it == min_coface.end()) throw ConsistencyError("non-Gabriel Delaunay edge without a triangle");
      value = std::max(half, it->second);
    }
    if (value <= cap) s.push_back(detail::edge_simplex(a, b, value));
  }
  for (std::size_t t = 0; t < dt.triangles.size(); ++t) {
    const auto& v = dt.triangles[t];
    if (tri_value[t] <= cap) s.push_back(detail::triangle_simplex(v[0], v[1], v[2], tri_value[t]));
  }
  return FilteredComplex(n, std::move(s), FiltrationKind::Delaunay2D, cap, max_scale.has_value());
}

inline FilteredComplex build_filtration(const PointCloud& cloud, FiltrationKind kind,
                                        std::optional<double> max_scale = std::nullopt) {
  switch (kind) {
    case FiltrationKind::VietorisRips: return build_vr(cloud, max_scale);
    case FiltrationKind::Cech: return build_cech(cloud, max_scale);
    case FiltrationKind::Delaunay2D: return build_delaunay_2d(cloud, max_scale);
  }
  throw InvalidInput("unknown filtration kind");
}

/// Strictly increasing list of the distinct simplex values.
/// Relative tolerance under which two filtration values count as one scale.
inline constexpr double kScaleTolerance = 1e-12;

inline bool same_scale(double a, double b) noexcept {
  return std::abs(a - b) <= kScaleTolerance * std::max(std::abs(a), std::abs(b));
}
inline bool strictly_earlier(double a, double b) noexcept { return a < b && !same_scale(a, b); }

/// Distinct simplex values; values within the scale tolerance merge into the first.
inline std::vector<double> critical_scales(const FilteredComplex& complex) {
  std::vector<double> v;
  for (const auto& s : complex.simplices()) v.push_back(s.value);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return same_scale(a, b); }), v.end());
  return v;
}

}  // namespace pdfam
