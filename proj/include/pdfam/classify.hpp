#pragma once

// Short / medium / long edges of a filtration.
//
// An edge e=[p,q] entering at scale a is short when p and q are disconnected
// in the graph of all other edges present at a; long when some triangle pqv
// enters at a while [p,v] and [v,q] are already present strictly earlier;
// medium otherwise. The long_by_* predicates give the distance and angle
// characterizations for the geometric filtrations and serve as independent
// cross-checks of the combinatorial classifier.

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "pdfam/error.hpp"
#include "pdfam/filtration.hpp"
#include "pdfam/geometry.hpp"
#include "pdfam/union_find.hpp"

namespace pdfam {

enum class EdgeClass { Short, Medium, Long };

inline std::string_view to_string(EdgeClass c) noexcept {
  switch (c) {
    case EdgeClass::Short: return "Short";
    case EdgeClass::Medium: return "Medium";
    case EdgeClass::Long: return "Long";
  }
  return "?";
}

struct ClassifiedEdge {
  std::size_t simplex = 0;  // index into FilteredComplex::simplices()
  std::size_t p = 0;
  std::size_t q = 0;
  double value = 0.0;
  EdgeClass cls = EdgeClass::Medium;
};

namespace detail {

inline const FilteredSimplex& require_edge(const FilteredComplex& complex, std::size_t e) {
  if (e >= complex.simplices().size()) throw InvalidInput("edge index out of range");
  const auto& s = complex.simplices()[e];
  if (s.dim() != 1) throw InvalidInput("simplex is not an edge");
  return s;
}

inline bool long_test(const FilteredComplex& complex, const FilteredSimplex& e) {
  const std::size_t p = e.vertices[0], q = e.vertices[1];
  const auto& s = complex.simplices();
  for (std::size_t v = 0; v < complex.n_vertices(); ++v) {
    if (v == p || v == q) continue;
    const std::size_t t = complex.find_triangle(p, q, v);
    if (t == FilteredComplex::npos || !same_scale(s[t].value, e.value)) continue;
    const std::size_t pv = complex.find_edge(p, v);
    const std::size_t vq = complex.find_edge(v, q);
    if (pv == FilteredComplex::npos || vq == FilteredComplex::npos) continue;
    if (strictly_earlier(s[pv].value, e.value) && strictly_earlier(s[vq].value, e.value)) return true;
  }
  return false;
}

inline EdgeClass decide(bool is_short, bool is_long) {
  if (is_short && is_long)
    throw ConsistencyError("edge is both short and long; the filtration is inconsistent");
  if (is_short) return EdgeClass::Short;
  if (is_long) return EdgeClass::Long;
  return EdgeClass::Medium;
}

}  // namespace detail

/// Class of the edge stored at simplices()[e].
inline EdgeClass classify_edge(const FilteredComplex& complex, std::size_t e) {
  const auto& edge = detail::require_edge(complex, e);
  UnionFind uf(complex.n_vertices());
  const auto& s = complex.simplices();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == e || s[i].dim() != 1) continue;
    if (s[i].value <= edge.value || same_scale(s[i].value, edge.value)) uf.unite(s[i].vertices[0], s[i].vertices[1]);
  }
  const bool is_short = !uf.connected(edge.vertices[0], edge.vertices[1]);
  return detail::decide(is_short, detail::long_test(complex, edge));
}

/// Every edge in filtration order with its class; one union-find sweep over
/// the value levels.
inline std::vector<ClassifiedEdge> classify_all(const FilteredComplex& complex) {
  const auto& s = complex.simplices();
  const std::vector<std::size_t> edges = complex.of_dim(1);
  std::vector<ClassifiedEdge> out;
  out.reserve(edges.size());

  UnionFind base(complex.n_vertices());
  std::size_t begin = 0;
  while (begin < edges.size()) {
    std::size_t end = begin + 1;
    const double level = s[edges[begin]].value;
    while (end < edges.size() && same_scale(s[edges[end]].value, level)) ++end;

    for (std::size_t k = begin; k < end; ++k) {
      const auto& e = s[edges[k]];
      bool is_short;
      if (end - begin == 1) {
        is_short = !base.connected(e.vertices[0], e.vertices[1]);
      } else {
        UnionFind uf = base;
        for (std::size_t o = begin; o < end; ++o)
          if (o != k) uf.unite(s[edges[o]].vertices[0], s[edges[o]].vertices[1]);
        is_short = !uf.connected(e.vertices[0], e.vertices[1]);
      }
      const EdgeClass cls = detail::decide(is_short, detail::long_test(complex, e));
      out.push_back({edges[k], e.vertices[0], e.vertices[1], e.value, cls});
    }
    for (std::size_t k = begin; k < end; ++k) base.unite(s[edges[k]].vertices[0], s[edges[k]].vertices[1]);
    begin = end;
  }
  return out;
}

/// Look up the class of [p,q] in a classify_all result.
inline const ClassifiedEdge* find_class(const std::vector<ClassifiedEdge>& classes, std::size_t p, std::size_t q) {
  if (p > q) std::swap(p, q);
  for (const auto& c : classes)
    if (c.p == p && c.q == q) return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Geometric characterizations of long edges

/// VR: [p,q] is strictly longest (beyond the scale tolerance) in some triangle pqv.
inline bool long_by_vr(const PointCloud& cloud, std::size_t p, std::size_t q) {
  if (p == q) throw InvalidInput("edge endpoints must differ");
  const double d = distance(cloud[p], cloud[q]);
  for (std::size_t v = 0; v < cloud.size(); ++v) {
    if (v == p || v == q) continue;
    if (strictly_earlier(distance(cloud[p], cloud[v]), d) && strictly_earlier(distance(cloud[v], cloud[q]), d)) return true;
  }
  return false;
}

/// Cech: [p,q] strictly longest in pqv and the three balls of radius d(p,q)/2
/// meet (minimum enclosing radius at most d(p,q)/2).
inline bool long_by_cech(const PointCloud& cloud, std::size_t p, std::size_t q) {
  if (p == q) throw InvalidInput("edge endpoints must differ");
  const double d = distance(cloud[p], cloud[q]);
  for (std::size_t v = 0; v < cloud.size(); ++v) {
    if (v == p || v == q) continue;
    if (!strictly_earlier(distance(cloud[p], cloud[v]), d) || !strictly_earlier(distance(cloud[v], cloud[q]), d)) continue;
    if (!strictly_earlier(0.5 * d, enclosing_radius_3(cloud[p], cloud[q], cloud[v]))) return true;
  }
  return false;
}

/// Planar Delaunay: some point of the cloud sees [p,q] at a non-acute angle.
inline bool long_by_delaunay(const PointCloud& cloud, std::size_t p, std::size_t q) {
  if (p == q) throw InvalidInput("edge endpoints must differ");
  if (cloud.dim() != 2) throw InvalidInput("Delaunay implemented for the plane only");
  for (std::size_t v = 0; v < cloud.size(); ++v) {
    if (v == p || v == q) continue;
    if (non_acute_at(cloud[v], cloud[p], cloud[q])) return true;
  }
  return false;
}

inline bool long_by_geometry(const PointCloud& cloud, FiltrationKind kind, std::size_t p, std::size_t q) {
  switch (kind) {
    case FiltrationKind::VietorisRips: return long_by_vr(cloud, p, q);
    case FiltrationKind::Cech: return long_by_cech(cloud, p, q);
    case FiltrationKind::Delaunay2D: return long_by_delaunay(cloud, p, q);
  }
  return false;
}

}  // namespace pdfam
