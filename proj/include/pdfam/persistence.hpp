#pragma once

// 0- and 1-dimensional persistence of a filtered 2-skeleton by column
// reduction of the boundary matrix over Z/2, with clearing. Also: Euclidean
// minimum spanning tree, diagram equality under a tolerance, and gap-ratio
// statistics.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <tuple>
#include <vector>

#include "pdfam/error.hpp"
#include "pdfam/filtration.hpp"
#include "pdfam/geometry.hpp"
#include "pdfam/union_find.hpp"

namespace pdfam {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  double birth = 0.0;
  double death = kInfinity;

  bool finite() const noexcept { return std::isfinite(death); }
  double persistence() const noexcept { return death - birth; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
  friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
  int dim = 1;
  /// Sorted by (birth, death).
  std::vector<PersistencePair> pairs;
  /// Set when the complex was cut off by an explicit cap; infinite bars may
  /// then be artefacts of truncation.
  std::optional<double> truncation_scale;

  bool empty() const noexcept { return pairs.empty(); }
  std::size_t size() const noexcept { return pairs.size(); }

  std::vector<PersistencePair> finite_pairs() const {
    std::vector<PersistencePair> out;
    for (const auto& p : pairs)
      if (p.finite()) out.push_back(p);
    return out;
  }

  void normalize() { std::sort(pairs.begin(), pairs.end()); }
};

/// Multiset union of diagrams of the same dimension.
inline PersistenceDiagram diagram_union(const std::vector<PersistenceDiagram>& parts, int dim = 1) {
  PersistenceDiagram out;
  out.dim = dim;
  for (const auto& d : parts) {
    if (d.dim != dim) throw InvalidInput("diagram dimension mismatch");
    out.pairs.insert(out.pairs.end(), d.pairs.begin(), d.pairs.end());
  }
  out.normalize();
  return out;
}

struct DiagramPair {
  PersistenceDiagram dim0;
  PersistenceDiagram dim1;
};

namespace detail {

using Column = std::vector<std::size_t>;  // sorted ascending; pivot is back()

inline void add_column(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace detail

/// Both diagrams in one reduction pass.
inline DiagramPair compute_diagrams(const FilteredComplex& complex) {
  using detail::Column;
  const auto& simplices = complex.simplices();
  const std::size_t m = simplices.size();
  constexpr std::size_t none = FilteredComplex::npos;

  auto boundary = [&](std::size_t j) {
    const auto& s = simplices[j];
    Column col;
    for (std::size_t drop = 0; drop < s.size; ++drop) {
      std::array<std::size_t, 2> face{};
      std::size_t k = 0;
      for (std::size_t t = 0; t < s.size; ++t)
        if (t != drop) face[k++] = s.vertices[t];
      const std::size_t f = complex.find({face.data(), s.size - 1});
      if (f == none) throw InvalidInput("complex is not face-closed");
      if (f >= j) throw InvalidInput("complex is not monotone: a face enters after its coface");
      col.push_back(f);
    }
    std::sort(col.begin(), col.end());
    return col;
  };

  std::optional<double> trunc;
  if (complex.explicit_cap()) trunc = complex.max_scale();
  DiagramPair out;
  out.dim0.dim = 0;
  out.dim1.dim = 1;
  out.dim0.truncation_scale = trunc;
  out.dim1.truncation_scale = trunc;

  std::vector<std::size_t> pivot_owner(m, none);  // row -> reducing column
  std::vector<bool> cleared(m, false);
  std::vector<bool> paired(m, false);
  std::vector<Column> reduced(m);
  Column scratch;

  auto reduce = [&](std::size_t j) {
    Column col = boundary(j);
    while (!col.empty() && pivot_owner[col.back()] != none)
      detail::add_column(col, reduced[pivot_owner[col.back()]], scratch);
    if (!col.empty()) pivot_owner[col.back()] = j;
    reduced[j] = std::move(col);
  };

  // Triangles first: every edge that is a pivot there is positive, so its own
  // column would reduce to zero and is skipped below.
  for (std::size_t j = 0; j < m; ++j) {
    if (simplices[j].dim() != 2) continue;
    reduce(j);
    if (!reduced[j].empty()) {
      const std::size_t e = reduced[j].back();
      cleared[e] = paired[e] = paired[j] = true;
      const double b = simplices[e].value, d = simplices[j].value;
      if (d > b) out.dim1.pairs.push_back({b, d});
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (simplices[j].dim() != 1 || cleared[j]) continue;
    reduce(j);
    if (!reduced[j].empty()) {
      const std::size_t v = reduced[j].back();
      paired[v] = paired[j] = true;
      const double b = simplices[v].value, d = simplices[j].value;
      if (d > b) out.dim0.pairs.push_back({b, d});
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (paired[j]) continue;
    const auto dim = simplices[j].dim();
    if (dim == 0) out.dim0.pairs.push_back({simplices[j].value, kInfinity});
    if (dim == 1 && reduced[j].empty()) out.dim1.pairs.push_back({simplices[j].value, kInfinity});
  }
  out.dim0.normalize();
  out.dim1.normalize();
  return out;
}

inline PersistenceDiagram compute_pd(const FilteredComplex& complex, int dim) {
  if (dim != 0 && dim != 1) throw InvalidInput("only dimensions 0 and 1 are supported");
  auto both = compute_diagrams(complex);
  return dim == 0 ? std::move(both.dim0) : std::move(both.dim1);
}

// ---------------------------------------------------------------------------

struct MstEdge {
  std::size_t p = 0;
  std::size_t q = 0;
  double length = 0.0;
  friend bool operator==(const MstEdge&, const MstEdge&) = default;
};

/// Euclidean minimum spanning tree by Kruskal; ties broken by (p, q).
inline std::vector<MstEdge> mst(const PointCloud& cloud) {
  if (cloud.size() == 0) throw InvalidInput("empty point cloud");
  std::vector<MstEdge> edges;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j) edges.push_back({i, j, distance(cloud[i], cloud[j])});
  std::sort(edges.begin(), edges.end(), [](const MstEdge& a, const MstEdge& b) {
    return std::tie(a.length, a.p, a.q) < std::tie(b.length, b.p, b.q);
  });
  UnionFind uf(cloud.size());
  std::vector<MstEdge> tree;
  for (const auto& e : edges) {
    if (uf.unite(e.p, e.q)) tree.push_back(e);
    if (tree.size() + 1 == cloud.size()) break;
  }
  return tree;
}

// ---------------------------------------------------------------------------

namespace detail {

/// Maximum bipartite matching (Kuhn). adj[l] lists right vertices.
inline std::size_t max_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t n_right) {
  std::vector<std::size_t> match_right(n_right, FilteredComplex::npos);
  std::vector<char> seen;
  std::size_t matched = 0;
  auto try_augment = [&](auto&& self, std::size_t l) -> bool {
    for (std::size_t r : adj[l]) {
      if (seen[r]) continue;
      seen[r] = 1;
      if (match_right[r] == FilteredComplex::npos || self(self, match_right[r])) {
        match_right[r] = l;
        return true;
      }
    }
    return false;
  };
  for (std::size_t l = 0; l < adj.size(); ++l) {
    seen.assign(n_right, 0);
    if (try_augment(try_augment, l)) ++matched;
  }
  return matched;
}

inline double linf(const PersistencePair& a, const PersistencePair& b) {
  const double db = std::abs(a.birth - b.birth);
  double dd;
  if (a.finite() && b.finite()) dd = std::abs(a.death - b.death);
  else if (!a.finite() && !b.finite()) dd = 0.0;
  else dd = kInfinity;
  return std::max(db, dd);
}

}  // namespace detail

/// True iff the two diagrams can be matched point to point (no diagonal)
/// with every matched pair within `tol` in the L-infinity metric.
inline bool diagram_equal(const PersistenceDiagram& a, const PersistenceDiagram& b, double tol = 0.0) {
  if (a.dim != b.dim || a.size() != b.size()) return false;
  auto sa = a.pairs, sb = b.pairs;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  bool direct = true;
  for (std::size_t i = 0; i < sa.size() && direct; ++i)
    if (!(detail::linf(sa[i], sb[i]) <= tol)) direct = false;
  if (direct) return true;

  std::vector<std::vector<std::size_t>> adj(sa.size());
  for (std::size_t i = 0; i < sa.size(); ++i)
    for (std::size_t j = 0; j < sb.size(); ++j)
      if (detail::linf(sa[i], sb[j]) <= tol) adj[i].push_back(j);
  return detail::max_matching(adj, sb.size()) == sa.size();
}

// ---------------------------------------------------------------------------

struct GapStats {
  double gap1 = 0.0;
  double gap2 = 0.0;
  double ratio = 1.0;
  std::vector<double> persistences;  // ascending
};

/// Widest and second-widest gaps between consecutive sorted persistences of
/// the finite pairs, and their ratio (+inf when the second gap is zero).
inline GapStats gap_stats(const PersistenceDiagram& d) {
  if (d.dim != 1) throw InvalidInput("gap ratio is defined for 1-dimensional diagrams");
  GapStats g;
  for (const auto& p : d.pairs)
    if (p.finite()) g.persistences.push_back(p.persistence());
  if (g.persistences.size() < 2) throw InvalidInput("gap ratio undefined");
  if (g.persistences.size() < 3) throw InvalidInput("second gap undefined");
  std::sort(g.persistences.begin(), g.persistences.end());
  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < g.persistences.size(); ++i)
    gaps.push_back(g.persistences[i + 1] - g.persistences[i]);
  std::sort(gaps.begin(), gaps.end(), std::greater<>());
  g.gap1 = gaps[0];
  g.gap2 = gaps[1];
  g.ratio = g.gap2 > 0.0 ? g.gap1 / g.gap2 : kInfinity;
  return g;
}

}  // namespace pdfam
