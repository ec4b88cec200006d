#pragma once

// Point sets with identical or trivial 1D persistence.
//
// A tail is a point sequence p_1..p_n whose successive edges are short and
// whose other edges are long in a filtration; any sequence lying within
// angular deviation < pi/4 of a ray from p_1 is one. Attaching a tail at a
// point v of a set A along a ray R with mu(R;A) >= theta(T;R) + pi/2 makes
// A u T a long wedge (every edge between A - v and T - v is long), and the
// 1D diagram of a long wedge is the multiset union of its parts' diagrams.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pdfam/classify.hpp"
#include "pdfam/error.hpp"
#include "pdfam/filtration.hpp"
#include "pdfam/geometry.hpp"
#include "pdfam/persistence.hpp"
#include "pdfam/random.hpp"

namespace pdfam {

/// Tolerance for comparing diagrams in the verification reports.
inline constexpr double kDiagramTolerance = 1e-9;

struct TailSpec {
  Ray ray;
  std::size_t n = 1;
  double spacing_min = 1.0;
  double spacing_max = 1.0;
  /// Bound on both the angular deviation and the angular thickness; < pi/4.
  double cone_half_angle = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw InvalidInput("tail needs at least one point");
    if (!(spacing_min > 0.0) || !(spacing_max >= spacing_min) || !std::isfinite(spacing_max))
      throw InvalidInput("tail spacing must satisfy 0 < spacing_min <= spacing_max");
    if (!(cone_half_angle >= 0.0) || !(cone_half_angle < std::numbers::pi / 4))
      throw InvalidInput("cone half-angle must lie in [0, pi/4)");
  }
};

/// Sequence starting at the ray vertex with strictly increasing projections
/// onto the ray. Point i is offset from the ray by at most
/// tan(cone)/2 * (smaller gap to its neighbours), so every segment makes an
/// angle of at most `cone` with the ray. The bound is re-checked before
/// returning.
inline PointCloud generate_tail(const TailSpec& spec) {
  spec.validate();
  const std::size_t dim = spec.ray.dim();
  Rng rng = derive_stream(spec.seed, {0x7461696cULL});  // "tail"

  std::vector<double> gaps(spec.n > 1 ? spec.n - 1 : 0);
  for (double& g : gaps) g = uniform(rng, spec.spacing_min, spec.spacing_max);

  PointCloud tail;
  tail.push_back(spec.ray.vertex());
  double s = 0.0;
  const double slope = std::tan(spec.cone_half_angle);
  for (std::size_t i = 1; i < spec.n; ++i) {
    s += gaps[i - 1];
    Point p = spec.ray.at(s);
    const double neighbour_gap = i + 1 < spec.n ? std::min(gaps[i - 1], gaps[i]) : gaps[i - 1];
    const double radius = 0.5 * slope * neighbour_gap;
    if (dim >= 2 && radius > 0.0) {
      const Point u = random_orthogonal_unit(rng, spec.ray.direction());
      const double r = radius * uniform01(rng);
      for (std::size_t k = 0; k < dim; ++k) p[k] += r * u[k];
    }
    tail.push_back(p);
  }

  if (spec.n >= 2) {
    const double omega = angular_deviation(tail, spec.ray);
    const double theta = angular_thickness(tail, spec.ray);
    if (!(omega < std::numbers::pi / 4) || omega > spec.cone_half_angle + kAngleTolerance ||
        theta > spec.cone_half_angle + kAngleTolerance)
      throw ConsistencyError("generated tail leaves its cone (omega=" + std::to_string(omega) +
                             ", theta=" + std::to_string(theta) + ")");
  }
  return tail;
}

struct TailEdgeTrace {
  std::size_t i = 0;
  std::size_t j = 0;
  bool successive = false;
  bool present = false;  // in the complex at all (Delaunay omits some pairs)
  EdgeClass cls = EdgeClass::Medium;
  bool ok = false;
};

struct TailValidation {
  bool ok = true;
  std::vector<TailEdgeTrace> trace;
};

/// Successive edges must be short and every other edge of the complex long.
/// Pairs absent from the complex (non-Delaunay pairs) do not count against
/// the sequence.
inline TailValidation validate_tail(const PointCloud& tail, FiltrationKind kind) {
  TailValidation out;
  if (tail.size() <= 1) return out;
  const FilteredComplex complex = build_filtration(tail, kind);
  const auto classes = classify_all(complex);
  for (std::size_t i = 0; i < tail.size(); ++i)
    for (std::size_t j = i + 1; j < tail.size(); ++j) {
      TailEdgeTrace t{i, j, j == i + 1, false, EdgeClass::Medium, false};
      if (const auto* c = find_class(classes, i, j)) {
        t.present = true;
        t.cls = c->cls;
        t.ok = t.successive ? c->cls == EdgeClass::Short : c->cls == EdgeClass::Long;
      } else {
        t.ok = !t.successive;
      }
      out.ok = out.ok && t.ok;
      out.trace.push_back(t);
    }
  return out;
}

// ---------------------------------------------------------------------------

struct AttachReport {
  double mu = kInfinity;
  double theta = 0.0;
  bool hypothesis_holds = false;
  /// Smallest angle at v between A - v and T - v (>= pi/2 under the hypothesis).
  double min_cross_angle = kInfinity;
};

struct AttachResult {
  PointCloud cloud;  // A followed by T[1..]
  AttachReport report;
};

/// A u T with the shared vertex A[v] = T[0] kept once. The union is built
/// whether or not mu >= theta + pi/2; the report says which.
inline AttachResult attach_tail(const PointCloud& base, std::size_t v, const Ray& ray, const PointCloud& tail) {
  if (v >= base.size()) throw InvalidInput("vertex index out of range");
  if (tail.size() == 0) throw InvalidInput("empty tail");
  if (tail.dim() != base.dim() || ray.dim() != base.dim()) throw InvalidInput("dimension mismatch");
  if (!coincident(tail[0], base[v])) throw InvalidInput("tail vertex must equal A[v]");
  if (!coincident(ray.vertex(), base[v])) throw InvalidInput("ray vertex must equal A[v]");

  AttachResult out;
  out.cloud = base;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    for (std::size_t a = 0; a < base.size(); ++a)
      if (coincident(tail[i], base[a])) throw InvalidInput("tail point coincides with a point of A");
    out.cloud.push_back(tail[i]);
  }

  auto& r = out.report;
  r.mu = min_ray_angle(base, v, ray);
  r.theta = tail.size() >= 2 ? angular_thickness(tail, ray) : 0.0;
  r.hypothesis_holds = r.mu >= r.theta + std::numbers::pi / 2 - kAngleTolerance;
  for (std::size_t a = 0; a < base.size(); ++a) {
    if (a == v) continue;
    for (std::size_t i = 1; i < tail.size(); ++i)
      r.min_cross_angle = std::min(r.min_cross_angle, vector_angle(subtract(base[a], base[v]), subtract(tail[i], base[v])));
  }
  return out;
}

/// Direction at A[v] pointing away from the rest of A: the negated sum of
/// unit vectors towards the other points (any unit vector if that vanishes).
inline Point outward_direction(const PointCloud& cloud, std::size_t v) {
  Point sum(cloud.dim(), 0.0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (i == v) continue;
    Point d = subtract(cloud[i], cloud[v]);
    const double n = norm(d);
    if (n <= kCoincidenceTolerance) continue;
    for (std::size_t k = 0; k < d.size(); ++k) sum[k] -= d[k] / n;
  }
  if (norm(sum) <= 1e-12) {
    sum.assign(cloud.dim(), 0.0);
    sum[0] = 1.0;
  }
  return sum;
}

// ---------------------------------------------------------------------------

struct WedgeReport {
  bool is_long_wedge = true;
  /// Cross edges (indices into `cloud`) present in the complex but not long.
  std::vector<std::pair<std::size_t, std::size_t>> offending_edges;
  std::size_t absent_cross_edges = 0;
  bool pd_union_ok = false;
  /// Long wedge whose diagram is not the union of its parts' diagrams.
  bool union_violation = false;
  PointCloud cloud;
  std::vector<std::size_t> owner;  // component of each union point; shared point -> npos
  PersistenceDiagram union_pd;
  std::vector<PersistenceDiagram> component_pds;
};

/// Checks that every edge between different components is long in the
/// filtration of the union, and compares PD1 of the union with the multiset
/// union of the components' PD1.
inline WedgeReport verify_long_wedge(const std::vector<PointCloud>& components, FiltrationKind kind) {
  if (components.empty()) throw InvalidInput("wedge needs at least one component");
  const std::size_t dim = components.front().dim();
  for (const auto& c : components) {
    if (c.size() == 0) throw InvalidInput("empty wedge component");
    if (c.dim() != dim) throw InvalidInput("dimension mismatch between wedge components");
  }

  // The shared point: the unique point common to every pair of components.
  std::size_t shared = FilteredComplex::npos;  // index in components[0]
  if (components.size() > 1) {
    for (std::size_t i = 0; i < components.size(); ++i)
      for (std::size_t j = i + 1; j < components.size(); ++j) {
        std::size_t common = 0;
        for (std::size_t a = 0; a < components[i].size(); ++a)
          for (std::size_t b = 0; b < components[j].size(); ++b)
            if (coincident(components[i][a], components[j][b])) ++common;
        if (common != 1) throw InvalidInput("wedge components must share exactly one point");
      }
    for (std::size_t a = 0; a < components[0].size() && shared == FilteredComplex::npos; ++a) {
      bool everywhere = true;
      for (std::size_t c = 1; c < components.size() && everywhere; ++c) {
        bool found = false;
        for (std::size_t b = 0; b < components[c].size(); ++b) found = found || coincident(components[0][a], components[c][b]);
        everywhere = found;
      }
      if (everywhere) shared = a;
    }
    if (shared == FilteredComplex::npos) throw InvalidInput("wedge components must share exactly one point");
  }

  WedgeReport rep;
  for (std::size_t a = 0; a < components[0].size(); ++a) {
    rep.cloud.push_back(components[0][a]);
    rep.owner.push_back(a == shared ? FilteredComplex::npos : 0);
  }
  for (std::size_t c = 1; c < components.size(); ++c)
    for (std::size_t b = 0; b < components[c].size(); ++b) {
      if (coincident(components[c][b], components[0][shared])) continue;
      rep.cloud.push_back(components[c][b]);
      rep.owner.push_back(c);
    }

  const FilteredComplex complex = build_filtration(rep.cloud, kind);
  const auto classes = classify_all(complex);
  for (std::size_t i = 0; i < rep.cloud.size(); ++i)
    for (std::size_t j = i + 1; j < rep.cloud.size(); ++j) {
      if (rep.owner[i] == FilteredComplex::npos || rep.owner[j] == FilteredComplex::npos) continue;
      if (rep.owner[i] == rep.owner[j]) continue;
      const auto* c = find_class(classes, i, j);
      if (!c) {
        ++rep.absent_cross_edges;
        continue;
      }
      if (c->cls != EdgeClass::Long) rep.offending_edges.emplace_back(i, j);
    }
  rep.is_long_wedge = rep.offending_edges.empty();

  rep.union_pd = compute_pd(complex, 1);
  for (const auto& c : components) rep.component_pds.push_back(compute_pd(build_filtration(c, kind), 1));
  rep.pd_union_ok = diagram_equal(rep.union_pd, diagram_union(rep.component_pds), kDiagramTolerance);
  rep.union_violation = rep.is_long_wedge && !rep.pd_union_ok;
  return rep;
}

// ---------------------------------------------------------------------------

struct TailTheoremReport {
  AttachReport attach;
  WedgeReport wedge;          // components {A, T}
  bool tail_pd_empty = false;   // PD1(T) is empty
  bool union_identity = false;  // PD1(A u T) = PD1(A) u PD1(T)
  bool equals_base = false;     // PD1(A u T) = PD1(A)
  bool equals_tail = false;     // PD1(A u T) = PD1(T)
  PersistenceDiagram union_pd, base_pd, tail_pd;
};

/// Attaches T at A[v] and checks the diagram identities implied by the tail
/// being a tail and A u T being a long wedge. Throws HypothesisError unless
/// mu >= theta + pi/2.
inline TailTheoremReport verify_tail_theorem(const PointCloud& base, std::size_t v, const Ray& ray,
                                             const PointCloud& tail, FiltrationKind kind) {
  const AttachResult att = attach_tail(base, v, ray, tail);
  if (!att.report.hypothesis_holds) throw HypothesisError("mu >= theta + pi/2 violated");

  TailTheoremReport rep;
  rep.attach = att.report;
  rep.wedge = verify_long_wedge(tail.size() > 1 ? std::vector<PointCloud>{base, tail} : std::vector<PointCloud>{base}, kind);
  rep.union_pd = rep.wedge.union_pd;
  rep.base_pd = compute_pd(build_filtration(base, kind), 1);
  rep.tail_pd = compute_pd(build_filtration(tail, kind), 1);
  rep.tail_pd_empty = rep.tail_pd.empty();
  rep.union_identity = diagram_equal(rep.union_pd, diagram_union({rep.base_pd, rep.tail_pd}), kDiagramTolerance);
  rep.equals_base = diagram_equal(rep.union_pd, rep.base_pd, kDiagramTolerance);
  rep.equals_tail = diagram_equal(rep.union_pd, rep.tail_pd, kDiagramTolerance);
  return rep;
}

// ---------------------------------------------------------------------------

struct TailRequest {
  std::size_t vertex = 0;  // index into the base set
  Point direction;
  std::size_t n = 5;
  double spacing_min = 1.0;
  double spacing_max = 1.0;
  double cone_half_angle = 0.0;
};

struct FamilyMember {
  PointCloud cloud;
  std::vector<AttachReport> attachments;
  bool pd1_empty = false;
};

struct FamilyResult {
  std::vector<FamilyMember> members;
  /// No two members share a sorted pairwise-distance multiset (so no two are
  /// isometric).
  bool pairwise_distinct = true;
};

inline std::vector<double> sorted_distances(const PointCloud& cloud) {
  std::vector<double> d;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j) d.push_back(distance(cloud[i], cloud[j]));
  std::sort(d.begin(), d.end());
  return d;
}

inline bool same_distance_multiset(const PointCloud& a, const PointCloud& b, double tol = 1e-9) {
  const auto da = sorted_distances(a), db = sorted_distances(b);
  if (da.size() != db.size()) return false;
  for (std::size_t i = 0; i < da.size(); ++i)
    if (std::abs(da[i] - db[i]) > tol) return false;
  return true;
}

/// Variants of `base` extended by tails attached one after another, each
/// tail checked against everything attached before it. Variant k draws its
/// tails from streams derived from (seed, k, tail index).
inline FamilyResult generate_trivial_family(const PointCloud& base, const std::vector<TailRequest>& tails,
                                            FiltrationKind kind, std::size_t variants, std::uint64_t seed) {
  if (!compute_pd(build_filtration(base, kind), 1).empty())
    throw InvalidInput("base set must have an empty 1D persistence diagram");

  FamilyResult out;
  if (tails.empty()) {
    out.members.push_back({base, {}, true});
    return out;
  }
  for (std::size_t k = 0; k < variants; ++k) {
    FamilyMember m;
    m.cloud = base;
    for (std::size_t t = 0; t < tails.size(); ++t) {
      const auto& req = tails[t];
      if (req.vertex >= base.size()) throw InvalidInput("tail " + std::to_string(t) + ": vertex out of range");
      TailSpec spec{Ray(base.point(req.vertex), req.direction), req.n, req.spacing_min, req.spacing_max,
                    req.cone_half_angle, derive_stream(seed, {k, t})()};
      const PointCloud tail = generate_tail(spec);
      AttachResult att = attach_tail(m.cloud, req.vertex, spec.ray, tail);
      if (!att.report.hypothesis_holds)
        throw HypothesisError("tail " + std::to_string(t) + ": mu >= theta + pi/2 violated (mu=" +
                              std::to_string(att.report.mu) + ", theta=" + std::to_string(att.report.theta) + ")");
      m.attachments.push_back(att.report);
      m.cloud = std::move(att.cloud);
    }
    m.pd1_empty = compute_pd(build_filtration(m.cloud, kind), 1).empty();
    out.members.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < out.members.size(); ++i)
    for (std::size_t j = i + 1; j < out.members.size(); ++j)
      if (same_distance_multiset(out.members[i].cloud, out.members[j].cloud)) out.pairwise_distinct = false;
  return out;
}

// ---------------------------------------------------------------------------

/// n random points p = v + r*u with u within `half_angle` of `direction` and
/// r uniform in [0.2, 1] * radius; v itself is included first.
inline PointCloud sample_cone(const Point& vertex, const Point& direction, double half_angle, std::size_t n,
                              double radius, Rng& rng) {
  const Ray axis(vertex, direction);
  PointCloud out;
  out.push_back(vertex);
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = half_angle * uniform01(rng);
    const double r = radius * uniform(rng, 0.2, 1.0);
    Point p = vertex;
    if (vertex.size() >= 2) {
      const Point u = random_orthogonal_unit(rng, axis.direction());
      for (std::size_t k = 0; k < p.size(); ++k)
        p[k] += r * (std::cos(phi) * axis.direction()[k] + std::sin(phi) * u[k]);
    } else {
      p[0] += r * axis.direction()[0];
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace pdfam
