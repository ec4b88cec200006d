#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "support.hpp"

using namespace pdfam;
using support::cloud;

namespace {

constexpr double pi = std::numbers::pi;

TailSpec spec(Point vertex, Point dir, std::size_t n, double cone, std::uint64_t seed, double smin = 1.0,
              double smax = 1.0) {
  return TailSpec{Ray(std::move(vertex), std::move(dir)), n, smin, smax, cone, seed};
}

PointCloud three_collinear() { return cloud({{0, 0}, {1, 0}, {2, 0}}); }

}  // namespace

TEST(GenerateTail, StaysInCone) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t dim = 2 + seed % 3;
    Point dir(dim, 0.0);
    dir[seed % dim] = seed % 2 ? -1.0 : 1.0;
    dir[(seed + 1) % dim] = 0.5;
    const auto s = spec(Point(dim, 0.25), dir, 3 + seed % 20, 0.05 * (seed % 15), seed, 0.5, 2.0);
    const auto t = generate_tail(s);
    ASSERT_EQ(t.size(), s.n);
    EXPECT_EQ(t.point(0), s.ray.vertex());
    EXPECT_LE(angular_deviation(t, s.ray), s.cone_half_angle + 1e-9);
    EXPECT_LE(angular_thickness(t, s.ray), s.cone_half_angle + 1e-9);
    // Projections onto the ray increase with gaps inside the spacing range.
    double last = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      const double proj = dot(subtract(t[i], s.ray.vertex()), s.ray.direction());
      EXPECT_GE(proj - last, 0.5 - 1e-12);
      EXPECT_LE(proj - last, 2.0 + 1e-12);
      last = proj;
    }
  }
}

TEST(GenerateTail, ZeroConeIsCollinear) {
  const auto s = spec({0, 0, 0}, {0, 0, 2}, 6, 0.0, 1);
  const auto t = generate_tail(s);
  EXPECT_EQ(angular_deviation(t, s.ray), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_DOUBLE_EQ(t[i][2], double(i));
}

TEST(GenerateTail, SinglePoint) {
  const auto t = generate_tail(spec({1, 2}, {1, 0}, 1, 0.3, 5));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(validate_tail(t, FiltrationKind::VietorisRips).ok);
}

TEST(GenerateTail, Deterministic) {
  const auto s = spec({0, 0}, {1, 1}, 12, 0.4, 99, 0.3, 1.7);
  EXPECT_EQ(generate_tail(s), generate_tail(s));
  auto other = s;
  other.seed = 100;
  EXPECT_NE(generate_tail(s), generate_tail(other));
}

TEST(GenerateTail, RejectsBadSpecs) {
  EXPECT_THROW(generate_tail(spec({0, 0}, {1, 0}, 5, pi / 4, 1)), InvalidInput);
  EXPECT_THROW(generate_tail(spec({0, 0}, {1, 0}, 5, -0.1, 1)), InvalidInput);
  EXPECT_THROW(generate_tail(spec({0, 0}, {1, 0}, 0, 0.1, 1)), InvalidInput);
  EXPECT_THROW(generate_tail(spec({0, 0}, {1, 0}, 5, 0.1, 1, 0.0, 1.0)), InvalidInput);
  EXPECT_THROW(generate_tail(spec({0, 0}, {1, 0}, 5, 0.1, 1, 2.0, 1.0)), InvalidInput);
}

TEST(ValidateTail, Example20In3d) {
  const auto t = generate_tail(spec({0, 0, 0}, {1, 0, 0}, 20, 0.2, 7));
  EXPECT_TRUE(validate_tail(t, FiltrationKind::VietorisRips).ok);
  EXPECT_TRUE(validate_tail(t, FiltrationKind::Cech).ok);
  EXPECT_TRUE(compute_pd(build_vr(t), 1).empty());
  EXPECT_TRUE(compute_pd(build_cech(t), 1).empty());
}

TEST(ValidateTail, CollinearEquidistant) {
  EXPECT_TRUE(validate_tail(cloud({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}), FiltrationKind::VietorisRips).ok);
}

TEST(ValidateTail, BentThreePointSequence) {
  // [p1,p3] (about 1.5) is strictly longer than both successive edges (1 and
  // about 0.92), and the angle at p2 is obtuse, so the sequence is still a
  // tail under VR and Cech.
  const auto t = cloud({{0, 0}, {1, 0}, {1.2, 0.9}});
  const auto v = validate_tail(t, FiltrationKind::VietorisRips);
  EXPECT_TRUE(v.ok);
  ASSERT_EQ(v.trace.size(), 3u);
  EXPECT_EQ(v.trace[1].cls, EdgeClass::Long);
  EXPECT_TRUE(validate_tail(t, FiltrationKind::Cech).ok);
}

TEST(ValidateTail, Failures) {
  // Equilateral: every edge medium.
  const auto v = validate_tail(support::equilateral(), FiltrationKind::VietorisRips);
  EXPECT_FALSE(v.ok);
  for (const auto& e : v.trace) EXPECT_EQ(e.cls, EdgeClass::Medium);
  // Doubling back: the skip edge is short.
  const auto back = validate_tail(cloud({{0, 0}, {2, 0}, {1, 0.2}}), FiltrationKind::VietorisRips);
  EXPECT_FALSE(back.ok);
  EXPECT_FALSE(back.trace[0].ok);
}

TEST(ValidateTail, DelaunayMissingPairsAllowed) {
  const auto t = generate_tail(spec({0, 0}, {1, 0}, 15, 0.3, 3));
  const auto v = validate_tail(t, FiltrationKind::Delaunay2D);
  EXPECT_TRUE(v.ok);
  for (const auto& e : v.trace) {
    if (e.successive) {
      EXPECT_TRUE(e.present);
    }
  }
}

TEST(AttachTail, SinglePointBaseIsVacuous) {
  const auto tail = generate_tail(spec({0, 0}, {1, 0}, 5, 0.3, 1));
  const auto att = attach_tail(cloud({{0, 0}}), 0, Ray({0, 0}, {1, 0}), tail);
  EXPECT_TRUE(std::isinf(att.report.mu));
  EXPECT_TRUE(att.report.hypothesis_holds);
  EXPECT_EQ(att.cloud, tail);
}

TEST(AttachTail, PointAlongRayViolates) {
  const auto base = cloud({{0, 0}, {5, 0}});
  const auto tail = generate_tail(spec({0, 0}, {1, 0}, 3, 0.1, 1));
  const auto att = attach_tail(base, 0, Ray({0, 0}, {1, 0}), tail);
  EXPECT_EQ(att.report.mu, 0.0);
  EXPECT_FALSE(att.report.hypothesis_holds);
  EXPECT_EQ(att.cloud.size(), base.size() + tail.size() - 1);
  EXPECT_THROW_MSG(verify_tail_theorem(base, 0, Ray({0, 0}, {1, 0}), tail, FiltrationKind::VietorisRips), HypothesisError,
                   "mu >= theta + pi/2 violated");
}

TEST(AttachTail, Errors) {
  const auto base = three_collinear();
  const auto tail = generate_tail(spec({2, 0}, {1, 0}, 3, 0.1, 1));
  EXPECT_THROW(attach_tail(base, 0, Ray({2, 0}, {1, 0}), tail), InvalidInput);
  EXPECT_THROW(attach_tail(base, 5, Ray({2, 0}, {1, 0}), tail), InvalidInput);
  EXPECT_THROW(attach_tail(base, 2, Ray({0, 0}, {1, 0}), tail), InvalidInput);
  // A tail running back into A.
  const auto back = cloud({{2, 0}, {1, 0}});
  EXPECT_THROW(attach_tail(base, 2, Ray({2, 0}, {-1, 0}), back), InvalidInput);
}

TEST(AttachTail, CrossAnglesAtLeastRightAngle) {
  Rng rng = derive_stream(601);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const auto base = oracle::random_cloud(rng, 6, 2 + t % 2);
    for (std::size_t v = 0; v < base.size(); ++v) {
      const Ray ray(base.point(v), outward_direction(base, v));
      const auto tail = generate_tail({ray, 6, 0.2, 0.5, 0.3, static_cast<std::uint64_t>(t)});
      const auto att = attach_tail(base, v, ray, tail);
      if (!att.report.hypothesis_holds) continue;
      ++checked;
      EXPECT_GE(att.report.min_cross_angle, pi / 2 - 1e-9);
      EXPECT_GE(att.report.min_cross_angle + 1e-12, att.report.mu - att.report.theta);
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(OutwardDirection, PointsAway) {
  const auto d = outward_direction(support::unit_square(), 2);
  EXPECT_NEAR(d[0], d[1], 1e-15);
  EXPECT_GT(d[0], 0);
  const auto lone = outward_direction(cloud({{1, 1}}), 0);
  EXPECT_EQ(lone, (Point{1, 0}));
}

TEST(LongWedge, TwoSquaresAtACorner) {
  const auto a = support::unit_square();
  const auto b = cloud({{0, 0}, {-1, 0}, {-1, -1}, {0, -1}});
  for (auto k : {FiltrationKind::VietorisRips, FiltrationKind::Cech, FiltrationKind::Delaunay2D}) {
    const auto w = verify_long_wedge({a, b}, k);
    EXPECT_TRUE(w.is_long_wedge) << to_string(k);
    EXPECT_TRUE(w.pd_union_ok);
    EXPECT_FALSE(w.union_violation);
    EXPECT_EQ(w.cloud.size(), 7u);
    ASSERT_EQ(w.union_pd.size(), 2u);
    for (const auto& p : w.union_pd.pairs) {
      EXPECT_EQ(p.birth, 0.5);
      EXPECT_NEAR(p.death, std::sqrt(2.0) / 2, 1e-15);
    }
  }
}

TEST(LongWedge, SingleComponent) {
  const auto w = verify_long_wedge({support::unit_square()}, FiltrationKind::VietorisRips);
  EXPECT_TRUE(w.is_long_wedge);
  EXPECT_TRUE(w.pd_union_ok);
  EXPECT_TRUE(diagram_equal(w.union_pd, compute_pd(build_vr(support::unit_square()), 1)));
}

TEST(LongWedge, SixtyDegreesIsNotLong) {
  const auto w = verify_long_wedge({cloud({{0, 0}, {1, 0}}), cloud({{0, 0}, {0.5, std::sqrt(3.0) / 2}})},
                                   FiltrationKind::VietorisRips);
  EXPECT_FALSE(w.is_long_wedge);
  ASSERT_EQ(w.offending_edges.size(), 1u);
  EXPECT_EQ(w.offending_edges[0], (std::pair<std::size_t, std::size_t>{1, 2}));
}

TEST(LongWedge, SharedPointErrors) {
  EXPECT_THROW(verify_long_wedge({cloud({{0, 0}, {1, 0}}), cloud({{5, 5}, {6, 5}})}, FiltrationKind::VietorisRips),
               InvalidInput);
  EXPECT_THROW(verify_long_wedge({cloud({{0, 0}, {1, 0}}), cloud({{0, 0}, {1, 0}})}, FiltrationKind::VietorisRips),
               InvalidInput);
  // Pairwise single intersections but no common point.
  EXPECT_THROW(verify_long_wedge({cloud({{0, 0}, {1, 0}}), cloud({{1, 0}, {2, 2}}), cloud({{2, 2}, {0, 0}})},
                                 FiltrationKind::VietorisRips),
               InvalidInput);
  EXPECT_THROW(verify_long_wedge({}, FiltrationKind::VietorisRips), InvalidInput);
}

TEST(TailTheorem, SquarePlusTail) {
  const auto base = support::unit_square();
  const Ray ray(base.point(2), outward_direction(base, 2));
  const auto tail = generate_tail({ray, 8, 0.5, 1.0, 0.3, 2});
  for (auto k : {FiltrationKind::VietorisRips, FiltrationKind::Cech, FiltrationKind::Delaunay2D}) {
    const auto rep = verify_tail_theorem(base, 2, ray, tail, k);
    EXPECT_NEAR(rep.attach.mu, 3 * pi / 4, 1e-12);
    EXPECT_TRUE(rep.wedge.is_long_wedge);
    EXPECT_TRUE(rep.tail_pd_empty);
    EXPECT_TRUE(rep.union_identity);
    EXPECT_TRUE(rep.equals_base);
    ASSERT_EQ(rep.union_pd.size(), 1u);
    EXPECT_EQ(rep.union_pd.pairs[0].birth, 0.5);
  }
}

TEST(TailTheorem, TrivialBaseStaysTrivial) {
  const auto base = three_collinear();
  const Ray ray({2, 0}, {1, 0.2});
  const auto tail = generate_tail({ray, 10, 0.3, 1.5, 0.4, 8});
  const auto rep = verify_tail_theorem(base, 2, ray, tail, FiltrationKind::VietorisRips);
  EXPECT_TRUE(rep.union_pd.empty());
  EXPECT_TRUE(rep.equals_base);
  EXPECT_TRUE(rep.equals_tail);
}

TEST(TailTheorem, TailOnATail) {
  const Ray first({0, 0}, {1, 0});
  const auto t1 = generate_tail({first, 7, 0.5, 1.0, 0.3, 4});
  const std::size_t end = t1.size() - 1;
  const Ray second(t1.point(end), {1, 1});
  const auto t2 = generate_tail({second, 6, 0.5, 1.0, 0.2, 5});
  const auto rep = verify_tail_theorem(t1, end, second, t2, FiltrationKind::VietorisRips);
  EXPECT_GE(rep.attach.mu, pi / 2 + rep.attach.theta - 1e-9);
  EXPECT_TRUE(rep.union_pd.empty());
}

TEST(Family, CollinearBaseTwoTails) {
  const auto base = three_collinear();
  std::vector<TailRequest> tails{{0, {-1, 0}, 6, 0.5, 1.0, 0.3}, {2, {1, 0}, 5, 0.5, 1.0, 0.3}};
  const auto fam = generate_trivial_family(base, tails, FiltrationKind::VietorisRips, 10, 42);
  ASSERT_EQ(fam.members.size(), 10u);
  for (const auto& m : fam.members) {
    EXPECT_TRUE(m.pd1_empty);
    EXPECT_TRUE(compute_pd(build_vr(m.cloud), 1).empty());
    EXPECT_EQ(m.cloud.size(), 3u + 5 + 4);
    EXPECT_EQ(m.attachments.size(), 2u);
  }
  EXPECT_TRUE(fam.pairwise_distinct);
  EXPECT_FALSE(same_distance_multiset(fam.members[0].cloud, fam.members[1].cloud));
}

TEST(Family, NoTailsGivesBase) {
  const auto fam = generate_trivial_family(three_collinear(), {}, FiltrationKind::VietorisRips, 10, 1);
  ASSERT_EQ(fam.members.size(), 1u);
  EXPECT_EQ(fam.members[0].cloud, three_collinear());
}

TEST(Family, Errors) {
  EXPECT_THROW(generate_trivial_family(support::unit_square(), {}, FiltrationKind::VietorisRips, 3, 1), InvalidInput);
  // A tail along the base line points into the base.
  std::vector<TailRequest> bad{{0, {1, 0}, 4, 0.5, 1.0, 0.1}};
  EXPECT_THROW(generate_trivial_family(three_collinear(), bad, FiltrationKind::VietorisRips, 2, 1), HypothesisError);
  std::vector<TailRequest> out_of_range{{9, {1, 0}, 4, 0.5, 1.0, 0.1}};
  EXPECT_THROW(generate_trivial_family(three_collinear(), out_of_range, FiltrationKind::VietorisRips, 2, 1), InvalidInput);
}

TEST(DistanceMultiset, IsometricCopiesMatch) {
  Rng rng = derive_stream(602);
  const auto pc = oracle::random_cloud(rng, 6, 3);
  EXPECT_TRUE(same_distance_multiset(pc, support::rigid_motion(pc, rng)));
  EXPECT_FALSE(same_distance_multiset(pc, oracle::random_cloud(rng, 6, 3)));
}

TEST(SampleCone, InsideCone) {
  Rng rng = derive_stream(603);
  const auto c = sample_cone({1, 1, 1}, {0, 0, 1}, 0.3, 20, 2.0, rng);
  ASSERT_EQ(c.size(), 21u);
  EXPECT_EQ(c.point(0), (Point{1, 1, 1}));
  const Ray r({1, 1, 1}, {0, 0, 1});
  EXPECT_LE(angular_thickness(c, r), 0.3 + 1e-12);
}
