#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracle.hpp"
#include "support.hpp"

using namespace pdfam;
using support::cloud;

namespace {

EdgeClass class_of(const std::vector<ClassifiedEdge>& cls, std::size_t p, std::size_t q) {
  const auto* c = find_class(cls, p, q);
  if (!c) throw std::logic_error("edge not present");
  return c->cls;
}

/// Literal reading of the three definitions, one edge at a time, with exact
/// comparisons; used on clouds without value ties.
EdgeClass brute_class(const FilteredComplex& c, std::size_t e) {
  const auto& s = c.simplices();
  const auto& edge = s[e];
  UnionFind uf(c.n_vertices());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != e && s[i].dim() == 1 && s[i].value <= edge.value) uf.unite(s[i].vertices[0], s[i].vertices[1]);
  if (!uf.connected(edge.vertices[0], edge.vertices[1])) return EdgeClass::Short;
  for (std::size_t t : c.of_dim(2)) {
    const auto& tri = s[t];
    if (tri.value != edge.value) continue;
    auto v = tri.verts();
    if (std::find(v.begin(), v.end(), edge.vertices[0]) == v.end() ||
        std::find(v.begin(), v.end(), edge.vertices[1]) == v.end())
      continue;
    std::size_t w = 0;
    for (std::size_t x : v)
      if (x != edge.vertices[0] && x != edge.vertices[1]) w = x;
    if (s[c.find_edge(edge.vertices[0], w)].value < edge.value && s[c.find_edge(edge.vertices[1], w)].value < edge.value)
      return EdgeClass::Long;
  }
  return EdgeClass::Medium;
}

}  // namespace

TEST(Classify, Triangle345) {
  const auto pc = support::triangle_345();
  const auto cls = classify_all(build_vr(pc));
  EXPECT_EQ(class_of(cls, 0, 1), EdgeClass::Short);
  EXPECT_EQ(class_of(cls, 0, 2), EdgeClass::Short);
  EXPECT_EQ(class_of(cls, 1, 2), EdgeClass::Long);
  EXPECT_TRUE(long_by_vr(pc, 1, 2));
  EXPECT_TRUE(long_by_cech(pc, 1, 2));
  EXPECT_FALSE(long_by_vr(pc, 0, 1));
}

TEST(Classify, UnitSquareAllKinds) {
  const auto pc = support::unit_square();
  for (auto k : {FiltrationKind::VietorisRips, FiltrationKind::Cech, FiltrationKind::Delaunay2D}) {
    const auto cls = classify_all(build_filtration(pc, k));
    for (auto [p, q] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) EXPECT_EQ(class_of(cls, p, q), EdgeClass::Medium);
    EXPECT_EQ(class_of(cls, 0, 2), EdgeClass::Long);
    if (k != FiltrationKind::Delaunay2D) {
      EXPECT_EQ(class_of(cls, 1, 3), EdgeClass::Long);
    }
  }
  EXPECT_TRUE(long_by_vr(pc, 0, 2));
  EXPECT_TRUE(long_by_cech(pc, 0, 2));
  EXPECT_TRUE(long_by_delaunay(pc, 0, 2));
}

TEST(Classify, IsoscelesWithShortBase) {
  // |e1| = 1 < |e2| = |e3| = 2.
  const double h = std::sqrt(4 - 0.25);
  const auto cls = classify_all(build_vr(cloud({{0, 0}, {1, 0}, {0.5, h}})));
  EXPECT_EQ(class_of(cls, 0, 1), EdgeClass::Short);
  EXPECT_EQ(class_of(cls, 0, 2), EdgeClass::Medium);
  EXPECT_EQ(class_of(cls, 1, 2), EdgeClass::Medium);
}

TEST(Classify, Equilateral) {
  const auto pc = support::equilateral();
  for (const auto& c : classify_all(build_vr(pc))) EXPECT_EQ(c.cls, EdgeClass::Medium);
  for (auto [p, q] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {0, 2}}) {
    EXPECT_FALSE(long_by_vr(pc, p, q));
    EXPECT_FALSE(long_by_delaunay(pc, p, q));
  }
}

TEST(Classify, Rectangle1x2) {
  const auto cls = classify_all(build_vr(cloud({{0, 0}, {1, 0}, {0, 2}, {1, 2}})));
  EXPECT_EQ(class_of(cls, 0, 1), EdgeClass::Short);
  EXPECT_EQ(class_of(cls, 2, 3), EdgeClass::Short);
  EXPECT_EQ(class_of(cls, 0, 2), EdgeClass::Medium);
  EXPECT_EQ(class_of(cls, 1, 3), EdgeClass::Medium);
  EXPECT_EQ(class_of(cls, 0, 3), EdgeClass::Long);
  EXPECT_EQ(class_of(cls, 1, 2), EdgeClass::Long);
}

TEST(Classify, TwoPoints) {
  const auto cls = classify_all(build_vr(cloud({{0, 0}, {1, 1}})));
  ASSERT_EQ(cls.size(), 1u);
  EXPECT_EQ(cls[0].cls, EdgeClass::Short);
}

TEST(Classify, CollinearEquidistant) {
  const auto cls = classify_all(build_vr(cloud({{0}, {1}, {2}, {3}})));
  ASSERT_EQ(cls.size(), 6u);
  for (const auto& c : cls) EXPECT_EQ(c.cls, c.q - c.p == 1 ? EdgeClass::Short : EdgeClass::Long);
}

TEST(Classify, CechObtuseVersusAcute) {
  // Sides 5, 5, 6: acute opposite the longest side.
  const auto pc = cloud({{0, 0}, {6, 0}, {3, 4}});
  EXPECT_TRUE(long_by_vr(pc, 0, 1));
  EXPECT_FALSE(long_by_cech(pc, 0, 1));
  EXPECT_NEAR(enclosing_radius_3(pc[0], pc[1], pc[2]), 25.0 / 8, 1e-12);
  EXPECT_EQ(class_of(classify_all(build_cech(pc)), 0, 1), EdgeClass::Medium);
  EXPECT_EQ(class_of(classify_all(build_vr(pc)), 0, 1), EdgeClass::Long);
}

TEST(Classify, SingleEdgeMatchesSweep) {
  const auto c = build_vr(cloud({{0, 0}, {1, 0}, {0, 2}, {1, 2}, {0.5, 3}}));
  for (const auto& ce : classify_all(c)) EXPECT_EQ(classify_edge(c, ce.simplex), ce.cls);
  EXPECT_THROW(classify_edge(c, 0), InvalidInput);  // a vertex
  EXPECT_THROW(classify_edge(c, c.simplices().size()), InvalidInput);
}

TEST(Classify, GeometricPredicateErrors) {
  const auto pc = support::unit_square();
  EXPECT_THROW(long_by_vr(pc, 1, 1), InvalidInput);
  EXPECT_THROW(long_by_delaunay(cloud({{0, 0, 0}, {1, 0, 0}}), 0, 1), InvalidInput);
}

TEST(Classify, AgreesWithLiteralDefinitionAndPredicates) {
  Rng rng = derive_stream(301);
  for (int t = 0; t < 60; ++t) {
    const std::size_t dim = t % 3 == 0 ? 3 : 2;
    const auto pc = oracle::random_cloud(rng, 4 + t % 9, dim);
    for (auto k : {FiltrationKind::VietorisRips, FiltrationKind::Cech, FiltrationKind::Delaunay2D}) {
      if (k == FiltrationKind::Delaunay2D && dim != 2) continue;
      const auto c = build_filtration(pc, k);
      for (const auto& ce : classify_all(c)) {
        EXPECT_EQ(ce.cls, brute_class(c, ce.simplex));
        EXPECT_EQ(ce.cls == EdgeClass::Long, long_by_geometry(pc, k, ce.p, ce.q)) << to_string(k);
      }
    }
  }
}

TEST(Classify, ShortEdgesAreTheMst) {
  Rng rng = derive_stream(302);
  for (int t = 0; t < 50; ++t) {
    const auto pc = oracle::random_cloud(rng, 3 + t % 10, 2 + t % 3);
    std::set<std::pair<std::size_t, std::size_t>> shorts, tree;
    for (const auto& c : classify_all(build_vr(pc)))
      if (c.cls == EdgeClass::Short) shorts.insert({c.p, c.q});
    for (const auto& e : mst(pc)) tree.insert({std::min(e.p, e.q), std::max(e.p, e.q)});
    EXPECT_EQ(shorts, tree);
  }
}

TEST(Classify, EdgeClassNames) {
  EXPECT_EQ(to_string(EdgeClass::Short), "Short");
  EXPECT_EQ(to_string(EdgeClass::Medium), "Medium");
  EXPECT_EQ(to_string(EdgeClass::Long), "Long");
}
