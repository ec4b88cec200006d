#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "pdfam/pdfam.hpp"

namespace support {

inline pdfam::PointCloud cloud(std::initializer_list<pdfam::Point> rows) {
  return pdfam::PointCloud::from_rows(std::vector<pdfam::Point>(rows));
}

inline pdfam::PointCloud unit_square() { return cloud({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
inline pdfam::PointCloud equilateral() { return cloud({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}); }
inline pdfam::PointCloud triangle_345() { return cloud({{0, 0}, {3, 0}, {0, 4}}); }

/// Random rotation (Gram-Schmidt on Gaussian columns) followed by a translation.
inline pdfam::PointCloud rigid_motion(const pdfam::PointCloud& c, pdfam::Rng& rng) {
  const std::size_t d = c.dim();
  std::vector<pdfam::Point> basis;
  while (basis.size() < d) {
    pdfam::Point g(d);
    for (double& x : g) x = pdfam::standard_normal(rng);
    for (const auto& b : basis) {
      const double a = pdfam::dot(g, b);
      for (std::size_t k = 0; k < d; ++k) g[k] -= a * b[k];
    }
    const double n = pdfam::norm(g);
    if (n < 1e-6) continue;
    for (double& x : g) x /= n;
    basis.push_back(g);
  }
  pdfam::Point shift(d);
  for (double& x : shift) x = pdfam::uniform(rng, -5, 5);
  std::vector<pdfam::Point> rows;
  for (std::size_t i = 0; i < c.size(); ++i) {
    pdfam::Point p(d, 0.0);
    for (std::size_t r = 0; r < d; ++r) p[r] = pdfam::dot(basis[r], c[i]) + shift[r];
    rows.push_back(p);
  }
  return pdfam::PointCloud::from_rows(rows);
}

/// Moves every point by a random vector of length at most eps.
inline pdfam::PointCloud perturb(const pdfam::PointCloud& c, double eps, pdfam::Rng& rng) {
  std::vector<pdfam::Point> rows;
  for (std::size_t i = 0; i < c.size(); ++i) {
    pdfam::Point g(c.dim());
    for (double& x : g) x = pdfam::standard_normal(rng);
    const double scale = eps * pdfam::uniform01(rng) / pdfam::norm(g);
    pdfam::Point p = c.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += scale * g[k];
    rows.push_back(p);
  }
  return pdfam::PointCloud::from_rows(rows);
}

inline bool has_message(const std::exception& e, const char* needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace support

#define EXPECT_THROW_MSG(stmt, type, needle)                                \
  do {                                                                      \
    try {                                                                   \
      stmt;                                                                 \
      ADD_FAILURE() << "expected exception: " #type;                      \
    } catch (const type& e) {                                               \
      EXPECT_TRUE(support::has_message(e, needle)) << e.what();             \
    }                                                                       \
  } while (0)
