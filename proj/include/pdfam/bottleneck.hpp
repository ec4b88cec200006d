#pragma once

// Bottleneck distance between persistence diagrams: binary search over the
// finite set of candidate distances, each tested by a perfect matching in the
// bipartite graph that lets either side's points go to the diagonal.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pdfam/error.hpp"
#include "pdfam/persistence.hpp"

namespace pdfam {

inline double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.dim != b.dim) throw InvalidInput("bottleneck distance needs diagrams of the same dimension");

  std::vector<double> inf_a, inf_b;
  std::vector<PersistencePair> fa, fb;
  for (const auto& p : a.pairs) (p.finite() ? fa.push_back(p) : inf_a.push_back(p.birth));
  for (const auto& p : b.pairs) (p.finite() ? fb.push_back(p) : inf_b.push_back(p.birth));
  if (inf_a.size() != inf_b.size()) return kInfinity;

  // Essential bars: optimal matching on a line pairs sorted births.
  std::sort(inf_a.begin(), inf_a.end());
  std::sort(inf_b.begin(), inf_b.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < inf_a.size(); ++i) essential = std::max(essential, std::abs(inf_a[i] - inf_b[i]));

  const std::size_t n = fa.size(), m = fb.size();
  if (n + m == 0) return essential;

  auto diag = [](const PersistencePair& p) { return 0.5 * (p.death - p.birth); };
  std::vector<double> candidates{0.0};
  for (const auto& p : fa) candidates.push_back(diag(p));
  for (const auto& q : fb) candidates.push_back(diag(q));
  for (const auto& p : fa)
    for (const auto& q : fb) candidates.push_back(detail::linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Left: fa[0..n) then diagonal copies of fb. Right: fb[0..m) then diagonal copies of fa.
  auto perfect = [&](double delta) {
    std::vector<std::vector<std::size_t>> adj(n + m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        if (detail::linf(fa[i], fb[j]) <= delta) adj[i].push_back(j);
      if (diag(fa[i]) <= delta) adj[i].push_back(m + i);
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (diag(fb[j]) <= delta) adj[n + j].push_back(j);
      for (std::size_t i = 0; i < n; ++i) adj[n + j].push_back(m + i);
    }
    return detail::max_matching(adj, n + m) == n + m;
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect(candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return std::max(essential, candidates[lo]);
}

}  // namespace pdfam
