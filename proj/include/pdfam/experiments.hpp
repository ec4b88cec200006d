#pragma once

// Randomized experiments on uniform samples of the unit cube: histograms of
// 1D persistence and median gap ratios over a grid of (n, N).
//
// Trial i of cell (n, N) draws its cloud from the stream
// derive_stream(seed, {n, N, i}), so every cell and every trial can be
// reproduced on its own and results do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "pdfam/error.hpp"
#include "pdfam/filtration.hpp"
#include "pdfam/geometry.hpp"
#include "pdfam/persistence.hpp"
#include "pdfam/random.hpp"

namespace pdfam {

struct ExperimentConfig {
  std::size_t n_points = 10;
  std::size_t dim = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  FiltrationKind kind = FiltrationKind::VietorisRips;
  std::size_t bins = 50;

  void validate() const {
    if (n_points < 1 || dim < 1 || trials < 1 || bins < 1)
      throw InvalidInput("experiment sizes must be positive");
    if (kind == FiltrationKind::Delaunay2D && dim != 2)
      throw InvalidInput("Delaunay implemented for the plane only");
  }
};

/// Worker threads for experiment loops: $PDFAM_THREADS if set and positive,
/// else the hardware concurrency.
inline std::size_t thread_count() {
  if (const char* env = std::getenv("PDFAM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

/// Runs f(i) for i in [0, count); results must be written to per-index slots.
template <class F>
void parallel_for(std::size_t count, F&& f) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// n points with i.i.d. coordinates uniform on [0, 1).
inline PointCloud sample_uniform_cube(std::size_t n, std::size_t dim, Rng& rng) {
  if (n < 1 || dim < 1) throw InvalidInput("sample size and dimension must be positive");
  std::vector<double> coords(n * dim);
  for (double& x : coords) x = uniform01(rng);
  return PointCloud(dim, std::move(coords));
}

inline Rng trial_stream(std::uint64_t seed, std::size_t n, std::size_t dim, std::size_t trial) {
  return derive_stream(seed, {n, dim, trial});
}

struct RawPair {
  std::size_t trial = 0;
  double birth = 0.0;
  double death = 0.0;
};

struct Histogram {
  std::vector<double> edges;    // bins + 1 edges, empty when there is no data
  std::vector<double> percent;  // per bin, summing to 100
  std::vector<RawPair> raw;     // finite 1D pairs in trial order
};

/// Percentage histogram of death - birth over the finite 1D pairs of the
/// given diagrams, with `bins` equal bins over [0, max persistence].
inline Histogram histogram_of(const std::vector<PersistenceDiagram>& diagrams, std::size_t bins) {
  if (bins < 1) throw InvalidInput("histogram needs at least one bin");
  Histogram h;
  double top = 0.0;
  for (std::size_t t = 0; t < diagrams.size(); ++t)
    for (const auto& p : diagrams[t].pairs)
      if (p.finite()) {
        h.raw.push_back({t, p.birth, p.death});
        top = std::max(top, p.persistence());
      }
  if (h.raw.empty()) return h;

  const double width = top / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(b == bins ? top : width * static_cast<double>(b));
  std::vector<std::size_t> counts(bins, 0);
  for (const auto& r : h.raw) {
    const double p = r.death - r.birth;
    auto b = static_cast<std::size_t>(p / width);
    counts[std::min(b, bins - 1)]++;
  }
  for (std::size_t c : counts) h.percent.push_back(100.0 * static_cast<double>(c) / static_cast<double>(h.raw.size()));
  return h;
}

inline std::vector<PersistenceDiagram> trial_diagrams(std::size_t n, std::size_t dim, std::size_t trials,
                                                      std::uint64_t seed, FiltrationKind kind) {
  std::vector<PersistenceDiagram> out(trials);
  detail::parallel_for(trials, [&](std::size_t i) {
    Rng rng = trial_stream(seed, n, dim, i);
    out[i] = compute_pd(build_filtration(sample_uniform_cube(n, dim, rng), kind), 1);
  });
  return out;
}

inline Histogram persistence_histogram(const ExperimentConfig& cfg) {
  cfg.validate();
  return histogram_of(trial_diagrams(cfg.n_points, cfg.dim, cfg.trials, cfg.seed, cfg.kind), cfg.bins);
}

struct GapMedian {
  double median = std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  std::size_t skipped = 0;
};

/// Median gap ratio over the diagrams where it is defined (at least three
/// finite pairs); the others are counted as skipped. NaN when none is defined.
inline GapMedian median_gap_ratio(const std::vector<PersistenceDiagram>& diagrams) {
  std::vector<double> ratios;
  GapMedian g;
  for (const auto& d : diagrams) {
    if (d.finite_pairs().size() < 3) {
      ++g.skipped;
      continue;
    }
    ratios.push_back(gap_stats(d).ratio);
  }
  g.used = ratios.size();
  if (ratios.empty()) return g;
  std::sort(ratios.begin(), ratios.end());
  const std::size_t k = ratios.size();
  g.median = k % 2 == 1 ? ratios[k / 2] : 0.5 * (ratios[k / 2 - 1] + ratios[k / 2]);
  return g;
}

struct SweepRow {
  std::size_t n = 0;
  std::size_t dim = 0;
  double median_gap_ratio = std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  std::size_t skipped = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // n-major, then N
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  FiltrationKind kind = FiltrationKind::VietorisRips;
};

inline SweepResult gap_ratio_sweep(const std::vector<std::size_t>& n_values, const std::vector<std::size_t>& dim_values,
                                   std::size_t trials, std::uint64_t seed,
                                   FiltrationKind kind = FiltrationKind::VietorisRips) {
  if (n_values.empty() || dim_values.empty()) throw InvalidInput("sweep ranges must be non-empty");
  if (trials < 1) throw InvalidInput("sweep needs at least one trial");
  SweepResult out{{}, trials, seed, kind};
  for (std::size_t n : n_values)
    for (std::size_t dim : dim_values) {
      ExperimentConfig{n, dim, trials, seed, kind, 1}.validate();
      const GapMedian g = median_gap_ratio(trial_diagrams(n, dim, trials, seed, kind));
      out.rows.push_back({n, dim, g.median, g.used, g.skipped});
    }
  return out;
}

}  // namespace pdfam
