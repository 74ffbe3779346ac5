#include "vmirror/kernels/core_periphery.hpp"

#include <cmath>

#include "vmirror/rng.hpp"

namespace vmirror::kernels {

PairMatrix::PairMatrix(const Adjacency& undirected) : n_(undirected.size()), bits_(n_ * n_, 0) {
  for (std::size_t v = 0; v < n_; ++v)
    for (auto w : undirected.out[v])
      if (w != v) {
        bits_[v * n_ + w] = bits_[w * n_ + v] = 1;
      }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) edges_ += bits_[i * n_ + j];
}

namespace {

// Fit from the two sufficient statistics of a labeling: periphery size and
// number of periphery-periphery edges.
std::optional<double> fit_from_counts(std::size_t n, std::size_t edges, std::size_t periphery,
                                      std::size_t pp_edges) {
  if (periphery < 2 || periphery >= n) return std::nullopt;
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const double ones = pairs - static_cast<double>(periphery) * (periphery - 1) / 2.0;
  const double e = static_cast<double>(edges);
  const double var_x = pairs * e - e * e;
  const double var_y = pairs * ones - ones * ones;
  if (var_x <= 0.0 || var_y <= 0.0) return std::nullopt;
  const double covar = pairs * (e - static_cast<double>(pp_edges)) - e * ones;
  return covar / std::sqrt(var_x * var_y);
}

bool core_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  // lexicographic over sorted core index lists
  std::size_t i = 0, j = 0;
  const std::size_t n = a.size();
  while (true) {
    while (i < n && !a[i]) ++i;
    while (j < n && !b[j]) ++j;
    if (i == n || j == n) return i == n && j != n;
    if (i != j) return i < j;
    ++i;
    ++j;
  }
}

struct Climber {
  const PairMatrix& m;
  std::vector<std::uint8_t> core;
  std::vector<std::size_t> periph_nbrs;  // periphery neighbours per node
  std::size_t periphery = 0;
  std::size_t pp_edges = 0;

  Climber(const PairMatrix& matrix, std::vector<std::uint8_t> labels) : m(matrix), core(std::move(labels)) {
    const std::size_t n = m.size();
    periph_nbrs.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      periphery += !core[v];
      for (std::size_t w = 0; w < n; ++w)
        if (w != v && !core[w] && m.edge(v, w)) ++periph_nbrs[v];
    }
    for (std::size_t v = 0; v < n; ++v)
      if (!core[v]) pp_edges += periph_nbrs[v];
    pp_edges /= 2;
  }

  std::optional<double> fit_after_flip(std::size_t v) const {
    if (core[v]) return fit_from_counts(m.size(), m.edge_count(), periphery + 1, pp_edges + periph_nbrs[v]);
    return fit_from_counts(m.size(), m.edge_count(), periphery - 1, pp_edges - periph_nbrs[v]);
  }

  void flip(std::size_t v) {
    const std::size_t n = m.size();
    if (core[v]) {
      ++periphery;
      pp_edges += periph_nbrs[v];
    } else {
      --periphery;
      pp_edges -= periph_nbrs[v];
    }
    core[v] = !core[v];
    for (std::size_t w = 0; w < n; ++w)
      if (w != v && m.edge(v, w)) {
        if (core[v]) --periph_nbrs[w];
        else ++periph_nbrs[w];
      }
  }

  std::optional<double> fit() const { return fit_from_counts(m.size(), m.edge_count(), periphery, pp_edges); }
};

std::vector<std::uint8_t> random_start(std::size_t n, std::uint64_t seed, int restart) {
  Rng rng({seed, static_cast<std::uint64_t>(restart), 0xc0feULL});
  std::vector<std::uint8_t> labels(n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::size_t periphery = 0;
    for (auto& l : labels) {
      l = rng.chance(0.5) ? 1 : 0;
      periphery += !l;
    }
    if (periphery >= 2 && periphery < n) return labels;
  }
  std::fill(labels.begin(), labels.end(), 0);
  labels[rng.below(n)] = 1;
  return labels;
}

LabelingResult climb(const PairMatrix& m, std::uint64_t seed, int restart) {
  Climber c(m, random_start(m.size(), seed, restart));
  double current = c.fit().value_or(-2.0);
  while (true) {
    std::size_t best_v = m.size();
    double best = current;
    for (std::size_t v = 0; v < m.size(); ++v) {
      auto f = c.fit_after_flip(v);
      if (f && *f > best + 1e-12) {
        best = *f;
        best_v = v;
      }
    }
    if (best_v == m.size()) break;
    c.flip(best_v);
    current = best;
  }
  return {c.core, current};
}

bool better(const LabelingResult& a, const LabelingResult& b) {
  if (a.fit > b.fit + 1e-12) return true;
  if (b.fit > a.fit + 1e-12) return false;
  return core_less(a.core, b.core);
}

}  // namespace

std::optional<double> core_periphery_fit(const PairMatrix& m, const std::vector<std::uint8_t>& core) {
  Climber c(m, core);
  return c.fit();
}

LabelingResult hill_climb_serial(const PairMatrix& m, int restarts, std::uint64_t seed) {
  LabelingResult best{{}, -2.0};
  for (int r = 0; r < restarts; ++r) {
    auto res = climb(m, seed, r);
    if (best.core.empty() || better(res, best)) best = std::move(res);
  }
  return best;
}

LabelingResult hill_climb_parallel(const PairMatrix& m, int restarts, std::uint64_t seed) {
  std::vector<LabelingResult> results(static_cast<std::size_t>(std::max(restarts, 0)));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < restarts; ++r) results[r] = climb(m, seed, r);
  LabelingResult best{{}, -2.0};
  for (auto& res : results)
    if (best.core.empty() || better(res, best)) best = std::move(res);
  return best;
}

}  // namespace vmirror::kernels
