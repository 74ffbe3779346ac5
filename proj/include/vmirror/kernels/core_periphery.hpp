#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vmirror/netbuild.hpp"

namespace vmirror::kernels {

/// Upper-triangle binary adjacency of an undirected graph, index form.
class PairMatrix {
 public:
  explicit PairMatrix(const Adjacency& undirected);

  std::size_t size() const { return n_; }
  bool edge(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  std::size_t edge_count() const { return edges_; }

 private:
  std::size_t n_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Pearson correlation between the pair adjacency and the ideal pattern
/// (pair is 1 iff at least one endpoint is core). Empty when the pattern has
/// zero variance (fewer than two periphery nodes, or no core).
std::optional<double> core_periphery_fit(const PairMatrix& m, const std::vector<std::uint8_t>& core);

struct LabelingResult {
  std::vector<std::uint8_t> core;
  double fit = 0.0;
};

/// Steepest-ascent single-flip hill climbing from `restarts` seeded random
/// labelings. Restart r draws its start from (seed, r) only.
LabelingResult hill_climb_serial(const PairMatrix& m, int restarts, std::uint64_t seed);
LabelingResult hill_climb_parallel(const PairMatrix& m, int restarts, std::uint64_t seed);

}  // namespace vmirror::kernels
