#pragma once

#include <vector>

#include "vmirror/netbuild.hpp"

namespace vmirror::kernels {

// Raw (unnormalized) Brandes betweenness over unweighted adjacency. For an
// undirected adjacency each unordered pair is counted once. Both variants
// fold per-source dependencies in ascending source order, so their results
// are bit-identical.

std::vector<double> betweenness_serial(const Adjacency& adj, bool directed);

/// OpenMP over sources in fixed chunks of `chunk` sources.
std::vector<double> betweenness_parallel(const Adjacency& adj, bool directed,
                                         std::size_t chunk = 256);

}  // namespace vmirror::kernels
