#include "vmirror/kernels/betweenness.hpp"

#include <algorithm>

namespace vmirror::kernels {

namespace {

struct Workspace {
  std::vector<double> sigma;
  std::vector<int> dist;
  std::vector<std::uint32_t> order;  // BFS visit order, reused as a stack
  std::vector<std::uint32_t> queue;

  explicit Workspace(std::size_t n) : sigma(n), dist(n), queue(n) { order.reserve(n); }
};

// Brandes dependency delta_s(v) for one source, written into `delta`.
void single_source(const Adjacency& adj, std::uint32_t s, Workspace& ws, std::vector<double>& delta) {
  std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
  std::fill(ws.dist.begin(), ws.dist.end(), -1);
  std::fill(delta.begin(), delta.end(), 0.0);
  ws.order.clear();

  ws.sigma[s] = 1.0;
  ws.dist[s] = 0;
  std::size_t head = 0, tail = 0;
  ws.queue[tail++] = s;
  while (head < tail) {
    const auto v = ws.queue[head++];
    ws.order.push_back(v);
    for (auto w : adj.out[v]) {
      if (ws.dist[w] < 0) {
        ws.dist[w] = ws.dist[v] + 1;
        ws.queue[tail++] = w;
      }
      if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
    }
  }
  // Predecessors of w are the in-neighbours one level closer; scanning the
  // forward lists of v in reverse BFS order visits exactly those pairs.
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const auto v = *it;
    double acc = 0.0;
    for (auto w : adj.out[v])
      if (ws.dist[w] == ws.dist[v] + 1) acc += ws.sigma[v] / ws.sigma[w] * (1.0 + delta[w]);
    delta[v] = acc;
  }
  delta[s] = 0.0;
}

void finish(std::vector<double>& raw, bool directed) {
  if (!directed)
    for (auto& b : raw) b /= 2.0;
}

}  // namespace

std::vector<double> betweenness_serial(const Adjacency& adj, bool directed) {
  const std::size_t n = adj.size();
  std::vector<double> raw(n, 0.0), delta(n);
  Workspace ws(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    single_source(adj, s, ws, delta);
    for (std::size_t v = 0; v < n; ++v) raw[v] += delta[v];
  }
  finish(raw, directed);
  return raw;
}

std::vector<double> betweenness_parallel(const Adjacency& adj, bool directed, std::size_t chunk) {
  const std::size_t n = adj.size();
  chunk = std::max<std::size_t>(1, chunk);
  std::vector<double> raw(n, 0.0);
  std::vector<std::vector<double>> rows(std::min(chunk, n), std::vector<double>(n));

  for (std::size_t base = 0; base < n; base += chunk) {
    const auto count = static_cast<long>(std::min(chunk, n - base));
#pragma omp parallel
    {
      Workspace ws(n);
#pragma omp for schedule(dynamic, 4)
      for (long i = 0; i < count; ++i) single_source(adj, static_cast<std::uint32_t>(base + i), ws, rows[i]);
    }
    // Fold in source order per column: same additions, same order as serial.
    const auto cols = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long v = 0; v < cols; ++v)
      for (long i = 0; i < count; ++i) raw[v] += rows[i][v];
  }
  finish(raw, directed);
  return raw;
}

}  // namespace vmirror::kernels
