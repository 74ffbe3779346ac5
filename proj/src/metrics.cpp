#include "vmirror/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/kernels/betweenness.hpp"
#include "vmirror/kernels/core_periphery.hpp"
#include "vmirror/timeutil.hpp"

namespace vmirror {

namespace {

// Graphs below this size are faster through the serial kernel.
constexpr std::size_t kParallelBetweennessMin = 512;

std::vector<double> normalized_betweenness(const Adjacency& adj, bool directed) {
  const std::size_t n = adj.size();
  auto raw = n >= kParallelBetweennessMin ? kernels::betweenness_parallel(adj, directed)
                                          : kernels::betweenness_serial(adj, directed);
  if (n < 3) return std::vector<double>(n, 0.0);
  double denom = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  if (!directed) denom /= 2.0;
  for (auto& b : raw) b /= denom;
  return raw;
}

}  // namespace

Centrality betweenness(const InteractionGraph& g, bool directed) {
  Centrality c;
  const auto adj = Adjacency::from_graph(g, directed);
  const auto values = normalized_betweenness(adj, directed);
  for (std::size_t i = 0; i < adj.size(); ++i) c.scores.emplace(adj.ids[i], values[i]);
  if (adj.size() < 3) c.warning = "betweenness needs at least 3 nodes; all scores set to 0";
  return c;
}

std::map<ActorId, int> degree(const InteractionGraph& g) {
  std::map<ActorId, int> out;
  for (const auto& n : g.nodes()) out.emplace(n, 0);
  for (const auto& e : g.edge_set()) {
    ++out[e.first];
    ++out[e.second];
  }
  return out;
}

std::map<ActorId, DirectedDegree> directed_degree(const InteractionGraph& g) {
  std::map<ActorId, DirectedDegree> out;
  for (const auto& n : g.nodes()) out.emplace(n, DirectedDegree{});
  for (const auto& [arc, w] : g.arcs()) {
    ++out[arc.first].out;
    ++out[arc.second].in;
  }
  return out;
}

double density(const InteractionGraph& g) {
  const auto n = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw UndefinedError("density undefined for fewer than 2 nodes");
  return static_cast<double>(g.edge_count()) / (n * (n - 1) / 2.0);
}

double centralization(const InteractionGraph& g, CentralityKind kind) {
  const std::size_t n = g.node_count();
  if (n < 3) throw UndefinedError("centralization undefined for fewer than 3 nodes");
  std::vector<double> c;
  double max_sum = 0.0;
  if (kind == CentralityKind::betweenness) {
    c = normalized_betweenness(Adjacency::from_graph(g, false), false);
    max_sum = static_cast<double>(n - 1);
  } else {
    for (const auto& [id, d] : degree(g)) c.push_back(d);
    max_sum = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  }
  const double top = *std::max_element(c.begin(), c.end());
  double sum = 0.0;
  for (double v : c) sum += top - v;
  return std::clamp(sum / max_sum, 0.0, 1.0);
}

CorePeripheryAssignment core_periphery(const InteractionGraph& g, int restarts, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n < 4) throw UndefinedError("core/periphery fit undefined for fewer than 4 nodes");
  if (restarts < 1) throw InputError("core/periphery needs restarts >= 1");
  const auto adj = Adjacency::from_graph(g, false);
  kernels::PairMatrix m(adj);
  const std::size_t pairs = n * (n - 1) / 2;
  if (m.edge_count() == 0 || m.edge_count() == pairs)
    throw UndefinedError("core/periphery fit undefined for an empty or complete graph");
  auto best = kernels::hill_climb_parallel(m, restarts, seed);
  CorePeripheryAssignment out;
  out.fit = best.fit;
  for (std::size_t i = 0; i < n; ++i)
    if (best.core[i]) out.core.insert(adj.ids[i]);
  return out;
}

double contribution_index(std::uint64_t sent, std::uint64_t received) {
  if (sent + received == 0) throw UndefinedError("CI undefined: no messages sent or received");
  const auto s = static_cast<double>(sent), r = static_cast<double>(received);
  return (s - r) / (s + r);
}

double awvci(const std::vector<ActorStats>& stats) {
  double total = 0.0;
  for (const auto& a : stats) total += static_cast<double>(a.sent + a.received);
  if (total <= 0.0) throw UndefinedError("AWVCI undefined: all actor volumes are zero");
  double mean = 0.0;
  for (const auto& a : stats) {
    const auto vol = a.sent + a.received;
    if (vol == 0) continue;
    mean += static_cast<double>(vol) / total * contribution_index(a.sent, a.received);
  }
  double var = 0.0;
  for (const auto& a : stats) {
    const auto vol = a.sent + a.received;
    if (vol == 0) continue;
    const double d = contribution_index(a.sent, a.received) - mean;
    var += static_cast<double>(vol) / total * d * d;
  }
  return std::clamp(var, 0.0, 1.0);
}

namespace {

template <typename F>
MetricValue guarded(F&& f) {
  try {
    return MetricValue::of(f());
  } catch (const UndefinedError& e) {
    return MetricValue::absent(e.what());
  }
}

}  // namespace

MetricRow metric_row(const InteractionGraph& g, const std::vector<ActorStats>& stats, const MetricOptions& opts) {
  MetricRow row;
  row.window = g.window();
  row.density = guarded([&] { return density(g); });
  row.core_periphery = guarded([&] { return core_periphery(g, opts.cp_restarts, opts.seed).fit; });
  if (g.edge_count() == 0) {
    row.gbc = MetricValue::absent("centralization undefined for a graph without edges");
    row.gdc = row.gbc;
  } else {
    row.gbc = guarded([&] { return centralization(g, CentralityKind::betweenness); });
    row.gdc = guarded([&] { return centralization(g, CentralityKind::degree); });
  }
  row.awvci = guarded([&] { return awvci(stats); });
  return row;
}

std::vector<MetricRow> metric_rows(const std::vector<InteractionGraph>& graphs,
                                   const std::vector<std::vector<ActorStats>>& stats, const MetricOptions& opts) {
  if (graphs.size() != stats.size()) throw InputError("metric_rows: graphs and stats differ in length");
  std::vector<MetricRow> rows(graphs.size());
  const auto n = static_cast<long>(graphs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) rows[i] = metric_row(graphs[i], stats[i], opts);
  return rows;
}

void write_metric_table(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << "window_start,window_end,density,core_periphery,gbc,gdc,awvci\n";
  auto cell = [](const MetricValue& m) { return m.value ? csv::fixed(*m.value, 6) : std::string(); };
  for (const auto& r : rows) {
    auto [s, e] = format_window_cells(r.window);
    out << s << ',' << e << ',' << cell(r.density) << ',' << cell(r.core_periphery) << ',' << cell(r.gbc)
        << ',' << cell(r.gdc) << ',' << cell(r.awvci) << '\n';
  }
}

std::vector<MetricRow> read_metric_table(std::istream& in) {
  std::vector<MetricRow> rows;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"window_start", "window_end", "density", "core_periphery", "gbc", "gdc", "awvci"});
      checked = true;
    }
    MetricRow r;
    try {
      r.window = parse_window_cells(reader.get("window_start"), reader.get("window_end"));
    } catch (const InputError& e) {
      throw InputError(reader.line(), e.what());
    }
    auto value = [&](const char* col) {
      const auto& text = reader.get(col);
      if (text.find_first_not_of(' ') == std::string::npos) return MetricValue::absent("empty cell");
      auto v = csv::parse_number(text);
      if (!v) throw InputError(reader.line(), std::string(col) + " '" + text + "' is not numeric");
      return MetricValue::of(*v);
    };
    r.density = value("density");
    r.core_periphery = value("core_periphery");
    r.gbc = value("gbc");
    r.gdc = value("gdc");
    r.awvci = value("awvci");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace vmirror
