#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "vmirror/netbuild.hpp"

namespace vmirror {

struct Centrality {
  std::map<ActorId, double> scores;
  /// Set when |V| < 3 and all scores were forced to 0.
  std::optional<std::string> warning;
};

/// Normalized shortest-path betweenness on the binary adjacency; undirected
/// by default (pairs counted once, divided by (n-1)(n-2)/2), directed divides
/// by (n-1)(n-2).
Centrality betweenness(const InteractionGraph& g, bool directed = false);

struct DirectedDegree {
  int in = 0;
  int out = 0;
};

/// Distinct undirected neighbours.
std::map<ActorId, int> degree(const InteractionGraph& g);
std::map<ActorId, DirectedDegree> directed_degree(const InteractionGraph& g);

double density(const InteractionGraph& g);

enum class CentralityKind { betweenness, degree };

/// Freeman group centralization in [0, 1]: star = 1, vertex-transitive = 0.
double centralization(const InteractionGraph& g, CentralityKind kind);

struct CorePeripheryAssignment {
  std::set<ActorId> core;
  double fit = 0.0;
};

CorePeripheryAssignment core_periphery(const InteractionGraph& g, int restarts = 50,
                                       std::uint64_t seed = 0);

/// (sent - received) / (sent + received).
double contribution_index(std::uint64_t sent, std::uint64_t received);

/// Volume-weighted variance of actor contribution indices.
double awvci(const std::vector<ActorStats>& stats);

/// A metric value, or the reason it is undefined.
struct MetricValue {
  std::optional<double> value;
  std::string reason;

  static MetricValue of(double v) { return {v, {}}; }
  static MetricValue absent(std::string why) { return {std::nullopt, std::move(why)}; }
};

struct MetricRow {
  TimeWindow window;
  MetricValue density;
  MetricValue core_periphery;
  MetricValue gbc;
  MetricValue gdc;
  MetricValue awvci;
};

struct MetricOptions {
  int cp_restarts = 50;
  std::uint64_t seed = 0;
};

MetricRow metric_row(const InteractionGraph& g, const std::vector<ActorStats>& stats,
                     const MetricOptions& opts = {});

/// Rows for independent windows are computed with OpenMP over windows.
std::vector<MetricRow> metric_rows(const std::vector<InteractionGraph>& graphs,
                                   const std::vector<std::vector<ActorStats>>& stats,
                                   const MetricOptions& opts = {});

inline constexpr const char* kMetricColumns[] = {"density", "core_periphery", "gbc", "gdc", "awvci"};

/// Header window_start,window_end,density,core_periphery,gbc,gdc,awvci; six
/// decimals; absent metrics as empty cells.
void write_metric_table(std::ostream& out, const std::vector<MetricRow>& rows);
std::vector<MetricRow> read_metric_table(std::istream& in);

}  // namespace vmirror
