#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "vmirror/netbuild.hpp"

namespace vmirror {

struct SeriesPoint {
  TimeWindow window;
  double value = 0.0;
};

struct MetricSeries {
  std::string label;
  std::vector<SeriesPoint> points;

  std::vector<double> values() const;
};

/// Per-actor normalized betweenness across windows; an actor missing from a
/// window's graph scores 0 there. Windows are built in parallel.
std::map<ActorId, MetricSeries> betweenness_series(const std::vector<InteractionEvent>& events,
                                                   const WindowSpec& spec,
                                                   std::uint64_t min_edge_weight);

/// Strict direction reversals; zero differences carry the previous direction.
int oscillation(const std::vector<double>& values);
inline int oscillation(const MetricSeries& s) { return oscillation(s.values()); }

/// reversals / (length - 2) for length >= 3, else 0.
double normalized_oscillation(const MetricSeries& s);

/// Mean normalized oscillation across the set.
double group_oscillation(const std::map<ActorId, MetricSeries>& series);

struct OscillationRow {
  ActorId actor;
  int reversals = 0;
  double normalized = 0.0;
};

std::vector<OscillationRow> oscillation_table(const std::map<ActorId, MetricSeries>& series);

void write_series(std::ostream& out, const std::map<ActorId, MetricSeries>& series);
std::map<ActorId, MetricSeries> read_series(std::istream& in);
void write_oscillation(std::ostream& out, const std::vector<OscillationRow>& rows);
std::vector<OscillationRow> read_oscillation(std::istream& in);

}  // namespace vmirror
