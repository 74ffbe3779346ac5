#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vmirror/insight.hpp"
#include "vmirror/metrics.hpp"
#include "vmirror/temporal.hpp"

namespace vmirror {

// Figures are SVG on a fixed 800x600 canvas with 10pt axis labels. Output is
// a pure function of the input.

namespace svg {
inline constexpr double kWidth = 800.0;
inline constexpr double kHeight = 600.0;
inline constexpr double kLeft = 70.0;
inline constexpr double kRight = 30.0;
inline constexpr double kTop = 50.0;
inline constexpr double kBottom = 60.0;
inline constexpr double kPlotWidth = kWidth - kLeft - kRight;
inline constexpr double kPlotHeight = kHeight - kTop - kBottom;
}  // namespace svg

/// X = messages sent, Y = contribution index with a midline at 0. The
/// `highlight_top` actors by total volume get class="top".
std::string render_ci_scatter(const std::vector<ActorStats>& stats, std::size_t highlight_top,
                              const std::string& title = "Actor Contribution Index");

/// One polyline per actor over window midpoints; legend sorted by actor id.
std::string render_series(const std::map<ActorId, MetricSeries>& series,
                          const std::string& title = "Betweenness over time");

/// Grouped bars: one group per actor, one bar per layer.
std::string render_layer_bars(const std::map<std::string, RankedList>& layers,
                              const std::string& title = "Betweenness by network");

struct MirrorInputs {
  std::vector<MetricRow> rows;
  std::vector<CorrelationRow> correlations;
  std::map<std::string, RankedList> rankings;
  std::vector<OscillationRow> oscillation;
  std::optional<double> group_oscillation;
  std::vector<BarrierScore> barriers;
  std::size_t top_k = 10;
};

/// Plain-text report with fixed section order; missing sections are noted.
/// Throws InputError when every section is empty.
std::string mirror_report(const MirrorInputs& in);

}  // namespace vmirror
