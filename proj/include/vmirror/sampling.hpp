#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <vector>

#include "vmirror/netbuild.hpp"

namespace vmirror {

struct TrafficParams {
  int n_actors = 42;
  int n_messages = 5000;
  double mean_recipients = 3.0;
  double recipient_dispersion = 1.0;  // 0 = fixed count, 1 = geometric
  int group_count = 4;
  double in_group_bias = 0.7;
  std::uint64_t seed = 1;
};

/// Synthetic mail log over actors "u00".."uNN"; actor i belongs to group
/// i % group_count. Deterministic in params.
std::vector<InteractionEvent> generate_traffic(const TrafficParams& params);

/// Events where the sender or any recipient is an ego. Threshold 1.
InteractionGraph observe_via_egos(const std::vector<InteractionEvent>& events,
                                  const std::set<ActorId>& egos, bool infer_corecipients);

/// Fraction of the full graph's undirected edges present in `observed`.
double edge_recall(const InteractionGraph& full, const InteractionGraph& observed);

struct RecallPoint {
  double fraction = 0.0;
  double mean_recall = 0.0;
  double stddev = 0.0;
  int trials = 0;
};

struct SamplingConfig {
  std::vector<double> fractions;
  int trials = 30;
  std::uint64_t seed = 1;
  bool infer_corecipients = false;
};

/// Ego subsets of size max(1, round(fraction * |actors|)) drawn uniformly from
/// (seed, fraction index, trial index). Serial reference.
std::vector<RecallPoint> run_sampling_experiment_serial(const std::vector<InteractionEvent>& events,
                                                        const SamplingConfig& config);

/// Same trials distributed with OpenMP; identical output.
std::vector<RecallPoint> run_sampling_experiment(const std::vector<InteractionEvent>& events,
                                                 const SamplingConfig& config);

void write_recall(std::ostream& out, const std::vector<RecallPoint>& points);

}  // namespace vmirror
