#pragma once

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "vmirror/ingest.hpp"
#include "vmirror/metrics.hpp"
#include "vmirror/netbuild.hpp"

namespace vmirror {

/// Sample Pearson correlation. Throws InputError on length mismatch or n < 3,
/// UndefinedError on zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Two-tailed p for r under H0: rho = 0, t = r sqrt((n-2)/(1-r^2)), n-2 dof.
double pearson_p_value(double r, std::size_t n);

struct CorrelationRow {
  std::string metric;
  std::optional<double> r;
  std::optional<double> p;
  bool significant = false;
  std::size_t n = 0;
  std::string reason;  // why r is absent
};

inline constexpr double kDefaultAlpha = 0.10;

/// One row per metric column; windows must align index by index. Windows
/// with an absent metric value are dropped for that metric only.
std::vector<CorrelationRow> correlate_with_kpi(const std::vector<MetricRow>& metrics,
                                               const KpiSeries& kpi, double alpha = kDefaultAlpha);

void write_correlations(std::ostream& out, const std::vector<CorrelationRow>& rows);
std::vector<CorrelationRow> read_correlations(std::istream& in);

struct RankedList {
  std::string label;
  std::vector<std::pair<ActorId, double>> entries;  // score desc, ties by id asc
};

RankedList rank_by(const std::map<ActorId, double>& scores, std::size_t k, std::string label = {});

struct Overlap {
  std::set<ActorId> common;
  std::size_t size = 0;
};

Overlap topk_overlap(const std::vector<RankedList>& lists, std::size_t k);

/// CSV `list,actor[,score]`. Without a score column, file order per list is rank order.
std::vector<RankedList> read_ranked_lists(std::istream& in);
void write_overlap(std::ostream& out, const std::vector<RankedList>& lists, std::size_t k,
                   const Overlap& overlap);

/// One directed layer per relation: arc ego -> alter, weight = frequency,
/// kept iff frequency >= min_frequency. Every relation gets a layer.
std::map<Relation, InteractionGraph> layer_networks(const std::vector<SurveyResponse>& responses,
                                                    int min_frequency);

struct LayerReport {
  std::map<Relation, RankedList> rankings;
  std::map<Relation, std::string> omitted;  // relation -> reason
};

/// Full normalized directed-betweenness ranking per layer; layers
/// with fewer than 3 nodes are omitted with a reason.
LayerReport layer_betweenness_report(const std::map<Relation, InteractionGraph>& layers);

/// Header relation,actor,betweenness,rank (rank 1-based).
void write_layer_rankings(std::ostream& out, const LayerReport& report);
std::map<std::string, RankedList> read_layer_rankings(std::istream& in);

struct BarrierScore {
  std::string barrier;
  double mean = 0.0;
};

/// Descending mean score, ties alphabetical.
std::vector<BarrierScore> rank_barriers(const std::vector<BarrierRating>& ratings);

void write_barriers(std::ostream& out, const std::vector<BarrierScore>& ranked);
std::vector<BarrierScore> read_barriers_table(std::istream& in);

/// Ties per platform across all responses, descending (ties alphabetical).
std::vector<std::pair<Channel, std::size_t>> platform_usage(const std::vector<SurveyResponse>& responses);

}  // namespace vmirror
