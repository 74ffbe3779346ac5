#include "vmirror/insight.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/timeutil.hpp"

namespace vmirror {

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw InputError("correlation length mismatch: " + std::to_string(xs.size()) + " vs " +
                     std::to_string(ys.size()));
  if (xs.size() < 3) throw InputError("correlation needs at least 3 samples");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw UndefinedError("correlation undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson_p_value(double r, std::size_t n) {
  if (n < 3) throw InputError("p-value needs at least 3 samples");
  const double dof = static_cast<double>(n - 2);
  const double one_minus = 1.0 - r * r;
  if (one_minus <= 0.0) return 0.0;
  const double t = std::fabs(r) * std::sqrt(dof / one_minus);
  boost::math::students_t dist(dof);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, t)), 0.0, 1.0);
}

std::vector<CorrelationRow> correlate_with_kpi(const std::vector<MetricRow>& metrics, const KpiSeries& kpi,
                                               double alpha) {
  const std::size_t n = std::min(metrics.size(), kpi.points.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!(metrics[i].window == kpi.points[i].window)) {
      auto [ms, me] = format_window_cells(metrics[i].window);
      auto [ks, ke] = format_window_cells(kpi.points[i].window);
      throw InputError("window " + std::to_string(i + 1) + " misaligned: metrics " + ms + ".." + me +
                       " vs " + kpi.label + " " + ks + ".." + ke);
    }
  if (metrics.size() != kpi.points.size())
    throw InputError("window count mismatch: " + std::to_string(metrics.size()) + " metric rows vs " +
                     std::to_string(kpi.points.size()) + " " + kpi.label + " points");

  using Getter = const MetricValue& (*)(const MetricRow&);
  const std::pair<const char*, Getter> columns[] = {
      {"density", [](const MetricRow& r) -> const MetricValue& { return r.density; }},
      {"core_periphery", [](const MetricRow& r) -> const MetricValue& { return r.core_periphery; }},
      {"gbc", [](const MetricRow& r) -> const MetricValue& { return r.gbc; }},
      {"gdc", [](const MetricRow& r) -> const MetricValue& { return r.gdc; }},
      {"awvci", [](const MetricRow& r) -> const MetricValue& { return r.awvci; }},
  };

  std::vector<CorrelationRow> out;
  for (const auto& [name, get] : columns) {
    CorrelationRow row;
    row.metric = name;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& v = get(metrics[i]);
      if (!v.value) continue;
      xs.push_back(*v.value);
      ys.push_back(kpi.points[i].value);
    }
    row.n = xs.size();
    if (xs.size() < 3) {
      row.reason = "fewer than 3 windows with a value";
    } else {
      try {
        row.r = pearson(xs, ys);
        row.p = pearson_p_value(*row.r, row.n);
        row.significant = *row.p < alpha;
      } catch (const UndefinedError& e) {
        row.reason = e.what();
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

void write_correlations(std::ostream& out, const std::vector<CorrelationRow>& rows) {
  out << "metric,r,p,significant,n\n";
  for (const auto& r : rows) {
    out << r.metric << ',' << (r.r ? csv::fixed(*r.r, 6) : "") << ',' << (r.p ? csv::fixed(*r.p, 6) : "")
        << ',' << (r.significant ? "true" : "false") << ',' << r.n << '\n';
  }
}

std::vector<CorrelationRow> read_correlations(std::istream& in) {
  std::vector<CorrelationRow> rows;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"metric", "r", "p", "significant", "n"});
      checked = true;
    }
    CorrelationRow r;
    r.metric = reader.get("metric");
    r.r = csv::parse_number(reader.get("r"));
    r.p = csv::parse_number(reader.get("p"));
    r.significant = reader.get("significant") == "true";
    auto n = csv::parse_number(reader.get("n"));
    if (!n) throw InputError(reader.line(), "n is not numeric");
    r.n = static_cast<std::size_t>(*n);
    if (!r.r) r.reason = "undefined";
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

void sort_ranked(std::vector<std::pair<ActorId, double>>& entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
}

}  // namespace

RankedList rank_by(const std::map<ActorId, double>& scores, std::size_t k, std::string label) {
  if (k < 1) throw InputError("rank_by needs k >= 1");
  RankedList list;
  list.label = std::move(label);
  list.entries.assign(scores.begin(), scores.end());
  sort_ranked(list.entries);
  if (list.entries.size() > k) list.entries.resize(k);
  return list;
}

Overlap topk_overlap(const std::vector<RankedList>& lists, std::size_t k) {
  if (lists.size() < 2) throw InputError("overlap needs at least 2 lists");
  if (k < 1) throw InputError("overlap needs k >= 1");
  Overlap o;
  for (std::size_t li = 0; li < lists.size(); ++li) {
    const auto& l = lists[li];
    if (l.entries.size() < k)
      throw InputError("list '" + l.label + "' has " + std::to_string(l.entries.size()) +
                       " entries, fewer than k=" + std::to_string(k));
    std::set<ActorId> top;
    for (std::size_t i = 0; i < k; ++i) top.insert(l.entries[i].first);
    if (li == 0) {
      o.common = std::move(top);
    } else {
      std::set<ActorId> keep;
      std::set_intersection(o.common.begin(), o.common.end(), top.begin(), top.end(),
                            std::inserter(keep, keep.end()));
      o.common = std::move(keep);
    }
  }
  o.size = o.common.size();
  return o;
}

std::vector<RankedList> read_ranked_lists(std::istream& in) {
  std::vector<RankedList> lists;
  std::map<std::string, std::size_t> index;
  csv::Reader reader(in);
  bool checked = false, scored = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"list", "actor"});
      scored = reader.has_column("score");
      checked = true;
    }
    const auto& label = reader.get("list");
    auto [it, fresh] = index.try_emplace(label, lists.size());
    if (fresh) lists.push_back(RankedList{label, {}});
    auto& list = lists[it->second];
    double score = 0.0;
    if (scored) {
      auto v = csv::parse_number(reader.get("score"));
      if (!v) throw InputError(reader.line(), "score is not numeric");
      score = *v;
    }
    const std::string actor = reader.get("actor");
    if (actor.empty()) throw InputError(reader.line(), "actor is empty");
    for (const auto& e : list.entries)
      if (e.first.value == actor) throw InputError(reader.line(), "duplicate actor '" + actor + "' in list");
    list.entries.emplace_back(ActorId{actor}, score);
  }
  for (auto& l : lists) {
    if (scored) {
      sort_ranked(l.entries);
    } else {
      // File order is rank order; synthesize strictly decreasing scores.
      const auto n = l.entries.size();
      for (std::size_t i = 0; i < n; ++i) l.entries[i].second = static_cast<double>(n - i);
    }
  }
  return lists;
}

void write_overlap(std::ostream& out, const std::vector<RankedList>& lists, std::size_t k, const Overlap& overlap) {
  out << "lists:";
  for (const auto& l : lists) out << ' ' << l.label;
  out << "\nk: " << k << "\ncommon:";
  for (const auto& a : overlap.common) out << ' ' << a.value;
  out << "\nsize: " << overlap.size << '\n';
}

std::map<Relation, InteractionGraph> layer_networks(const std::vector<SurveyResponse>& responses, int min_frequency) {
  if (min_frequency < 1) throw InputError("min_frequency must be >= 1");
  std::map<Relation, InteractionGraph> layers;
  for (auto r : kAllRelations) layers.emplace(r, InteractionGraph{});
  for (const auto& r : responses)
    if (r.frequency >= min_frequency) layers[r.relation].add_arc(r.ego, r.alter, static_cast<std::uint64_t>(r.frequency));
  return layers;
}

LayerReport layer_betweenness_report(const std::map<Relation, InteractionGraph>& layers) {
  LayerReport report;
  for (const auto& [rel, g] : layers) {
    if (g.node_count() < 3) {
      report.omitted[rel] = "layer has " + std::to_string(g.node_count()) + " nodes; betweenness needs 3";
      continue;
    }
    auto c = betweenness(g, /*directed=*/true);
    report.rankings[rel] = rank_by(c.scores, c.scores.size(), std::string(to_string(rel)));
  }
  return report;
}

void write_layer_rankings(std::ostream& out, const LayerReport& report) {
  out << "relation,actor,betweenness,rank\n";
  for (const auto& [rel, list] : report.rankings)
    for (std::size_t i = 0; i < list.entries.size(); ++i)
      out << to_string(rel) << ',' << csv::escape(list.entries[i].first.value) << ','
          << csv::fixed(list.entries[i].second, 6) << ',' << i + 1 << '\n';
}

std::map<std::string, RankedList> read_layer_rankings(std::istream& in) {
  std::map<std::string, RankedList> out;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"relation", "actor", "betweenness"});
      checked = true;
    }
    auto v = csv::parse_number(reader.get("betweenness"));
    if (!v) throw InputError(reader.line(), "betweenness is not numeric");
    auto& list = out[reader.get("relation")];
    list.label = reader.get("relation");
    list.entries.emplace_back(ActorId{reader.get("actor")}, *v);
  }
  for (auto& [k, l] : out) sort_ranked(l.entries);
  return out;
}

std::vector<BarrierScore> rank_barriers(const std::vector<BarrierRating>& ratings) {
  if (ratings.empty()) throw InputError("no barrier ratings");
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& r : ratings) {
    auto& [sum, count] = acc[r.barrier];
    sum += r.score;
    ++count;
  }
  std::vector<BarrierScore> out;
  for (const auto& [b, sc] : acc) out.push_back({b, sc.first / static_cast<double>(sc.second)});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (std::fabs(a.mean - b.mean) > 1e-12) return a.mean > b.mean;
    return a.barrier < b.barrier;
  });
  return out;
}

void write_barriers(std::ostream& out, const std::vector<BarrierScore>& ranked) {
  out << "barrier,mean_score,rank\n";
  for (std::size_t i = 0; i < ranked.size(); ++i)
    out << csv::escape(ranked[i].barrier) << ',' << csv::fixed(ranked[i].mean, 6) << ',' << i + 1 << '\n';
}

std::vector<BarrierScore> read_barriers_table(std::istream& in) {
  std::vector<BarrierScore> out;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"barrier", "mean_score"});
      checked = true;
    }
    auto v = csv::parse_number(reader.get("mean_score"));
    if (!v) throw InputError(reader.line(), "mean_score is not numeric");
    out.push_back({reader.get("barrier"), *v});
  }
  return out;
}

std::vector<std::pair<Channel, std::size_t>> platform_usage(const std::vector<SurveyResponse>& responses) {
  std::map<Channel, std::size_t> counts;
  for (const auto& r : responses)
    for (auto p : r.platforms) ++counts[p];
  std::vector<std::pair<Channel, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return to_string(a.first) < to_string(b.first);
  });
  return out;
}

}  // namespace vmirror
