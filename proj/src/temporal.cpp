#include "vmirror/temporal.hpp"

#include <algorithm>

#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/metrics.hpp"
#include "vmirror/timeutil.hpp"

namespace vmirror {

std::vector<double> MetricSeries::values() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value);
  return out;
}

std::map<ActorId, MetricSeries> betweenness_series(const std::vector<InteractionEvent>& events,
                                                   const WindowSpec& spec, std::uint64_t min_edge_weight) {
  const auto windows = make_windows(spec);
  if (windows.size() < 2) throw InputError("betweenness series needs at least 2 windows");
  const auto graphs = build_graphs(events, windows, min_edge_weight);

  std::vector<std::map<ActorId, double>> per_window(windows.size());
  const auto n = static_cast<long>(windows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) per_window[i] = betweenness(graphs[i]).scores;

  std::set<ActorId> actors;
  for (const auto& m : per_window)
    for (const auto& [a, v] : m) actors.insert(a);

  std::map<ActorId, MetricSeries> out;
  for (const auto& a : actors) {
    MetricSeries s;
    s.label = a.value;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      auto it = per_window[i].find(a);
      s.points.push_back({windows[i], it == per_window[i].end() ? 0.0 : it->second});
    }
    out.emplace(a, std::move(s));
  }
  return out;
}

int oscillation(const std::vector<double>& values) {
  int reversals = 0;
  int direction = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    const int sign = (d > 0) - (d < 0);
    if (sign == 0) continue;
    if (direction != 0 && sign != direction) ++reversals;
    direction = sign;
  }
  return reversals;
}

double normalized_oscillation(const MetricSeries& s) {
  if (s.points.size() < 3) return 0.0;
  return static_cast<double>(oscillation(s)) / static_cast<double>(s.points.size() - 2);
}

double group_oscillation(const std::map<ActorId, MetricSeries>& series) {
  if (series.empty()) throw InputError("group oscillation needs at least one series");
  double sum = 0.0;
  for (const auto& [a, s] : series) sum += normalized_oscillation(s);
  return sum / static_cast<double>(series.size());
}

std::vector<OscillationRow> oscillation_table(const std::map<ActorId, MetricSeries>& series) {
  std::vector<OscillationRow> rows;
  for (const auto& [a, s] : series) rows.push_back({a, oscillation(s), normalized_oscillation(s)});
  return rows;
}

void write_series(std::ostream& out, const std::map<ActorId, MetricSeries>& series) {
  out << "actor,window_start,value\n";
  for (const auto& [a, s] : series)
    for (const auto& p : s.points)
      out << csv::escape(a.value) << ',' << format_window_cells(p.window).first << ','
          << csv::fixed(p.value, 6) << '\n';
}

std::map<ActorId, MetricSeries> read_series(std::istream& in) {
  // Windows are recovered from the distinct starts: each ends at the next
  // start, the last one spans the same length as its predecessor (one day
  // if it is the only window).
  std::vector<std::tuple<ActorId, Instant, double>> rows;
  std::set<Instant> starts;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"actor", "window_start", "value"});
      checked = true;
    }
    auto v = csv::parse_number(reader.get("value"));
    if (!v) throw InputError(reader.line(), "value is not numeric");
    Instant t;
    try {
      t = parse_instant(reader.get("window_start"));
    } catch (const InputError& e) {
      throw InputError(reader.line(), e.what());
    }
    rows.emplace_back(ActorId{reader.get("actor")}, t, *v);
    starts.insert(t);
  }
  std::map<Instant, TimeWindow> windows;
  std::vector<Instant> sorted(starts.begin(), starts.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Instant end;
    if (i + 1 < sorted.size()) end = sorted[i + 1];
    else if (i > 0) end = sorted[i] + (sorted[i] - sorted[i - 1]);
    else end = sorted[i] + std::chrono::days{1};
    windows[sorted[i]] = {sorted[i], end};
  }
  std::map<ActorId, MetricSeries> out;
  for (auto& [a, t, v] : rows) {
    auto& s = out[a];
    s.label = a.value;
    s.points.push_back({windows.at(t), v});
  }
  for (auto& [a, s] : out)
    std::stable_sort(s.points.begin(), s.points.end(),
                     [](const auto& x, const auto& y) { return x.window.start < y.window.start; });
  return out;
}

void write_oscillation(std::ostream& out, const std::vector<OscillationRow>& rows) {
  out << "actor,reversals,normalized\n";
  for (const auto& r : rows)
    out << csv::escape(r.actor.value) << ',' << r.reversals << ',' << csv::fixed(r.normalized, 6) << '\n';
}

std::vector<OscillationRow> read_oscillation(std::istream& in) {
  std::vector<OscillationRow> rows;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"actor", "reversals", "normalized"});
      checked = true;
    }
    auto rev = csv::parse_number(reader.get("reversals"));
    auto norm = csv::parse_number(reader.get("normalized"));
    if (!rev || !norm) throw InputError(reader.line(), "oscillation values must be numeric");
    rows.push_back({ActorId{reader.get("actor")}, static_cast<int>(*rev), *norm});
  }
  return rows;
}

}  // namespace vmirror
