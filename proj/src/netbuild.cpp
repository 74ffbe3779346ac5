#include "vmirror/netbuild.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/metrics.hpp"
#include "vmirror/timeutil.hpp"

namespace vmirror {

void InteractionGraph::add_arc(const ActorId& from, const ActorId& to, std::uint64_t weight) {
  if (from == to || weight == 0) return;
  nodes_.insert(from);
  nodes_.insert(to);
  arcs_[{from, to}] += weight;
}

void InteractionGraph::add_inferred(const ActorId& a, const ActorId& b) {
  if (a == b) return;
  nodes_.insert(a);
  nodes_.insert(b);
  inferred_.insert(make_edge(a, b));
}

std::uint64_t InteractionGraph::arc_weight(const ActorId& from, const ActorId& to) const {
  auto it = arcs_.find({from, to});
  return it == arcs_.end() ? 0 : it->second;
}

std::map<Edge, std::uint64_t> InteractionGraph::undirected() const {
  std::map<Edge, std::uint64_t> out;
  for (const auto& [arc, w] : arcs_) out[make_edge(arc.first, arc.second)] += w;
  for (const auto& e : inferred_) out.try_emplace(e, 0);
  return out;
}

std::set<Edge> InteractionGraph::edge_set() const {
  std::set<Edge> out(inferred_);
  for (const auto& [arc, w] : arcs_) out.insert(make_edge(arc.first, arc.second));
  return out;
}

InteractionGraph InteractionGraph::induced(const std::set<ActorId>& keep) const {
  InteractionGraph g(window_);
  for (const auto& n : nodes_)
    if (keep.count(n)) g.nodes_.insert(n);
  for (const auto& [arc, w] : arcs_)
    if (g.has_node(arc.first) && g.has_node(arc.second)) g.arcs_.emplace(arc, w);
  for (const auto& e : inferred_)
    if (g.has_node(e.first) && g.has_node(e.second)) g.inferred_.insert(e);
  return g;
}

Adjacency Adjacency::from_graph(const InteractionGraph& g, bool directed) {
  Adjacency adj;
  adj.ids.assign(g.nodes().begin(), g.nodes().end());
  adj.out.resize(adj.ids.size());
  auto index = [&](const ActorId& a) {
    return static_cast<std::uint32_t>(std::lower_bound(adj.ids.begin(), adj.ids.end(), a) - adj.ids.begin());
  };
  if (directed) {
    for (const auto& [arc, w] : g.arcs()) adj.out[index(arc.first)].push_back(index(arc.second));
  } else {
    for (const auto& e : g.edge_set()) {
      auto a = index(e.first), b = index(e.second);
      adj.out[a].push_back(b);
      adj.out[b].push_back(a);
    }
  }
  for (auto& nbrs : adj.out) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return adj;
}

std::vector<TimeWindow> make_windows(const WindowSpec& spec) {
  if (const auto* run = std::get_if<WindowRun>(&spec)) {
    if (run->count < 0) throw InputError("window count must be >= 0");
    if (run->count > 0 && run->length_days < 1) throw InputError("window length must be >= 1 day");
    std::vector<TimeWindow> out;
    const auto len = std::chrono::days{run->length_days};
    for (int i = 0; i < run->count; ++i) {
      Instant s = run->anchor + len * i;
      out.push_back({s, s + len});
    }
    return out;
  }
  auto out = std::get<std::vector<TimeWindow>>(spec);
  for (const auto& w : out)
    if (!(w.start < w.end)) throw InputError("window start must precede end");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].start < out[i - 1].end)
      throw InputError("overlap between windows starting " + format_instant(out[i - 1].start) +
                       " and " + format_instant(out[i].start));
  return out;
}

WindowSpec parse_window_spec(std::string_view text) {
  WindowRun run;
  bool have_anchor = false;
  std::string_view rest = text;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("window spec item '" + std::string(item) + "' lacks '='");
    auto key = item.substr(0, eq);
    auto val = item.substr(eq + 1);
    auto as_int = [&](int& out) {
      auto r = std::from_chars(val.data(), val.data() + val.size(), out);
      if (r.ec != std::errc{} || r.ptr != val.data() + val.size())
        throw InputError("window spec '" + std::string(key) + "' is not an integer");
    };
    if (key == "anchor") {
      run.anchor = parse_instant(val);
      have_anchor = true;
    } else if (key == "length") {
      as_int(run.length_days);
    } else if (key == "count") {
      as_int(run.count);
    } else {
      throw InputError("unknown window spec key '" + std::string(key) + "'");
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (!have_anchor) throw InputError("window spec needs anchor=<date>");
  return run;
}

WindowSpec read_window_file(std::istream& in) {
  std::vector<TimeWindow> out;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"window_start", "window_end"});
      checked = true;
    }
    try {
      out.push_back(parse_window_cells(reader.get("window_start"), reader.get("window_end")));
    } catch (const InputError& e) {
      throw InputError(reader.line(), e.what());
    }
  }
  return out;
}

InteractionGraph build_graph(const std::vector<InteractionEvent>& events, const TimeWindow& window,
                             std::uint64_t min_edge_weight) {
  if (min_edge_weight < 1) throw InputError("min_edge_weight must be >= 1");
  InteractionGraph all(window);
  for (const auto& ev : events) {
    if (!window.contains(ev.ts)) continue;
    for (const auto& r : ev.recipients) all.add_arc(ev.sender, r);
  }
  if (min_edge_weight == 1) return all;

  InteractionGraph kept(window);
  const auto totals = all.undirected();
  for (const auto& [arc, w] : all.arcs())
    if (totals.at(make_edge(arc.first, arc.second)) >= min_edge_weight) kept.add_arc(arc.first, arc.second, w);
  return kept;
}

std::vector<InteractionGraph> build_graphs(const std::vector<InteractionEvent>& events,
                                           const std::vector<TimeWindow>& windows,
                                           std::uint64_t min_edge_weight) {
  if (min_edge_weight < 1) throw InputError("min_edge_weight must be >= 1");
  std::vector<InteractionGraph> out(windows.size());
  const auto n = static_cast<long>(windows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = build_graph(events, windows[i], min_edge_weight);
  return out;
}

std::optional<ScopeMode> scope_mode_from_string(std::string_view token) {
  if (token == "core_only" || token == "core") return ScopeMode::core_only;
  if (token == "core_plus_peer" || token == "peer") return ScopeMode::core_plus_peer;
  if (token == "ecosystem") return ScopeMode::ecosystem;
  return std::nullopt;
}

InteractionGraph scope_graph(const InteractionGraph& g, const std::map<ActorId, ActorAttrs>& attrs,
                             ScopeMode mode) {
  if (mode == ScopeMode::ecosystem) return g;
  std::set<ActorId> keep;
  for (const auto& n : g.nodes()) {
    auto it = attrs.find(n);
    Scope s = it == attrs.end() ? Scope::ecosystem : it->second.scope;
    bool admitted = s == Scope::core || (mode == ScopeMode::core_plus_peer && s == Scope::peer);
    if (admitted) keep.insert(n);
  }
  return g.induced(keep);
}

InteractionGraph top_n_by_betweenness(const InteractionGraph& g, std::size_t n) {
  if (n < 1) throw InputError("top-n requires n >= 1");
  if (n >= g.node_count()) return g;
  auto scores = betweenness(g).scores;
  std::vector<std::pair<ActorId, double>> ranked(scores.begin(), scores.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::set<ActorId> keep;
  for (std::size_t i = 0; i < n; ++i) keep.insert(ranked[i].first);
  return g.induced(keep);
}

std::vector<ActorStats> actor_stats(const std::vector<InteractionEvent>& events, const TimeWindow& window) {
  std::map<ActorId, ActorStats> acc;
  for (const auto& ev : events) {
    if (!window.contains(ev.ts)) continue;
    bool any = false;
    for (const auto& r : ev.recipients) {
      if (r == ev.sender) continue;
      auto& s = acc[r];
      s.actor = r;
      ++s.received;
      any = true;
    }
    if (any) {
      auto& s = acc[ev.sender];
      s.actor = ev.sender;
      ++s.sent;
    }
  }
  std::vector<ActorStats> out;
  out.reserve(acc.size());
  for (auto& [id, s] : acc) {
    s.ci = contribution_index(s.sent, s.received);
    out.push_back(std::move(s));
  }
  return out;
}

TimeWindow span_of(const std::vector<InteractionEvent>& events) {
  if (events.empty()) return {};
  auto [lo, hi] = std::minmax_element(events.begin(), events.end(),
                                      [](const auto& a, const auto& b) { return a.ts < b.ts; });
  return {lo->ts, hi->ts + std::chrono::seconds{1}};
}

}  // namespace vmirror
