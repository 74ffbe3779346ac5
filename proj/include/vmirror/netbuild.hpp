#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "vmirror/ingest.hpp"
#include "vmirror/types.hpp"

namespace vmirror {

using Arc = std::pair<ActorId, ActorId>;   // (sender, recipient)
using Edge = std::pair<ActorId, ActorId>;  // undirected, first < second

inline Edge make_edge(const ActorId& a, const ActorId& b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Weighted directed communication graph for one window. Nodes and arcs are
/// kept in ascending id order so iteration (and export) is deterministic.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  explicit InteractionGraph(TimeWindow window) : window_(window) {}

  void add_node(const ActorId& a) { nodes_.insert(a); }
  /// Adds weight to arc (from, to); self-loops are ignored.
  void add_arc(const ActorId& from, const ActorId& to, std::uint64_t weight = 1);
  /// Undirected tie that was inferred rather than observed (sampling module).
  void add_inferred(const ActorId& a, const ActorId& b);

  const TimeWindow& window() const { return window_; }
  const std::set<ActorId>& nodes() const { return nodes_; }
  const std::map<Arc, std::uint64_t>& arcs() const { return arcs_; }
  const std::set<Edge>& inferred() const { return inferred_; }

  std::size_t node_count() const { return nodes_.size(); }
  bool has_node(const ActorId& a) const { return nodes_.count(a) != 0; }
  std::uint64_t arc_weight(const ActorId& from, const ActorId& to) const;

  /// Undirected view: weight is the sum of both opposing arcs. Inferred ties
  /// appear with weight 0.
  std::map<Edge, std::uint64_t> undirected() const;
  std::set<Edge> edge_set() const;
  std::size_t edge_count() const { return edge_set().size(); }

  InteractionGraph induced(const std::set<ActorId>& keep) const;

  bool operator==(const InteractionGraph&) const = default;

 private:
  TimeWindow window_{};
  std::set<ActorId> nodes_;
  std::map<Arc, std::uint64_t> arcs_;
  std::set<Edge> inferred_;
};

/// Compact index form of a graph's undirected (or directed) binary adjacency.
/// Index i corresponds to ids[i]; ids ascending.
struct Adjacency {
  std::vector<ActorId> ids;
  std::vector<std::vector<std::uint32_t>> out;  // sorted neighbour lists

  std::size_t size() const { return ids.size(); }
  static Adjacency from_graph(const InteractionGraph& g, bool directed);
};

struct WindowRun {
  Instant anchor;
  int length_days = 14;
  int count = 0;
};

/// Either an explicit list or an anchored run of equal-length windows.
using WindowSpec = std::variant<std::vector<TimeWindow>, WindowRun>;

std::vector<TimeWindow> make_windows(const WindowSpec& spec);

/// Spec string "anchor=2012-04-01,length=14,count=5" or a CSV with header
/// window_start,window_end.
WindowSpec parse_window_spec(std::string_view text);
WindowSpec read_window_file(std::istream& in);

InteractionGraph build_graph(const std::vector<InteractionEvent>& events, const TimeWindow& window,
                             std::uint64_t min_edge_weight);

/// Builds every window independently (OpenMP over windows).
std::vector<InteractionGraph> build_graphs(const std::vector<InteractionEvent>& events,
                                           const std::vector<TimeWindow>& windows,
                                           std::uint64_t min_edge_weight);

enum class ScopeMode { core_only, core_plus_peer, ecosystem };

std::optional<ScopeMode> scope_mode_from_string(std::string_view token);

InteractionGraph scope_graph(const InteractionGraph& g, const std::map<ActorId, ActorAttrs>& attrs,
                             ScopeMode mode);

/// Induced subgraph on the n nodes of highest normalized undirected
/// betweenness; ties by ascending id.
InteractionGraph top_n_by_betweenness(const InteractionGraph& g, std::size_t n);

struct ActorStats {
  ActorId actor;
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::optional<double> ci;
};

/// A multi-recipient message counts once for the sender and once per
/// recipient copy. Actors with no traffic in the window are omitted.
std::vector<ActorStats> actor_stats(const std::vector<InteractionEvent>& events,
                                    const TimeWindow& window);

/// The window covering every event timestamp; empty input gives a zero-length window.
TimeWindow span_of(const std::vector<InteractionEvent>& events);

}  // namespace vmirror
