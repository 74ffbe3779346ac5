// vmirror: command-line front end for the network "virtual mirror" pipeline.
//
// Every subcommand reads documented CSV/JSONL inputs and writes either to the
// file(s) under --out or, for single-output commands without --out, to stdout.
// Exit codes: 0 success, 1 input error, 2 computation undefined.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/graph_io.hpp"
#include "vmirror/ingest.hpp"
#include "vmirror/insight.hpp"
#include "vmirror/metrics.hpp"
#include "vmirror/netbuild.hpp"
#include "vmirror/report.hpp"
#include "vmirror/sampling.hpp"
#include "vmirror/temporal.hpp"
#include "vmirror/timeutil.hpp"

namespace fs = std::filesystem;
using namespace vmirror;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t threshold = 1;
  std::string windows;
  bool anonymize = false;
  std::string salt;
  double alpha = kDefaultAlpha;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

// Writes to <out>/<name> when --out is set, otherwise to stdout.
class Sink {
 public:
  Sink(const Globals& g, const std::string& name) {
    if (g.out.empty()) return;
    fs::create_directories(g.out);
    path_ = (fs::path(g.out) / name).string();
    file_.open(path_, std::ios::binary | std::ios::trunc);
    if (!file_) throw InputError("cannot write '" + path_ + "'");
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

// Always writes into a directory (current directory without --out).
std::ofstream open_out(const Globals& g, const std::string& name) {
  const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + (dir / name).string() + "'");
  return out;
}

EventFormat format_for(const std::string& path, const std::string& requested) {
  if (requested == "jsonl") return EventFormat::jsonl;
  if (requested == "csv") return EventFormat::csv_edges;
  if (requested != "auto") throw InputError("unknown event format '" + requested + "'");
  return fs::path(path).extension() == ".csv" ? EventFormat::csv_edges : EventFormat::jsonl;
}

struct EventSource {
  std::string path;
  std::string format = "auto";

  void bind(CLI::App* cmd) {
    cmd->add_option("events", path, "Event log (.jsonl, or .csv with ts,from,to)")->required();
    cmd->add_option("--format", format, "jsonl | csv | auto")->capture_default_str();
  }

  Pseudonymized load(const Globals& g) const {
    auto in = open_in(path);
    auto events = parse_events(in, format_for(path, format));
    if (!g.anonymize) return {std::move(events), {}};
    if (g.salt.empty()) throw InputError("--anonymize requires --salt <hex>");
    return anonymize(events, decode_hex(g.salt));
  }
};

std::vector<TimeWindow> windows_from(const Globals& g, const std::vector<InteractionEvent>& events) {
  if (g.windows.empty()) return {span_of(events)};
  if (fs::is_regular_file(g.windows)) {
    auto in = open_in(g.windows);
    return make_windows(read_window_file(in));
  }
  return make_windows(parse_window_spec(g.windows));
}

std::string window_tag(const TimeWindow& w) { return format_date(w.start); }

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto v = csv::parse_number(cell);
    if (!v) throw InputError("bad sampling fraction '" + cell + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw InputError("no sampling fractions given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vmirror: communication-network metrics, KPI correlation and sampling experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file");

  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized searches and experiments")->capture_default_str();
  app.add_option("--out", g.out, "Output directory (stdout for single-output commands when omitted)");
  app.add_option("--threshold", g.threshold,
                 "Minimum messages per undirected edge (10/100/300 are the usual presets)")
      ->capture_default_str();
  app.add_option("--windows", g.windows, "anchor=<date>,length=<days>,count=<n> or a window CSV file");
  auto* anon = app.add_flag("--anonymize", g.anonymize, "Replace actor ids with keyed pseudonyms");
  app.add_option("--salt", g.salt, "Hex key for --anonymize")->needs(anon);
  app.add_option("--alpha", g.alpha, "Significance threshold for correlations")->capture_default_str();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate and canonicalize an event log");
  EventSource ingest_src;
  ingest_src.bind(ingest);
  std::string mapping_path;
  ingest->add_option("--mapping", mapping_path, "Also write the pseudonym mapping CSV here");
  ingest->callback([&] {
    auto p = ingest_src.load(g);
    Sink sink(g, "events.jsonl");
    write_events(sink.stream(), p.events);
    if (!mapping_path.empty()) {
      if (!g.anonymize) throw InputError("--mapping requires --anonymize");
      std::ofstream m(mapping_path, std::ios::binary | std::ios::trunc);
      if (!m) throw InputError("cannot write '" + mapping_path + "'");
      write_mapping(m, p.mapping);
    }
  });

  // build
  auto* build = app.add_subcommand("build", "Build thresholded graphs per window and export them");
  EventSource build_src;
  build_src.bind(build);
  std::string graph_format = "graphml", scope = "ecosystem", attrs_path;
  std::size_t top_n = 0;
  build->add_option("--graph-format", graph_format, "graphml | dot")->capture_default_str();
  build->add_option("--attributes", attrs_path, "Actor attribute CSV (enables --scope)");
  build->add_option("--scope", scope, "core_only | core_plus_peer | ecosystem")->capture_default_str();
  build->add_option("--top", top_n, "Keep only the top-N actors by betweenness (0 = all)");
  build->callback([&] {
    if (graph_format != "graphml" && graph_format != "dot")
      throw InputError("unknown graph format '" + graph_format + "'");
    auto events = build_src.load(g).events;
    std::map<ActorId, ActorAttrs> attrs;
    if (!attrs_path.empty()) {
      auto in = open_in(attrs_path);
      attrs = parse_attributes(in);
    }
    const auto mode = scope_mode_from_string(scope);
    if (!mode) throw InputError("unknown scope '" + scope + "'");
    const auto windows = windows_from(g, events);
    const auto graphs = build_graphs(events, windows, g.threshold);
    for (const auto& graph : graphs) {
      auto kept = attrs.empty() ? graph : scope_graph(graph, attrs, *mode);
      if (top_n > 0) kept = top_n_by_betweenness(kept, top_n);
      auto out = open_out(g, "graph_" + window_tag(graph.window()) + "." + graph_format);
      if (graph_format == "graphml")
        write_graphml(out, kept, attrs);
      else
        write_dot(out, kept, attrs);
    }
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Group metric table per window");
  EventSource metrics_src;
  metrics_src.bind(metrics);
  MetricOptions mopts;
  metrics->add_option("--restarts", mopts.cp_restarts, "Core/periphery hill-climbing restarts")
      ->capture_default_str();
  metrics->callback([&] {
    auto events = metrics_src.load(g).events;
    const auto windows = windows_from(g, events);
    const auto graphs = build_graphs(events, windows, g.threshold);
    std::vector<std::vector<ActorStats>> stats;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      // contribution statistics restricted to actors that survive the threshold
      std::vector<ActorStats> kept;
      for (auto& s : actor_stats(events, windows[i]))
        if (graphs[i].has_node(s.actor)) kept.push_back(std::move(s));
      stats.push_back(std::move(kept));
    }
    mopts.seed = g.seed;
    const auto rows = metric_rows(graphs, stats, mopts);
    Sink sink(g, "metrics.csv");
    write_metric_table(sink.stream(), rows);
    bool any = false;
    for (const auto& r : rows) {
      const auto [start, end] = format_window_cells(r.window);
      const MetricValue* cells[] = {&r.density, &r.core_periphery, &r.gbc, &r.gdc, &r.awvci};
      for (std::size_t c = 0; c < std::size(cells); ++c) {
        any |= cells[c]->value.has_value();
        if (!cells[c]->value)
          std::cerr << start << ".." << end << ' ' << kMetricColumns[c] << ": " << cells[c]->reason << '\n';
      }
    }
    if (!any) throw UndefinedError("no metric is defined in any window");
  });

  // timeseries
  auto* timeseries = app.add_subcommand("timeseries", "Per-actor betweenness series and oscillation");
  EventSource ts_src;
  ts_src.bind(timeseries);
  timeseries->callback([&] {
    auto events = ts_src.load(g).events;
    if (g.windows.empty()) throw InputError("timeseries needs --windows");
    WindowSpec spec;
    if (fs::is_regular_file(g.windows)) {
      auto in = open_in(g.windows);
      spec = read_window_file(in);
    } else {
      spec = parse_window_spec(g.windows);
    }
    const auto series = betweenness_series(events, spec, g.threshold);
    auto s_out = open_out(g, "series.csv");
    write_series(s_out, series);
    auto o_out = open_out(g, "oscillation.csv");
    write_oscillation(o_out, oscillation_table(series));
    std::cout << "group oscillation: " << csv::fixed(group_oscillation(series), 6) << '\n';
  });

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Correlate the metric table with a KPI series");
  std::string metrics_path, kpi_path;
  correlate->add_option("--metrics", metrics_path, "Metric table CSV")->required();
  correlate->add_option("--kpi", kpi_path, "KPI CSV window_start,window_end,value")->required();
  correlate->callback([&] {
    auto m_in = open_in(metrics_path);
    auto k_in = open_in(kpi_path);
    const auto rows = read_metric_table(m_in);
    const auto kpi = parse_kpi(k_in);
    Sink sink(g, "correlations.csv");
    write_correlations(sink.stream(), correlate_with_kpi(rows, kpi, g.alpha));
  });

  // compare
  auto* compare = app.add_subcommand("compare", "Intersection of top-k ranked lists");
  std::string lists_path;
  std::size_t compare_k = 10;
  compare->add_option("lists", lists_path, "CSV list,actor[,score]")->required();
  compare->add_option("-k,--top", compare_k, "List depth")->capture_default_str();
  compare->callback([&] {
    auto in = open_in(lists_path);
    const auto lists = read_ranked_lists(in);
    const auto overlap = topk_overlap(lists, compare_k);
    Sink sink(g, "overlap.txt");
    write_overlap(sink.stream(), lists, compare_k, overlap);
  });

  // survey
  auto* survey = app.add_subcommand("survey", "Per-relation betweenness rankings and barrier ranking");
  std::string responses_path, barriers_path;
  int min_frequency = 1;
  SurveyScale scale;
  survey->add_option("--responses", responses_path, "CSV ego,alter,relation,frequency,platforms")->required();
  survey->add_option("--barriers", barriers_path, "CSV respondent,barrier,score");
  survey->add_option("--min-frequency", min_frequency, "Minimum frequency for a tie")->capture_default_str();
  survey->add_option("--scale-min", scale.min_frequency, "Lowest frequency/score on the survey scale")
      ->capture_default_str();
  survey->add_option("--scale-max", scale.max_frequency, "Highest frequency/score on the survey scale")
      ->capture_default_str();
  survey->callback([&] {
    scale.min_score = scale.min_frequency;
    scale.max_score = scale.max_frequency;
    auto r_in = open_in(responses_path);
    const auto responses = parse_survey_responses(r_in, scale);
    const auto report = layer_betweenness_report(layer_networks(responses, min_frequency));
    auto l_out = open_out(g, "layer_rankings.csv");
    write_layer_rankings(l_out, report);
    for (const auto& [rel, why] : report.omitted) std::cerr << to_string(rel) << ": " << why << '\n';
    if (!barriers_path.empty()) {
      auto b_in = open_in(barriers_path);
      auto b_out = open_out(g, "barriers.csv");
      write_barriers(b_out, rank_barriers(parse_barriers(b_in, scale)));
    }
    auto p_out = open_out(g, "platforms.csv");
    p_out << "platform,ties\n";
    for (const auto& [ch, n] : platform_usage(responses)) p_out << to_string(ch) << ',' << n << '\n';
  });

  // sample
  auto* sample = app.add_subcommand("sample", "Ego-mailbox sampling experiment");
  TrafficParams traffic;
  SamplingConfig sconf;
  std::string sample_events, fractions = "0.1,0.25,0.5,0.75,1";
  sample->add_option("--events", sample_events, "Use this event log instead of generated traffic");
  sample->add_option("--actors", traffic.n_actors)->capture_default_str();
  sample->add_option("--messages", traffic.n_messages)->capture_default_str();
  sample->add_option("--mean-recipients", traffic.mean_recipients)->capture_default_str();
  sample->add_option("--dispersion", traffic.recipient_dispersion, "0 = fixed count, 1 = geometric")
      ->capture_default_str();
  sample->add_option("--groups", traffic.group_count)->capture_default_str();
  sample->add_option("--bias", traffic.in_group_bias, "Probability a recipient is drawn in-group")
      ->capture_default_str();
  sample->add_option("--fractions", fractions, "Comma-separated ego fractions")->capture_default_str();
  sample->add_option("--trials", sconf.trials)->capture_default_str();
  sample->add_flag("--infer", sconf.infer_corecipients, "Infer ties between co-recipients");
  sample->callback([&] {
    traffic.seed = g.seed;
    sconf.seed = g.seed;
    sconf.fractions = parse_fractions(fractions);
    std::vector<InteractionEvent> events;
    if (sample_events.empty()) {
      events = generate_traffic(traffic);
    } else {
      auto in = open_in(sample_events);
      events = parse_events(in, format_for(sample_events, "auto"));
    }
    Sink sink(g, "recall.csv");
    write_recall(sink.stream(), run_sampling_experiment(events, sconf));
  });

  // plot
  auto* plot = app.add_subcommand("plot", "Render an SVG figure");
  std::string kind, plot_input;
  std::size_t highlight = 10;
  plot->add_option("kind", kind, "ci | series | layers")->required()->check(CLI::IsMember({"ci", "series", "layers"}));
  plot->add_option("input", plot_input, "Events (ci), series CSV (series) or layer rankings CSV (layers)")
      ->required();
  plot->add_option("--highlight", highlight, "Top actors by volume to highlight (ci)")->capture_default_str();
  plot->callback([&] {
    std::string svg;
    if (kind == "ci") {
      EventSource src{plot_input, "auto"};
      auto events = src.load(g).events;
      const auto window = windows_from(g, events).front();
      svg = render_ci_scatter(actor_stats(events, window), highlight);
    } else if (kind == "series") {
      auto in = open_in(plot_input);
      svg = render_series(read_series(in));
    } else {
      auto in = open_in(plot_input);
      svg = render_layer_bars(read_layer_rankings(in));
    }
    Sink sink(g, kind + ".svg");
    sink.stream() << svg;
  });

  // report
  auto* report = app.add_subcommand("report", "Plain-text mirror report from earlier outputs");
  std::string r_metrics, r_corr, r_rankings, r_lists, r_osc, r_barriers;
  std::size_t report_k = 10;
  report->add_option("--metrics", r_metrics, "Metric table CSV");
  report->add_option("--correlations", r_corr, "Correlation CSV");
  report->add_option("--rankings", r_rankings, "Layer rankings CSV");
  report->add_option("--lists", r_lists, "Ranked lists CSV list,actor[,score]");
  report->add_option("--oscillation", r_osc, "Oscillation CSV");
  report->add_option("--barriers", r_barriers, "Barrier ranking CSV");
  report->add_option("-k,--top", report_k, "Actors listed per network")->capture_default_str();
  report->callback([&] {
    MirrorInputs in;
    in.top_k = report_k;
    if (!r_metrics.empty()) {
      auto s = open_in(r_metrics);
      in.rows = read_metric_table(s);
    }
    if (!r_corr.empty()) {
      auto s = open_in(r_corr);
      in.correlations = read_correlations(s);
    }
    if (!r_rankings.empty()) {
      auto s = open_in(r_rankings);
      in.rankings = read_layer_rankings(s);
    }
    if (!r_lists.empty()) {
      auto s = open_in(r_lists);
      for (auto& l : read_ranked_lists(s)) in.rankings[l.label] = std::move(l);
    }
    if (!r_osc.empty()) {
      auto s = open_in(r_osc);
      in.oscillation = read_oscillation(s);
    }
    if (!r_barriers.empty()) {
      auto s = open_in(r_barriers);
      in.barriers = read_barriers_table(s);
    }
    Sink sink(g, "report.txt");
    sink.stream() << mirror_report(in);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const UndefinedError& e) {
    std::cerr << "undefined: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
