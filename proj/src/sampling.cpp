#include "vmirror/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/rng.hpp"

namespace vmirror {

namespace {

void validate(const TrafficParams& p) {
  if (p.n_actors < 2) throw InputError("n_actors must be >= 2");
  if (p.n_messages < 1) throw InputError("n_messages must be >= 1");
  if (!(p.mean_recipients >= 1.0)) throw InputError("mean_recipients must be >= 1");
  if (p.mean_recipients >= p.n_actors) throw InputError("mean_recipients must be below n_actors");
  if (!(p.recipient_dispersion >= 0.0 && p.recipient_dispersion <= 1.0))
    throw InputError("recipient_dispersion must be within [0, 1]");
  if (p.group_count < 1 || p.group_count > p.n_actors) throw InputError("group_count must be within 1..n_actors");
  if (!(p.in_group_bias >= 0.0 && p.in_group_bias <= 1.0)) throw InputError("in_group_bias must be within [0, 1]");
  if (p.in_group_bias >= 1.0 && p.n_actors < 2 * p.group_count)
    throw InputError("in_group_bias 1 needs at least 2 actors per group");
}

std::size_t extra_recipients(Rng& rng, const TrafficParams& p) {
  const double extra_mean = p.mean_recipients - 1.0;
  if (extra_mean <= 0.0) return 0;
  if (rng.chance(p.recipient_dispersion)) {
    // failures before the first success, success probability 1 / mean_recipients
    const double q = 1.0 - 1.0 / p.mean_recipients;
    const double u = 1.0 - rng.unit();  // (0, 1]
    return static_cast<std::size_t>(std::floor(std::log(u) / std::log(q)));
  }
  const double whole = std::floor(extra_mean);
  return static_cast<std::size_t>(whole) + (rng.chance(extra_mean - whole) ? 1 : 0);
}

// Removes and returns a uniformly chosen element.
std::size_t take(Rng& rng, std::vector<std::size_t>& pool) {
  const auto i = rng.below(pool.size());
  const auto v = pool[i];
  pool[i] = pool.back();
  pool.pop_back();
  return v;
}

}  // namespace

std::vector<InteractionEvent> generate_traffic(const TrafficParams& params) {
  validate(params);
  const auto n = static_cast<std::size_t>(params.n_actors);
  const auto groups = static_cast<std::size_t>(params.group_count);
  const int width = static_cast<int>(std::to_string(n - 1).size());

  std::vector<ActorId> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    ids[i] = ActorId{"u" + std::string(width - digits.size(), '0') + digits};
  }

  Rng rng({params.seed, 0x7a11cULL});
  const Instant start = std::chrono::sys_days{std::chrono::year{2012} / 4 / 1};
  const std::uint64_t span = 91ULL * 24 * 3600;

  std::vector<InteractionEvent> events;
  events.reserve(static_cast<std::size_t>(params.n_messages));
  for (int m = 0; m < params.n_messages; ++m) {
    InteractionEvent ev;
    ev.ts = start + std::chrono::seconds{static_cast<long long>(rng.below(span))};
    const std::size_t sender = rng.below(n);
    ev.sender = ids[sender];

    std::vector<std::size_t> in_group, others;
    for (std::size_t a = 0; a < n; ++a) {
      if (a == sender) continue;
      (a % groups == sender % groups ? in_group : others).push_back(a);
    }
    std::size_t want = std::min(1 + extra_recipients(rng, params), n - 1);
    while (want-- > 0) {
      const bool local = rng.chance(params.in_group_bias);
      std::size_t pick;
      if (local && !in_group.empty()) {
        pick = take(rng, in_group);
      } else if (local && params.in_group_bias >= 1.0) {
        break;
      } else {
        // uniform over every remaining non-sender actor
        const std::size_t total = in_group.size() + others.size();
        if (total == 0) break;
        const auto i = rng.below(total);
        if (i < in_group.size()) {
          pick = in_group[i];
          in_group[i] = in_group.back();
          in_group.pop_back();
        } else {
          const auto j = i - in_group.size();
          pick = others[j];
          others[j] = others.back();
          others.pop_back();
        }
      }
      ev.recipients.push_back(ids[pick]);
    }
    ev.msg_id = "m" + std::to_string(m);
    events.push_back(std::move(ev));
  }
  std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.ts < b.ts; });
  return events;
}

InteractionGraph observe_via_egos(const std::vector<InteractionEvent>& events, const std::set<ActorId>& egos,
                                  bool infer_corecipients) {
  InteractionGraph g(span_of(events));
  for (const auto& ev : events) {
    bool seen = egos.count(ev.sender) != 0;
    for (std::size_t i = 0; !seen && i < ev.recipients.size(); ++i) seen = egos.count(ev.recipients[i]) != 0;
    if (!seen) continue;
    for (const auto& r : ev.recipients) g.add_arc(ev.sender, r);
    if (infer_corecipients)
      for (std::size_t i = 0; i < ev.recipients.size(); ++i)
        for (std::size_t j = i + 1; j < ev.recipients.size(); ++j)
          if (ev.recipients[i] != ev.sender && ev.recipients[j] != ev.sender)
            g.add_inferred(ev.recipients[i], ev.recipients[j]);
  }
  return g;
}

double edge_recall(const InteractionGraph& full, const InteractionGraph& observed) {
  const auto full_edges = full.edge_set();
  if (full_edges.empty()) throw UndefinedError("recall undefined: full graph has no edges");
  for (const auto& n : observed.nodes())
    if (!full.has_node(n)) throw InputError("observed node '" + n.value + "' is not in the full graph");
  std::size_t hit = 0;
  for (const auto& e : observed.edge_set()) hit += full_edges.count(e);
  return static_cast<double>(hit) / static_cast<double>(full_edges.size());
}

namespace {

struct Experiment {
  std::vector<ActorId> actors;
  InteractionGraph full;
  std::vector<std::size_t> ego_counts;

  Experiment(const std::vector<InteractionEvent>& events, const SamplingConfig& config) {
    if (config.trials < 1) throw InputError("trials must be >= 1");
    for (double f : config.fractions)
      if (!(f > 0.0 && f <= 1.0)) throw InputError("sampling fractions must lie in (0, 1]");
    std::set<ActorId> all;
    for (const auto& ev : events) {
      all.insert(ev.sender);
      all.insert(ev.recipients.begin(), ev.recipients.end());
    }
    actors.assign(all.begin(), all.end());
    full = observe_via_egos(events, all, false);
    for (double f : config.fractions) {
      auto m = static_cast<std::size_t>(std::llround(f * static_cast<double>(actors.size())));
      ego_counts.push_back(std::clamp<std::size_t>(m, 1, actors.size()));
    }
  }

  double trial(const std::vector<InteractionEvent>& events, const SamplingConfig& config, std::size_t fi,
               std::size_t ti) const {
    Rng rng({config.seed, static_cast<std::uint64_t>(fi), static_cast<std::uint64_t>(ti)});
    std::vector<std::size_t> idx(actors.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::set<ActorId> egos;
    for (std::size_t k = 0; k < ego_counts[fi]; ++k) {
      const auto j = k + rng.below(idx.size() - k);
      std::swap(idx[k], idx[j]);
      egos.insert(actors[idx[k]]);
    }
    return edge_recall(full, observe_via_egos(events, egos, config.infer_corecipients));
  }

  std::vector<RecallPoint> summarize(const SamplingConfig& config, const std::vector<std::vector<double>>& recalls) const {
    std::vector<RecallPoint> out;
    for (std::size_t fi = 0; fi < recalls.size(); ++fi) {
      const auto& r = recalls[fi];
      double mean = 0.0;
      for (double v : r) mean += v;
      mean /= static_cast<double>(r.size());
      double var = 0.0;
      for (double v : r) var += (v - mean) * (v - mean);
      var /= static_cast<double>(r.size());
      out.push_back({config.fractions[fi], mean, std::sqrt(var), config.trials});
    }
    return out;
  }
};

}  // namespace

std::vector<RecallPoint> run_sampling_experiment_serial(const std::vector<InteractionEvent>& events,
                                                        const SamplingConfig& config) {
  Experiment ex(events, config);
  std::vector<std::vector<double>> recalls(config.fractions.size(), std::vector<double>(config.trials));
  for (std::size_t fi = 0; fi < config.fractions.size(); ++fi)
    for (int ti = 0; ti < config.trials; ++ti) recalls[fi][ti] = ex.trial(events, config, fi, ti);
  return ex.summarize(config, recalls);
}

std::vector<RecallPoint> run_sampling_experiment(const std::vector<InteractionEvent>& events,
                                                 const SamplingConfig& config) {
  Experiment ex(events, config);
  const std::size_t nf = config.fractions.size();
  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<std::vector<double>> recalls(nf, std::vector<double>(trials));
  const auto total = static_cast<long>(nf * trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < total; ++k) {
    const auto fi = static_cast<std::size_t>(k) / trials, ti = static_cast<std::size_t>(k) % trials;
    recalls[fi][ti] = ex.trial(events, config, fi, ti);
  }
  return ex.summarize(config, recalls);
}

void write_recall(std::ostream& out, const std::vector<RecallPoint>& points) {
  out << "fraction,mean_recall,stddev,trials\n";
  for (const auto& p : points)
    out << csv::fixed(p.fraction, 6) << ',' << csv::fixed(p.mean_recall, 6) << ',' << csv::fixed(p.stddev, 6)
        << ',' << p.trials << '\n';
}

}  // namespace vmirror
