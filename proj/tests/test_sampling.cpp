#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vmirror/error.hpp"
#include "vmirror/sampling.hpp"
#include "vmirror/timeutil.hpp"

using namespace vmirror;

namespace {

InteractionEvent msg(const std::string& from, std::vector<std::string> to) {
  InteractionEvent e;
  e.ts = parse_instant("2012-04-02T09:00:00Z");
  e.sender = ActorId{from};
  for (auto& r : to) e.recipients.push_back(ActorId{r});
  return e;
}

std::set<ActorId> ids(std::initializer_list<const char*> list) {
  std::set<ActorId> out;
  for (auto s : list) out.insert(ActorId{s});
  return out;
}

std::size_t group_of(const ActorId& a, int groups) { return std::stoul(a.value.substr(1)) % groups; }

}  // namespace

TEST(GenerateTraffic, DeterministicAndShaped) {
  TrafficParams p;
  p.n_messages = 300;
  auto a = generate_traffic(p), b = generate_traffic(p);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 300u);
  p.seed = 2;
  EXPECT_NE(generate_traffic(p), a);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LE(a[i - 1].ts, a[i].ts);
  for (const auto& ev : a) {
    EXPECT_FALSE(ev.recipients.empty());
    std::set<ActorId> uniq(ev.recipients.begin(), ev.recipients.end());
    EXPECT_EQ(uniq.size(), ev.recipients.size());
    EXPECT_FALSE(uniq.count(ev.sender));
  }
}

TEST(GenerateTraffic, FixedCount) {
  TrafficParams p;
  p.n_actors = 10;
  p.n_messages = 100;
  p.mean_recipients = 1.0;
  p.recipient_dispersion = 0.0;
  for (const auto& ev : generate_traffic(p)) EXPECT_EQ(ev.recipients.size(), 1u);
  p.mean_recipients = 3.0;
  for (const auto& ev : generate_traffic(p)) EXPECT_EQ(ev.recipients.size(), 3u);
}

TEST(GenerateTraffic, MeanRecipients) {
  TrafficParams p;
  p.n_messages = 20000;
  double total = 0;
  for (const auto& ev : generate_traffic(p)) total += static_cast<double>(ev.recipients.size());
  // truncation at n-1 recipients pulls the geometric mean down only slightly
  EXPECT_NEAR(total / p.n_messages, 3.0, 0.1);
}

TEST(GenerateTraffic, FullBiasStaysInGroup) {
  TrafficParams p;
  p.n_actors = 12;
  p.group_count = 3;
  p.in_group_bias = 1.0;
  p.n_messages = 500;
  for (const auto& ev : generate_traffic(p))
    for (const auto& r : ev.recipients) EXPECT_EQ(group_of(r, 3), group_of(ev.sender, 3));
}

TEST(GenerateTraffic, Validation) {
  TrafficParams p;
  p.n_actors = 1;
  EXPECT_THROW(generate_traffic(p), InputError);
  p = {};
  p.mean_recipients = 0.5;
  EXPECT_THROW(generate_traffic(p), InputError);
  p = {};
  p.in_group_bias = 1.5;
  EXPECT_THROW(generate_traffic(p), InputError);
  p = {};
  p.n_actors = 4;
  p.group_count = 4;
  p.mean_recipients = 2;
  p.in_group_bias = 1.0;
  EXPECT_THROW(generate_traffic(p), InputError);
}

TEST(ObserveViaEgos, Examples) {
  std::vector<InteractionEvent> ev{msg("a", {"b"}), msg("c", {"d"})};
  auto g = observe_via_egos(ev, ids({"a"}), false);
  EXPECT_EQ(g.edge_set(), (std::set<Edge>{make_edge(ActorId{"a"}, ActorId{"b"})}));
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(observe_via_egos(ev, {}, false).edge_count(), 0u);

  std::vector<InteractionEvent> cc{msg("x", {"y", "z"})};
  auto off = observe_via_egos(cc, ids({"y"}), false);
  EXPECT_EQ(off.edge_count(), 2u);
  auto on = observe_via_egos(cc, ids({"y"}), true);
  EXPECT_EQ(on.edge_count(), 3u);
  EXPECT_TRUE(on.inferred().count(make_edge(ActorId{"y"}, ActorId{"z"})));
}

TEST(ObserveViaEgos, AllEgosMatchesBuildGraph) {
  TrafficParams p;
  p.n_messages = 400;
  auto ev = generate_traffic(p);
  std::set<ActorId> all;
  for (const auto& e : ev) {
    all.insert(e.sender);
    all.insert(e.recipients.begin(), e.recipients.end());
  }
  EXPECT_EQ(observe_via_egos(ev, all, false), build_graph(ev, span_of(ev), 1));
}

TEST(ObserveViaEgos, SupersetMonotone) {
  TrafficParams p;
  p.n_actors = 20;
  p.n_messages = 300;
  auto ev = generate_traffic(p);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::set<ActorId> small, big;
    for (int i = 0; i < 20; ++i) {
      ActorId a{"u" + std::string(i < 10 ? "0" : "") + std::to_string(i)};
      const auto roll = rng() % 3;
      if (roll == 0) small.insert(a);
      if (roll != 2) big.insert(a);
    }
    for (bool infer : {false, true}) {
      auto e1 = observe_via_egos(ev, small, infer).edge_set();
      auto e2 = observe_via_egos(ev, big, infer).edge_set();
      EXPECT_TRUE(std::includes(e2.begin(), e2.end(), e1.begin(), e1.end()));
    }
  }
}

TEST(EdgeRecall, Examples) {
  std::vector<InteractionEvent> ev{msg("a", {"b"}), msg("c", {"d"})};
  auto full = build_graph(ev, span_of(ev), 1);
  EXPECT_DOUBLE_EQ(edge_recall(full, observe_via_egos(ev, ids({"a"}), false)), 0.5);
  EXPECT_DOUBLE_EQ(edge_recall(full, full), 1.0);
  EXPECT_THROW(edge_recall(InteractionGraph{}, full), UndefinedError);
  auto stranger = observe_via_egos({msg("q", {"r"})}, ids({"q"}), false);
  EXPECT_THROW(edge_recall(full, stranger), InputError);
}

TEST(EdgeRecall, MatchesOracleOnSmallLogs) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    TrafficParams p;
    p.n_actors = 5 + static_cast<int>(rng() % 8);
    p.n_messages = 5 + static_cast<int>(rng() % 40);
    p.mean_recipients = 1.0 + static_cast<double>(rng() % 3);
    p.group_count = 1 + static_cast<int>(rng() % 2);
    p.seed = rng();
    auto ev = generate_traffic(p);
    std::set<ActorId> all, egos;
    for (const auto& e : ev) {
      all.insert(e.sender);
      all.insert(e.recipients.begin(), e.recipients.end());
    }
    for (const auto& a : all)
      if (rng() % 3 == 0) egos.insert(a);
    const auto full = build_graph(ev, span_of(ev), 1);
    for (bool infer : {false, true})
      EXPECT_NEAR(edge_recall(full, observe_via_egos(ev, egos, infer)), oracle::recall(ev, egos, infer), 1e-12);
  }
}

TEST(SamplingExperiment, FullFractionAndReproducible) {
  TrafficParams p;
  p.n_messages = 600;
  auto ev = generate_traffic(p);
  SamplingConfig c;
  c.fractions = {0.1, 0.5, 1.0};
  c.trials = 8;
  auto a = run_sampling_experiment(ev, c);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[2].mean_recall, 1.0);
  EXPECT_EQ(a[2].stddev, 0.0);
  EXPECT_EQ(a[0].trials, 8);
  auto b = run_sampling_experiment_serial(ev, c);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean_recall, b[i].mean_recall);
    EXPECT_EQ(a[i].stddev, b[i].stddev);
  }
  std::ostringstream s1, s2;
  write_recall(s1, a);
  write_recall(s2, run_sampling_experiment(ev, c));
  EXPECT_EQ(s1.str(), s2.str());
  EXPECT_EQ(s1.str().substr(0, 34), "fraction,mean_recall,stddev,trials");
}

TEST(SamplingExperiment, Validation) {
  auto ev = generate_traffic(TrafficParams{});
  SamplingConfig c;
  c.fractions = {0.0};
  EXPECT_THROW(run_sampling_experiment(ev, c), InputError);
  c.fractions = {1.5};
  EXPECT_THROW(run_sampling_experiment(ev, c), InputError);
  c.fractions = {0.5};
  c.trials = 0;
  EXPECT_THROW(run_sampling_experiment(ev, c), InputError);
}
