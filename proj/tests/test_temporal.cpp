#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vmirror/error.hpp"
#include "vmirror/temporal.hpp"
#include "vmirror/timeutil.hpp"

using namespace vmirror;

namespace {

InteractionEvent msg(Instant ts, const std::string& from, const std::string& to) {
  return InteractionEvent{ts, ActorId{from}, {ActorId{to}}, Channel::email, std::nullopt};
}

const Instant kAnchor = parse_instant("2012-04-01");
const WindowRun kThreeWeeks{kAnchor, 7, 3};

Instant day(int d) { return kAnchor + std::chrono::days{d} + std::chrono::hours{9}; }

MetricSeries series_of(std::vector<double> v) {
  MetricSeries s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Instant t = kAnchor + std::chrono::days{static_cast<int>(i)};
    s.points.push_back({{t, t + std::chrono::days{1}}, v[i]});
  }
  return s;
}

}  // namespace

TEST(BetweennessSeries, AbsentActorScoresZero) {
  // Week 1: b is the hub of a-b-c. Week 2: only a-c talk.
  std::vector<InteractionEvent> ev{msg(day(1), "a", "b"), msg(day(1), "b", "c"), msg(day(8), "a", "c")};
  auto s = betweenness_series(ev, WindowRun{kAnchor, 7, 2}, 1);
  auto b = s.at(ActorId{"b"}).values();
  ASSERT_EQ(b.size(), 2u);
  EXPECT_GT(b[0], 0.0);
  EXPECT_EQ(b[1], 0.0);
}

TEST(BetweennessSeries, SinglePairAllZero) {
  std::vector<InteractionEvent> ev;
  for (int d = 0; d < 21; d += 3) ev.push_back(msg(day(d), "a", "b"));
  auto s = betweenness_series(ev, kThreeWeeks, 1);
  ASSERT_EQ(s.size(), 2u);
  for (auto& [a, series] : s)
    for (double v : series.values()) EXPECT_EQ(v, 0.0);
}

TEST(BetweennessSeries, RotatingStarCenter) {
  const std::vector<std::string> actors{"h0", "h1", "h2", "x", "y"};
  std::vector<InteractionEvent> ev;
  for (int w = 0; w < 3; ++w)
    for (const auto& leaf : actors)
      if (leaf != actors[w]) ev.push_back(msg(day(7 * w + 2), actors[w], leaf));
  auto s = betweenness_series(ev, kThreeWeeks, 1);
  auto windows = make_windows(kThreeWeeks);
  for (int w = 0; w < 3; ++w) {
    // per-window oracle: hub of a 5-node star
    std::vector<double> want = oracle::betweenness(5, oracle::star(4));
    auto vals = s.at(ActorId{actors[w]}).values();
    EXPECT_NEAR(vals[w], want[0], 1e-12);
    int peak = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    EXPECT_EQ(peak, w);
    for (int other = 0; other < 3; ++other)
      if (other != w) EXPECT_EQ(vals[other], 0.0);
  }
}

TEST(BetweennessSeries, NeedsTwoWindows) {
  EXPECT_THROW(betweenness_series({}, WindowRun{kAnchor, 7, 1}, 1), InputError);
}

TEST(Oscillation, Examples) {
  EXPECT_EQ(oscillation(std::vector<double>{0, 1, 2, 3}), 0);
  EXPECT_EQ(oscillation(std::vector<double>{0, 1, 0, 1}), 2);
  EXPECT_EQ(oscillation(std::vector<double>{1, 1, 1}), 0);
  EXPECT_EQ(oscillation(std::vector<double>{5}), 0);
  // plateau carries the previous direction: up, flat, down = 1 reversal
  EXPECT_EQ(oscillation(std::vector<double>{0, 1, 1, 0}), 1);
  EXPECT_EQ(oscillation(std::vector<double>{0, 1, 1, 2}), 0);
}

TEST(Oscillation, Properties) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1), scale(0.01, 100);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = 1 + rng() % 12;
    std::vector<double> v(len);
    for (auto& x : v) x = rng() % 3 ? std::round(u(rng) * 3) : u(rng);
    const int k = oscillation(v);
    EXPECT_LE(k, std::max<int>(0, static_cast<int>(len) - 2));
    std::vector<double> rev(v.rbegin(), v.rend());
    EXPECT_EQ(oscillation(rev), k);
    const double a = scale(rng), b = u(rng) * 10;
    std::vector<double> affine;
    for (double x : v) affine.push_back(a * x + b);
    EXPECT_EQ(oscillation(affine), k);
  }
}

TEST(GroupOscillation, Normalization) {
  std::map<ActorId, MetricSeries> constant{{ActorId{"a"}, series_of({1, 1, 1})}, {ActorId{"b"}, series_of({0, 0, 0})}};
  EXPECT_DOUBLE_EQ(group_oscillation(constant), 0.0);

  std::map<ActorId, MetricSeries> mixed{{ActorId{"a"}, series_of({0, 1, 0, 1})},
                                        {ActorId{"b"}, series_of({2, 2, 2, 2})},
                                        {ActorId{"c"}, series_of({0, 0, 0, 0})}};
  EXPECT_NEAR(group_oscillation(mixed), (2.0 / 2.0 + 0 + 0) / 3.0, 1e-15);

  std::map<ActorId, MetricSeries> short_series{{ActorId{"a"}, series_of({0, 1})}};
  EXPECT_EQ(group_oscillation(short_series), 0.0);
  EXPECT_THROW(group_oscillation({}), InputError);
}

TEST(GroupOscillation, UnitIntervalProperty) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<ActorId, MetricSeries> set;
    const std::size_t len = 1 + rng() % 10;
    for (int a = 0; a < 1 + static_cast<int>(rng() % 6); ++a) {
      std::vector<double> v(len);
      for (auto& x : v) x = static_cast<double>(rng() % 4);
      set[ActorId{std::to_string(a)}] = series_of(v);
    }
    const double g = group_oscillation(set);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);
  }
}

TEST(SeriesCsv, WriteReadAndOscillationTable) {
  std::map<ActorId, MetricSeries> s{{ActorId{"a"}, series_of({0, 0.5, 0})}, {ActorId{"b"}, series_of({1, 1, 1})}};
  std::ostringstream out;
  write_series(out, s);
  EXPECT_EQ(out.str().substr(0, 44), "actor,window_start,value\na,2012-04-01,0.0000");
  std::istringstream in(out.str());
  auto back = read_series(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.at(ActorId{"a"}).values(), (std::vector<double>{0, 0.5, 0}));
  EXPECT_EQ(back.at(ActorId{"a"}).points[2].window, s.at(ActorId{"a"}).points[2].window);

  auto table = oscillation_table(s);
  std::ostringstream osc;
  write_oscillation(osc, table);
  EXPECT_EQ(osc.str(), "actor,reversals,normalized\na,1,1.000000\nb,0,0.000000\n");
  std::istringstream oin(osc.str());
  EXPECT_EQ(read_oscillation(oin).at(0).reversals, 1);
}
