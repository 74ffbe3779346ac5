// Acceptance checks, one PASS/FAIL line per criterion. Usage:
//   vmirror_acceptance <path-to-vmirror-cli> <data-dir> <scratch-dir>
// Every tolerance used below is fixed here.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "oracles.hpp"
#include "vmirror/error.hpp"
#include "vmirror/ingest.hpp"
#include "vmirror/metrics.hpp"
#include "vmirror/sampling.hpp"
#include "vmirror/temporal.hpp"

namespace fs = std::filesystem;
using namespace vmirror;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kCorrelationTol = 0.01;
constexpr double kCorrelationSeconds = 1.0;
constexpr double kOracleTol = 1e-9;
constexpr double kExactTol = 1e-12;
constexpr double kScaleTol = 1e-12;
constexpr double kRecallFloor = 0.9;
constexpr double kSamplingSeconds = 30.0;

std::string g_cli, g_data, g_work;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  auto r = run("correlate --metrics \"" + g_data + "/utilization_metrics.csv\" --kpi \"" + g_data + "/utilization_kpi.csv\"");
  const double secs = seconds_since(t0);
  if (r.status != 0) {
    o.fail("correlate exited " + std::to_string(r.status));
    return o;
  }
  const std::vector<std::pair<std::string, double>> want{
      {"density", -0.83}, {"core_periphery", 0.65}, {"gbc", 0.90}, {"gdc", 0.53}, {"awvci", 0.80}};
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::size_t i = 0;
  std::ostringstream got;
  while (std::getline(in, line) && i < want.size()) {
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    const std::string name = line.substr(0, c1);
    const double v = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    got << (i ? " " : "") << fmt(v);
    if (name != want[i].first) o.fail("row " + std::to_string(i + 1) + " is " + name);
    if (std::fabs(v - want[i].second) > kCorrelationTol) o.fail(name + " r = " + fmt(v));
    ++i;
  }
  if (i != want.size()) o.fail("expected 5 correlation rows");
  if (secs >= kCorrelationSeconds) o.fail("took " + fmt(secs) + " s");
  if (o.pass) o.detail = "r = (" + got.str() + "), " + fmt(secs) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto r = run("compare \"" + g_data + "/key_actor_lists.csv\" -k 10");
  if (r.status != 0) {
    o.fail("compare exited " + std::to_string(r.status));
    return o;
  }
  if (r.out.find("\ncommon: 16 2 27 33 37 42 6\n") == std::string::npos) o.fail("wrong common set: " + r.out);
  if (r.out.find("\nsize: 7\n") == std::string::npos) o.fail("wrong size");
  if (o.pass) o.detail = "common {2,6,16,27,33,37,42}, size 7";
  return o;
}

Outcome criterion3() {
  Outcome o;
  if (contribution_index(10, 0) != 1.0) o.fail("(10,0)");
  if (contribution_index(7, 7) != 0.0) o.fail("(7,7)");
  if (contribution_index(0, 4) != -1.0) o.fail("(0,4)");
  if (o.pass) o.detail = "(10,0)=1 (7,7)=0 (0,4)=-1";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4004);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const auto edges = oracle::random_connected(n, 0.35, rng);
    const auto want = oracle::betweenness(n, edges);
    const auto got = betweenness(oracle::graph(n, edges)).scores;
    for (int v = 0; v < n; ++v) worst = std::max(worst, std::fabs(got.at(ActorId{oracle::name(v)}) - want[v]));
  }
  if (worst > kOracleTol) o.fail("max betweenness error " + fmt(worst));
  for (int k = 3; k <= 8; ++k) {
    for (auto kind : {CentralityKind::betweenness, CentralityKind::degree}) {
      const double star = centralization(oracle::graph(k + 1, oracle::star(k)), kind);
      const double ring = centralization(oracle::graph(k, oracle::cycle(k)), kind);
      if (std::fabs(star - 1.0) > kExactTol) o.fail("star K1," + std::to_string(k) + " = " + fmt(star));
      if (std::fabs(ring) > kExactTol) o.fail("cycle C" + std::to_string(k) + " = " + fmt(ring));
    }
  }
  if (o.pass) o.detail = "200 graphs, max error " + fmt(worst) + "; stars 1, cycles 0";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5005);
  double worst = 0.0;
  int done = 0;
  while (done < 50) {
    const int n = 4 + static_cast<int>(rng() % 7);
    const double p = 0.2 + 0.6 * std::uniform_real_distribution<double>()(rng);
    const auto edges = oracle::random_graph(n, p, rng);
    if (edges.empty() || static_cast<int>(edges.size()) == n * (n - 1) / 2) continue;
    const auto want = oracle::core_periphery(n, edges);
    const auto got = core_periphery(oracle::graph(n, edges), 50, static_cast<std::uint64_t>(done));
    worst = std::max(worst, std::fabs(got.fit - want.fit));
    ++done;
  }
  if (worst > kOracleTol) o.fail("max fit gap " + fmt(worst));

  oracle::Edges ideal{{0, 1}, {1, 2}, {0, 2}};
  for (int c = 0; c < 3; ++c)
    for (int q = 3; q < 6; ++q) ideal.push_back({c, q});
  const double fit = core_periphery(oracle::graph(6, ideal), 50, 0).fit;
  if (std::fabs(fit - 1.0) > kExactTol) o.fail("ideal fixture fit " + fmt(fit));
  if (o.pass) o.detail = "50 graphs, max gap " + fmt(worst) + "; ideal fit " + fmt(fit);
  return o;
}

ActorStats actor(int i, std::uint64_t s, std::uint64_t r) {
  ActorStats a{ActorId{oracle::name(i)}, s, r, std::nullopt};
  if (s + r) a.ci = contribution_index(s, r);
  return a;
}

Outcome criterion6() {
  Outcome o;
  const double uniform = awvci({actor(0, 3, 1), actor(1, 6, 2), actor(2, 30, 10), actor(3, 300, 100)});
  if (std::fabs(uniform) > kExactTol) o.fail("uniform CI gave " + fmt(uniform));
  const double pair = awvci({actor(0, 8, 0), actor(1, 0, 8)});
  if (std::fabs(pair - 1.0) > kExactTol) o.fail("+/-1 pair gave " + fmt(pair));

  std::mt19937_64 rng(6006);
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const std::uint64_t k = 1 + rng() % 100;
    std::vector<ActorStats> base, scaled;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t s = rng() % 200, r = rng() % 200 + (s == 0 ? 1 : 0);
      base.push_back(actor(i, s, r));
      scaled.push_back(actor(i, k * s, k * r));
    }
    const double a = awvci(base), b = awvci(scaled);
    if (a < 0.0 || a > 1.0) o.fail("AWVCI out of range: " + fmt(a));
    worst = std::max(worst, std::fabs(a - b));
  }
  if (worst > kScaleTol) o.fail("scaling changed AWVCI by " + fmt(worst));
  if (o.pass) o.detail = "uniform 0, pair 1, 1000 scalings max delta " + fmt(worst);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto events = generate_traffic(TrafficParams{});
  SamplingConfig config;
  config.fractions = {0.05, 0.1, 0.25, 0.5, 0.75, 1.0};
  config.trials = 30;
  config.seed = 7;
  std::ostringstream curve;
  for (bool infer : {false, true}) {
    config.infer_corecipients = infer;
    const auto pts = run_sampling_experiment(events, config);
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].mean_recall < pts[i - 1].mean_recall)
        o.fail("recall drops at fraction " + fmt(pts[i].fraction) + (infer ? " (inference)" : ""));
    if (pts.back().mean_recall != 1.0) o.fail("fraction 1.0 recall " + fmt(pts.back().mean_recall));
    if (infer) {
      if (pts[2].mean_recall < kRecallFloor) o.fail("fraction 0.25 recall " + fmt(pts[2].mean_recall));
      curve << "0.25 -> " << fmt(pts[2].mean_recall);
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kSamplingSeconds) o.fail("took " + fmt(secs) + " s");
  if (o.pass) o.detail = "monotone, 1.0 at full, " + curve.str() + ", " + fmt(secs) + " s";
  return o;
}

Outcome criterion8() {
  Outcome o;
  if (oscillation({0, 1, 2, 3}) != 0) o.fail("[0,1,2,3]");
  if (oscillation({0, 1, 0, 1}) != 2) o.fail("[0,1,0,1]");
  for (int len = 0; len <= 6; ++len)
    if (oscillation(std::vector<double>(len, 0.4)) != 0) o.fail("constant series");
  std::mt19937_64 rng(8008);
  for (int c = 0; c < 1000; ++c) {
    const std::size_t len = 2 + rng() % 12;
    std::vector<double> v(len);
    for (auto& x : v) x = static_cast<double>(rng() % 4);
    const int k = oscillation(v);
    if (k > static_cast<int>(len) - 2) o.fail("count exceeds length-2");
    std::vector<double> rev(v.rbegin(), v.rend());
    if (oscillation(rev) != k) o.fail("reversal changed the count");
  }
  if (o.pass) o.detail = "examples hold; 1000 random series bounded and reversal-invariant";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const fs::path work(g_work);
  fs::remove_all(work);
  fs::create_directories(work);
  TrafficParams p;
  p.n_messages = 2000;
  {
    std::ofstream ev(work / "events.jsonl", std::ios::binary);
    write_events(ev, generate_traffic(p));
  }
  const std::string events = "\"" + (work / "events.jsonl").string() + "\"";
  const std::string windows = " --windows anchor=2012-04-01,length=14,count=5 --threshold 2 --seed 3";
  for (int rep = 0; rep < 2; ++rep) {
    const std::string out = " --out \"" + (work / ("run" + std::to_string(rep))).string() + "\"";
    const std::pair<std::string, std::string> cmds[] = {
        {"metrics", "metrics " + events + windows + out},
        {"sample", "sample --trials 10 --fractions 0.1,0.5,1 --infer --seed 3" + out},
        {"timeseries", "timeseries " + events + windows + out},
        {"plot ci", "plot ci " + events + out},
        {"plot series", "plot series \"" + (work / ("run" + std::to_string(rep)) / "series.csv").string() + "\"" + out}};
    for (const auto& [name, args] : cmds) {
      const auto r = run(args);
      if (r.status != 0) o.fail(name + " exited " + std::to_string(r.status));
    }
  }
  std::size_t compared = 0;
  for (const char* f : {"metrics.csv", "recall.csv", "ci.svg", "series.svg"}) {
    const auto a = work / "run0" / f, b = work / "run1" / f;
    if (!fs::exists(a) || !fs::exists(b)) {
      o.fail(std::string(f) + " missing");
      continue;
    }
    const auto sa = slurp(a);
    if (sa.empty() || sa != slurp(b)) o.fail(std::string(f) + " differs between runs");
    ++compared;
  }
  if (o.pass) o.detail = std::to_string(compared) + " outputs byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: vmirror_acceptance <cli> <data-dir> <scratch-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_data = argv[2];
  g_work = argv[3];

  Outcome (*checks[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                           criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < std::size(checks); ++i) {
    Outcome o;
    try {
      o = checks[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << '\n';
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
