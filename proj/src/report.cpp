#include "vmirror/report.hpp"

#include <algorithm>
#include <sstream>

#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/timeutil.hpp"

namespace vmirror {

namespace {

using namespace svg;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) { return csv::fixed(v, 2); }

std::string xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '"') out += "&quot;";
    else out.push_back(c);
  }
  return out;
}

std::string tick_label(double v) {
  auto s = csv::fixed(v, 2);
  while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
    bool dot = s.back() == '.';
    s.pop_back();
    if (dot) break;
  }
  return s;
}

void open_svg(std::ostringstream& o, const std::string& title) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
    << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight) << "\" fill=\"white\"/>\n"
    << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kTop / 2)
    << "\" font-size=\"12pt\" text-anchor=\"middle\" class=\"title\">" << xml(title) << "</text>\n";
}

void frame(std::ostringstream& o) {
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPlotWidth) << "\" height=\""
    << num(kPlotHeight) << "\" fill=\"none\" stroke=\"black\" class=\"frame\"/>\n";
}

void x_ticks(std::ostringstream& o, double lo, double hi, int count, const std::vector<std::string>& labels = {}) {
  for (int i = 0; i <= count; ++i) {
    const double f = static_cast<double>(i) / count;
    const double x = kLeft + f * kPlotWidth;
    const double y = kTop + kPlotHeight;
    const std::string label = labels.empty() ? tick_label(lo + f * (hi - lo)) : labels[static_cast<std::size_t>(i)];
    o << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x) << "\" y2=\"" << num(y + 5)
      << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(x) << "\" y=\"" << num(y + 18) << "\" font-size=\"10pt\" text-anchor=\"middle\">"
      << xml(label) << "</text>\n";
  }
}

void y_ticks(std::ostringstream& o, double lo, double hi, int count) {
  for (int i = 0; i <= count; ++i) {
    const double f = static_cast<double>(i) / count;
    const double y = kTop + kPlotHeight - f * kPlotHeight;
    o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(y) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" font-size=\"10pt\" text-anchor=\"end\">"
      << tick_label(lo + f * (hi - lo)) << "</text>\n";
  }
}

void axis_titles(std::ostringstream& o, std::string_view x_title, std::string_view y_title) {
  o << "<text x=\"" << num(kLeft + kPlotWidth / 2) << "\" y=\"" << num(kHeight - 15)
    << "\" font-size=\"10pt\" text-anchor=\"middle\" class=\"x-title\">" << xml(x_title) << "</text>\n"
    << "<text x=\"18\" y=\"" << num(kTop + kPlotHeight / 2) << "\" font-size=\"10pt\" text-anchor=\"middle\""
    << " transform=\"rotate(-90 18 " << num(kTop + kPlotHeight / 2) << ")\" class=\"y-title\">" << xml(y_title)
    << "</text>\n";
}

double nice_ceiling(double v) {
  if (v <= 0.0) return 1.0;
  double step = 1.0;
  while (step * 10.0 <= v) step *= 10.0;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * step >= v) return m * step;
  return 10.0 * step;
}

}  // namespace

std::string render_ci_scatter(const std::vector<ActorStats>& stats, std::size_t highlight_top, const std::string& title) {
  std::vector<const ActorStats*> pts;
  for (const auto& s : stats)
    if (s.ci) pts.push_back(&s);
  if (pts.empty()) throw InputError("CI scatter needs at least one actor with a defined contribution index");

  std::vector<const ActorStats*> by_volume = pts;
  std::stable_sort(by_volume.begin(), by_volume.end(), [](const auto* a, const auto* b) {
    const auto va = a->sent + a->received, vb = b->sent + b->received;
    if (va != vb) return va > vb;
    return a->actor < b->actor;
  });
  std::set<ActorId> top;
  for (std::size_t i = 0; i < std::min(highlight_top, by_volume.size()); ++i) top.insert(by_volume[i]->actor);

  std::uint64_t max_sent = 0;
  for (const auto* s : pts) max_sent = std::max(max_sent, s->sent);
  const double x_max = nice_ceiling(static_cast<double>(max_sent));
  auto px = [&](double sent) { return kLeft + sent / x_max * kPlotWidth; };
  auto py = [&](double ci) { return kTop + (1.0 - std::clamp(ci, -1.0, 1.0)) / 2.0 * kPlotHeight; };

  std::ostringstream o;
  open_svg(o, title);
  if (!top.empty()) {
    double lo = x_max, hi = 0.0;
    for (const auto* s : pts)
      if (top.count(s->actor)) {
        lo = std::min(lo, static_cast<double>(s->sent));
        hi = std::max(hi, static_cast<double>(s->sent));
      }
    const double x0 = std::max(kLeft, px(lo) - 6.0), x1 = std::min(kLeft + kPlotWidth, px(hi) + 6.0);
    o << "<rect x=\"" << num(x0) << "\" y=\"" << num(kTop) << "\" width=\"" << num(x1 - x0) << "\" height=\""
      << num(kPlotHeight) << "\" fill=\"#fff3c4\" class=\"highlight\"/>\n";
  }
  frame(o);
  o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(0.0)) << "\" x2=\"" << num(kLeft + kPlotWidth)
    << "\" y2=\"" << num(py(0.0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\" class=\"midline\"/>\n";
  x_ticks(o, 0.0, x_max, 5);
  y_ticks(o, -1.0, 1.0, 4);
  axis_titles(o, "Messages sent", "Contribution index");

  std::vector<const ActorStats*> ordered = pts;
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) { return a->actor < b->actor; });
  for (const auto* s : ordered) {
    const bool hot = top.count(s->actor) != 0;
    o << "<circle cx=\"" << num(px(static_cast<double>(s->sent))) << "\" cy=\"" << num(py(*s->ci))
      << "\" r=\"4\" fill=\"" << (hot ? "#d62728" : "#1f77b4") << "\" class=\"" << (hot ? "top" : "actor")
      << "\"><title>" << xml(s->actor.value) << "</title></circle>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_series(const std::map<ActorId, MetricSeries>& series, const std::string& title) {
  if (series.empty()) throw InputError("series plot needs at least one series");
  const auto& ref = series.begin()->second.points;
  if (ref.empty()) throw InputError("series plot needs at least one window");
  for (const auto& [a, s] : series) {
    if (s.points.size() != ref.size()) throw InputError("series for '" + a.value + "' is not aligned");
    for (std::size_t i = 0; i < ref.size(); ++i)
      if (!(s.points[i].window == ref[i].window)) throw InputError("series for '" + a.value + "' is not aligned");
  }
  const auto t0 = ref.front().window.start, t1 = ref.back().window.end;
  const double span = static_cast<double>((t1 - t0).count());
  auto px = [&](const TimeWindow& w) {
    const double mid = static_cast<double>((w.start - t0).count()) + static_cast<double>((w.end - w.start).count()) / 2.0;
    return kLeft + mid / span * kPlotWidth;
  };
  double y_max = 0.0;
  for (const auto& [a, s] : series)
    for (const auto& p : s.points) y_max = std::max(y_max, p.value);
  y_max = y_max <= 0.0 ? 1.0 : y_max * 1.1;
  auto py = [&](double v) { return kTop + kPlotHeight - v / y_max * kPlotHeight; };

  std::ostringstream o;
  open_svg(o, title);
  frame(o);
  y_ticks(o, 0.0, y_max, 4);
  for (const auto& p : ref)
    o << "<text x=\"" << num(px(p.window)) << "\" y=\"" << num(kTop + kPlotHeight + 18)
      << "\" font-size=\"10pt\" text-anchor=\"middle\">" << format_date(p.window.start) << "</text>\n";
  axis_titles(o, "Window", "Normalized betweenness");

  std::size_t i = 0;
  for (const auto& [a, s] : series) {
    const char* color = kPalette[i % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" class=\"series\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k)
      o << (k ? " " : "") << num(px(s.points[k].window)) << ',' << num(py(s.points[k].value));
    o << "\"><title>" << xml(a.value) << "</title></polyline>\n";
    ++i;
  }
  i = 0;
  for (const auto& [a, s] : series) {
    const double y = kTop + 14.0 + 14.0 * static_cast<double>(i);
    const double x = kLeft + kPlotWidth - 110.0;
    o << "<g class=\"legend\"><line x1=\"" << num(x) << "\" y1=\"" << num(y - 4) << "\" x2=\"" << num(x + 18)
      << "\" y2=\"" << num(y - 4) << "\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\"/><text x=\""
      << num(x + 24) << "\" y=\"" << num(y) << "\" font-size=\"10pt\">" << xml(a.value) << "</text></g>\n";
    ++i;
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_layer_bars(const std::map<std::string, RankedList>& layers, const std::string& title) {
  std::set<ActorId> actors;
  double y_max = 0.0;
  for (const auto& [name, list] : layers)
    for (const auto& [a, v] : list.entries) {
      actors.insert(a);
      y_max = std::max(y_max, v);
    }
  if (actors.empty()) throw InputError("layer chart needs at least one ranked actor");
  y_max = y_max <= 0.0 ? 1.0 : nice_ceiling(y_max * 10.0) / 10.0;
  auto py = [&](double v) { return kTop + kPlotHeight - v / y_max * kPlotHeight; };

  const double group_w = kPlotWidth / static_cast<double>(actors.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(std::max<std::size_t>(layers.size(), 1));

  std::ostringstream o;
  open_svg(o, title);
  frame(o);
  y_ticks(o, 0.0, y_max, 4);
  axis_titles(o, "Actor", "Normalized betweenness");
  std::size_t gi = 0;
  for (const auto& a : actors) {
    const double gx = kLeft + group_w * static_cast<double>(gi);
    std::size_t li = 0;
    for (const auto& [name, list] : layers) {
      double v = 0.0;
      for (const auto& [id, score] : list.entries)
        if (id == a) v = score;
      const double x = gx + group_w * 0.1 + bar_w * static_cast<double>(li);
      o << "<rect x=\"" << num(x) << "\" y=\"" << num(py(v)) << "\" width=\"" << num(bar_w) << "\" height=\""
        << num(kTop + kPlotHeight - py(v)) << "\" fill=\"" << kPalette[li % std::size(kPalette)]
        << "\" class=\"bar\"><title>" << xml(name) << ' ' << xml(a.value) << "</title></rect>\n";
      ++li;
    }
    o << "<text x=\"" << num(gx + group_w / 2) << "\" y=\"" << num(kTop + kPlotHeight + 18)
      << "\" font-size=\"10pt\" text-anchor=\"middle\">" << xml(a.value) << "</text>\n";
    ++gi;
  }
  std::size_t li = 0;
  for (const auto& [name, list] : layers) {
    const double y = kTop + 14.0 + 14.0 * static_cast<double>(li);
    const double x = kLeft + kPlotWidth - 140.0;
    o << "<g class=\"legend\"><rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\""
      << kPalette[li % std::size(kPalette)] << "\"/><text x=\"" << num(x + 16) << "\" y=\"" << num(y)
      << "\" font-size=\"10pt\">" << xml(name) << "</text></g>\n";
    ++li;
  }
  o << "</svg>\n";
  return o.str();
}

std::string mirror_report(const MirrorInputs& in) {
  const bool any = !in.rows.empty() || !in.correlations.empty() || !in.rankings.empty() ||
                   !in.oscillation.empty() || in.group_oscillation || !in.barriers.empty();
  if (!any) throw InputError("report needs at least one input section");

  std::ostringstream o;
  o << "VIRTUAL MIRROR REPORT\n=====================\n\n";
  auto omitted = [&](const char* what) { o << "  (section omitted: no " << what << " supplied)\n\n"; };
  auto cell = [](const MetricValue& m) { return m.value ? csv::fixed(*m.value, 4) : std::string("n/a"); };

  o << "1. Group metrics per window\n";
  if (in.rows.empty()) {
    omitted("metric table");
  } else {
    o << "  window                    density  core/per  GBC     GDC     AWVCI\n";
    for (const auto& r : in.rows) {
      auto [s, e] = format_window_cells(r.window);
      std::string label = s + " .. " + e;
      label.resize(std::max<std::size_t>(label.size(), 26), ' ');
      o << "  " << label << cell(r.density) << "   " << cell(r.core_periphery) << "    " << cell(r.gbc) << "  "
        << cell(r.gdc) << "  " << cell(r.awvci) << '\n';
    }
    o << '\n';
  }

  o << "2. Correlation with performance KPI\n";
  if (in.correlations.empty()) {
    omitted("correlations");
  } else {
    for (const auto& c : in.correlations) {
      std::string name = c.metric;
      name.resize(std::max<std::size_t>(name.size(), 16), ' ');
      if (c.r)
        o << "  " << name << "r = " << csv::fixed(*c.r, 2) << (c.significant ? "*" : " ") << "  p = "
          << (c.p ? csv::fixed(*c.p, 3) : std::string("n/a")) << "  n = " << c.n << '\n';
      else
        o << "  " << name << "undefined (" << c.reason << ")\n";
    }
    o << "  (* p below the significance threshold)\n\n";
  }

  o << "3. Key actors per network (top " << in.top_k << " by betweenness)\n";
  if (in.rankings.empty()) {
    omitted("rankings");
  } else {
    for (const auto& [name, list] : in.rankings) {
      o << "  " << name << ":";
      for (std::size_t i = 0; i < std::min(in.top_k, list.entries.size()); ++i)
        o << ' ' << list.entries[i].first.value;
      o << '\n';
    }
    if (in.rankings.size() >= 2) {
      std::vector<RankedList> lists;
      std::size_t k = in.top_k;
      for (const auto& [name, list] : in.rankings) {
        lists.push_back(list);
        k = std::min(k, list.entries.size());
      }
      if (k > 0) {
        auto ov = topk_overlap(lists, k);
        o << "  common to all " << lists.size() << " networks (top " << k << "):";
        for (const auto& a : ov.common) o << ' ' << a.value;
        o << "  [" << ov.size << " of " << k << "]\n";
      }
    }
    o << '\n';
  }

  o << "4. Betweenness oscillation\n";
  if (in.oscillation.empty() && !in.group_oscillation) {
    omitted("oscillation data");
  } else {
    if (in.group_oscillation) o << "  group oscillation: " << csv::fixed(*in.group_oscillation, 4) << '\n';
    if (!in.oscillation.empty()) {
      double mean = 0.0;
      int max_rev = 0;
      for (const auto& r : in.oscillation) {
        mean += r.normalized;
        max_rev = std::max(max_rev, r.reversals);
      }
      mean /= static_cast<double>(in.oscillation.size());
      o << "  actors: " << in.oscillation.size() << "  mean normalized: " << csv::fixed(mean, 4)
        << "  max reversals: " << max_rev << '\n';
      std::vector<OscillationRow> top = in.oscillation;
      std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
        if (a.reversals != b.reversals) return a.reversals > b.reversals;
        return a.actor < b.actor;
      });
      o << "  most oscillating:";
      for (std::size_t i = 0; i < std::min<std::size_t>(5, top.size()); ++i)
        o << ' ' << top[i].actor.value << '(' << top[i].reversals << ')';
      o << '\n';
    }
    o << '\n';
  }

  o << "5. Barriers to collaboration\n";
  if (in.barriers.empty()) {
    omitted("barrier ratings");
  } else {
    for (std::size_t i = 0; i < in.barriers.size(); ++i)
      o << "  " << i + 1 << ". " << in.barriers[i].barrier << "  (mean " << csv::fixed(in.barriers[i].mean, 2)
        << ")\n";
    o << '\n';
  }
  return o.str();
}

}  // namespace vmirror
