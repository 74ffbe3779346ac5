#include "vmirror/ingest.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <json.hpp>

#include "vmirror/csv.hpp"
#include "vmirror/error.hpp"
#include "vmirror/timeutil.hpp"

namespace vmirror {

namespace {

constexpr std::array<std::pair<Channel, std::string_view>, 7> kChannels{{
    {Channel::email, "email"},
    {Channel::social, "social"},
    {Channel::content, "content"},
    {Channel::im, "im"},
    {Channel::webconf, "webconf"},
    {Channel::f2f, "f2f"},
    {Channel::video, "video"},
}};

constexpr std::array<std::pair<Relation, std::string_view>, 5> kRelations{{
    {Relation::people_finding, "people_finding"},
    {Relation::collaboration, "collaboration"},
    {Relation::advice, "advice"},
    {Relation::personal, "personal"},
    {Relation::innovation, "innovation"},
}};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

ActorId actor_or_throw(std::string_view raw, std::size_t line, std::string_view what) {
  std::string v = trim(raw);
  if (v.empty()) throw InputError(line, std::string(what) + " is empty");
  return ActorId{std::move(v)};
}

int int_in_range(std::string_view raw, int lo, int hi, std::size_t line, std::string_view what) {
  std::string v = trim(raw);
  int out = 0;
  auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc{} || r.ptr != v.data() + v.size())
    throw InputError(line, std::string(what) + " '" + v + "' is not an integer");
  if (out < lo || out > hi)
    throw InputError(line, std::string(what) + " " + std::to_string(out) + " outside " +
                               std::to_string(lo) + ".." + std::to_string(hi));
  return out;
}

Instant instant_at(std::string_view text, std::size_t line) {
  try {
    return parse_instant(trim(text));
  } catch (const InputError& e) {
    throw InputError(line, e.what());
  }
}

Channel channel_at(std::string_view token, std::size_t line) {
  auto c = channel_from_string(trim(token));
  if (!c) throw InputError(line, "unknown channel '" + std::string(token) + "'");
  return *c;
}

std::vector<InteractionEvent> parse_jsonl(std::istream& in) {
  std::vector<InteractionEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw InputError(line_no, "record is not an object");
    auto str_field = [&](const char* key) -> std::string {
      auto it = obj.find(key);
      if (it == obj.end()) throw InputError(line_no, std::string("missing \"") + key + "\"");
      if (!it->is_string()) throw InputError(line_no, std::string("\"") + key + "\" is not a string");
      return it->get<std::string>();
    };
    InteractionEvent ev;
    ev.ts = instant_at(str_field("ts"), line_no);
    ev.sender = actor_or_throw(str_field("from"), line_no, "sender");
    auto to = obj.find("to");
    if (to == obj.end()) throw InputError(line_no, "missing \"to\"");
    if (to->is_string()) {
      ev.recipients.push_back(actor_or_throw(to->get<std::string>(), line_no, "recipient"));
    } else if (to->is_array()) {
      for (const auto& r : *to) {
        if (!r.is_string()) throw InputError(line_no, "recipient is not a string");
        ev.recipients.push_back(actor_or_throw(r.get<std::string>(), line_no, "recipient"));
      }
    } else {
      throw InputError(line_no, "\"to\" must be an array of strings");
    }
    if (ev.recipients.empty()) throw InputError(line_no, "recipients empty");
    ev.channel = obj.contains("channel") ? channel_at(str_field("channel"), line_no) : Channel::email;
    if (obj.contains("id") && !obj["id"].is_null()) ev.msg_id = str_field("id");
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<InteractionEvent> parse_csv_edges(std::istream& in) {
  std::vector<InteractionEvent> events;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"ts", "from", "to"});
      checked = true;
    }
    InteractionEvent ev;
    ev.ts = instant_at(reader.get("ts"), reader.line());
    ev.sender = actor_or_throw(reader.get("from"), reader.line(), "sender");
    std::string to = trim(reader.get("to"));
    if (to.empty()) throw InputError(reader.line(), "recipients empty");
    ev.recipients.push_back(ActorId{to});
    if (auto ch = reader.get_opt("channel"); ch && !trim(*ch).empty())
      ev.channel = channel_at(*ch, reader.line());
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace

std::string_view to_string(Channel c) {
  for (auto& [k, v] : kChannels)
    if (k == c) return v;
  return "email";
}

std::optional<Channel> channel_from_string(std::string_view token) {
  for (auto& [k, v] : kChannels)
    if (v == token) return k;
  return std::nullopt;
}

std::string_view to_string(Relation r) {
  for (auto& [k, v] : kRelations)
    if (k == r) return v;
  return "collaboration";
}

std::optional<Relation> relation_from_string(std::string_view token) {
  for (auto& [k, v] : kRelations)
    if (v == token) return k;
  return std::nullopt;
}

std::string_view to_string(Scope s) {
  switch (s) {
    case Scope::core: return "core";
    case Scope::peer: return "peer";
    case Scope::ecosystem: return "ecosystem";
  }
  return "ecosystem";
}

std::string_view to_string(WorkType w) { return w == WorkType::remote ? "remote" : "office"; }

std::vector<InteractionEvent> parse_events(std::istream& in, EventFormat format) {
  return format == EventFormat::jsonl ? parse_jsonl(in) : parse_csv_edges(in);
}

void write_events(std::ostream& out, const std::vector<InteractionEvent>& events) {
  for (const auto& ev : events) {
    nlohmann::ordered_json obj;
    obj["ts"] = format_instant(ev.ts);
    obj["from"] = ev.sender.value;
    auto& to = obj["to"] = nlohmann::ordered_json::array();
    for (const auto& r : ev.recipients) to.push_back(r.value);
    obj["channel"] = std::string(to_string(ev.channel));
    if (ev.msg_id) obj["id"] = *ev.msg_id;
    out << obj.dump() << '\n';
  }
}

std::vector<SurveyResponse> parse_survey_responses(std::istream& in, const SurveyScale& scale) {
  using Key = std::tuple<Relation, ActorId, ActorId>;
  std::map<Key, SurveyResponse> merged;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"ego", "alter", "relation", "frequency"});
      checked = true;
    }
    const auto line = reader.line();
    SurveyResponse r;
    r.ego = actor_or_throw(reader.get("ego"), line, "ego");
    r.alter = actor_or_throw(reader.get("alter"), line, "alter");
    if (r.ego == r.alter) throw InputError(line, "self-nomination");
    auto rel = relation_from_string(trim(reader.get("relation")));
    if (!rel) throw InputError(line, "unknown relation '" + reader.get("relation") + "'");
    r.relation = *rel;
    r.frequency = int_in_range(reader.get("frequency"), scale.min_frequency, scale.max_frequency,
                               line, "frequency");
    if (auto p = reader.get_opt("platforms")) {
      std::string_view rest = *p;
      while (!rest.empty()) {
        auto semi = rest.find(';');
        std::string token = trim(rest.substr(0, semi));
        if (!token.empty()) r.platforms.insert(channel_at(token, line));
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
      }
    }
    Key key{r.relation, r.ego, r.alter};
    auto [it, inserted] = merged.try_emplace(key, r);
    if (!inserted) {
      it->second.frequency = std::max(it->second.frequency, r.frequency);
      it->second.platforms.insert(r.platforms.begin(), r.platforms.end());
    }
  }
  std::vector<SurveyResponse> out;
  out.reserve(merged.size());
  for (auto& [k, v] : merged) out.push_back(std::move(v));
  return out;
}

std::vector<BarrierRating> parse_barriers(std::istream& in, const SurveyScale& scale) {
  std::vector<BarrierRating> out;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"respondent", "barrier", "score"});
      checked = true;
    }
    BarrierRating b;
    b.respondent = actor_or_throw(reader.get("respondent"), reader.line(), "respondent");
    b.barrier = trim(reader.get("barrier"));
    if (b.barrier.empty()) throw InputError(reader.line(), "barrier label is empty");
    b.score = int_in_range(reader.get("score"), scale.min_score, scale.max_score, reader.line(), "score");
    out.push_back(std::move(b));
  }
  return out;
}

std::map<ActorId, ActorAttrs> parse_attributes(std::istream& in) {
  std::map<ActorId, ActorAttrs> out;
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"actor"});
      checked = true;
    }
    const auto line = reader.line();
    ActorAttrs a;
    auto months = [&](const char* col) {
      auto cell = reader.get_opt(col);
      if (!cell || trim(*cell).empty()) return 0.0;
      auto v = csv::parse_number(*cell);
      if (!v) throw InputError(line, std::string(col) + " is not numeric");
      if (*v < 0) throw InputError(line, std::string(col) + " is negative");
      return *v;
    };
    a.longevity_org = months("longevity_org");
    a.longevity_group = months("longevity_group");
    if (auto w = reader.get_opt("work_type")) {
      std::string t = trim(*w);
      if (t == "remote") a.work_type = WorkType::remote;
      else if (t == "office" || t.empty()) a.work_type = WorkType::office;
      else throw InputError(line, "unknown work_type '" + t + "'");
    }
    if (auto l = reader.get_opt("location")) a.location = trim(*l);
    if (auto s = reader.get_opt("scope")) {
      std::string t = trim(*s);
      if (t == "core") a.scope = Scope::core;
      else if (t == "peer") a.scope = Scope::peer;
      else a.scope = Scope::ecosystem;
    }
    out[actor_or_throw(reader.get("actor"), line, "actor")] = std::move(a);
  }
  return out;
}

SurveyData parse_survey(std::istream* responses, std::istream* barriers, std::istream* attrs,
                        const SurveyScale& scale) {
  SurveyData d;
  if (responses) d.responses = parse_survey_responses(*responses, scale);
  if (barriers) d.barriers = parse_barriers(*barriers, scale);
  if (attrs) d.attrs = parse_attributes(*attrs);
  return d;
}

KpiSeries parse_kpi(std::istream& in, std::string label) {
  KpiSeries series;
  series.label = std::move(label);
  csv::Reader reader(in);
  bool checked = false;
  while (reader.next()) {
    if (!checked) {
      reader.require({"window_start", "window_end", "value"});
      checked = true;
    }
    KpiPoint p;
    try {
      p.window = parse_window_cells(trim(reader.get("window_start")), trim(reader.get("window_end")));
    } catch (const InputError& e) {
      throw InputError(reader.line(), e.what());
    }
    auto v = csv::parse_number(reader.get("value"));
    if (!v) throw InputError(reader.line(), "value '" + reader.get("value") + "' is not numeric");
    p.value = *v;
    series.points.push_back(p);
  }
  std::stable_sort(series.points.begin(), series.points.end(),
                   [](const KpiPoint& a, const KpiPoint& b) { return a.window.start < b.window.start; });
  for (std::size_t i = 1; i < series.points.size(); ++i)
    if (series.points[i].window.start < series.points[i - 1].window.end)
      throw InputError("KPI windows overlap: " + format_instant(series.points[i - 1].window.start) +
                       " and " + format_instant(series.points[i].window.start));
  return series;
}

std::string decode_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw InputError("hex salt has odd length");
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    unsigned v = 0;
    auto r = std::from_chars(hex.data() + i, hex.data() + i + 2, v, 16);
    if (r.ec != std::errc{} || r.ptr != hex.data() + i + 2) throw InputError("salt is not valid hex");
    out.push_back(static_cast<char>(v));
  }
  return out;
}

Pseudonymized anonymize(const std::vector<InteractionEvent>& events, std::string_view salt) {
  if (salt.empty()) throw InputError("anonymization salt must be nonempty");

  std::set<ActorId> actors;
  for (const auto& ev : events) {
    actors.insert(ev.sender);
    actors.insert(ev.recipients.begin(), ev.recipients.end());
  }

  std::vector<std::pair<std::string, ActorId>> keyed;
  keyed.reserve(actors.size());
  for (const auto& a : actors) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    HMAC(EVP_sha256(), salt.data(), static_cast<int>(salt.size()),
         reinterpret_cast<const unsigned char*>(a.value.data()), a.value.size(), digest, &len);
    keyed.emplace_back(std::string(reinterpret_cast<char*>(digest), len), a);
  }
  std::sort(keyed.begin(), keyed.end());

  std::map<ActorId, ActorId> alias;
  Pseudonymized out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "A-%04zu", i + 1);
    ActorId p{buf};
    alias.emplace(keyed[i].second, p);
    out.mapping.emplace_back(p, keyed[i].second);
  }
  out.events.reserve(events.size());
  for (const auto& ev : events) {
    InteractionEvent e = ev;
    e.sender = alias.at(ev.sender);
    for (auto& r : e.recipients) r = alias.at(r);
    out.events.push_back(std::move(e));
  }
  return out;
}

void write_mapping(std::ostream& out, const std::vector<std::pair<ActorId, ActorId>>& mapping) {
  out << "pseudonym,original\n";
  for (const auto& [p, o] : mapping) out << csv::escape(p.value) << ',' << csv::escape(o.value) << '\n';
}

}  // namespace vmirror
