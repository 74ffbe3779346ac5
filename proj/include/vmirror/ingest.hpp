#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "vmirror/types.hpp"

namespace vmirror {

enum class WorkType { office, remote };
enum class Scope { core, peer, ecosystem };

std::string_view to_string(Scope s);
std::string_view to_string(WorkType w);

struct ActorAttrs {
  double longevity_org = 0.0;    // months
  double longevity_group = 0.0;  // months
  WorkType work_type = WorkType::office;
  std::string location;
  Scope scope = Scope::ecosystem;
};

enum class Relation { people_finding, collaboration, advice, personal, innovation };

inline constexpr Relation kAllRelations[] = {Relation::people_finding, Relation::collaboration,
                                             Relation::advice, Relation::personal,
                                             Relation::innovation};

std::string_view to_string(Relation r);
std::optional<Relation> relation_from_string(std::string_view token);

struct SurveyResponse {
  ActorId ego;
  ActorId alter;
  Relation relation = Relation::collaboration;
  int frequency = 1;
  std::set<Channel> platforms;

  bool operator==(const SurveyResponse&) const = default;
};

struct BarrierRating {
  ActorId respondent;
  std::string barrier;
  int score = 1;
};

struct KpiPoint {
  TimeWindow window;
  double value = 0.0;
};

struct KpiSeries {
  std::string label = "CFU";
  std::vector<KpiPoint> points;  // sorted by start, pairwise disjoint
};

enum class EventFormat { jsonl, csv_edges };

/// Every well-formed record becomes one event; errors carry the line number.
std::vector<InteractionEvent> parse_events(std::istream& in, EventFormat format);

/// Canonical jsonl serialization; parse_events(write_events(x)) == x.
void write_events(std::ostream& out, const std::vector<InteractionEvent>& events);

struct SurveyScale {
  int min_frequency = 1;
  int max_frequency = 5;
  int min_score = 1;
  int max_score = 5;
};

struct SurveyData {
  std::vector<SurveyResponse> responses;  // grouped by relation, then (ego, alter)
  std::vector<BarrierRating> barriers;
  std::map<ActorId, ActorAttrs> attrs;
};

/// Duplicate (ego, alter, relation) rows merge: max frequency, union of platforms.
std::vector<SurveyResponse> parse_survey_responses(std::istream& in, const SurveyScale& scale = {});
std::vector<BarrierRating> parse_barriers(std::istream& in, const SurveyScale& scale = {});
std::map<ActorId, ActorAttrs> parse_attributes(std::istream& in);

/// Convenience bundle; null streams are skipped.
SurveyData parse_survey(std::istream* responses, std::istream* barriers, std::istream* attrs,
                        const SurveyScale& scale = {});

/// Rows may arrive in any order; the result is sorted and validated disjoint.
KpiSeries parse_kpi(std::istream& in, std::string label = "CFU");

struct Pseudonymized {
  std::vector<InteractionEvent> events;
  std::vector<std::pair<ActorId, ActorId>> mapping;  // (pseudonym, original), sorted by pseudonym
};

/// Deterministic keyed pseudonyms "A-0001".. assigned in ascending HMAC-SHA256(salt, id) order.
Pseudonymized anonymize(const std::vector<InteractionEvent>& events, std::string_view salt);

void write_mapping(std::ostream& out, const std::vector<std::pair<ActorId, ActorId>>& mapping);

/// Decodes an even-length hex string into raw bytes. Throws InputError.
std::string decode_hex(std::string_view hex);

}  // namespace vmirror
