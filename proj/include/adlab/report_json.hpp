#pragma once

#include <json.hpp>

#include "adlab/heuristic.hpp"
#include "adlab/search.hpp"
#include "adlab/sequences.hpp"

// JSON bindings for every report type, plus the CLI envelope. Big integers
// travel as decimal strings; doubles use the library's shortest-round-trip
// form, so parse + re-serialize is byte-stable (keys are kept sorted).

namespace adlab {

using nlohmann::json;

void to_json(json& j, const ExtendedReal& x);
void from_json(const json& j, ExtendedReal& x);

void to_json(json& j, const TowerMagnitude& t);
void from_json(const json& j, TowerMagnitude& t);

void to_json(json& j, const LogMagnitude& m);
void from_json(const json& j, LogMagnitude& m);

void to_json(json& j, const OffsetTuple& t);
void from_json(const json& j, OffsetTuple& t);

void to_json(json& j, const AdmissibilityReport& r);
void from_json(const json& j, AdmissibilityReport& r);
bool operator==(const AdmissibilityReport& a, const AdmissibilityReport& b);

void to_json(json& j, const ExtractionStep& s);
void from_json(const json& j, ExtractionStep& s);
bool operator==(const ExtractionStep& a, const ExtractionStep& b);

void to_json(json& j, const ExtractionTrace& t);
void from_json(const json& j, ExtractionTrace& t);
bool operator==(const ExtractionTrace& a, const ExtractionTrace& b);

void to_json(json& j, const SizingReport& r);
void from_json(const json& j, SizingReport& r);
bool operator==(const SizingReport& a, const SizingReport& b);

void to_json(json& j, const HeuristicSum& h);
void from_json(const json& j, HeuristicSum& h);
bool operator==(const HeuristicSum& a, const HeuristicSum& b);

void to_json(json& j, const SequenceTerm& t);
void from_json(const json& j, SequenceTerm& t);
bool operator==(const SequenceTerm& a, const SequenceTerm& b);

void to_json(json& j, const ShiftHit& h);
void from_json(const json& j, ShiftHit& h);
bool operator==(const ShiftHit& a, const ShiftHit& b);

void to_json(json& j, const SearchResult& r);
void from_json(const json& j, SearchResult& r);
bool operator==(const SearchResult& a, const SearchResult& b);

void to_json(json& j, const HarnessReport& r);
void from_json(const json& j, HarnessReport& r);
bool operator==(const HarnessReport& a, const HarnessReport& b);

bool operator==(const ExtendedReal& a, const ExtendedReal& b);
bool operator==(const TowerMagnitude& a, const TowerMagnitude& b);

inline constexpr const char* kReportSchema = "admissible-lab/v1";

// The stable output wrapper every subcommand emits.
json make_envelope(const std::string& subcommand, json config, json result, bool partial);

}  // namespace adlab
