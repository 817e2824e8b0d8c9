#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

#include "titch/oracle.hpp"
#include "titch/titchmarsh.hpp"

namespace titch {

using json = nlohmann::json;

// Canonical serialization: sorted keys (nlohmann's default object order),
// rationals as "p/q" strings, two-space indent, trailing newline. Snapshot
// tests compare these bytes directly.
std::string canonical_dump(const json& j);

json dist_to_json(const Distribution& d);
// path names the field in diagnostics, e.g. "f". Throws ParseError.
Distribution dist_from_json(const json& j, unsigned max_order, const std::string& path);

// One or two named distributions plus the analysis parameters.
struct Instance {
  std::optional<Distribution> f, g;
  std::optional<unsigned> n, p;
  std::optional<std::string> mode;
};

Instance instance_from_json(const json& j, unsigned max_order);
Instance load_instance_file(const std::string& file, unsigned max_order);
json instance_to_json(const Instance& inst);

json interval_to_json(const RatInterval& w);
std::string interval_str(const RatInterval& w);

json verdict_to_json(const oracle::OracleVerdict& v);
json pair_report_to_json(const PairReport& r);
json reflection_to_json(const ReflectionOutcome& r, bool conjugated);
json power_report_to_json(const PowerReport& r);
json corollary_to_json(const CorollaryN2Verdict& v);

// Human-readable rendering; turns are shown alongside multiples of pi.
std::string pair_report_text(const PairReport& r);
std::string reflection_text(const ReflectionOutcome& r);
std::string power_report_text(const PowerReport& r);
std::string corollary_text(const CorollaryN2Verdict& v);

}  // namespace titch
