#pragma once

#include "sadic/balance.hpp"
#include "sadic/realizer.hpp"

#include "json.hpp"

#include <string>

namespace sadic {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "sadic-report/1";

// {"pi": {"0": "...", "1": "..."}, "taus": [[m, n, r], ...], "repeat": "last",
//  "rule": {"base": 2, "shift": 2, "when_divisible": [3,5,0], "fallback": [5,7,0]}}
SadicSystem system_from_json(const Json& j);
Json system_to_json(const SadicSystem& sys);

// {"odometer": [2,3] | {"repeat": [2]}, "nil_exponents": [[2, "inf"]], "delta": "1/4"}
TargetSpec target_from_json(const Json& j);
Json target_to_json(const TargetSpec& t);

Json read_json_file(const std::string& path);

Json report_header(const std::string& command);

Json to_json(const Rat& q);
Json to_json(const Interval& I);
Json to_json(const ExtNat& e);
Json to_json(const ExponentMap& m);
Json to_json(const EigenvalueGroupDescriptor& d);
Json to_json(const MEFDescriptor& m);
Json to_json(const ConstraintReport& r);
Json to_json(const DecayReport& d);
Json to_json(const LimsupEstimate& e);
Json to_json(const BalanceSeries& b);
Json to_json(const LetterFrequency& f);
Json to_json(const RealizationReport& r);
Json to_json(const ComparisonResult& c);

}  // namespace sadic
