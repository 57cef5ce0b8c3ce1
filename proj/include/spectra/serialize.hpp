#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "spectra/estimators.hpp"
#include "spectra/pipeline.hpp"

namespace spectra {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "spectra/1";

// Shortest round-trip decimal for doubles.
std::string double_string(double v);

Json to_json(const EstimateReport& r);
Json to_json(const MomentSequence& m, int precision_bits);
Json to_json(const ThresholdReport& r);
Json to_json(const SkCertificate& c);
Json to_json(const AugmentReport& r);
Json to_json(const EpsilonReport& r);
Json to_json(const SharpnessRow& r);
Json to_json(const WalkResult& r);
Json to_json(const GammaTrendRow& r);

}  // namespace spectra
