#pragma once

// Internal: JSON builders shared by trace.cpp and experiment.cpp.

#include "json.hpp"
#include "nibble/trace.hpp"

namespace nibble::detail {

using Json = nlohmann::ordered_json;

Json to_json(const ScheduleParams& params);
Json to_json(const Schedule& schedule);
Json to_json(const FeasibilityReport& report);
Json to_json(const EstimatorReport& report);
Json to_json(const RoundTrace& trace);
Json to_json(const InvariantWitness& witness);

}  // namespace nibble::detail
