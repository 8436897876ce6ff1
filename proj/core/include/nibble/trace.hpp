#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nibble/analysis.hpp"
#include "nibble/baselines.hpp"
#include "nibble/completion.hpp"
#include "nibble/engine.hpp"
#include "nibble/schedule.hpp"

namespace nibble {

// JSON-lines trace records. Every record is a single-line JSON object with a
// "type" field; keys are emitted in a fixed order so equal inputs give
// byte-identical lines.

std::string schedule_json(const Schedule& schedule);
std::string feasibility_json(const FeasibilityReport& report);
std::string frontier_json(const FrontierReport& report);

/// {"type":"round","trial":..,"t":..,"predicted":{d,s,e,p},"measured":{..},"counters":{..}}
std::string round_json(const RoundTrace& trace, std::optional<std::size_t> trial = std::nullopt);

struct FinalRecord {
  std::optional<std::size_t> trial;
  CompletionStrategy policy = CompletionStrategy::single_shot;
  std::uint32_t attempts_used = 0;
  bool success = false;
  std::size_t colors_used = 0;
  std::size_t rounds_run = 0;
  std::optional<EmptyPalette> empty_palette;
  std::size_t conflicts_remaining = 0;
};

std::string final_json(const FinalRecord& record);
std::string estimator_json(const EstimatorReport& report);
std::string witnesses_json(std::size_t t, const std::vector<InvariantWitness>& witnesses,
                           std::optional<std::size_t> trial = std::nullopt);
std::string coloring_json(const Coloring& coloring);

}  // namespace nibble
