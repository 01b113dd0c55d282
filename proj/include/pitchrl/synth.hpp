#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pitchrl/events.hpp"
#include "pitchrl/tracking.hpp"

namespace pitchrl {

enum class Scenario { random_walk, counterattack, buildup };

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);

struct SynthParams {
    std::uint64_t seed = 0;
    int n_sequences = 8;
    Scenario scenario = Scenario::random_walk;
    PitchConfig pitch;
    double frame_rate = 25.0;
};

struct SynthDataset {
    std::vector<TrackingRow> tracking;
    EventsFile events;
    Roster roster;
    double frame_rate = 25.0;
};

/// One continuous scripted match: possessions alternate between the teams,
/// each 32..58 frames, every possession opened by an event on its first
/// frame (an interception after the first). Outcomes follow a fixed per-index
/// schedule so goal/concession/other and shot/no-shot combinations all
/// appear. Deterministic for a fixed parameter set.
SynthDataset synth_generate(const SynthParams& params);

}  // namespace pitchrl
