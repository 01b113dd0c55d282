#pragma once

#include <string>

#include "pitchrl/sequence.hpp"
#include "pitchrl/state.hpp"
#include "pitchrl/train.hpp"

namespace pitchrl {

/// Every tunable in one JSON document. Absent keys keep these defaults;
/// unknown keys are errors so typos cannot silently revert to defaults.
struct AppConfig {
    PitchConfig pitch;
    ImportanceSurface importance;
    SpaceParams space;
    MotionParams motion;
    ShotParams shot;
    SyncParams sync;
    SegmentParams segmentation;
    LabelParams labeling;
    double passline_spacing = 1.0;
    std::vector<std::string> formation_vocab = default_formation_vocab();
    PassScaling pass_scaling;
    TrainConfig train;
    std::string epv_path;  // empty: built-in default grid
    int epv_n_x = 50;
    int epv_n_y = 32;

    EdmsConfig edms() const;
    void validate() const;
};

AppConfig read_config(const std::string& path);
void write_config(const std::string& path, const AppConfig& cfg);

}  // namespace pitchrl
