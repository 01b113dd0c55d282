#pragma once

#include <optional>
#include <vector>

#include "pitchrl/geometry.hpp"

namespace pitchrl {

struct KinematicsResult {
    std::vector<Vec2> positions;      // gaps filled
    std::vector<Vec2> velocities;     // m/s
    std::vector<Vec2> accelerations;  // m/s^2
    std::vector<bool> long_gap;       // true where a gap > max_gap frames (or an
                                      // unfillable edge) was bridged; such frames
                                      // should be treated as not visible
};

/// Derives velocity and acceleration from a position series sampled at
/// frame_rate. Missing samples are linearly interpolated when the gap is at
/// most max_gap frames; longer gaps are bridged but flagged. Central
/// differences in the interior, one-sided at the ends; velocities pass
/// through a 5-frame moving average before acceleration is formed.
KinematicsResult compute_kinematics(const std::vector<std::optional<Vec2>>& positions,
                                    double frame_rate, int max_gap = 10);

}  // namespace pitchrl
