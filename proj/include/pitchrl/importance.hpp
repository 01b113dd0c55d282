#pragma once

#include <stdexcept>

#include "pitchrl/geometry.hpp"

namespace pitchrl {

/// Pitch-location weighting used by the space score: a sigmoid ramp toward
/// the attacked goal multiplied by a Gaussian falloff away from the pitch's
/// long axis. Maximal centrally in front of the opponent goal.
struct ImportanceSurface {
    double sigmoid_midpoint = 17.5;  // m, x where the ramp crosses 0.5
    double sigmoid_steepness = 0.1;  // 1/m
    double gaussian_sigma = 20.0;    // m

    void validate() const {
        if (sigmoid_steepness <= 0.0)
            throw std::invalid_argument("ImportanceSurface: steepness must be > 0");
        if (gaussian_sigma <= 0.0)
            throw std::invalid_argument("ImportanceSurface: sigma must be > 0");
    }
};

inline double importance(const Vec2& point, const ImportanceSurface& s) {
    double ramp = 1.0 / (1.0 + std::exp(-s.sigmoid_steepness * (point.x - s.sigmoid_midpoint)));
    double lateral = std::exp(-(point.y * point.y) / (2.0 * s.gaussian_sigma * s.gaussian_sigma));
    return ramp * lateral;
}

}  // namespace pitchrl
