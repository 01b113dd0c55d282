#pragma once

#include <optional>

#include "pitchrl/geometry.hpp"
#include "pitchrl/space.hpp"
#include "pitchrl/tracking.hpp"

namespace pitchrl {

/// Player motion model for time-to-reach estimates.
struct MotionParams {
    double v_max = 8.0;      // m/s
    double t_react = 0.0;    // s, head start covered at the current velocity
    void validate() const;
};

/// Arrival time at target: max(0, (dist - v_along*t_react) / v_max), where
/// v_along is the velocity component toward the target. Zero distance gives 0.
double time_to_reach_point(const PlayerState& player, const Vec2& target,
                           const MotionParams& motion = {});

/// Minimum arrival time at target over the visible players of one team.
/// Throws when the team has no visible players.
double time_to_reach_by_team(const FrameSnapshot& frame, Team team, const Vec2& target,
                             const MotionParams& motion = {});

/// Minimum over visible opponents of the receiver's team of the minimum
/// arrival time at points sampled along the ball->receiver segment, one
/// sample every `spacing` meters at most, endpoints included.
double time_to_reach_passline(const FrameSnapshot& frame, std::int64_t receiver_id,
                              const MotionParams& motion = {}, double spacing = 1.0);

/// Weighted linear pass-quality form. Inputs are expected min-max scaled to
/// [0,1] over the dataset; the weights are 0.5, 0.3, 0.2, 0.2.
double pass_score(double dist_ball, double space_score, double time_to_reach_player,
                  double time_to_reach_passline);

struct ShotParams {
    double max_range = 30.0;    // m from the opponent goal center
    double half_width = 1.0;    // m, lateral distance at which a defender stops blocking
    int n_angles = 101;         // trapezoid panels across the goalmouth, kink-aligned
    int gk_jersey = 1;          // defender excluded as goalkeeper
    void validate() const;
};

/// Probability-like shot quality in [0,1]: 1 minus the angle-averaged combined
/// block probability of non-goalkeeper defenders inside the shooter-posts
/// triangle. Empty optional when the shooter is farther than max_range from
/// the goal center. Throws when the shooter is not in the frame.
std::optional<double> shot_score(const FrameSnapshot& frame, std::int64_t shooter_id,
                                 const PitchConfig& pitch, const ShotParams& params = {});

/// One-hot over the y-thirds of the pitch (low y, central, high y) marking
/// the zone of the tallest visible attacking player; height ties go to the
/// lower jersey. Throws when no visible attacker has a positive height.
std::array<double, 3> long_ball_score(const FrameSnapshot& frame, const PitchConfig& pitch);

/// Dribble score: delta_space_score_8dir of the ball carrier.
std::array<double, 8> dribble_score(const SpaceEngine& engine, std::int64_t on_ball_player);

}  // namespace pitchrl
