#pragma once

#include "pitchrl/tracking.hpp"

namespace pitchrl {

/// Mirrors the frame about x=0 when the possession team attacks -x, so that
/// downstream code always sees the attack running toward +x. Identity when
/// already normalized. Idempotent.
FrameSnapshot normalize_attack_direction(const FrameSnapshot& frame);

/// Offside line for attacking_team on a normalized frame (attack toward +x):
/// the halfway line when every attacker is in their own half, otherwise
/// max(second-to-last defender x, ball x). Only visible defenders count.
double offside_line(const FrameSnapshot& frame, Team attacking_team);

/// Same rule evaluated with one attacker's x overridden, used when probing
/// displaced positions without rebuilding the frame.
double offside_line_with_override(const FrameSnapshot& frame, Team attacking_team,
                                  std::int64_t override_player, double override_x);

/// A player is in an offside position when strictly beyond the line.
bool is_offside(const FrameSnapshot& frame, const PlayerState& player);

}  // namespace pitchrl
