#include "pitchrl/rules.hpp"

#include <algorithm>
#include <stdexcept>

namespace pitchrl {

FrameSnapshot normalize_attack_direction(const FrameSnapshot& frame) {
    if (!frame.possession_team.has_value())
        throw std::invalid_argument("normalize_attack_direction: possession team unknown");
    if (frame.attack_direction == AttackDirection::plus_x) return frame;

    FrameSnapshot out = frame;
    for (auto& p : out.players) {
        p.position.x = -p.position.x;
        p.velocity.x = -p.velocity.x;
        p.acceleration.x = -p.acceleration.x;
    }
    out.ball.position.x = -out.ball.position.x;
    out.ball.velocity.x = -out.ball.velocity.x;
    out.attack_direction = AttackDirection::plus_x;
    return out;
}

namespace {

double offside_line_impl(const FrameSnapshot& frame, Team attacking_team,
                         std::int64_t override_player, double override_x, bool use_override) {
    const Team defending = other_team(attacking_team);

    bool attacker_in_opponent_half = false;
    for (const auto& p : frame.players) {
        if (p.team != attacking_team || !p.visible) continue;
        double x = (use_override && p.player_id == override_player) ? override_x : p.position.x;
        if (x >= 0.0) {
            attacker_in_opponent_half = true;
            break;
        }
    }
    if (!attacker_in_opponent_half) return 0.0;

    std::vector<double> defender_x;
    for (const auto& p : frame.players)
        if (p.team == defending && p.visible) defender_x.push_back(p.position.x);
    if (defender_x.size() < 2)
        throw std::invalid_argument("offside_line: fewer than 2 visible defenders");
    std::sort(defender_x.begin(), defender_x.end(), std::greater<double>());
    return std::max(defender_x[1], frame.ball.position.x);
}

}  // namespace

double offside_line(const FrameSnapshot& frame, Team attacking_team) {
    return offside_line_impl(frame, attacking_team, 0, 0.0, false);
}

double offside_line_with_override(const FrameSnapshot& frame, Team attacking_team,
                                  std::int64_t override_player, double override_x) {
    return offside_line_impl(frame, attacking_team, override_player, override_x, true);
}

bool is_offside(const FrameSnapshot& frame, const PlayerState& player) {
    if (!frame.possession_team.has_value() || player.team != *frame.possession_team) return false;
    return player.position.x > offside_line(frame, player.team);
}

}  // namespace pitchrl
