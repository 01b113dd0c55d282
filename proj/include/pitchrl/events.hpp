#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pitchrl/geometry.hpp"
#include "pitchrl/tracking.hpp"

namespace pitchrl {

/// One provider event: an on-ball action by one player.
struct EventRecord {
    double timestamp = 0.0;  // s
    std::string action_type;
    std::int64_t player_id = 0;
    Team team = Team::home;
    Vec2 position;
    std::int64_t possession_id = 0;
};

/// The 16 discrete actions. 0..6 are on-ball, 7..15 off-ball; move_k points
/// 45k degrees counterclockwise from the attacked goal.
enum class ActionLabel : int {
    pass = 0,
    through_pass = 1,
    shot = 2,
    cross = 3,
    dribble = 4,
    defensive_action = 5,
    idle_on_ball = 6,
    move_0 = 7,
    move_45 = 8,
    move_90 = 9,
    move_135 = 10,
    move_180 = 11,
    move_225 = 12,
    move_270 = 13,
    move_315 = 14,
    stay = 15,
};

constexpr int kNumActions = 16;

inline bool is_on_ball_action(ActionLabel a) { return static_cast<int>(a) <= 6; }
inline ActionLabel move_action(int direction) {
    return static_cast<ActionLabel>(7 + (direction % 8 + 8) % 8);
}
std::string action_name(ActionLabel a);

/// Collapses a provider action string onto the 6 on-ball classes. "goal" is
/// a scoring shot. Throws listing the string when unmappable.
ActionLabel map_provider_action(const std::string& provider);

/// Match events plus per-team formation strings read from the provider.
struct EventsFile {
    std::string formation_home = "4-4-2";
    std::string formation_away = "4-4-2";
    std::vector<EventRecord> events;
};

/// JSON: either a bare array of event objects or
/// {"formation_home": .., "formation_away": .., "events": [..]}.
/// Event fields: timestamp_s, action_type, player_id, team, x_m, y_m,
/// possession_id. Timestamps must be nondecreasing.
EventsFile read_events_json(const std::string& path);
void write_events_json(const std::string& path, const EventsFile& file);

}  // namespace pitchrl
