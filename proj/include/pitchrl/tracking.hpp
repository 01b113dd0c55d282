#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pitchrl/geometry.hpp"

namespace pitchrl {

enum class Team { home, away };

inline Team other_team(Team t) { return t == Team::home ? Team::away : Team::home; }
std::string team_name(Team t);
Team team_from_name(const std::string& name);

enum class AttackDirection { plus_x, minus_x };

struct PlayerState {
    std::int64_t player_id = 0;
    Team team = Team::home;
    int jersey = 0;
    Vec2 position;
    Vec2 velocity;
    Vec2 acceleration;
    double height_cm = 180.0;
    bool visible = true;
};

struct BallState {
    Vec2 position;
    Vec2 velocity;
};

/// One synchronized instant of play: 22 players, the ball, and possession
/// context. Players are kept sorted home-before-away, ascending jersey.
struct FrameSnapshot {
    std::int64_t frame_index = 0;
    double timestamp = 0.0;  // s
    std::vector<PlayerState> players;
    BallState ball;
    std::optional<Team> possession_team;
    std::optional<std::int64_t> on_ball_player;
    AttackDirection attack_direction = AttackDirection::plus_x;

    /// Players of one team, in stored (jersey-ascending) order.
    std::vector<const PlayerState*> team_players(Team t) const;
    const PlayerState* find_player(std::int64_t player_id) const;

    void validate(const PitchConfig& pitch) const;
};

/// Raw per-object sample from a tracking file. object_id 0 is the ball.
struct TrackingRow {
    std::int64_t frame = 0;
    double timestamp_s = 0.0;
    std::int64_t object_id = 0;
    std::string team;  // "home", "away", or "ball"
    int jersey = 0;
    double x_m = 0.0;
    double y_m = 0.0;
};

/// CSV schema: frame,timestamp_s,object_id,team,jersey,x_m,y_m
std::vector<TrackingRow> read_tracking_csv(const std::string& path);
void write_tracking_csv(const std::string& path, const std::vector<TrackingRow>& rows);

/// Optional sidecar: player_id -> height_cm. Tracking files carry no heights,
/// so the long-ball feature needs this (180 cm assumed when absent).
using Roster = std::map<std::int64_t, double>;
Roster read_roster_json(const std::string& path);
void write_roster_json(const std::string& path, const Roster& roster);

}  // namespace pitchrl
