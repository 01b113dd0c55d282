#include "pitchrl/geometry.hpp"

namespace pitchrl {

GoalGeometry goal_geometry(const Vec2& point, Goal goal, const PitchConfig& pitch) {
    Vec2 gc = (goal == Goal::opponent) ? pitch.opponent_goal_center() : pitch.own_goal_center();
    Vec2 d = gc - point;
    GoalGeometry g;
    g.distance = d.norm();
    g.angle = std::fabs(std::atan2(d.y, d.x));
    return g;
}

}  // namespace pitchrl
