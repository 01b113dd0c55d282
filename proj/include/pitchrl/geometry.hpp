#pragma once

#include <cmath>
#include <stdexcept>

namespace pitchrl {

/// 2D point / vector in pitch coordinates (meters, origin at pitch center).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }
inline double squared_distance(const Vec2& a, const Vec2& b) { return (a - b).squared_norm(); }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Pitch dimensions and capture rate. x spans [-length/2, length/2],
/// y spans [-width/2, width/2]; goals sit on the x extremes, centered at y=0.
struct PitchConfig {
    double length = 105.0;     // m
    double width = 68.0;       // m
    double goal_width = 7.32;  // m
    double frame_rate = 25.0;  // Hz

    void validate() const {
        if (length <= 0.0) throw std::invalid_argument("PitchConfig: length must be > 0");
        if (width <= 0.0) throw std::invalid_argument("PitchConfig: width must be > 0");
        if (goal_width <= 0.0 || goal_width >= width)
            throw std::invalid_argument("PitchConfig: goal_width must be in (0, width)");
        if (frame_rate <= 0.0) throw std::invalid_argument("PitchConfig: frame_rate must be > 0");
    }

    Vec2 opponent_goal_center() const { return {length / 2.0, 0.0}; }
    Vec2 own_goal_center() const { return {-length / 2.0, 0.0}; }

    Vec2 clip(const Vec2& p) const {
        double hx = length / 2.0, hy = width / 2.0;
        return {std::min(std::max(p.x, -hx), hx), std::min(std::max(p.y, -hy), hy)};
    }
};

enum class Goal { own, opponent };

/// Distance and absolute angle from a point to a goal center.
/// The angle is measured between the point->goal ray and the x-axis.
struct GoalGeometry {
    double distance = 0.0;  // m
    double angle = 0.0;     // rad, in [0, pi]
};

GoalGeometry goal_geometry(const Vec2& point, Goal goal, const PitchConfig& pitch);

}  // namespace pitchrl
