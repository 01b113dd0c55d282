#include "pitchrl/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pitchrl {

void MotionParams::validate() const {
    if (v_max <= 0.0) throw std::invalid_argument("MotionParams: v_max must be > 0");
    if (t_react < 0.0) throw std::invalid_argument("MotionParams: t_react must be >= 0");
}

void ShotParams::validate() const {
    if (max_range <= 0.0) throw std::invalid_argument("ShotParams: max_range must be > 0");
    if (half_width <= 0.0) throw std::invalid_argument("ShotParams: half_width must be > 0");
    if (n_angles < 2) throw std::invalid_argument("ShotParams: n_angles must be >= 2");
}

double time_to_reach_point(const PlayerState& player, const Vec2& target,
                           const MotionParams& motion) {
    motion.validate();
    const Vec2 d = target - player.position;
    const double dist = d.norm();
    if (dist == 0.0) return 0.0;
    const double v_along = dot(player.velocity, d) / dist;
    return std::max(0.0, (dist - v_along * motion.t_react) / motion.v_max);
}

double time_to_reach_by_team(const FrameSnapshot& frame, Team team, const Vec2& target,
                             const MotionParams& motion) {
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& p : frame.players) {
        if (p.team != team || !p.visible) continue;
        best = std::min(best, time_to_reach_point(p, target, motion));
        any = true;
    }
    if (!any)
        throw std::invalid_argument("time_to_reach_by_team: no visible players on " +
                                    team_name(team));
    return best;
}

double time_to_reach_passline(const FrameSnapshot& frame, std::int64_t receiver_id,
                              const MotionParams& motion, double spacing) {
    if (spacing <= 0.0) throw std::invalid_argument("time_to_reach_passline: spacing must be > 0");
    const PlayerState* receiver = frame.find_player(receiver_id);
    if (!receiver)
        throw std::invalid_argument("time_to_reach_passline: unknown player " +
                                    std::to_string(receiver_id));
    const Team opponents = other_team(receiver->team);

    const Vec2 a = frame.ball.position;
    const Vec2 b = receiver->position;
    const double len = distance(a, b);
    const int n_seg = std::max(1, static_cast<int>(std::ceil(len / spacing)));

    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& p : frame.players) {
        if (p.team != opponents || !p.visible) continue;
        any = true;
        for (int i = 0; i <= n_seg; ++i) {
            const double t = static_cast<double>(i) / n_seg;
            const Vec2 point{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
            best = std::min(best, time_to_reach_point(p, point, motion));
        }
    }
    if (!any) throw std::invalid_argument("time_to_reach_passline: no visible opponents");
    return best;
}

double pass_score(double dist_ball, double space_score, double time_to_reach_player,
                  double time_to_reach_passline) {
    if (!std::isfinite(dist_ball) || !std::isfinite(space_score) ||
        !std::isfinite(time_to_reach_player) || !std::isfinite(time_to_reach_passline))
        throw std::invalid_argument("pass_score: non-finite input");
    return 0.5 * dist_ball + 0.3 * space_score + 0.2 * time_to_reach_player +
           0.2 * time_to_reach_passline;
}

namespace {

// Perpendicular distance from p to the ray origin+t*dir (t >= 0), dir unit.
double distance_to_ray(const Vec2& p, const Vec2& origin, const Vec2& dir) {
    const Vec2 d = p - origin;
    const double along = dot(d, dir);
    if (along <= 0.0) return d.norm();
    const Vec2 foot{origin.x + dir.x * along, origin.y + dir.y * along};
    return distance(p, foot);
}

double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Inclusive point-in-triangle test via consistent cross-product signs.
bool in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d1 = cross2(b - a, p - a);
    const double d2 = cross2(c - b, p - b);
    const double d3 = cross2(a - c, p - c);
    const bool has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    const bool has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    return !(has_neg && has_pos);
}

}  // namespace

std::optional<double> shot_score(const FrameSnapshot& frame, std::int64_t shooter_id,
                                 const PitchConfig& pitch, const ShotParams& params) {
    params.validate();
    const PlayerState* shooter = frame.find_player(shooter_id);
    if (!shooter)
        throw std::invalid_argument("shot_score: unknown player " + std::to_string(shooter_id));

    const Vec2 goal_center = pitch.opponent_goal_center();
    if (distance(shooter->position, goal_center) > params.max_range) return std::nullopt;

    const double half_gw = pitch.goal_width / 2.0;
    const Vec2 post_lo{pitch.length / 2.0, -half_gw};
    const Vec2 post_hi{pitch.length / 2.0, half_gw};

    const Team defending = other_team(shooter->team);
    std::vector<Vec2> blockers;
    for (const auto& p : frame.players) {
        if (p.team != defending || !p.visible) continue;
        if (p.jersey == params.gk_jersey) continue;
        if (in_triangle(p.position, shooter->position, post_lo, post_hi))
            blockers.push_back(p.position);
    }
    if (blockers.empty()) return 1.0;

    const double th_a = std::atan2(post_lo.y - shooter->position.y, post_lo.x - shooter->position.x);
    const double th_b = std::atan2(post_hi.y - shooter->position.y, post_hi.x - shooter->position.x);
    const double th_lo = std::min(th_a, th_b);
    const double th_hi = std::max(th_a, th_b);

    const int n = params.n_angles;
    double mean_block = 0.0;
    if (th_hi - th_lo < 1e-12) {
        const Vec2 dir{std::cos(th_lo), std::sin(th_lo)};
        double pass_through = 1.0;
        for (const auto& d : blockers) {
            const double p_block =
                std::max(0.0, 1.0 - distance_to_ray(d, shooter->position, dir) / params.half_width);
            pass_through *= 1.0 - p_block;
        }
        mean_block = 1.0 - pass_through;
    } else {
        // The hinge kernel kinks where a blocker sits exactly half_width off
        // the ray, directly on it, or abeam of the shooter. Panel edges are
        // aligned with those angles so the integrand is smooth inside every
        // piece, where composite Simpson keeps the n-1-panel sum stable
        // under refinement.
        std::vector<double> edges{th_lo};
        for (const auto& d : blockers) {
            const double dx = d.x - shooter->position.x;
            const double dy = d.y - shooter->position.y;
            const double r = std::hypot(dx, dy);
            if (r <= 0.0) continue;
            constexpr double kHalfPi = 1.57079632679489661923;
            const double phi = std::atan2(dy, dx);
            double cuts[] = {phi, phi - kHalfPi, phi + kHalfPi, 0.0, 0.0};
            std::size_t n_cuts = 3;
            if (params.half_width < r) {
                const double off = std::asin(params.half_width / r);
                cuts[n_cuts++] = phi - off;
                cuts[n_cuts++] = phi + off;
            }
            for (std::size_t k = 0; k < n_cuts; ++k)
                if (cuts[k] > th_lo && cuts[k] < th_hi) edges.push_back(cuts[k]);
        }
        edges.push_back(th_hi);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

        const auto block_at = [&](double th) {
            const Vec2 dir{std::cos(th), std::sin(th)};
            double pass_through = 1.0;
            for (const auto& d : blockers) {
                const double p_block = std::max(
                    0.0, 1.0 - distance_to_ray(d, shooter->position, dir) / params.half_width);
                pass_through *= 1.0 - p_block;
            }
            return 1.0 - pass_through;
        };

        // One panel per piece minimum, the rest shared by largest remainder.
        const int pieces = static_cast<int>(edges.size()) - 1;
        const double width = th_hi - th_lo;
        const int spare = std::max(0, n - 1 - pieces);
        std::vector<int> panels(pieces, 1);
        std::vector<std::pair<double, int>> remainders;
        int assigned = pieces;
        for (int i = 0; i < pieces; ++i) {
            const double exact = spare * (edges[i + 1] - edges[i]) / width;
            const int extra = static_cast<int>(exact);
            panels[i] += extra;
            assigned += extra;
            remainders.push_back({extra - exact, i});  // ascending = largest remainder first
        }
        std::sort(remainders.begin(), remainders.end());
        for (int k = 0; assigned < std::max(n - 1, pieces); ++k, ++assigned)
            panels[remainders[k].second] += 1;

        double integral = 0.0;
        for (int i = 0; i < pieces; ++i) {
            const double a = edges[i], b = edges[i + 1];
            const int m = panels[i] + panels[i] % 2;  // Simpson needs even panels
            const double h = (b - a) / m;
            double sum = block_at(a) + block_at(b);
            for (int j = 1; j < m; ++j) sum += (j % 2 ? 4.0 : 2.0) * block_at(a + h * j);
            integral += h * sum / 3.0;
        }
        mean_block = integral / width;
    }
    return std::clamp(1.0 - mean_block, 0.0, 1.0);
}

std::array<double, 3> long_ball_score(const FrameSnapshot& frame, const PitchConfig& pitch) {
    if (!frame.possession_team.has_value())
        throw std::invalid_argument("long_ball_score: possession team unknown");
    const Team attacking = *frame.possession_team;

    const PlayerState* tallest = nullptr;
    for (const auto& p : frame.players) {
        if (p.team != attacking || !p.visible) continue;
        if (p.height_cm <= 0.0) throw std::invalid_argument("long_ball_score: missing height");
        if (!tallest || p.height_cm > tallest->height_cm ||
            (p.height_cm == tallest->height_cm && p.jersey < tallest->jersey))
            tallest = &p;
    }
    if (!tallest) throw std::invalid_argument("long_ball_score: no visible attackers");

    const double third = pitch.width / 6.0;
    std::array<double, 3> zones{0.0, 0.0, 0.0};
    if (tallest->position.y < -third)
        zones[0] = 1.0;
    else if (tallest->position.y > third)
        zones[2] = 1.0;
    else
        zones[1] = 1.0;
    return zones;
}

std::array<double, 8> dribble_score(const SpaceEngine& engine, std::int64_t on_ball_player) {
    return engine.delta_space_score_8dir(on_ball_player);
}

}  // namespace pitchrl
