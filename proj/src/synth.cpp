#include "pitchrl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pitchrl {

Scenario scenario_from_name(const std::string& name) {
    if (name == "random_walk") return Scenario::random_walk;
    if (name == "counterattack") return Scenario::counterattack;
    if (name == "buildup") return Scenario::buildup;
    throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::random_walk: return "random_walk";
        case Scenario::counterattack: return "counterattack";
        default: return "buildup";
    }
}

namespace {

double unit(std::mt19937_64& rng) { return (rng() >> 11) * (1.0 / 9007199254740992.0); }
double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit(rng);
}
int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct PlannedEvent {
    int frame = 0;  // global
    std::string action;
    std::int64_t actor = 0;
    bool at_goal = false;  // position = attacked goal center instead of the actor
    double jitter_s = 0.0;
};

struct PossessionPlan {
    Team team = Team::home;
    int start = 0;
    int length = 0;
    std::vector<PlannedEvent> events;
};

bool ball_follows_actor(const std::string& action) {
    return action == "dribble" || action == "carry" || action == "interception";
}

std::int64_t pick_outfielder(std::mt19937_64& rng, std::int64_t base, std::int64_t not_this) {
    for (;;) {
        const std::int64_t id = base + uniform_int(rng, 2, 11);
        if (id != not_this) return id;
    }
}

}  // namespace

SynthDataset synth_generate(const SynthParams& params) {
    if (params.n_sequences < 1)
        throw std::invalid_argument("synth_generate: n_sequences must be >= 1");
    if (params.frame_rate <= 0.0) throw std::invalid_argument("synth_generate: frame_rate <= 0");
    params.pitch.validate();

    std::mt19937_64 rng(params.seed);
    const double half_l = params.pitch.length / 2.0;
    const double half_w = params.pitch.width / 2.0;
    const double dt = 1.0 / params.frame_rate;

    SynthDataset out;
    out.frame_rate = params.frame_rate;
    out.events.formation_home = "4-4-2";
    out.events.formation_away = "4-3-3";

    std::vector<std::int64_t> ids;
    for (int j = 1; j <= 11; ++j) ids.push_back(100 + j);
    for (int j = 1; j <= 11; ++j) ids.push_back(200 + j);
    for (std::int64_t id : ids) out.roster[id] = std::floor(uniform(rng, 168.0, 200.0));

    // Possession plan: alternate teams, schedule events and outcomes.
    const bool counter = params.scenario == Scenario::counterattack;
    std::vector<PossessionPlan> plan;
    int start = 0;
    for (int i = 0; i < params.n_sequences; ++i) {
        PossessionPlan p;
        p.team = i % 2 == 0 ? Team::home : Team::away;
        p.start = start;
        p.length = uniform_int(rng, 32, 58);
        const std::int64_t base = p.team == Team::home ? 100 : 200;

        bool goal = false, midshot = false;
        std::vector<std::string> cycle;
        switch (params.scenario) {
            case Scenario::random_walk:
                goal = i % 5 == 2;
                midshot = i % 3 == 0;
                cycle = {"pass", "dribble", "cross", "pass", "through_pass", "carry"};
                break;
            case Scenario::counterattack:
                goal = i % 4 == 1;
                cycle = {"pass", "through_pass", "dribble"};
                break;
            case Scenario::buildup:
                goal = i % 7 == 3;
                midshot = i % 4 == 2;
                cycle = {"pass", "pass", "dribble", "pass"};
                break;
        }

        const int cutoff = p.length - (counter ? 21 : 12);
        std::vector<int> frames{0};
        for (int f = 0;;) {
            f += uniform_int(rng, 10, 16);
            if (f > cutoff) break;
            frames.push_back(f);
        }

        std::int64_t actor = base + uniform_int(rng, 2, 11);
        for (std::size_t k = 0; k < frames.size(); ++k) {
            PlannedEvent e;
            e.frame = p.start + frames[k];
            if (k == 0)
                e.action = i == 0 ? "pass" : "interception";
            else {
                e.action = cycle[(k - 1) % cycle.size()];
                actor = pick_outfielder(rng, base, actor);
            }
            e.actor = actor;
            e.jitter_s = uniform(rng, -0.008, 0.008);
            p.events.push_back(e);
        }

        if (midshot && p.events.size() > 1) {
            std::size_t best = 1;
            const double want = 0.6 * p.length;
            for (std::size_t k = 1; k < p.events.size(); ++k)
                if (std::abs(p.events[k].frame - p.start - want) <
                    std::abs(p.events[best].frame - p.start - want))
                    best = k;
            p.events[best].action = "shot";
        }
        if (counter) {
            PlannedEvent e;
            e.frame = p.start + p.length - 9;
            e.action = "shot";
            e.actor = pick_outfielder(rng, base, actor);
            e.jitter_s = uniform(rng, -0.008, 0.008);
            actor = e.actor;
            p.events.push_back(e);
        }
        if (goal) {
            // A follow-the-actor final event would leave the ball glued to a
            // player right up to the goal frame; force a pass so the ball can
            // travel to the goal mouth.
            if (ball_follows_actor(p.events.back().action)) p.events.back().action = "pass";
            PlannedEvent e;
            e.frame = p.start + p.length - 1;
            e.action = "goal";
            e.actor = counter ? actor : pick_outfielder(rng, base, actor);
            e.at_goal = true;
            e.jitter_s = uniform(rng, -0.008, 0.008);
            p.events.push_back(e);
        }
        plan.push_back(std::move(p));
        start += p.length;
    }
    const int total = start;

    // Biased random walks. GKs wander around their pinned base.
    double attack_bias = 1.2, retreat_bias = 0.8;
    if (params.scenario == Scenario::counterattack) attack_bias = 2.4, retreat_bias = 1.2;
    if (params.scenario == Scenario::buildup) attack_bias = 0.6, retreat_bias = 0.4;

    std::vector<std::vector<Vec2>> paths(ids.size(), std::vector<Vec2>(total));
    std::vector<Vec2> pos(ids.size());
    for (std::size_t pi = 0; pi < ids.size(); ++pi) {
        const bool home = ids[pi] < 200;
        const int jersey = static_cast<int>(ids[pi] % 100);
        const double side = home ? -1.0 : 1.0;
        if (jersey == 1)
            pos[pi] = Vec2{side * (half_l - 4.0), uniform(rng, -2.0, 2.0)};
        else {
            double depth = jersey <= 5 ? 30.0 : jersey <= 9 ? 15.0 : 2.0;
            pos[pi] = Vec2{side * depth + uniform(rng, -4.0, 4.0),
                           uniform(rng, -half_w + 6.0, half_w - 6.0)};
        }
    }

    std::size_t cur = 0;
    for (int g = 0; g < total; ++g) {
        while (g >= plan[cur].start + plan[cur].length) ++cur;
        const Team possession = plan[cur].team;
        for (std::size_t pi = 0; pi < ids.size(); ++pi) {
            const bool home = ids[pi] < 200;
            const int jersey = static_cast<int>(ids[pi] % 100);
            Vec2 v;
            if (jersey == 1) {
                const Vec2 base{(home ? -1.0 : 1.0) * (half_l - 4.0), 0.0};
                v = Vec2{uniform(rng, -0.25, 0.25) + 0.05 * (base.x - pos[pi].x),
                         uniform(rng, -0.25, 0.25) + 0.05 * (base.y - pos[pi].y)};
            } else {
                const double attack_dir = home ? 1.0 : -1.0;
                const double bias =
                    (home == (possession == Team::home)) ? attack_bias * attack_dir
                                                         : -retreat_bias * attack_dir;
                v = Vec2{bias + uniform(rng, -1.8, 1.8),
                         -0.03 * pos[pi].y + uniform(rng, -1.8, 1.8)};
            }
            pos[pi].x = std::clamp(pos[pi].x + v.x * dt, -half_l + 0.3, half_l - 0.3);
            pos[pi].y = std::clamp(pos[pi].y + v.y * dt, -half_w + 0.3, half_w - 0.3);
            paths[pi][g] = pos[pi];
        }
    }

    auto path_of = [&](std::int64_t id) -> const std::vector<Vec2>& {
        const std::size_t pi = id < 200 ? id - 101 : 11 + id - 201;
        return paths[pi];
    };
    auto goal_center = [&](Team t) {
        return Vec2{t == Team::home ? half_l : -half_l, 0.0};
    };
    auto event_pos = [&](const PossessionPlan& p, const PlannedEvent& e) {
        return e.at_goal ? goal_center(p.team) : path_of(e.actor)[e.frame];
    };

    // Ball: piecewise between events; dribble-like events keep it on the
    // actor, everything else travels in a straight line to the next event.
    std::vector<Vec2> ball(total);
    for (const auto& p : plan) {
        const int end = p.start + p.length;
        for (std::size_t k = 0; k < p.events.size(); ++k) {
            const PlannedEvent& e = p.events[k];
            const bool last = k + 1 == p.events.size();
            const int seg_end = last ? end : p.events[k + 1].frame;
            if (!last && !ball_follows_actor(e.action)) {
                const Vec2 a = event_pos(p, e);
                const Vec2 b = event_pos(p, p.events[k + 1]);
                const int span = seg_end - e.frame;
                for (int g = e.frame; g < seg_end; ++g) {
                    const double t = static_cast<double>(g - e.frame) / span;
                    ball[g] = Vec2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
                }
            } else if (last && (e.action == "shot" || e.action == "goal")) {
                const Vec2 a = event_pos(p, e);
                const Vec2 b = goal_center(p.team);
                const int span = std::max(1, end - 1 - e.frame);
                for (int g = e.frame; g < seg_end; ++g) {
                    const double t = static_cast<double>(g - e.frame) / span;
                    ball[g] = Vec2{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
                }
            } else {
                const auto& path = path_of(e.actor);
                for (int g = e.frame; g < seg_end; ++g) ball[g] = path[g];
            }
        }
    }

    for (const auto& p : plan) {
        for (const auto& e : p.events) {
            EventRecord rec;
            rec.timestamp = e.frame / params.frame_rate + e.jitter_s;
            rec.action_type = e.action;
            rec.player_id = e.actor;
            rec.team = p.team;
            rec.position = event_pos(p, e);
            rec.possession_id = &p - plan.data() + 1;
            out.events.events.push_back(rec);
        }
    }

    out.tracking.reserve(static_cast<std::size_t>(total) * (ids.size() + 1));
    for (int g = 0; g < total; ++g) {
        TrackingRow row;
        row.frame = g;
        row.timestamp_s = g / params.frame_rate;
        row.object_id = 0;
        row.team = "ball";
        row.jersey = 0;
        row.x_m = ball[g].x;
        row.y_m = ball[g].y;
        out.tracking.push_back(row);
        for (std::size_t pi = 0; pi < ids.size(); ++pi) {
            row.object_id = ids[pi];
            row.team = ids[pi] < 200 ? "home" : "away";
            row.jersey = static_cast<int>(ids[pi] % 100);
            row.x_m = paths[pi][g].x;
            row.y_m = paths[pi][g].y;
            out.tracking.push_back(row);
        }
    }
    return out;
}

}  // namespace pitchrl
