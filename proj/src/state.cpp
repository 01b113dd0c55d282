#include "pitchrl/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pitchrl/rules.hpp"

namespace pitchrl {

double PassScaling::scale(int channel, double v) const {
    const double range = hi[channel] - lo[channel];
    if (!(range > 1e-12)) return 0.0;
    return std::clamp((v - lo[channel]) / range, 0.0, 1.0);
}

std::vector<std::string> default_formation_vocab() {
    return {"4-4-2", "4-3-3", "4-2-3-1", "3-5-2", "3-4-3", "5-3-2", "4-1-4-1", "5-4-1"};
}

void EdmsConfig::validate() const {
    pitch.validate();
    surface.validate();
    motion.validate();
    shot.validate();
    if (passline_spacing <= 0.0)
        throw std::invalid_argument("EdmsConfig: passline_spacing must be > 0");
    if (formation_vocab.empty())
        throw std::invalid_argument("EdmsConfig: formation vocabulary is empty");
}

std::vector<std::string> EdmsLayout::channel_names(
    const std::vector<std::string>& vocab) const {
    if (static_cast<int>(vocab.size()) != vocab_size)
        throw std::invalid_argument("EdmsLayout: vocabulary size mismatch");
    std::vector<std::string> names;
    names.reserve(total_dim());
    names.push_back("offside_dist_attacking");
    names.push_back("offside_dist_defending");
    for (const auto& f : vocab) names.push_back("formation_" + f);
    for (int r = 0; r < off_ball_rows; ++r) {
        const std::string p = "ob" + std::to_string(r) + "_";
        names.push_back(p + "dist_ball");
        names.push_back(p + "ttr_player");
        names.push_back(p + "ttr_passline");
        names.push_back(p + "space_score");
        for (int k = 0; k < 8; ++k)
            names.push_back(p + "delta_space_" + std::to_string(45 * k));
        names.push_back(p + "pass_score");
    }
    names.push_back("intra_indicator");
    names.push_back("intra_ttb_opponent");
    names.push_back("intra_dist_goal");
    names.push_back("intra_angle_goal");
    for (int k = 0; k < 8; ++k) names.push_back("intra_dribble_" + std::to_string(45 * k));
    names.push_back("intra_shot_score");
    names.push_back("intra_shot_valid");
    names.push_back("intra_long_ball_low");
    names.push_back("intra_long_ball_center");
    names.push_back("intra_long_ball_high");
    names.push_back("inter_indicator");
    names.push_back("inter_ttb_attacking");
    names.push_back("inter_ttb_defending");
    names.push_back("inter_dist_opp_goal");
    names.push_back("inter_angle_opp_goal");
    names.push_back("inter_dist_own_goal");
    names.push_back("inter_angle_own_goal");
    names.push_back("inter_ball_speed");
    names.push_back("inter_transition");
    if (static_cast<int>(names.size()) != total_dim())
        throw std::logic_error("EdmsLayout: channel name count mismatch");
    return names;
}

namespace {

// The defending team attacks -x in a normalized frame, so its offside line is
// the mirrored rule mapped back into the original coordinates.
double defending_offside_line(const FrameSnapshot& frame, Team defending_team) {
    FrameSnapshot m = frame;
    for (auto& p : m.players) {
        p.position.x = -p.position.x;
        p.velocity.x = -p.velocity.x;
        p.acceleration.x = -p.acceleration.x;
    }
    m.ball.position.x = -m.ball.position.x;
    m.ball.velocity.x = -m.ball.velocity.x;
    return -offside_line(m, defending_team);
}

}  // namespace

std::vector<const PlayerState*> off_ball_attackers(const FrameSnapshot& frame) {
    if (!frame.possession_team.has_value())
        throw std::invalid_argument("off_ball_attackers: possession team unknown");
    const Team att = *frame.possession_team;

    std::int64_t excluded = -1;
    if (frame.on_ball_player.has_value()) {
        const PlayerState* c = frame.find_player(*frame.on_ball_player);
        if (c && c->team == att) excluded = c->player_id;
    }
    if (excluded < 0) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : frame.players) {
            if (p.team != att) continue;
            const double d = squared_distance(p.position, frame.ball.position);
            if (d < best || (d == best && p.player_id < excluded)) {
                best = d;
                excluded = p.player_id;
            }
        }
    }

    std::vector<const PlayerState*> out;
    for (const auto& p : frame.players)
        if (p.team == att && p.player_id != excluded) out.push_back(&p);
    std::sort(out.begin(), out.end(), [](const PlayerState* a, const PlayerState* b) {
        return a->jersey != b->jersey ? a->jersey < b->jersey : a->player_id < b->player_id;
    });
    return out;
}

std::vector<double> assemble_edms(const FrameSnapshot& frame, const StateContext& ctx,
                                  const std::string& formation, const EdmsConfig& cfg,
                                  SpaceEngine& engine) {
    cfg.validate();
    frame.validate(cfg.pitch);
    if (frame.attack_direction != AttackDirection::plus_x)
        throw std::invalid_argument("assemble_edms: frame is not attack-direction normalized");
    if (!frame.possession_team.has_value())
        throw std::invalid_argument("assemble_edms: possession team unknown");
    const Team att = *frame.possession_team;
    const Team def = other_team(att);

    const EdmsLayout layout = cfg.layout();
    std::vector<double> s(layout.total_dim(), 0.0);

    s[0] = offside_line(frame, att) - frame.ball.position.x;
    s[1] = defending_offside_line(frame, def) - frame.ball.position.x;
    const auto vit =
        std::find(cfg.formation_vocab.begin(), cfg.formation_vocab.end(), formation);
    if (vit == cfg.formation_vocab.end())
        throw std::invalid_argument("assemble_edms: formation '" + formation +
                                    "' not in vocabulary");
    s[2 + (vit - cfg.formation_vocab.begin())] = 1.0;

    engine.set_frame(frame);

    const auto off_ball = off_ball_attackers(frame);
    if (off_ball.size() != EdmsLayout::off_ball_rows)
        throw std::logic_error("assemble_edms: expected 10 off-ball attackers, got " +
                               std::to_string(off_ball.size()));
    for (int r = 0; r < EdmsLayout::off_ball_rows; ++r) {
        const PlayerState& p = *off_ball[r];
        const int off = layout.off_ball_row_offset(r);
        const double dist_ball = distance(p.position, frame.ball.position);
        const double ttr_p = time_to_reach_by_team(frame, def, p.position, cfg.motion);
        const double ttr_l =
            time_to_reach_passline(frame, p.player_id, cfg.motion, cfg.passline_spacing);
        const double space = engine.space_score(p.player_id);
        const auto delta = engine.delta_space_score_8dir(p.player_id);
        s[off + EdmsLayout::kDistBall] = dist_ball;
        s[off + EdmsLayout::kTtrPlayer] = ttr_p;
        s[off + EdmsLayout::kTtrPassline] = ttr_l;
        s[off + EdmsLayout::kSpace] = space;
        for (int k = 0; k < 8; ++k) s[off + EdmsLayout::kDelta0 + k] = delta[k];
        s[off + EdmsLayout::kPass] = pass_score(
            cfg.pass_scaling.scale(0, dist_ball), cfg.pass_scaling.scale(1, space),
            cfg.pass_scaling.scale(2, ttr_p), cfg.pass_scaling.scale(3, ttr_l));
    }

    if (ctx.kind == ContextKind::intra) {
        const int off = layout.intra_offset();
        s[off + EdmsLayout::kIntraIndicator] = 1.0;
        const PlayerState* carrier = frame.on_ball_player.has_value()
                                         ? frame.find_player(*frame.on_ball_player)
                                         : nullptr;
        if (!carrier || carrier->team != att)
            throw std::invalid_argument(
                "assemble_edms: unresolved on-ball player in intra context");
        s[off + EdmsLayout::kIntraTtbOpp] =
            time_to_reach_by_team(frame, def, frame.ball.position, cfg.motion);
        const GoalGeometry gg = goal_geometry(carrier->position, Goal::opponent, cfg.pitch);
        s[off + EdmsLayout::kIntraDistGoal] = gg.distance;
        s[off + EdmsLayout::kIntraAngleGoal] = gg.angle;
        const auto dribble = dribble_score(engine, carrier->player_id);
        for (int k = 0; k < 8; ++k) s[off + EdmsLayout::kIntraDribble0 + k] = dribble[k];
        const auto shot = shot_score(frame, carrier->player_id, cfg.pitch, cfg.shot);
        s[off + EdmsLayout::kIntraShot] = shot.value_or(0.0);
        s[off + EdmsLayout::kIntraShotValid] = shot.has_value() ? 1.0 : 0.0;
        const auto lb = long_ball_score(frame, cfg.pitch);
        for (int k = 0; k < 3; ++k) s[off + EdmsLayout::kIntraLongBall0 + k] = lb[k];
    } else {
        const int off = layout.inter_offset();
        s[off + EdmsLayout::kInterIndicator] = 1.0;
        s[off + EdmsLayout::kInterTtbAtt] =
            time_to_reach_by_team(frame, att, frame.ball.position, cfg.motion);
        s[off + EdmsLayout::kInterTtbDef] =
            time_to_reach_by_team(frame, def, frame.ball.position, cfg.motion);
        const GoalGeometry opp = goal_geometry(frame.ball.position, Goal::opponent, cfg.pitch);
        const GoalGeometry own = goal_geometry(frame.ball.position, Goal::own, cfg.pitch);
        s[off + EdmsLayout::kInterDistOpp] = opp.distance;
        s[off + EdmsLayout::kInterAngleOpp] = opp.angle;
        s[off + EdmsLayout::kInterDistOwn] = own.distance;
        s[off + EdmsLayout::kInterAngleOwn] = own.angle;
        s[off + EdmsLayout::kInterBallSpeed] = frame.ball.velocity.norm();
        s[off + EdmsLayout::kInterTransition] = ctx.transition ? 1.0 : 0.0;
    }
    return s;
}

std::vector<double> assemble_edms(const FrameSnapshot& frame, const StateContext& ctx,
                                  const std::string& formation, const EdmsConfig& cfg) {
    SpaceEngine engine(cfg.pitch, cfg.surface, cfg.space);
    return assemble_edms(frame, ctx, formation, cfg, engine);
}

std::vector<double> assemble_pvs(const FrameSnapshot& frame) {
    std::vector<double> s;
    s.reserve(kPvsDim);
    for (Team t : {Team::home, Team::away}) {
        auto members = frame.team_players(t);
        if (members.size() != 11)
            throw std::invalid_argument("assemble_pvs: " + team_name(t) + " has " +
                                        std::to_string(members.size()) + " players, need 11");
        std::sort(members.begin(), members.end(),
                  [](const PlayerState* a, const PlayerState* b) { return a->jersey < b->jersey; });
        for (const PlayerState* p : members) {
            s.push_back(p->position.x);
            s.push_back(p->position.y);
            s.push_back(p->velocity.x);
            s.push_back(p->velocity.y);
        }
    }
    s.push_back(frame.ball.position.x);
    s.push_back(frame.ball.position.y);
    s.push_back(frame.ball.velocity.x);
    s.push_back(frame.ball.velocity.y);
    if (static_cast<int>(s.size()) != kPvsDim)
        throw std::logic_error("assemble_pvs: missing objects, got " +
                               std::to_string(s.size() / 4) + " of 23");
    return s;
}

}  // namespace pitchrl
