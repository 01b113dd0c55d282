#pragma once

#include <array>
#include <string>
#include <vector>

#include "pitchrl/features.hpp"
#include "pitchrl/space.hpp"
#include "pitchrl/tracking.hpp"

namespace pitchrl {

enum class ContextKind { intra, inter };

/// Possession context of a frame: intra while the ball stays with the
/// attacking team, inter while possession is transferring. transition is 1
/// when the attacking team is losing the ball (attack to defense), 0 when it
/// just won it.
struct StateContext {
    ContextKind kind = ContextKind::intra;
    bool transition = false;
};

/// Min-max scaling constants for the four pass-score inputs, in weight order:
/// dist_ball, space_score, time_to_reach_player, time_to_reach_passline.
/// Defaults are the identity on [0,1]. Values are clamped after scaling; a
/// degenerate range maps to 0.
struct PassScaling {
    std::array<double, 4> lo{0.0, 0.0, 0.0, 0.0};
    std::array<double, 4> hi{1.0, 1.0, 1.0, 1.0};

    double scale(int channel, double v) const;
    bool operator==(const PassScaling&) const = default;
};

std::vector<std::string> default_formation_vocab();

/// Named offsets into the flat EDMS vector. The layout is fixed given the
/// formation vocabulary size:
///   absolute:  [offside_dist_attacking, offside_dist_defending,
///               formation one-hot (vocab_size)]
///   off_ball:  10 rows, ascending jersey, of
///              [dist_ball, ttr_player, ttr_passline, space_score,
///               delta_space[8], pass_score]
///   intra:     [indicator, ttb_opponent, dist_goal, angle_goal,
///               dribble[8], shot_score, shot_valid, long_ball[3]]
///   inter:     [indicator, ttb_attacking, ttb_defending, dist_opp_goal,
///               angle_opp_goal, dist_own_goal, angle_own_goal, ball_speed,
///               transition]
struct EdmsLayout {
    int vocab_size = 8;

    static constexpr int off_ball_rows = 10;
    static constexpr int off_ball_row_dim = 13;
    static constexpr int intra_dim = 17;
    static constexpr int inter_dim = 9;

    // off-ball row channels
    static constexpr int kDistBall = 0;
    static constexpr int kTtrPlayer = 1;
    static constexpr int kTtrPassline = 2;
    static constexpr int kSpace = 3;
    static constexpr int kDelta0 = 4;
    static constexpr int kPass = 12;
    // intra channels
    static constexpr int kIntraIndicator = 0;
    static constexpr int kIntraTtbOpp = 1;
    static constexpr int kIntraDistGoal = 2;
    static constexpr int kIntraAngleGoal = 3;
    static constexpr int kIntraDribble0 = 4;
    static constexpr int kIntraShot = 12;
    static constexpr int kIntraShotValid = 13;
    static constexpr int kIntraLongBall0 = 14;
    // inter channels
    static constexpr int kInterIndicator = 0;
    static constexpr int kInterTtbAtt = 1;
    static constexpr int kInterTtbDef = 2;
    static constexpr int kInterDistOpp = 3;
    static constexpr int kInterAngleOpp = 4;
    static constexpr int kInterDistOwn = 5;
    static constexpr int kInterAngleOwn = 6;
    static constexpr int kInterBallSpeed = 7;
    static constexpr int kInterTransition = 8;

    int absolute_dim() const { return 2 + vocab_size; }
    int off_ball_offset() const { return absolute_dim(); }
    int off_ball_dim() const { return off_ball_rows * off_ball_row_dim; }
    int off_ball_row_offset(int row) const {
        return off_ball_offset() + row * off_ball_row_dim;
    }
    int intra_offset() const { return off_ball_offset() + off_ball_dim(); }
    int inter_offset() const { return intra_offset() + intra_dim; }
    int total_dim() const { return inter_offset() + inter_dim; }

    /// One name per channel, used by the feature CSV dump.
    std::vector<std::string> channel_names(const std::vector<std::string>& vocab) const;
};

/// Everything assemble_edms needs besides the frame itself.
struct EdmsConfig {
    PitchConfig pitch;
    ImportanceSurface surface;
    SpaceParams space;
    MotionParams motion;
    ShotParams shot;
    double passline_spacing = 1.0;
    std::vector<std::string> formation_vocab = default_formation_vocab();
    PassScaling pass_scaling;

    EdmsLayout layout() const { return {static_cast<int>(formation_vocab.size())}; }
    void validate() const;
};

/// Builds the flat EDMS vector for one normalized frame. The frame-global
/// vector is shared by every player trajectory at that step. `formation` is
/// the attacking team's formation string and must be in the vocabulary.
/// The engine must have been built with cfg's pitch/surface/space values;
/// its frame is reset here.
std::vector<double> assemble_edms(const FrameSnapshot& frame, const StateContext& ctx,
                                  const std::string& formation, const EdmsConfig& cfg,
                                  SpaceEngine& engine);

/// Convenience overload constructing a throwaway engine.
std::vector<double> assemble_edms(const FrameSnapshot& frame, const StateContext& ctx,
                                  const std::string& formation, const EdmsConfig& cfg);

/// The jersey-sorted attacking players currently off the ball. The carrier is
/// excluded; when the carrier is not an attacker, the attacker nearest the
/// ball stands in as the excluded pseudo-carrier (ties to lower player_id).
/// Always 10 players on a valid frame.
std::vector<const PlayerState*> off_ball_attackers(const FrameSnapshot& frame);

/// Baseline state: 23 objects x (x, y, vx, vy), home ascending jersey, away
/// ascending jersey, ball last. Length 92.
std::vector<double> assemble_pvs(const FrameSnapshot& frame);

constexpr int kPvsDim = 92;

}  // namespace pitchrl
