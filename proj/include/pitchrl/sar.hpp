#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pitchrl/events.hpp"
#include "pitchrl/qnet.hpp"
#include "pitchrl/sequence.hpp"
#include "pitchrl/state.hpp"

namespace pitchrl {

struct SarHeader {
    int layout_version = 1;
    std::string state_kind = "edms";  // "edms" or "pvs"
    PassScaling scaling;
    double frame_rate = 25.0;
    int state_dim = 0;
    std::vector<std::string> formation_vocab;

    void validate() const;
};

/// One per-player, per-step record. States are frame-global; the player
/// enters through the label and the carrier-derived mask.
struct SarSample {
    std::int64_t episode = 0;  // possession_id
    std::int64_t player_id = 0;
    Team team = Team::home;
    int t = 0;
    std::vector<double> state;
    ActionLabel action = ActionLabel::stay;
    double reward = 0.0;
    std::uint16_t mask = 0;

    /// Throws unless the labeled action's mask bit is set.
    void validate() const;
};

struct SarDataset {
    SarHeader header;
    std::vector<SarSample> samples;

    void validate() const;
};

/// One trajectory per attacking player, in roster order (jersey ascending).
/// Rewards are shared across players; masks follow carrier identity.
std::vector<std::vector<SarSample>> build_sar(const PossessionSequence& seq,
                                              const std::vector<double>& rewards,
                                              const std::string& state_kind,
                                              const EdmsConfig& cfg,
                                              const std::string& formation_home,
                                              const std::string& formation_away);

/// Line-delimited JSON: header record first, then one record per sample.
/// Doubles round-trip bit-exactly.
void write_sar(const std::string& path, const SarDataset& dataset);
SarDataset read_sar(const std::string& path);

/// Groups samples into per-(episode, player) trajectories sorted by episode
/// then player id; steps must be contiguous from 0.
std::vector<Trajectory> to_trajectories(const SarDataset& dataset);

}  // namespace pitchrl
