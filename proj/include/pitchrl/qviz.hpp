#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pitchrl/qnet.hpp"
#include "pitchrl/sar.hpp"
#include "pitchrl/tracking.hpp"

namespace pitchrl {

/// Off-ball Q slice at one step: entries 0..7 are the 8 move directions
/// (0 toward the attacked goal, 45 deg counterclockwise steps), entry 8 is
/// stay. top_k holds direction indices (0..7 only, never stay) sorted by
/// descending Q; arrows are drawn from these.
struct DirectionalQ {
    std::int64_t player_id = 0;
    std::int64_t episode = 0;
    int t = 0;
    std::array<double, 9> q{};
    std::vector<int> top_k;
};

/// Replays the player's episode prefix through the net and slices the masked
/// Q row at step t down to the 9 off-ball entries. Throws when the player is
/// the carrier at that step (use the on-ball entries directly for those).
DirectionalQ extract_offball_q(const QNet& net, const SarDataset& data, std::int64_t episode,
                               int t, std::int64_t player_id, int top_k = 3);

struct TeamQSummary {
    Team team = Team::home;
    double mean_terminal_q = 0.0;
    int sequences = 0;
};

/// Mean chosen-action Q at each trajectory's terminal step, grouped by team;
/// `sequences` counts distinct episodes. Teams without data are omitted.
std::vector<TeamQSummary> team_aggregate(const QNet& net, const SarDataset& data);

void write_team_summary_csv(const std::string& path,
                            const std::vector<TeamQSummary>& summaries);

struct PlotOptions {
    bool overlay = false;  // arrows on the pitch instead of a bar panel
    double scale = 7.0;    // px per meter
    PitchConfig pitch;
};

/// Deterministic SVG: pitch outline, players colored by team, the ball, and
/// the subjects of the DirectionalQ entries highlighted. Panel mode adds a
/// bar chart of the 9 off-ball Q-values per subject; overlay mode draws each
/// subject's top_k direction arrows, longest first. No entries: pitch only.
std::string render_field_plot(const FrameSnapshot& frame,
                              const std::vector<DirectionalQ>& entries,
                              const PlotOptions& options = {});

}  // namespace pitchrl
