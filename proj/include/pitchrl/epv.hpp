#pragma once

#include <string>
#include <vector>

#include "pitchrl/geometry.hpp"
#include "pitchrl/importance.hpp"
#include "pitchrl/sequence.hpp"

namespace pitchrl {

/// Expected-possession-value surface over the pitch, oriented for a team
/// attacking +x. Cell (ix, iy) covers a pitch_length/n_x by pitch_width/n_y
/// rectangle; values are stored row by row from low y, index iy * n_x + ix.
struct EpvGrid {
    int n_x = 0;
    int n_y = 0;
    double pitch_length = 105.0;
    double pitch_width = 68.0;
    std::vector<double> values;

    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * n_x + ix]; }

    /// Checks dimensions, [0,1] range, and that column means are
    /// nondecreasing toward the attacked goal.
    void validate() const;
};

/// Shipped default: the importance surface sampled at cell centers and
/// rescaled so the grid spans [0, 0.35].
EpvGrid default_epv_grid(const ImportanceSurface& surface = {}, int n_x = 50, int n_y = 32,
                         double pitch_length = 105.0, double pitch_width = 68.0);

/// Two layouts: the native one (header `n_x,n_y,pitch_length,pitch_width`
/// followed by n_y rows of n_x values) and a headerless 32-row x 50-column
/// fallback assumed to cover a 105 x 68 pitch.
EpvGrid read_epv_csv(const std::string& path);
void write_epv_csv(const std::string& path, const EpvGrid& grid);

/// Bilinear interpolation between the four surrounding cell centers;
/// positions beyond the outer centers clip to the edge value.
double epv_lookup(const EpvGrid& grid, const Vec2& ball_position);

/// Per-step rewards: zeros except shot frames (EPV at the ball) and the
/// terminal step (+1 goal, -1 conceded next, else EPV at the final ball
/// position). A shot at the terminal step is overridden by the terminal
/// rule. Throws on an unresolved outcome.
std::vector<double> assign_rewards(const PossessionSequence& seq, const EpvGrid& grid);

}  // namespace pitchrl
