#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pitchrl/importance.hpp"
#include "pitchrl/tracking.hpp"

namespace pitchrl {

/// Uniform cell grid covering the pitch; cell centers are the sample points
/// for ownership and importance.
struct PitchGrid {
    double resolution = 1.0;  // m
    int n_x = 0;
    int n_y = 0;
    double origin_x = 0.0;  // center of cell (0, *)
    double origin_y = 0.0;

    PitchGrid() = default;
    PitchGrid(const PitchConfig& pitch, double resolution_m);

    Vec2 cell_center(int ix, int iy) const {
        return {origin_x + ix * resolution, origin_y + iy * resolution};
    }
    int cell_count() const { return n_x * n_y; }
    double cell_area() const { return resolution * resolution; }
};

/// Per-cell ownership under the velocity-aware partition: each cell belongs
/// to the player whose projected position (p + v * horizon) is nearest, ties
/// to the lower player_id. Only visible players take part.
struct DominantRegionField {
    PitchGrid grid;
    std::vector<std::int64_t> owner;  // cell-major: iy * n_x + ix
};

DominantRegionField dominant_region(const FrameSnapshot& frame, const PitchConfig& pitch,
                                    double grid_resolution, double projection_horizon = 0.5);

struct SpaceParams {
    double grid_resolution = 1.0;    // m
    double projection_horizon = 0.5;  // s
};

/// Precomputed per-frame ownership data that makes space scores and their
/// 1 m displacement probes cheap. The displaced-player queries reuse the
/// stored best-two distances per cell instead of rescanning every player.
class SpaceEngine {
public:
    SpaceEngine(const PitchConfig& pitch, const ImportanceSurface& surface,
                const SpaceParams& params);

    /// Rebuilds ownership for a frame. Throws if no players are visible.
    void set_frame(const FrameSnapshot& frame);

    /// Importance-weighted area owned by each visible player, before any
    /// offside rule or normalization. Sums to the surface integral.
    double owned_importance(std::int64_t player_id) const;

    /// Integral of the importance surface over the whole pitch (grid sum).
    double surface_integral() const { return surface_integral_; }

    /// Normalized space score: owned importance / pitch area, exactly 0 for
    /// an attacker in an offside position.
    double space_score(std::int64_t player_id) const;

    /// Space score the player would have after moving to new_position
    /// (velocity unchanged). Matches a full recomputation bit for bit.
    double space_score_displaced(std::int64_t player_id, const Vec2& new_position) const;

    /// Change in the player's space score for a 1 m step in each of 8
    /// directions (0 deg toward the attacked goal, 45 deg increments,
    /// counterclockwise). Displaced positions are clipped to the pitch.
    std::array<double, 8> delta_space_score_8dir(std::int64_t player_id) const;

    const DominantRegionField& field() const { return field_; }

private:
    struct CellBest {
        double d1 = 0.0;
        double d2 = 0.0;
        std::int64_t id1 = -1;
        std::int64_t id2 = -1;
    };

    double owned_importance_displaced(std::int64_t player_id, const Vec2& projected) const;

    PitchConfig pitch_;
    ImportanceSurface surface_;
    SpaceParams params_;
    PitchGrid grid_;
    std::vector<double> cell_importance_;  // importance * cell_area
    std::vector<double> center_x_;         // per cell, cell-major
    std::vector<double> center_y_;
    double surface_integral_ = 0.0;
    double pitch_area_ = 0.0;

    FrameSnapshot frame_;
    std::vector<CellBest> best_;
    DominantRegionField field_;
};

/// One-call convenience wrappers over SpaceEngine.
double space_score(const FrameSnapshot& frame, std::int64_t player_id, const PitchConfig& pitch,
                   const ImportanceSurface& surface, const SpaceParams& params = {});
std::array<double, 8> delta_space_score_8dir(const FrameSnapshot& frame, std::int64_t player_id,
                                             const PitchConfig& pitch,
                                             const ImportanceSurface& surface,
                                             const SpaceParams& params = {});

/// Unit steps for the 8 movement directions (index k = 45k degrees, 0 toward
/// the attacked goal, counterclockwise).
const std::array<Vec2, 8>& direction_steps();

}  // namespace pitchrl
