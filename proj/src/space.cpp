#include "pitchrl/space.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "pitchrl/rules.hpp"

namespace pitchrl {

PitchGrid::PitchGrid(const PitchConfig& pitch, double resolution_m) {
    if (resolution_m <= 0.0) throw std::invalid_argument("PitchGrid: resolution must be > 0");
    resolution = resolution_m;
    n_x = static_cast<int>(std::ceil(pitch.length / resolution_m));
    n_y = static_cast<int>(std::ceil(pitch.width / resolution_m));
    origin_x = -pitch.length / 2.0 + resolution_m / 2.0;
    origin_y = -pitch.width / 2.0 + resolution_m / 2.0;
}

const std::array<Vec2, 8>& direction_steps() {
    static const double r = std::sqrt(0.5);
    static const std::array<Vec2, 8> steps = {{{1.0, 0.0},
                                               {r, r},
                                               {0.0, 1.0},
                                               {-r, r},
                                               {-1.0, 0.0},
                                               {-r, -r},
                                               {0.0, -1.0},
                                               {r, -r}}};
    return steps;
}

namespace {

struct Projected {
    std::int64_t id;
    Vec2 proj;
};

std::vector<Projected> project_players(const FrameSnapshot& frame, double horizon) {
    std::vector<Projected> out;
    for (const auto& p : frame.players)
        if (p.visible) out.push_back({p.player_id, p.position + p.velocity * horizon});
    return out;
}

// (distance, id) lexicographic order; first key squared distance.
inline bool closer(double d, std::int64_t id, double best_d, std::int64_t best_id) {
    return d < best_d || (d == best_d && id < best_id);
}

}  // namespace

DominantRegionField dominant_region(const FrameSnapshot& frame, const PitchConfig& pitch,
                                    double grid_resolution, double projection_horizon) {
    auto projected = project_players(frame, projection_horizon);
    if (projected.empty()) throw std::invalid_argument("dominant_region: no visible players");

    DominantRegionField field;
    field.grid = PitchGrid(pitch, grid_resolution);
    field.owner.resize(field.grid.cell_count());
    for (int iy = 0; iy < field.grid.n_y; ++iy) {
        for (int ix = 0; ix < field.grid.n_x; ++ix) {
            Vec2 c = field.grid.cell_center(ix, iy);
            double best_d = std::numeric_limits<double>::infinity();
            std::int64_t best_id = -1;
            for (const auto& pl : projected) {
                double d = squared_distance(pl.proj, c);
                if (closer(d, pl.id, best_d, best_id)) {
                    best_d = d;
                    best_id = pl.id;
                }
            }
            field.owner[iy * field.grid.n_x + ix] = best_id;
        }
    }
    return field;
}

SpaceEngine::SpaceEngine(const PitchConfig& pitch, const ImportanceSurface& surface,
                         const SpaceParams& params)
    : pitch_(pitch), surface_(surface), params_(params), grid_(pitch, params.grid_resolution) {
    pitch.validate();
    surface.validate();
    pitch_area_ = pitch.length * pitch.width;
    cell_importance_.resize(grid_.cell_count());
    center_x_.resize(grid_.cell_count());
    center_y_.resize(grid_.cell_count());
    surface_integral_ = 0.0;
    for (int iy = 0; iy < grid_.n_y; ++iy) {
        for (int ix = 0; ix < grid_.n_x; ++ix) {
            const int ci = iy * grid_.n_x + ix;
            const Vec2 c = grid_.cell_center(ix, iy);
            double v = importance(c, surface_) * grid_.cell_area();
            cell_importance_[ci] = v;
            center_x_[ci] = c.x;
            center_y_[ci] = c.y;
            surface_integral_ += v;
        }
    }
}

void SpaceEngine::set_frame(const FrameSnapshot& frame) {
    frame_ = frame;
    auto projected = project_players(frame, params_.projection_horizon);
    if (projected.empty()) throw std::invalid_argument("SpaceEngine: no visible players");

    const double inf = std::numeric_limits<double>::infinity();
    best_.assign(grid_.cell_count(), CellBest{inf, inf, -1, -1});
    field_.grid = grid_;
    field_.owner.resize(grid_.cell_count());

    for (int iy = 0; iy < grid_.n_y; ++iy) {
        for (int ix = 0; ix < grid_.n_x; ++ix) {
            const int ci = iy * grid_.n_x + ix;
            Vec2 c = grid_.cell_center(ix, iy);
            CellBest& b = best_[ci];
            for (const auto& pl : projected) {
                double d = squared_distance(pl.proj, c);
                if (closer(d, pl.id, b.d1, b.id1)) {
                    b.d2 = b.d1;
                    b.id2 = b.id1;
                    b.d1 = d;
                    b.id1 = pl.id;
                } else if (closer(d, pl.id, b.d2, b.id2)) {
                    b.d2 = d;
                    b.id2 = pl.id;
                }
            }
            field_.owner[ci] = b.id1;
        }
    }
}

double SpaceEngine::owned_importance(std::int64_t player_id) const {
    double sum = 0.0;
    for (std::size_t ci = 0; ci < best_.size(); ++ci)
        if (best_[ci].id1 == player_id) sum += cell_importance_[ci];
    return sum;
}

double SpaceEngine::owned_importance_displaced(std::int64_t player_id, const Vec2& proj) const {
    double sum = 0.0;
    for (std::size_t ci = 0; ci < best_.size(); ++ci) {
        const CellBest& b = best_[ci];
        const bool self_best = (b.id1 == player_id);
        const double d_other = self_best ? b.d2 : b.d1;
        const std::int64_t id_other = self_best ? b.id2 : b.id1;
        double d = squared_distance(proj, Vec2{center_x_[ci], center_y_[ci]});
        if (closer(d, player_id, d_other, id_other)) sum += cell_importance_[ci];
    }
    return sum;
}

double SpaceEngine::space_score(std::int64_t player_id) const {
    const PlayerState* p = frame_.find_player(player_id);
    if (!p) throw std::invalid_argument("space_score: unknown player " + std::to_string(player_id));
    if (!p->visible) return 0.0;
    if (is_offside(frame_, *p)) return 0.0;
    return owned_importance(player_id) / pitch_area_;
}

double SpaceEngine::space_score_displaced(std::int64_t player_id, const Vec2& new_position) const {
    const PlayerState* p = frame_.find_player(player_id);
    if (!p)
        throw std::invalid_argument("space_score_displaced: unknown player " +
                                    std::to_string(player_id));
    if (!p->visible) return 0.0;
    if (frame_.possession_team.has_value() && p->team == *frame_.possession_team) {
        double line = offside_line_with_override(frame_, p->team, player_id, new_position.x);
        if (new_position.x > line) return 0.0;
    }
    Vec2 proj = new_position + p->velocity * params_.projection_horizon;
    return owned_importance_displaced(player_id, proj) / pitch_area_;
}

std::array<double, 8> SpaceEngine::delta_space_score_8dir(std::int64_t player_id) const {
    const PlayerState* p = frame_.find_player(player_id);
    if (!p)
        throw std::invalid_argument("delta_space_score_8dir: unknown player " +
                                    std::to_string(player_id));
    const double current = space_score(player_id);
    std::array<double, 8> deltas{};
    const auto& steps = direction_steps();
    for (int k = 0; k < 8; ++k) {
        Vec2 target = pitch_.clip(p->position + steps[k]);
        deltas[k] = space_score_displaced(player_id, target) - current;
    }
    return deltas;
}

double space_score(const FrameSnapshot& frame, std::int64_t player_id, const PitchConfig& pitch,
                   const ImportanceSurface& surface, const SpaceParams& params) {
    SpaceEngine engine(pitch, surface, params);
    engine.set_frame(frame);
    return engine.space_score(player_id);
}

std::array<double, 8> delta_space_score_8dir(const FrameSnapshot& frame, std::int64_t player_id,
                                             const PitchConfig& pitch,
                                             const ImportanceSurface& surface,
                                             const SpaceParams& params) {
    SpaceEngine engine(pitch, surface, params);
    engine.set_frame(frame);
    return engine.delta_space_score_8dir(player_id);
}

}  // namespace pitchrl
