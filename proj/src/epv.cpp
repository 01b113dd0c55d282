#include "pitchrl/epv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pitchrl/io.hpp"

namespace pitchrl {

void EpvGrid::validate() const {
    if (n_x < 2 || n_y < 2) throw std::runtime_error("EPV grid: need at least 2x2 cells");
    if (pitch_length <= 0.0 || pitch_width <= 0.0)
        throw std::runtime_error("EPV grid: nonpositive pitch dimensions");
    if (values.size() != static_cast<std::size_t>(n_x) * n_y)
        throw std::runtime_error("EPV grid: " + std::to_string(values.size()) + " values for " +
                                 std::to_string(n_x) + "x" + std::to_string(n_y) + " cells");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::runtime_error("EPV grid: value " + fmt_double(v) + " outside [0,1]");
    double prev = -1.0;
    for (int ix = 0; ix < n_x; ++ix) {
        double mean = 0.0;
        for (int iy = 0; iy < n_y; ++iy) mean += at(ix, iy);
        mean /= n_y;
        if (mean + 1e-12 < prev)
            throw std::runtime_error("EPV grid: column means decrease toward the attacked goal "
                                     "at column " + std::to_string(ix));
        prev = mean;
    }
}

EpvGrid default_epv_grid(const ImportanceSurface& surface, int n_x, int n_y,
                         double pitch_length, double pitch_width) {
    surface.validate();
    EpvGrid grid;
    grid.n_x = n_x;
    grid.n_y = n_y;
    grid.pitch_length = pitch_length;
    grid.pitch_width = pitch_width;
    grid.values.resize(static_cast<std::size_t>(n_x) * n_y);
    const double dx = pitch_length / n_x;
    const double dy = pitch_width / n_y;
    double lo = 1.0, hi = 0.0;
    for (int iy = 0; iy < n_y; ++iy) {
        for (int ix = 0; ix < n_x; ++ix) {
            const Vec2 center{-pitch_length / 2.0 + (ix + 0.5) * dx,
                              -pitch_width / 2.0 + (iy + 0.5) * dy};
            const double v = importance(center, surface);
            grid.values[static_cast<std::size_t>(iy) * n_x + ix] = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    for (double& v : grid.values) v = 0.35 * (v - lo) / (hi - lo);
    grid.validate();
    return grid;
}

namespace {

std::vector<double> parse_row(const std::string& line, const std::string& where) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            throw std::runtime_error(where + ": bad number: " + cell);
        }
        if (used != cell.size()) throw std::runtime_error(where + ": bad number: " + cell);
        row.push_back(v);
    }
    if (row.empty()) throw std::runtime_error(where + ": empty row");
    return row;
}

}  // namespace

EpvGrid read_epv_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty EPV file");

    EpvGrid grid;
    std::vector<std::vector<double>> rows;
    if (line == "n_x,n_y,pitch_length,pitch_width") {
        if (!std::getline(in, line)) throw std::runtime_error(path + ": missing dimension row");
        const auto dims = parse_row(line, path + ":2");
        if (dims.size() != 4) throw std::runtime_error(path + ": expected 4 dimension fields");
        grid.n_x = static_cast<int>(dims[0]);
        grid.n_y = static_cast<int>(dims[1]);
        grid.pitch_length = dims[2];
        grid.pitch_width = dims[3];
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            rows.push_back(parse_row(line, path));
        }
    } else {
        // Headerless fallback: 32 rows of 50 values over a 105 x 68 pitch.
        rows.push_back(parse_row(line, path));
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            rows.push_back(parse_row(line, path));
        }
        if (rows.size() != 32 || rows[0].size() != 50)
            throw std::runtime_error(path + ": headerless EPV grid must be 32 rows x 50 values, "
                                     "got " + std::to_string(rows.size()) + " rows x " +
                                     std::to_string(rows[0].size()));
        grid.n_x = 50;
        grid.n_y = 32;
    }

    if (static_cast<int>(rows.size()) != grid.n_y)
        throw std::runtime_error(path + ": expected " + std::to_string(grid.n_y) + " rows, got " +
                                 std::to_string(rows.size()));
    grid.values.reserve(static_cast<std::size_t>(grid.n_x) * grid.n_y);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != grid.n_x)
            throw std::runtime_error(path + ": expected " + std::to_string(grid.n_x) +
                                     " values per row, got " + std::to_string(row.size()));
        grid.values.insert(grid.values.end(), row.begin(), row.end());
    }
    grid.validate();
    return grid;
}

void write_epv_csv(const std::string& path, const EpvGrid& grid) {
    grid.validate();
    std::ostringstream ss;
    ss << "n_x,n_y,pitch_length,pitch_width\n";
    ss << grid.n_x << "," << grid.n_y << "," << fmt_double(grid.pitch_length) << ","
       << fmt_double(grid.pitch_width) << "\n";
    for (int iy = 0; iy < grid.n_y; ++iy) {
        for (int ix = 0; ix < grid.n_x; ++ix) {
            if (ix) ss << ",";
            ss << fmt_double(grid.at(ix, iy));
        }
        ss << "\n";
    }
    write_file_atomic(path, ss.str());
}

double epv_lookup(const EpvGrid& grid, const Vec2& ball_position) {
    if (grid.n_x < 2 || grid.n_y < 2 ||
        grid.values.size() != static_cast<std::size_t>(grid.n_x) * grid.n_y)
        throw std::invalid_argument("epv_lookup: malformed grid");
    const double dx = grid.pitch_length / grid.n_x;
    const double dy = grid.pitch_width / grid.n_y;
    // Continuous cell-center coordinates: cell ix has center at fx = ix.
    double fx = (ball_position.x + grid.pitch_length / 2.0) / dx - 0.5;
    double fy = (ball_position.y + grid.pitch_width / 2.0) / dy - 0.5;
    fx = std::clamp(fx, 0.0, static_cast<double>(grid.n_x - 1));
    fy = std::clamp(fy, 0.0, static_cast<double>(grid.n_y - 1));
    const int ix = std::min(static_cast<int>(fx), grid.n_x - 2);
    const int iy = std::min(static_cast<int>(fy), grid.n_y - 2);
    const double tx = fx - ix;
    const double ty = fy - iy;
    const double v00 = grid.at(ix, iy), v10 = grid.at(ix + 1, iy);
    const double v01 = grid.at(ix, iy + 1), v11 = grid.at(ix + 1, iy + 1);
    return (1.0 - tx) * (1.0 - ty) * v00 + tx * (1.0 - ty) * v10 + (1.0 - tx) * ty * v01 +
           tx * ty * v11;
}

std::vector<double> assign_rewards(const PossessionSequence& seq, const EpvGrid& grid) {
    if (seq.outcome == Outcome::unresolved)
        throw std::invalid_argument("assign_rewards: unresolved outcome for possession " +
                                    std::to_string(seq.possession_id));
    const int T = static_cast<int>(seq.frames.size());
    if (T == 0) throw std::invalid_argument("assign_rewards: empty sequence");
    std::vector<double> rewards(T, 0.0);
    for (int t : seq.shot_frames) {
        if (t < 0 || t >= T)
            throw std::invalid_argument("assign_rewards: shot frame " + std::to_string(t) +
                                        " out of range");
        rewards[t] = epv_lookup(grid, seq.frames[t].ball.position);
    }
    switch (seq.outcome) {
        case Outcome::goal: rewards[T - 1] = 1.0; break;
        case Outcome::conceded_next: rewards[T - 1] = -1.0; break;
        case Outcome::other:
            rewards[T - 1] = epv_lookup(grid, seq.frames[T - 1].ball.position);
            break;
        case Outcome::unresolved: break;
    }
    return rewards;
}

}  // namespace pitchrl
