#include "pitchrl/kinematics.hpp"

#include <stdexcept>

namespace pitchrl {

namespace {

std::vector<Vec2> central_diff(const std::vector<Vec2>& s, double rate) {
    const std::size_t n = s.size();
    std::vector<Vec2> d(n);
    d[0] = (s[1] - s[0]) * rate;
    d[n - 1] = (s[n - 1] - s[n - 2]) * rate;
    for (std::size_t t = 1; t + 1 < n; ++t) d[t] = (s[t + 1] - s[t - 1]) * (rate / 2.0);
    return d;
}

std::vector<Vec2> moving_average5(const std::vector<Vec2>& s) {
    const std::size_t n = s.size();
    std::vector<Vec2> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t lo = t >= 2 ? t - 2 : 0;
        std::size_t hi = std::min(n - 1, t + 2);
        Vec2 sum;
        for (std::size_t k = lo; k <= hi; ++k) sum += s[k];
        out[t] = sum * (1.0 / static_cast<double>(hi - lo + 1));
    }
    return out;
}

}  // namespace

KinematicsResult compute_kinematics(const std::vector<std::optional<Vec2>>& positions,
                                    double frame_rate, int max_gap) {
    const std::size_t n = positions.size();
    if (n < 3) throw std::invalid_argument("compute_kinematics: series length must be >= 3");
    if (frame_rate <= 0.0) throw std::invalid_argument("compute_kinematics: frame_rate must be > 0");

    KinematicsResult res;
    res.positions.resize(n);
    res.long_gap.assign(n, false);

    // Fill gaps. Interior gaps interpolate linearly between the bracketing
    // samples; leading/trailing gaps hold the nearest sample. Gaps longer
    // than max_gap (and held edges) are flagged.
    std::size_t i = 0;
    bool any = false;
    while (i < n) {
        if (positions[i].has_value()) {
            res.positions[i] = *positions[i];
            any = true;
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && !positions[j].has_value()) ++j;
        const bool has_left = i > 0;
        const bool has_right = j < n;
        const std::size_t gap = j - i;
        for (std::size_t k = i; k < j; ++k) {
            if (has_left && has_right) {
                double f = static_cast<double>(k - (i - 1)) / static_cast<double>(j - (i - 1));
                Vec2 a = res.positions[i - 1], b = *positions[j];
                res.positions[k] = a + (b - a) * f;
                if (gap > static_cast<std::size_t>(max_gap)) res.long_gap[k] = true;
            } else if (has_left) {
                res.positions[k] = res.positions[i - 1];
                res.long_gap[k] = true;
            } else if (has_right) {
                res.positions[k] = *positions[j];
                res.long_gap[k] = true;
            }
        }
        i = j;
    }
    if (!any) throw std::invalid_argument("compute_kinematics: series has no samples");

    std::vector<Vec2> v_raw = central_diff(res.positions, frame_rate);
    res.velocities = moving_average5(v_raw);
    res.accelerations = central_diff(res.velocities, frame_rate);
    return res;
}

}  // namespace pitchrl
