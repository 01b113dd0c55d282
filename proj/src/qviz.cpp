#include "pitchrl/qviz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pitchrl/io.hpp"

namespace pitchrl {

namespace {

const Trajectory* find_trajectory(const std::vector<Trajectory>& trajectories,
                                  std::int64_t episode, std::int64_t player_id) {
    for (const auto& traj : trajectories)
        if (traj.episode == episode && traj.player_id == player_id) return &traj;
    return nullptr;
}

}  // namespace

DirectionalQ extract_offball_q(const QNet& net, const SarDataset& data, std::int64_t episode,
                               int t, std::int64_t player_id, int top_k) {
    if (top_k < 0 || top_k > 8)
        throw std::invalid_argument("extract_offball_q: top_k must be in [0,8]");
    const auto trajectories = to_trajectories(data);
    const Trajectory* traj = find_trajectory(trajectories, episode, player_id);
    if (!traj)
        throw std::invalid_argument("extract_offball_q: no trajectory for episode " +
                                    std::to_string(episode) + " player " +
                                    std::to_string(player_id));
    if (t < 0 || t >= traj->length())
        throw std::invalid_argument("extract_offball_q: step " + std::to_string(t) +
                                    " outside trajectory of length " +
                                    std::to_string(traj->length()));
    if (traj->masks[t] != kOffBallMask)
        throw std::invalid_argument("extract_offball_q: player " + std::to_string(player_id) +
                                    " carries the ball at step " + std::to_string(t) +
                                    "; use the on-ball Q entries instead");

    const std::vector<std::vector<double>> prefix(traj->states.begin(),
                                                  traj->states.begin() + t + 1);
    const ForwardCache cache = forward(net, prefix);
    const auto row = masked_row(cache, t, kOffBallMask);

    DirectionalQ out;
    out.player_id = player_id;
    out.episode = episode;
    out.t = t;
    for (int i = 0; i < 9; ++i) out.q[i] = row[7 + i];
    std::vector<int> dirs{0, 1, 2, 3, 4, 5, 6, 7};
    std::stable_sort(dirs.begin(), dirs.end(),
                     [&](int a, int b) { return out.q[a] > out.q[b]; });
    out.top_k.assign(dirs.begin(), dirs.begin() + top_k);
    return out;
}

std::vector<TeamQSummary> team_aggregate(const QNet& net, const SarDataset& data) {
    const auto trajectories = to_trajectories(data);
    std::map<Team, std::pair<double, int>> acc;  // sum, trajectory count
    std::map<Team, std::set<std::int64_t>> episodes;
    for (const auto& traj : trajectories) {
        const ForwardCache cache = forward(net, traj.states);
        const int T = traj.length();
        acc[traj.team].first += cache.Q(T - 1, traj.actions[T - 1]);
        acc[traj.team].second += 1;
        episodes[traj.team].insert(traj.episode);
    }
    std::vector<TeamQSummary> out;
    for (Team team : {Team::home, Team::away}) {
        auto it = acc.find(team);
        if (it == acc.end()) continue;
        TeamQSummary s;
        s.team = team;
        s.mean_terminal_q = it->second.first / it->second.second;
        s.sequences = static_cast<int>(episodes[team].size());
        out.push_back(s);
    }
    return out;
}

void write_team_summary_csv(const std::string& path,
                            const std::vector<TeamQSummary>& summaries) {
    std::ostringstream ss;
    ss << "team,mean_terminal_q,sequences\n";
    for (const auto& s : summaries)
        ss << team_name(s.team) << "," << fmt_double(s.mean_terminal_q) << "," << s.sequences
           << "\n";
    write_file_atomic(path, ss.str());
}

namespace {

constexpr double kMargin = 3.0;  // m of whitespace around the pitch

struct Mapper {
    double half_l, half_w, scale;
    double x(double xm) const { return (xm + half_l + kMargin) * scale; }
    double y(double ym) const { return (half_w + kMargin - ym) * scale; }
    double len(double m) const { return m * scale; }
};

void line(std::ostringstream& ss, const Mapper& m, double x1, double y1, double x2, double y2,
          const char* style) {
    ss << "<line x1=\"" << fmt_double(m.x(x1)) << "\" y1=\"" << fmt_double(m.y(y1))
       << "\" x2=\"" << fmt_double(m.x(x2)) << "\" y2=\"" << fmt_double(m.y(y2)) << "\" "
       << style << "/>\n";
}

void rect(std::ostringstream& ss, const Mapper& m, double x, double y, double w, double h,
          const char* style) {
    // (x, y) is the lower-left corner in pitch coordinates.
    ss << "<rect x=\"" << fmt_double(m.x(x)) << "\" y=\"" << fmt_double(m.y(y + h))
       << "\" width=\"" << fmt_double(m.len(w)) << "\" height=\"" << fmt_double(m.len(h))
       << "\" " << style << "/>\n";
}

void circle(std::ostringstream& ss, const Mapper& m, double x, double y, double r,
            const std::string& style) {
    ss << "<circle cx=\"" << fmt_double(m.x(x)) << "\" cy=\"" << fmt_double(m.y(y))
       << "\" r=\"" << fmt_double(m.len(r)) << "\" " << style << "/>\n";
}

void draw_pitch(std::ostringstream& ss, const Mapper& m, const PitchConfig& pitch) {
    const double hl = pitch.length / 2.0, hw = pitch.width / 2.0;
    const char* kLine = "stroke=\"#2e7d32\" stroke-width=\"1.5\" fill=\"none\"";
    rect(ss, m, -hl, -hw, pitch.length, pitch.width,
         "stroke=\"#2e7d32\" stroke-width=\"1.5\" fill=\"#f4fbf4\"");
    line(ss, m, 0.0, -hw, 0.0, hw, kLine);
    circle(ss, m, 0.0, 0.0, 9.15, kLine);
    const double box_w = std::min(40.32, pitch.width);
    const double goal_box_w = std::min(18.32, pitch.width);
    for (double side : {-1.0, 1.0}) {
        const double edge = side * hl;
        rect(ss, m, std::min(edge, edge - side * 16.5), -box_w / 2.0, 16.5, box_w, kLine);
        rect(ss, m, std::min(edge, edge - side * 5.5), -goal_box_w / 2.0, 5.5, goal_box_w,
             kLine);
        rect(ss, m, std::min(edge, edge + side * 1.5), -pitch.goal_width / 2.0, 1.5,
             pitch.goal_width, "stroke=\"#2e7d32\" stroke-width=\"1.5\" fill=\"#dddddd\"");
    }
}

void draw_arrow(std::ostringstream& ss, const Mapper& m, const Vec2& from, int direction,
                double length_m, const char* color) {
    constexpr double kPi = 3.14159265358979323846;
    const double angle = direction * kPi / 4.0;
    const Vec2 tip{from.x + length_m * std::cos(angle), from.y + length_m * std::sin(angle)};
    ss << "<line x1=\"" << fmt_double(m.x(from.x)) << "\" y1=\"" << fmt_double(m.y(from.y))
       << "\" x2=\"" << fmt_double(m.x(tip.x)) << "\" y2=\"" << fmt_double(m.y(tip.y))
       << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt_double(m.len(0.35))
       << "\"/>\n";
    const double head = 0.9;
    for (double spread : {0.75, -0.75}) {
        const double a = angle + kPi + spread;
        const Vec2 wing{tip.x + head * std::cos(a), tip.y + head * std::sin(a)};
        ss << "<line x1=\"" << fmt_double(m.x(tip.x)) << "\" y1=\"" << fmt_double(m.y(tip.y))
           << "\" x2=\"" << fmt_double(m.x(wing.x)) << "\" y2=\"" << fmt_double(m.y(wing.y))
           << "\" stroke=\"" << color << "\" stroke-width=\"" << fmt_double(m.len(0.35))
           << "\"/>\n";
    }
}

const char* kDirLabels[9] = {"0", "45", "90", "135", "180", "225", "270", "315", "stay"};

}  // namespace

std::string render_field_plot(const FrameSnapshot& frame,
                              const std::vector<DirectionalQ>& entries,
                              const PlotOptions& options) {
    options.pitch.validate();
    frame.validate(options.pitch);
    if (options.scale <= 0.0) throw std::invalid_argument("render_field_plot: scale <= 0");
    for (const auto& e : entries) {
        if (!frame.find_player(e.player_id))
            throw std::invalid_argument("render_field_plot: subject " +
                                        std::to_string(e.player_id) + " not in frame");
        for (double v : e.q)
            if (!std::isfinite(v))
                throw std::invalid_argument("render_field_plot: non-finite Q value");
    }

    const Mapper m{options.pitch.length / 2.0, options.pitch.width / 2.0, options.scale};
    const bool panel = !options.overlay && !entries.empty();
    const double pitch_w = m.len(options.pitch.length + 2.0 * kMargin);
    const double panel_w = panel ? m.len(46.0) : 0.0;
    const double strip_h = m.len(22.0);
    const double height = std::max(m.len(options.pitch.width + 2.0 * kMargin),
                                   panel ? entries.size() * strip_h + m.len(kMargin) : 0.0);

    std::ostringstream ss;
    ss << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
       << fmt_double(pitch_w + panel_w) << "\" height=\"" << fmt_double(height)
       << "\" font-family=\"sans-serif\">\n";
    draw_pitch(ss, m, options.pitch);

    for (const auto& e : entries) {
        const PlayerState* p = frame.find_player(e.player_id);
        circle(ss, m, p->position.x, p->position.y, 1.9,
               "stroke=\"#ff9800\" stroke-width=\"2\" fill=\"none\"");
    }
    for (const auto& p : frame.players) {
        std::string style = std::string("fill=\"") +
                            (p.team == Team::home ? "#1f5fbf" : "#c62828") + "\"";
        if (!p.visible) style += " opacity=\"0.35\"";
        circle(ss, m, p.position.x, p.position.y, 1.2, style);
        ss << "<text x=\"" << fmt_double(m.x(p.position.x)) << "\" y=\""
           << fmt_double(m.y(p.position.y) + m.len(0.55)) << "\" font-size=\""
           << fmt_double(m.len(1.5)) << "\" text-anchor=\"middle\" fill=\"#ffffff\">"
           << p.jersey << "</text>\n";
    }
    circle(ss, m, frame.ball.position.x, frame.ball.position.y, 0.7, "fill=\"#111111\"");

    if (options.overlay) {
        static const char* kRankColors[8] = {"#e53935", "#fb8c00", "#fdd835", "#9e9d24",
                                             "#43a047", "#00897b", "#3949ab", "#8e24aa"};
        for (const auto& e : entries) {
            const PlayerState* p = frame.find_player(e.player_id);
            for (std::size_t r = 0; r < e.top_k.size(); ++r)
                draw_arrow(ss, m, p->position, e.top_k[r], 6.5 - 1.4 * r,
                           kRankColors[std::min<std::size_t>(r, 7)]);
        }
    } else if (panel) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const DirectionalQ& e = entries[i];
            const double ox = pitch_w + m.len(3.0);
            const double oy = i * strip_h + m.len(3.0);
            ss << "<text x=\"" << fmt_double(ox) << "\" y=\"" << fmt_double(oy)
               << "\" font-size=\"" << fmt_double(m.len(1.8)) << "\">player "
               << e.player_id << " t=" << e.t << "</text>\n";
            double lo = e.q[0], hi = e.q[0];
            for (double v : e.q) lo = std::min(lo, v), hi = std::max(hi, v);
            const double span = hi - lo > 0.0 ? hi - lo : 1.0;
            const double bar_h_max = m.len(12.0), bar_w = m.len(3.6);
            const double base_y = oy + m.len(1.0) + bar_h_max;
            for (int b = 0; b < 9; ++b) {
                const double h = (e.q[b] - lo) / span * bar_h_max;
                const double bx = ox + b * (bar_w + m.len(0.8));
                ss << "<rect x=\"" << fmt_double(bx) << "\" y=\"" << fmt_double(base_y - h)
                   << "\" width=\"" << fmt_double(bar_w) << "\" height=\"" << fmt_double(h)
                   << "\" fill=\"#1f5fbf\"/>\n";
                ss << "<text x=\"" << fmt_double(bx + bar_w / 2.0) << "\" y=\""
                   << fmt_double(base_y + m.len(1.8)) << "\" font-size=\""
                   << fmt_double(m.len(1.3)) << "\" text-anchor=\"middle\">" << kDirLabels[b]
                   << "</text>\n";
                ss << "<text x=\"" << fmt_double(bx + bar_w / 2.0) << "\" y=\""
                   << fmt_double(base_y - h - m.len(0.5)) << "\" font-size=\""
                   << fmt_double(m.len(1.1)) << "\" text-anchor=\"middle\">"
                   << fmt_double(e.q[b]) << "</text>\n";
            }
        }
    }
    ss << "</svg>\n";
    return ss.str();
}

}  // namespace pitchrl
