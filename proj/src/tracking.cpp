#include "pitchrl/tracking.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pitchrl/io.hpp"

namespace pitchrl {

std::string team_name(Team t) { return t == Team::home ? "home" : "away"; }

Team team_from_name(const std::string& name) {
    if (name == "home") return Team::home;
    if (name == "away") return Team::away;
    throw std::invalid_argument("unknown team name: '" + name + "'");
}

std::vector<const PlayerState*> FrameSnapshot::team_players(Team t) const {
    std::vector<const PlayerState*> out;
    for (const auto& p : players)
        if (p.team == t) out.push_back(&p);
    return out;
}

const PlayerState* FrameSnapshot::find_player(std::int64_t player_id) const {
    for (const auto& p : players)
        if (p.player_id == player_id) return &p;
    return nullptr;
}

void FrameSnapshot::validate(const PitchConfig& pitch) const {
    if (players.size() != 22)
        throw std::invalid_argument("FrameSnapshot: expected 22 players, got " +
                                    std::to_string(players.size()));
    int home = 0, away = 0;
    const double slack = 5.0;
    for (const auto& p : players) {
        (p.team == Team::home ? home : away)++;
        if (std::fabs(p.position.x) > pitch.length / 2.0 + slack ||
            std::fabs(p.position.y) > pitch.width / 2.0 + slack)
            throw std::invalid_argument("FrameSnapshot: player " + std::to_string(p.player_id) +
                                        " outside pitch bounds");
        if (p.height_cm <= 0.0)
            throw std::invalid_argument("FrameSnapshot: nonpositive height for player " +
                                        std::to_string(p.player_id));
    }
    if (home != 11 || away != 11)
        throw std::invalid_argument("FrameSnapshot: expected 11 players per team");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& s, const std::string& path, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

}  // namespace

std::vector<TrackingRow> read_tracking_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tracking CSV: " + path);
    std::vector<TrackingRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        if (line_no == 1 && line.rfind("frame,", 0) == 0) continue;  // header
        auto f = split_csv_line(line);
        if (f.size() != 7)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 7 columns, got " + std::to_string(f.size()));
        TrackingRow r;
        r.frame = static_cast<std::int64_t>(parse_num(f[0], path, line_no));
        r.timestamp_s = parse_num(f[1], path, line_no);
        r.object_id = static_cast<std::int64_t>(parse_num(f[2], path, line_no));
        r.team = f[3];
        r.jersey = static_cast<int>(parse_num(f[4], path, line_no));
        r.x_m = parse_num(f[5], path, line_no);
        r.y_m = parse_num(f[6], path, line_no);
        rows.push_back(r);
    }
    return rows;
}

void write_tracking_csv(const std::string& path, const std::vector<TrackingRow>& rows) {
    std::ostringstream out;
    out << "frame,timestamp_s,object_id,team,jersey,x_m,y_m\n";
    for (const auto& r : rows) {
        out << r.frame << ',' << fmt_double(r.timestamp_s) << ',' << r.object_id << ',' << r.team
            << ',' << r.jersey << ',' << fmt_double(r.x_m) << ',' << fmt_double(r.y_m) << '\n';
    }
    write_file_atomic(path, out.str());
}

Roster read_roster_json(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    if (!j.is_object()) throw std::runtime_error("roster JSON must be an object: " + path);
    Roster roster;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::int64_t id = std::stoll(it.key());
        roster[id] = it.value().get<double>();
    }
    return roster;
}

void write_roster_json(const std::string& path, const Roster& roster) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [id, h] : roster) j[std::to_string(id)] = h;
    write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace pitchrl
