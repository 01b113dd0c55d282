#include "pitchrl/sar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pitchrl/io.hpp"

namespace pitchrl {

using nlohmann::json;

void SarHeader::validate() const {
    if (layout_version != 1)
        throw std::runtime_error("unsupported SAR layout_version " +
                                 std::to_string(layout_version));
    if (state_kind != "edms" && state_kind != "pvs")
        throw std::runtime_error("unknown state_kind: " + state_kind);
    if (frame_rate <= 0.0) throw std::runtime_error("SAR header: frame_rate <= 0");
    if (state_dim <= 0) throw std::runtime_error("SAR header: state_dim <= 0");
}

void SarSample::validate() const {
    const int a = static_cast<int>(action);
    if (a < 0 || a >= kNumActions)
        throw std::runtime_error("SAR sample: action out of range");
    if (!(mask >> a & 1))
        throw std::runtime_error("SAR sample: action " + action_name(action) +
                                 " invalid under mask for player " + std::to_string(player_id) +
                                 " at t=" + std::to_string(t));
    if (t < 0) throw std::runtime_error("SAR sample: negative step index");
}

void SarDataset::validate() const {
    header.validate();
    for (const auto& s : samples) {
        s.validate();
        if (static_cast<int>(s.state.size()) != header.state_dim)
            throw std::runtime_error("SAR sample state size " + std::to_string(s.state.size()) +
                                     " does not match header state_dim " +
                                     std::to_string(header.state_dim));
    }
}

std::vector<std::vector<SarSample>> build_sar(const PossessionSequence& seq,
                                              const std::vector<double>& rewards,
                                              const std::string& state_kind,
                                              const EdmsConfig& cfg,
                                              const std::string& formation_home,
                                              const std::string& formation_away) {
    if (state_kind != "edms" && state_kind != "pvs")
        throw std::invalid_argument("build_sar: unknown state_kind: " + state_kind);
    const int T = static_cast<int>(seq.frames.size());
    if (T == 0) throw std::invalid_argument("build_sar: empty sequence");
    if (static_cast<int>(rewards.size()) != T)
        throw std::invalid_argument("build_sar: " + std::to_string(rewards.size()) +
                                    " rewards for " + std::to_string(T) + " frames");
    if (static_cast<int>(seq.contexts.size()) != T)
        throw std::invalid_argument("build_sar: context/frame length mismatch");

    const std::string& formation =
        seq.team == Team::home ? formation_home : formation_away;

    std::vector<std::vector<double>> states(T);
    if (state_kind == "edms") {
        SpaceEngine engine(cfg.pitch, cfg.surface, cfg.space);
        for (int t = 0; t < T; ++t)
            states[t] = assemble_edms(seq.frames[t], seq.contexts[t], formation, cfg, engine);
    } else {
        for (int t = 0; t < T; ++t) states[t] = assemble_pvs(seq.frames[t]);
    }

    const auto roster = seq.frames[0].team_players(seq.team);
    std::vector<std::vector<SarSample>> out(roster.size());
    for (std::size_t pi = 0; pi < roster.size(); ++pi) {
        const std::int64_t pid = roster[pi]->player_id;
        auto lit = seq.labels.find(pid);
        if (lit == seq.labels.end() || static_cast<int>(lit->second.size()) != T)
            throw std::invalid_argument("build_sar: missing labels for player " +
                                        std::to_string(pid));
        auto& traj = out[pi];
        traj.resize(T);
        for (int t = 0; t < T; ++t) {
            SarSample& s = traj[t];
            s.episode = seq.possession_id;
            s.player_id = pid;
            s.team = seq.team;
            s.t = t;
            s.state = states[t];
            s.action = lit->second[t];
            s.reward = rewards[t];
            const auto& carrier = seq.frames[t].on_ball_player;
            s.mask = carrier.has_value() && *carrier == pid ? kOnBallMask : kOffBallMask;
            s.validate();
        }
    }
    return out;
}

namespace {

json header_to_json(const SarHeader& h) {
    return json{{"layout_version", h.layout_version},
                {"state_kind", h.state_kind},
                {"scaling", {{"lo", h.scaling.lo}, {"hi", h.scaling.hi}}},
                {"frame_rate", h.frame_rate},
                {"state_dim", h.state_dim},
                {"formation_vocab", h.formation_vocab}};
}

SarHeader header_from_json(const json& j) {
    SarHeader h;
    h.layout_version = j.at("layout_version").get<int>();
    h.state_kind = j.at("state_kind").get<std::string>();
    const auto& sc = j.at("scaling");
    for (int i = 0; i < 4; ++i) {
        h.scaling.lo[i] = sc.at("lo").at(i).get<double>();
        h.scaling.hi[i] = sc.at("hi").at(i).get<double>();
    }
    h.frame_rate = j.at("frame_rate").get<double>();
    h.state_dim = j.at("state_dim").get<int>();
    h.formation_vocab = j.at("formation_vocab").get<std::vector<std::string>>();
    return h;
}

}  // namespace

void write_sar(const std::string& path, const SarDataset& dataset) {
    dataset.validate();
    std::ostringstream ss;
    ss << header_to_json(dataset.header).dump() << "\n";
    for (const auto& s : dataset.samples) {
        json rec{{"episode", s.episode},
                 {"player_id", s.player_id},
                 {"team", team_name(s.team)},
                 {"t", s.t},
                 {"state", s.state},
                 {"action", static_cast<int>(s.action)},
                 {"reward", s.reward},
                 {"mask", s.mask}};
        ss << rec.dump() << "\n";
    }
    write_file_atomic(path, ss.str());
}

SarDataset read_sar(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw std::runtime_error(path + ": missing SAR header record");
    SarDataset ds;
    try {
        ds.header = header_from_json(json::parse(line));
    } catch (const json::exception& ex) {
        throw std::runtime_error(path + ": bad SAR header: " + ex.what());
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const json rec = json::parse(line);
            SarSample s;
            s.episode = rec.at("episode").get<std::int64_t>();
            s.player_id = rec.at("player_id").get<std::int64_t>();
            s.team = team_from_name(rec.at("team").get<std::string>());
            s.t = rec.at("t").get<int>();
            s.state = rec.at("state").get<std::vector<double>>();
            const int a = rec.at("action").get<int>();
            if (a < 0 || a >= kNumActions)
                throw std::runtime_error("action out of range");
            s.action = static_cast<ActionLabel>(a);
            s.reward = rec.at("reward").get<double>();
            s.mask = rec.at("mask").get<std::uint16_t>();
            ds.samples.push_back(std::move(s));
        } catch (const json::exception& ex) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": bad SAR record: " + ex.what());
        }
    }
    ds.validate();
    return ds;
}

std::vector<Trajectory> to_trajectories(const SarDataset& dataset) {
    dataset.validate();
    std::vector<const SarSample*> ordered;
    ordered.reserve(dataset.samples.size());
    for (const auto& s : dataset.samples) ordered.push_back(&s);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const SarSample* a, const SarSample* b) {
                         if (a->episode != b->episode) return a->episode < b->episode;
                         if (a->player_id != b->player_id) return a->player_id < b->player_id;
                         return a->t < b->t;
                     });

    std::vector<Trajectory> out;
    for (const SarSample* s : ordered) {
        if (out.empty() || out.back().episode != s->episode ||
            out.back().player_id != s->player_id) {
            Trajectory traj;
            traj.episode = static_cast<int>(s->episode);
            traj.player_id = s->player_id;
            traj.team = s->team;
            out.push_back(std::move(traj));
        }
        Trajectory& traj = out.back();
        if (s->t != traj.length())
            throw std::runtime_error("SAR episode " + std::to_string(s->episode) + " player " +
                                     std::to_string(s->player_id) +
                                     ": step indices not contiguous at t=" + std::to_string(s->t));
        traj.states.push_back(s->state);
        traj.actions.push_back(static_cast<int>(s->action));
        traj.rewards.push_back(s->reward);
        traj.masks.push_back(s->mask);
    }
    for (auto& traj : out) traj.check();
    return out;
}

}  // namespace pitchrl
