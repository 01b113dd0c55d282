#include "pitchrl/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "pitchrl/config.hpp"
#include "pitchrl/epv.hpp"
#include "pitchrl/io.hpp"
#include "pitchrl/losses.hpp"
#include "pitchrl/qviz.hpp"
#include "pitchrl/rules.hpp"
#include "pitchrl/sar.hpp"
#include "pitchrl/sequence.hpp"
#include "pitchrl/synth.hpp"
#include "pitchrl/train.hpp"

namespace pitchrl {

namespace {

AppConfig load_config(const std::string& path) {
    if (path.empty()) return AppConfig{};
    return read_config(path);
}

EpvGrid load_epv(const AppConfig& cfg) {
    if (!cfg.epv_path.empty()) return read_epv_csv(cfg.epv_path);
    return default_epv_grid(cfg.importance, cfg.epv_n_x, cfg.epv_n_y, cfg.pitch.length,
                            cfg.pitch.width);
}

struct Pipeline {
    EventsFile events;
    AlignedStream stream;
    std::vector<PossessionSequence> sequences;
};

Pipeline run_pipeline(const AppConfig& cfg, const std::string& tracking_path,
                      const std::string& events_path, const std::string& roster_path) {
    Pipeline p;
    const auto rows = read_tracking_csv(tracking_path);
    Roster roster;
    if (!roster_path.empty()) roster = read_roster_json(roster_path);
    auto frames = assemble_frames(rows, roster, cfg.pitch.frame_rate, cfg.pitch);
    p.events = read_events_json(events_path);
    p.stream = sync_events_tracking(p.events.events, std::move(frames), cfg.sync);
    if (p.stream.dropped_events > 0)
        std::cerr << "pitchrl: warning: dropped " << p.stream.dropped_events
                  << " event(s) farther than " << cfg.sync.max_event_gap_s
                  << " s from any frame\n";
    p.sequences = segment_sequences(p.stream, p.events.events, cfg.segmentation);
    for (auto& seq : p.sequences) label_actions(seq, p.events.events, cfg.labeling);
    return p;
}

SarDataset build_dataset(const AppConfig& cfg, const Pipeline& p,
                         const std::string& state_kind) {
    const EpvGrid grid = load_epv(cfg);
    const EdmsConfig edms = cfg.edms();
    SarDataset ds;
    ds.header.state_kind = state_kind;
    ds.header.scaling = cfg.pass_scaling;
    ds.header.frame_rate = cfg.pitch.frame_rate;
    ds.header.state_dim = state_kind == "edms" ? edms.layout().total_dim() : kPvsDim;
    ds.header.formation_vocab = cfg.formation_vocab;
    for (const auto& seq : p.sequences) {
        const auto rewards = assign_rewards(seq, grid);
        auto trajectories = build_sar(seq, rewards, state_kind, edms, p.events.formation_home,
                                      p.events.formation_away);
        for (auto& traj : trajectories)
            for (auto& sample : traj) ds.samples.push_back(std::move(sample));
    }
    if (ds.samples.empty())
        throw std::runtime_error("no sequences survived preprocessing; nothing to write");
    return ds;
}

TrainConfig config_with_overrides(TrainConfig tc, int epochs, std::int64_t seed,
                                  const std::string& mask) {
    if (epochs >= 0) tc.epochs = epochs;
    if (seed >= 0) tc.seed = static_cast<std::uint64_t>(seed);
    if (mask == "on") tc.use_mask = true;
    if (mask == "off") tc.use_mask = false;
    return tc;
}

int run_synth(const std::string& config_path, std::uint64_t seed, int n,
              const std::string& scenario, const std::string& out_dir) {
    const AppConfig cfg = load_config(config_path);
    SynthParams params;
    params.seed = seed;
    params.n_sequences = n;
    params.scenario = scenario_from_name(scenario);
    params.pitch = cfg.pitch;
    params.frame_rate = cfg.pitch.frame_rate;
    const SynthDataset data = synth_generate(params);
    std::filesystem::create_directories(out_dir);
    write_tracking_csv(out_dir + "/tracking.csv", data.tracking);
    write_events_json(out_dir + "/events.json", data.events);
    write_roster_json(out_dir + "/roster.json", data.roster);
    std::cout << "wrote " << data.tracking.size() << " tracking rows, "
              << data.events.events.size() << " events to " << out_dir << "\n";
    return 0;
}

int run_preprocess(const std::string& config_path, const std::string& tracking,
                   const std::string& events, const std::string& roster,
                   const std::string& state_kind, const std::string& out) {
    const AppConfig cfg = load_config(config_path);
    const Pipeline p = run_pipeline(cfg, tracking, events, roster);
    const SarDataset ds = build_dataset(cfg, p, state_kind);
    write_sar(out, ds);
    std::cout << "wrote " << ds.samples.size() << " samples (" << p.sequences.size()
              << " sequences, state " << state_kind << ") to " << out << "\n";
    return 0;
}

int run_train(const std::string& config_path, const std::string& data_path,
              const std::string& out, std::string loss_log, int epochs, std::int64_t seed,
              const std::string& mask) {
    const AppConfig cfg = load_config(config_path);
    const SarDataset ds = read_sar(data_path);
    const auto trajectories = to_trajectories(ds);
    const TrainConfig tc = config_with_overrides(cfg.train, epochs, seed, mask);
    const TrainResult result = train(trajectories, ds.header.state_dim, tc);

    Checkpoint ckpt;
    ckpt.state_kind = ds.header.state_kind;
    ckpt.state_dim = ds.header.state_dim;
    ckpt.hidden_dim = tc.hidden_dim;
    ckpt.config = tc;
    ckpt.scaling = ds.header.scaling;
    ckpt.formation_vocab = ds.header.formation_vocab;
    ckpt.params = result.net.params;
    write_checkpoint(out, ckpt);
    if (loss_log.empty()) loss_log = out + ".loss.csv";
    write_loss_log(loss_log, result.log);
    std::cout << "trained " << tc.epochs << " epochs on " << trajectories.size()
              << " trajectories; final total loss "
              << fmt_double(result.log.back().total_loss) << "\n";
    return 0;
}

int run_eval(const std::string& data_path, const std::string& model_path,
             const std::string& out, const std::string& team_q_path,
             const std::string& mask) {
    const Checkpoint ckpt = read_checkpoint(model_path);
    const QNet net = net_from_checkpoint(ckpt);
    const SarDataset ds = read_sar(data_path);
    if (ds.header.state_dim != ckpt.state_dim)
        throw std::runtime_error("checkpoint expects state_dim " +
                                 std::to_string(ckpt.state_dim) + " but " + data_path +
                                 " carries " + std::to_string(ds.header.state_dim));
    const auto trajectories = to_trajectories(ds);
    const TrainConfig tc = config_with_overrides(ckpt.config, -1, -1, mask);
    const EvalResult e = evaluate(net, trajectories, tc);
    const double total =
        total_loss(e.td_loss, e.action_loss, l1_norm(net.params), tc.lambda1, tc.lambda2);

    std::ostringstream ss;
    ss << "action_loss,td_loss,total_loss,steps\n";
    ss << fmt_double(e.action_loss) << "," << fmt_double(e.td_loss) << ","
       << fmt_double(total) << "," << e.steps << "\n";
    write_file_atomic(out, ss.str());
    std::cout << "action_loss " << fmt_double(e.action_loss) << ", td_loss "
              << fmt_double(e.td_loss) << " over " << e.steps << " steps\n";

    if (!team_q_path.empty()) {
        const auto summaries = team_aggregate(net, ds);
        if (summaries.size() < 2)
            std::cerr << "pitchrl: warning: a team has no sequences and was omitted\n";
        write_team_summary_csv(team_q_path, summaries);
    }
    return 0;
}

int run_viz(const std::string& config_path, const std::string& model_path,
            const std::string& tracking, const std::string& events,
            const std::string& roster, std::int64_t episode, int t,
            const std::vector<std::int64_t>& players, bool overlay, int top_k,
            const std::string& out) {
    const AppConfig cfg = load_config(config_path);
    const Checkpoint ckpt = read_checkpoint(model_path);
    const QNet net = net_from_checkpoint(ckpt);
    const Pipeline p = run_pipeline(cfg, tracking, events, roster);

    const PossessionSequence* seq = nullptr;
    for (const auto& s : p.sequences)
        if (s.possession_id == episode) seq = &s;
    if (!seq)
        throw std::runtime_error("no retained sequence with possession id " +
                                 std::to_string(episode));
    if (t < 0 || t >= static_cast<int>(seq->frames.size()))
        throw std::runtime_error("step " + std::to_string(t) + " outside sequence of length " +
                                 std::to_string(seq->frames.size()));

    const SarDataset ds = build_dataset(cfg, p, ckpt.state_kind);
    if (ds.header.state_dim != ckpt.state_dim)
        throw std::runtime_error("checkpoint state_dim does not match the preprocessed data");
    std::vector<DirectionalQ> entries;
    for (std::int64_t pid : players)
        entries.push_back(extract_offball_q(net, ds, episode, t, pid, top_k));

    PlotOptions options;
    options.overlay = overlay;
    options.pitch = cfg.pitch;
    write_file_atomic(out, render_field_plot(seq->frames[t], entries, options));
    std::cout << "wrote " << out << "\n";
    return 0;
}

int run_features(const std::string& config_path, const std::string& tracking,
                 const std::string& events, const std::string& roster, std::int64_t from,
                 std::int64_t to, const std::string& out) {
    const AppConfig cfg = load_config(config_path);
    const Pipeline p = run_pipeline(cfg, tracking, events, roster);
    const EdmsConfig edms = cfg.edms();
    const EdmsLayout layout = edms.layout();
    SpaceEngine engine(edms.pitch, edms.surface, edms.space);

    std::ostringstream ss;
    ss << "frame,timestamp,possession_id";
    for (const auto& name : layout.channel_names(cfg.formation_vocab)) ss << "," << name;
    ss << "\n";

    int written = 0;
    for (std::size_t f = 0; f < p.stream.frames.size(); ++f) {
        const FrameSnapshot& raw = p.stream.frames[f];
        if (raw.frame_index < from || raw.frame_index >= to) continue;
        if (!p.stream.possession_id[f].has_value()) continue;
        const FrameSnapshot frame = normalize_attack_direction(raw);
        const std::string& formation = *frame.possession_team == Team::home
                                           ? p.events.formation_home
                                           : p.events.formation_away;
        const auto state = assemble_edms(frame, p.stream.contexts[f], formation, edms, engine);
        ss << raw.frame_index << "," << fmt_double(raw.timestamp) << ","
           << *p.stream.possession_id[f];
        for (double v : state) ss << "," << fmt_double(v);
        ss << "\n";
        ++written;
    }
    if (written == 0) throw std::runtime_error("no frames with possession in the given range");
    write_file_atomic(out, ss.str());
    std::cout << "wrote " << written << " feature rows to " << out << "\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    if (const char* env = std::getenv("PITCHRL_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || n < 1) {
            std::cerr << "pitchrl: PITCHRL_THREADS must be a positive integer, got \"" << env
                      << "\"\n";
            return 2;
        }
        Eigen::setNbThreads(static_cast<int>(n));
    }

    CLI::App app{"EDMS state construction and masked SARSA Q-learning for soccer tracking data"};
    app.require_subcommand(1);

    std::string config_path, tracking, events, roster, out, data_path, model_path;
    std::string state_kind = "edms", scenario = "random_walk", mask, team_q_path, loss_log;
    std::uint64_t seed = 0;
    int n_sequences = 8, epochs = -1, t_step = 0, top_k = 3;
    std::int64_t episode = 0, from = 0, to = std::numeric_limits<std::int64_t>::max(),
                 seed_override = -1;
    std::vector<std::int64_t> players;
    bool overlay = false;

    auto* synth_cmd = app.add_subcommand("synth", "Generate a scripted synthetic match");
    synth_cmd->add_option("--config", config_path, "JSON config path");
    synth_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    synth_cmd->add_option("--n", n_sequences, "number of possessions")->capture_default_str();
    synth_cmd->add_option("--scenario", scenario, "random_walk|counterattack|buildup")
        ->check(CLI::IsMember({"random_walk", "counterattack", "buildup"}))
        ->capture_default_str();
    synth_cmd->add_option("--out", out, "output directory")->required();

    auto* pre_cmd = app.add_subcommand("preprocess", "Tracking + events to a .sar.jsonl file");
    pre_cmd->add_option("--config", config_path, "JSON config path");
    pre_cmd->add_option("--tracking", tracking, "tracking CSV")->required();
    pre_cmd->add_option("--events", events, "events JSON")->required();
    pre_cmd->add_option("--roster", roster, "roster JSON with player heights");
    pre_cmd->add_option("--state", state_kind, "edms|pvs")
        ->check(CLI::IsMember({"edms", "pvs"}))
        ->capture_default_str();
    pre_cmd->add_option("--out", out, "output .sar.jsonl path")->required();

    auto* train_cmd = app.add_subcommand("train", "Train a Q-network on SAR data");
    train_cmd->add_option("--config", config_path, "JSON config path");
    train_cmd->add_option("--data", data_path, "input .sar.jsonl")->required();
    train_cmd->add_option("--out", out, "checkpoint output path")->required();
    train_cmd->add_option("--loss-log", loss_log, "loss CSV path (default <out>.loss.csv)");
    train_cmd->add_option("--epochs", epochs, "override config epochs");
    train_cmd->add_option("--seed", seed_override, "override config seed");
    train_cmd->add_option("--mask", mask, "on|off")->check(CLI::IsMember({"on", "off"}));

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on SAR data");
    eval_cmd->add_option("--model", model_path, "checkpoint path")->required();
    eval_cmd->add_option("--data", data_path, "input .sar.jsonl")->required();
    eval_cmd->add_option("--out", out, "metrics CSV path")->required();
    eval_cmd->add_option("--team-q", team_q_path, "also write per-team terminal Q CSV");
    eval_cmd->add_option("--mask", mask, "on|off (default: checkpoint setting)")
        ->check(CLI::IsMember({"on", "off"}));

    auto* viz_cmd = app.add_subcommand("viz", "Render off-ball Q-values over a frame as SVG");
    viz_cmd->add_option("--config", config_path, "JSON config path");
    viz_cmd->add_option("--model", model_path, "checkpoint path")->required();
    viz_cmd->add_option("--tracking", tracking, "tracking CSV")->required();
    viz_cmd->add_option("--events", events, "events JSON")->required();
    viz_cmd->add_option("--roster", roster, "roster JSON");
    viz_cmd->add_option("--episode", episode, "possession id")->required();
    viz_cmd->add_option("--t", t_step, "step within the sequence")->capture_default_str();
    viz_cmd->add_option("--player", players, "subject player id (repeatable)");
    viz_cmd->add_flag("--overlay", overlay, "arrows on the pitch instead of a bar panel");
    viz_cmd->add_option("--top-k", top_k, "arrows per subject")->capture_default_str();
    viz_cmd->add_option("--out", out, "SVG output path")->required();

    auto* feat_cmd = app.add_subcommand("features", "Dump EDMS vectors for a frame range");
    feat_cmd->add_option("--config", config_path, "JSON config path");
    feat_cmd->add_option("--tracking", tracking, "tracking CSV")->required();
    feat_cmd->add_option("--events", events, "events JSON")->required();
    feat_cmd->add_option("--roster", roster, "roster JSON");
    feat_cmd->add_option("--from", from, "first frame index (inclusive)");
    feat_cmd->add_option("--to", to, "last frame index (exclusive)");
    feat_cmd->add_option("--out", out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "pitchrl: " << e.what() << "\n";
        std::cerr << "run 'pitchrl --help' for usage\n";
        return 2;
    }

    try {
        if (synth_cmd->parsed())
            return run_synth(config_path, seed, n_sequences, scenario, out);
        if (pre_cmd->parsed())
            return run_preprocess(config_path, tracking, events, roster, state_kind, out);
        if (train_cmd->parsed())
            return run_train(config_path, data_path, out, loss_log, epochs, seed_override,
                             mask);
        if (eval_cmd->parsed())
            return run_eval(data_path, model_path, out, team_q_path, mask);
        if (viz_cmd->parsed())
            return run_viz(config_path, model_path, tracking, events, roster, episode, t_step,
                           players, overlay, top_k, out);
        if (feat_cmd->parsed())
            return run_features(config_path, tracking, events, roster, from, to, out);
    } catch (const std::exception& ex) {
        std::cerr << "pitchrl: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace pitchrl
