#include "pitchrl/config.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "pitchrl/io.hpp"

namespace pitchrl {

using nlohmann::json;

EdmsConfig AppConfig::edms() const {
    EdmsConfig cfg;
    cfg.pitch = pitch;
    cfg.surface = importance;
    cfg.space = space;
    cfg.motion = motion;
    cfg.shot = shot;
    cfg.passline_spacing = passline_spacing;
    cfg.formation_vocab = formation_vocab;
    cfg.pass_scaling = pass_scaling;
    return cfg;
}

void AppConfig::validate() const {
    edms().validate();
    train.validate();
    if (labeling.v_stay < 0.0 || labeling.window_s <= 0.0)
        throw std::invalid_argument("config: labeling thresholds out of range");
    if (sync.max_event_gap_s <= 0.0)
        throw std::invalid_argument("config: sync.max_event_gap_s must be > 0");
    if (segmentation.min_frames < 1 || segmentation.max_frames < segmentation.min_frames)
        throw std::invalid_argument("config: bad segmentation bounds");
    if (epv_n_x < 2 || epv_n_y < 2) throw std::invalid_argument("config: EPV grid too small");
}

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!j.is_object()) throw std::runtime_error(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw std::runtime_error(where + ": unknown key \"" + key + "\"");
}

template <typename T>
void opt(const json& j, const char* key, T& into) {
    auto it = j.find(key);
    if (it != j.end()) into = it->get<T>();
}

}  // namespace

AppConfig read_config(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& ex) {
        throw std::runtime_error(path + ": invalid JSON: " + ex.what());
    }
    AppConfig cfg;
    try {
        require_keys(doc, path,
                     {"pitch", "importance", "space", "motion", "shot", "sync", "segmentation",
                      "labeling", "edms", "train", "epv"});
        if (doc.contains("pitch")) {
            const json& j = doc["pitch"];
            require_keys(j, path + ": pitch", {"length", "width", "goal_width", "frame_rate"});
            opt(j, "length", cfg.pitch.length);
            opt(j, "width", cfg.pitch.width);
            opt(j, "goal_width", cfg.pitch.goal_width);
            opt(j, "frame_rate", cfg.pitch.frame_rate);
        }
        if (doc.contains("importance")) {
            const json& j = doc["importance"];
            require_keys(j, path + ": importance",
                         {"sigmoid_midpoint", "sigmoid_steepness", "gaussian_sigma"});
            opt(j, "sigmoid_midpoint", cfg.importance.sigmoid_midpoint);
            opt(j, "sigmoid_steepness", cfg.importance.sigmoid_steepness);
            opt(j, "gaussian_sigma", cfg.importance.gaussian_sigma);
        }
        if (doc.contains("space")) {
            const json& j = doc["space"];
            require_keys(j, path + ": space", {"grid_resolution", "projection_horizon"});
            opt(j, "grid_resolution", cfg.space.grid_resolution);
            opt(j, "projection_horizon", cfg.space.projection_horizon);
        }
        if (doc.contains("motion")) {
            const json& j = doc["motion"];
            require_keys(j, path + ": motion", {"v_max", "t_react"});
            opt(j, "v_max", cfg.motion.v_max);
            opt(j, "t_react", cfg.motion.t_react);
        }
        if (doc.contains("shot")) {
            const json& j = doc["shot"];
            require_keys(j, path + ": shot",
                         {"max_range", "half_width", "n_angles", "gk_jersey"});
            opt(j, "max_range", cfg.shot.max_range);
            opt(j, "half_width", cfg.shot.half_width);
            opt(j, "n_angles", cfg.shot.n_angles);
            opt(j, "gk_jersey", cfg.shot.gk_jersey);
        }
        if (doc.contains("sync")) {
            const json& j = doc["sync"];
            require_keys(j, path + ": sync", {"max_event_gap_s"});
            opt(j, "max_event_gap_s", cfg.sync.max_event_gap_s);
        }
        if (doc.contains("segmentation")) {
            const json& j = doc["segmentation"];
            require_keys(j, path + ": segmentation", {"min_frames", "max_frames"});
            opt(j, "min_frames", cfg.segmentation.min_frames);
            opt(j, "max_frames", cfg.segmentation.max_frames);
        }
        if (doc.contains("labeling")) {
            const json& j = doc["labeling"];
            require_keys(j, path + ": labeling", {"v_stay", "window_s"});
            opt(j, "v_stay", cfg.labeling.v_stay);
            opt(j, "window_s", cfg.labeling.window_s);
        }
        if (doc.contains("edms")) {
            const json& j = doc["edms"];
            require_keys(j, path + ": edms",
                         {"passline_spacing", "formation_vocab", "pass_scaling"});
            opt(j, "passline_spacing", cfg.passline_spacing);
            opt(j, "formation_vocab", cfg.formation_vocab);
            if (j.contains("pass_scaling")) {
                const json& sc = j["pass_scaling"];
                require_keys(sc, path + ": edms.pass_scaling", {"lo", "hi"});
                std::array<double, 4> lo = cfg.pass_scaling.lo, hi = cfg.pass_scaling.hi;
                opt(sc, "lo", lo);
                opt(sc, "hi", hi);
                cfg.pass_scaling.lo = lo;
                cfg.pass_scaling.hi = hi;
            }
        }
        if (doc.contains("train")) {
            const json& j = doc["train"];
            require_keys(j, path + ": train",
                         {"learning_rate", "lambda1", "lambda2", "gamma", "epochs", "seed",
                          "mask_value", "use_mask", "hidden_dim"});
            opt(j, "learning_rate", cfg.train.learning_rate);
            opt(j, "lambda1", cfg.train.lambda1);
            opt(j, "lambda2", cfg.train.lambda2);
            opt(j, "gamma", cfg.train.gamma);
            opt(j, "epochs", cfg.train.epochs);
            opt(j, "seed", cfg.train.seed);
            opt(j, "mask_value", cfg.train.mask_value);
            opt(j, "use_mask", cfg.train.use_mask);
            opt(j, "hidden_dim", cfg.train.hidden_dim);
        }
        if (doc.contains("epv")) {
            const json& j = doc["epv"];
            require_keys(j, path + ": epv", {"path", "n_x", "n_y"});
            opt(j, "path", cfg.epv_path);
            opt(j, "n_x", cfg.epv_n_x);
            opt(j, "n_y", cfg.epv_n_y);
        }
    } catch (const json::exception& ex) {
        throw std::runtime_error(path + ": bad config value: " + ex.what());
    }
    cfg.labeling.frame_rate = cfg.pitch.frame_rate;
    cfg.validate();
    return cfg;
}

void write_config(const std::string& path, const AppConfig& cfg) {
    const json doc{
        {"pitch",
         {{"length", cfg.pitch.length},
          {"width", cfg.pitch.width},
          {"goal_width", cfg.pitch.goal_width},
          {"frame_rate", cfg.pitch.frame_rate}}},
        {"importance",
         {{"sigmoid_midpoint", cfg.importance.sigmoid_midpoint},
          {"sigmoid_steepness", cfg.importance.sigmoid_steepness},
          {"gaussian_sigma", cfg.importance.gaussian_sigma}}},
        {"space",
         {{"grid_resolution", cfg.space.grid_resolution},
          {"projection_horizon", cfg.space.projection_horizon}}},
        {"motion", {{"v_max", cfg.motion.v_max}, {"t_react", cfg.motion.t_react}}},
        {"shot",
         {{"max_range", cfg.shot.max_range},
          {"half_width", cfg.shot.half_width},
          {"n_angles", cfg.shot.n_angles},
          {"gk_jersey", cfg.shot.gk_jersey}}},
        {"sync", {{"max_event_gap_s", cfg.sync.max_event_gap_s}}},
        {"segmentation",
         {{"min_frames", cfg.segmentation.min_frames},
          {"max_frames", cfg.segmentation.max_frames}}},
        {"labeling", {{"v_stay", cfg.labeling.v_stay}, {"window_s", cfg.labeling.window_s}}},
        {"edms",
         {{"passline_spacing", cfg.passline_spacing},
          {"formation_vocab", cfg.formation_vocab},
          {"pass_scaling", {{"lo", cfg.pass_scaling.lo}, {"hi", cfg.pass_scaling.hi}}}}},
        {"train",
         {{"learning_rate", cfg.train.learning_rate},
          {"lambda1", cfg.train.lambda1},
          {"lambda2", cfg.train.lambda2},
          {"gamma", cfg.train.gamma},
          {"epochs", cfg.train.epochs},
          {"seed", cfg.train.seed},
          {"mask_value", cfg.train.mask_value},
          {"use_mask", cfg.train.use_mask},
          {"hidden_dim", cfg.train.hidden_dim}}},
        {"epv", {{"path", cfg.epv_path}, {"n_x", cfg.epv_n_x}, {"n_y", cfg.epv_n_y}}}};
    write_file_atomic(path, doc.dump(2) + "\n");
}

}  // namespace pitchrl
