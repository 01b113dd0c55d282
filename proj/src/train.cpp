#include "pitchrl/train.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pitchrl/io.hpp"
#include "pitchrl/losses.hpp"

namespace pitchrl {

using nlohmann::json;

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw std::invalid_argument("TrainConfig: learning_rate <= 0");
    if (lambda1 < 0.0 || lambda2 < 0.0)
        throw std::invalid_argument("TrainConfig: lambda weights must be >= 0");
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("TrainConfig: gamma not in [0,1]");
    if (epochs < 0) throw std::invalid_argument("TrainConfig: epochs < 0");
    if (hidden_dim < 1) throw std::invalid_argument("TrainConfig: hidden_dim < 1");
}

void adam_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
               double lr) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size())
        throw std::invalid_argument("adam_step: size mismatch");
    for (std::size_t i = 0; i < grads.size(); ++i)
        if (!std::isfinite(grads[i]))
            throw std::runtime_error("adam_step: non-finite gradient at parameter " +
                                     std::to_string(i));
    state.step += 1;
    const double b1t = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double b2t = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double mhat = state.m[i] / b1t;
        const double vhat = state.v[i] / b2t;
        params[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
}

namespace {

std::uint16_t effective_mask(const Trajectory& traj, int t, const TrainConfig& cfg) {
    return cfg.use_mask ? traj.masks[t] : kAllActionsMask;
}

std::vector<double> selected_q(const ForwardCache& cache, const Trajectory& traj) {
    const int T = traj.length();
    std::vector<double> q(T);
    for (int t = 0; t < T; ++t) q[t] = cache.Q(t, traj.actions[t]);
    return q;
}

}  // namespace

std::vector<double> trajectory_targets(const QNet& net, const Trajectory& traj,
                                       const TrainConfig& cfg) {
    traj.check();
    const ForwardCache cache = forward(net, traj.states);
    const auto q_sel = selected_q(cache, traj);
    const int T = traj.length();
    std::vector<double> y(T);
    for (int t = 0; t < T; ++t)
        y[t] = traj.rewards[t] + (t + 1 < T ? cfg.gamma * q_sel[t + 1] : 0.0);
    return y;
}

TrajectoryLoss trajectory_loss(const QNet& net, const Trajectory& traj, const TrainConfig& cfg,
                               const std::vector<double>* frozen_targets) {
    traj.check();
    cfg.validate();
    const int T = traj.length();
    const ForwardCache cache = forward(net, traj.states);
    const auto q_sel = selected_q(cache, traj);

    std::vector<double> y;
    if (frozen_targets) {
        if (static_cast<int>(frozen_targets->size()) != T)
            throw std::invalid_argument("trajectory_loss: frozen target length mismatch");
        y = *frozen_targets;
    } else {
        y.resize(T);
        for (int t = 0; t < T; ++t)
            y[t] = traj.rewards[t] + (t + 1 < T ? cfg.gamma * q_sel[t + 1] : 0.0);
    }

    TrajectoryLoss out;
    out.td = td_loss(q_sel, y, std::vector<double>(T, 0.0), 0.0);

    std::vector<std::array<double, 16>> rows(T);
    std::vector<std::uint16_t> masks(T);
    for (int t = 0; t < T; ++t) {
        masks[t] = effective_mask(traj, t, cfg);
        rows[t] = masked_row(cache, t, masks[t], cfg.mask_value);
    }
    out.action = action_loss(rows, traj.actions, masks);
    out.l1 = l1_norm(net.params);
    out.total = total_loss(out.td, out.action, out.l1, cfg.lambda1, cfg.lambda2);
    return out;
}

void trajectory_backward(const QNet& net, const Trajectory& traj, const TrainConfig& cfg,
                         std::vector<double>& grad) {
    traj.check();
    const int T = traj.length();
    const ForwardCache cache = forward(net, traj.states);
    const auto q_sel = selected_q(cache, traj);

    RowMatrix dQ = RowMatrix::Zero(T, QNet::n_actions);
    for (int t = 0; t < T; ++t) {
        const double y = traj.rewards[t] + (t + 1 < T ? cfg.gamma * q_sel[t + 1] : 0.0);
        dQ(t, traj.actions[t]) += 2.0 * (q_sel[t] - y);
    }
    if (cfg.lambda2 != 0.0) {
        for (int t = 0; t < T; ++t) {
            const std::uint16_t mask = effective_mask(traj, t, cfg);
            const auto q = masked_row(cache, t, mask, cfg.mask_value);
            double m = q[0];
            for (int j = 1; j < 16; ++j) m = std::max(m, q[j]);
            double sum = 0.0;
            std::array<double, 16> e;
            for (int j = 0; j < 16; ++j) {
                e[j] = std::exp(q[j] - m);
                sum += e[j];
            }
            for (int j = 0; j < 16; ++j) {
                if (!(mask >> j & 1)) continue;  // masked entries are constants
                const double p = e[j] / sum;
                dQ(t, j) += cfg.lambda2 * (p - (j == traj.actions[t] ? 1.0 : 0.0));
            }
        }
    }

    grad.assign(net.param_count(), 0.0);
    backward(net, cache, dQ, grad);
    if (cfg.lambda1 != 0.0) {
        for (int i = 0; i < net.param_count(); ++i) {
            const double w = net.params[i];
            if (w > 0.0)
                grad[i] += cfg.lambda1;
            else if (w < 0.0)
                grad[i] -= cfg.lambda1;
        }
    }
}

EvalResult evaluate(const QNet& net, const std::vector<Trajectory>& data,
                    const TrainConfig& cfg) {
    if (data.empty()) throw std::invalid_argument("evaluate: empty dataset");
    EvalResult out;
    double td_sum = 0.0, as_sum = 0.0;
    for (const auto& traj : data) {
        const TrajectoryLoss l = trajectory_loss(net, traj, cfg);
        td_sum += l.td;
        as_sum += l.action;
        out.steps += traj.length();
    }
    out.td_loss = td_sum / static_cast<double>(out.steps);
    out.action_loss = as_sum / static_cast<double>(out.steps);
    return out;
}

namespace {

LossRow log_row(int epoch, const QNet& net, const std::vector<Trajectory>& data,
                const TrainConfig& cfg) {
    const EvalResult e = evaluate(net, data, cfg);
    LossRow row;
    row.epoch = epoch;
    row.action_loss = e.action_loss;
    row.td_loss = e.td_loss;
    row.total_loss =
        total_loss(e.td_loss, e.action_loss, l1_norm(net.params), cfg.lambda1, cfg.lambda2);
    return row;
}

}  // namespace

TrainResult train(const std::vector<Trajectory>& data, int state_dim, const TrainConfig& cfg) {
    cfg.validate();
    if (data.empty()) throw std::invalid_argument("train: empty dataset");
    for (const auto& traj : data) {
        traj.check();
        if (traj.length() == 0 || static_cast<int>(traj.states[0].size()) != state_dim)
            throw std::invalid_argument("train: trajectory state dim mismatch");
    }

    TrainResult result;
    result.net = QNet::seeded(state_dim, cfg.hidden_dim, cfg.seed);
    AdamState adam(result.net.params.size());
    result.log.push_back(log_row(0, result.net, data, cfg));

    std::mt19937_64 shuffle_rng(cfg.seed ^ 0xD1B54A32D192ED03ULL);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<double> grad(result.net.params.size());
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i) {
            const std::size_t j = shuffle_rng() % i;  // Fisher-Yates
            std::swap(order[i - 1], order[j]);
        }
        for (std::size_t idx : order) {
            trajectory_backward(result.net, data[idx], cfg, grad);
            adam_step(result.net.params, grad, adam, cfg.learning_rate);
        }
        result.log.push_back(log_row(epoch, result.net, data, cfg));
    }
    return result;
}

void write_loss_log(const std::string& path, const std::vector<LossRow>& rows) {
    std::ostringstream ss;
    ss << "epoch,action_loss,td_loss,total_loss\n";
    for (const auto& r : rows)
        ss << r.epoch << "," << fmt_double(r.action_loss) << "," << fmt_double(r.td_loss) << ","
           << fmt_double(r.total_loss) << "\n";
    write_file_atomic(path, ss.str());
}

std::vector<LossRow> read_loss_log(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != "epoch,action_loss,td_loss,total_loss")
        throw std::runtime_error(path + ": bad loss log header");
    std::vector<LossRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        LossRow r;
        char c1, c2, c3;
        std::istringstream ls(line);
        if (!(ls >> r.epoch >> c1 >> r.action_loss >> c2 >> r.td_loss >> c3 >> r.total_loss) ||
            c1 != ',' || c2 != ',' || c3 != ',')
            throw std::runtime_error(path + ": bad loss log row: " + line);
        rows.push_back(r);
    }
    return rows;
}

namespace {

json config_to_json(const TrainConfig& cfg) {
    return json{{"learning_rate", cfg.learning_rate},
                {"lambda1", cfg.lambda1},
                {"lambda2", cfg.lambda2},
                {"gamma", cfg.gamma},
                {"epochs", cfg.epochs},
                {"seed", cfg.seed},
                {"mask_value", cfg.mask_value},
                {"use_mask", cfg.use_mask},
                {"hidden_dim", cfg.hidden_dim}};
}

TrainConfig config_from_json(const json& j) {
    TrainConfig cfg;
    cfg.learning_rate = j.at("learning_rate").get<double>();
    cfg.lambda1 = j.at("lambda1").get<double>();
    cfg.lambda2 = j.at("lambda2").get<double>();
    cfg.gamma = j.at("gamma").get<double>();
    cfg.epochs = j.at("epochs").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.mask_value = j.at("mask_value").get<double>();
    cfg.use_mask = j.at("use_mask").get<bool>();
    cfg.hidden_dim = j.at("hidden_dim").get<int>();
    return cfg;
}

}  // namespace

void write_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    json doc;
    doc["layout_version"] = ckpt.layout_version;
    doc["state_kind"] = ckpt.state_kind;
    doc["state_dim"] = ckpt.state_dim;
    doc["hidden_dim"] = ckpt.hidden_dim;
    doc["config"] = config_to_json(ckpt.config);
    doc["pass_scaling"] = {{"lo", ckpt.scaling.lo}, {"hi", ckpt.scaling.hi}};
    doc["formation_vocab"] = ckpt.formation_vocab;
    doc["params_b64"] = doubles_to_base64(ckpt.params);
    write_file_atomic(path, doc.dump(2) + "\n");
}

Checkpoint read_checkpoint(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& ex) {
        throw std::runtime_error(path + ": invalid checkpoint JSON: " + ex.what());
    }
    try {
        Checkpoint ckpt;
        ckpt.layout_version = doc.at("layout_version").get<int>();
        ckpt.state_kind = doc.at("state_kind").get<std::string>();
        ckpt.state_dim = doc.at("state_dim").get<int>();
        ckpt.hidden_dim = doc.at("hidden_dim").get<int>();
        ckpt.config = config_from_json(doc.at("config"));
        const auto& sc = doc.at("pass_scaling");
        for (int i = 0; i < 4; ++i) {
            ckpt.scaling.lo[i] = sc.at("lo").at(i).get<double>();
            ckpt.scaling.hi[i] = sc.at("hi").at(i).get<double>();
        }
        ckpt.formation_vocab = doc.at("formation_vocab").get<std::vector<std::string>>();
        ckpt.params = base64_to_doubles(doc.at("params_b64").get<std::string>());
        return ckpt;
    } catch (const json::exception& ex) {
        throw std::runtime_error(path + ": bad checkpoint field: " + ex.what());
    }
}

QNet net_from_checkpoint(const Checkpoint& ckpt) {
    QNet net(ckpt.state_dim, ckpt.hidden_dim);
    if (net.params.size() != ckpt.params.size())
        throw std::runtime_error("checkpoint parameter count " +
                                 std::to_string(ckpt.params.size()) + " does not match " +
                                 std::to_string(net.params.size()));
    net.params = ckpt.params;
    return net;
}

}  // namespace pitchrl
