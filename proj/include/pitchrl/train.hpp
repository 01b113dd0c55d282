#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pitchrl/qnet.hpp"
#include "pitchrl/state.hpp"

namespace pitchrl {

struct TrainConfig {
    double learning_rate = 0.001;
    double lambda1 = 0.001;  // L1 weight
    double lambda2 = 0.05;   // action-loss weight
    double gamma = 1.0;
    int epochs = 20;
    std::uint64_t seed = 0;
    double mask_value = kMaskValue;
    bool use_mask = true;
    int hidden_dim = 64;

    void validate() const;
};

struct AdamState {
    std::vector<double> m, v;
    std::int64_t step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

/// Standard bias-corrected Adam update, in place. Throws naming the first
/// parameter index whose gradient is not finite.
void adam_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
               double lr);

/// SARSA targets y_t = r_t + gamma * Q(s_{t+1}, a_{t+1}), terminal bootstrap
/// 0. These are the detached constants the TD term regresses onto.
std::vector<double> trajectory_targets(const QNet& net, const Trajectory& traj,
                                       const TrainConfig& cfg);

struct TrajectoryLoss {
    double td = 0.0;     // summed over steps
    double action = 0.0; // summed over steps
    double l1 = 0.0;
    double total = 0.0;
};

/// Composite loss of one trajectory: td + lambda1*l1 + lambda2*action.
/// When frozen_targets is given the TD term uses those constants instead of
/// recomputing targets from the current parameters; finite-difference checks
/// rely on this to hold the target fixed while parameters vary.
TrajectoryLoss trajectory_loss(const QNet& net, const Trajectory& traj, const TrainConfig& cfg,
                               const std::vector<double>* frozen_targets = nullptr);

/// Exact gradient of trajectory_loss (with detached TD targets) for every
/// parameter. grad is assigned, not accumulated.
void trajectory_backward(const QNet& net, const Trajectory& traj, const TrainConfig& cfg,
                         std::vector<double>& grad);

struct EvalResult {
    double action_loss = 0.0;  // per-step mean
    double td_loss = 0.0;      // per-step mean
    std::int64_t steps = 0;
};

/// Dataset-mean per-step losses; no parameter updates. Masks applied to the
/// action loss when cfg.use_mask is set.
EvalResult evaluate(const QNet& net, const std::vector<Trajectory>& data,
                    const TrainConfig& cfg);

struct LossRow {
    int epoch = 0;
    double action_loss = 0.0;
    double td_loss = 0.0;
    double total_loss = 0.0;
};

struct TrainResult {
    QNet net;
    std::vector<LossRow> log;  // epoch 0 = pre-training evaluation
};

/// Per-trajectory Adam updates over shuffled episodes, one shared network.
/// Deterministic for a fixed (seed, config, dataset) on one thread.
TrainResult train(const std::vector<Trajectory>& data, int state_dim, const TrainConfig& cfg);

/// CSV `epoch,action_loss,td_loss,total_loss`, shortest round-trip doubles.
void write_loss_log(const std::string& path, const std::vector<LossRow>& rows);
std::vector<LossRow> read_loss_log(const std::string& path);

struct Checkpoint {
    int layout_version = 1;
    std::string state_kind = "edms";
    int state_dim = 0;
    int hidden_dim = 64;
    TrainConfig config;
    PassScaling scaling;
    std::vector<std::string> formation_vocab;
    std::vector<double> params;
};

/// JSON header with the flat parameter vector as base64 little-endian
/// doubles; round-trips bit-exactly.
void write_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::string& path);

QNet net_from_checkpoint(const Checkpoint& ckpt);

}  // namespace pitchrl
