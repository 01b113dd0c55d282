#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pitchrl/tracking.hpp"

namespace pitchrl {

/// One player's pass through one possession: the unit the learner consumes.
/// states[t] is the frame-global state vector, actions[t] the labeled action
/// index, rewards[t] the shared reward received after step t, masks[t] the
/// 16-bit action validity vector (bit j set = action j valid).
struct Trajectory {
    std::vector<std::vector<double>> states;
    std::vector<int> actions;
    std::vector<double> rewards;
    std::vector<std::uint16_t> masks;

    int episode = 0;
    std::int64_t player_id = 0;
    Team team = Team::home;

    int length() const { return static_cast<int>(states.size()); }
    void check() const;  // equal lengths, labels valid under masks
};

constexpr std::uint16_t kOnBallMask = 0x007F;   // actions 0..6
constexpr std::uint16_t kOffBallMask = 0xFF80;  // actions 7..15
constexpr std::uint16_t kAllActionsMask = 0xFFFF;
constexpr double kMaskValue = -9999.0;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVec = Eigen::RowVectorXd;

/// Recurrent Q-network: affine input (state_dim -> hidden) with ReLU, one
/// GRU layer (hidden -> hidden), affine output (hidden -> 16).
///
/// GRU convention, h_prev from the previous step (zeros at episode start):
///   z = sigmoid(W_z x + U_z h_prev + b_z)
///   r = sigmoid(W_r x + U_r h_prev + b_r)
///   n = tanh(W_n x + U_n (r . h_prev) + b_n)
///   h = (1 - z) . n + z . h_prev
///
/// Parameters are stored flat, row-major matrices, in this order:
///   W_in (h x s), b_in (h), W_z (h x h), U_z (h x h), b_z (h),
///   W_r, U_r, b_r, W_n, U_n, b_n, W_out (16 x h), b_out (16).
struct QNet {
    int state_dim = 0;
    int hidden_dim = 64;
    static constexpr int n_actions = 16;
    std::vector<double> params;

    QNet() = default;
    QNet(int state_dim_, int hidden_dim_ = 64);  // zero-initialized
    static QNet seeded(int state_dim, int hidden_dim, std::uint64_t seed);

    int param_count() const;
    // Flat offsets of each block.
    int off_W_in() const { return 0; }
    int off_b_in() const { return hidden_dim * state_dim; }
    int off_W_z() const { return off_b_in() + hidden_dim; }
    int off_U_z() const { return off_W_z() + hidden_dim * hidden_dim; }
    int off_b_z() const { return off_U_z() + hidden_dim * hidden_dim; }
    int off_W_r() const { return off_b_z() + hidden_dim; }
    int off_U_r() const { return off_W_r() + hidden_dim * hidden_dim; }
    int off_b_r() const { return off_U_r() + hidden_dim * hidden_dim; }
    int off_W_n() const { return off_b_r() + hidden_dim; }
    int off_U_n() const { return off_W_n() + hidden_dim * hidden_dim; }
    int off_b_n() const { return off_U_n() + hidden_dim * hidden_dim; }
    int off_W_out() const { return off_b_n() + hidden_dim; }
    int off_b_out() const { return off_W_out() + n_actions * hidden_dim; }
};

/// Everything the backward pass needs from a forward pass over one sequence.
struct ForwardCache {
    RowMatrix S;       // T x s, the inputs
    RowMatrix PreIn;   // T x h, input affine pre-activation
    RowMatrix X;       // T x h, ReLU output
    RowMatrix Z, R, N; // T x h, gate activations
    RowMatrix H;       // T x h, hidden states
    RowMatrix Q;       // T x 16
};

/// Runs the net over a state sequence with hidden state starting at zeros.
ForwardCache forward(const QNet& net, const std::vector<std::vector<double>>& states);

/// Replaces entries whose mask bit is clear with mask_value. Idempotent.
void apply_mask(std::array<double, 16>& q, std::uint16_t mask, double mask_value = kMaskValue);
std::array<double, 16> masked_row(const ForwardCache& cache, int t, std::uint16_t mask,
                                  double mask_value = kMaskValue);
std::array<double, 16> raw_row(const ForwardCache& cache, int t);

/// Argmax over the masked vector; always a valid action for a nonzero mask.
int masked_argmax(const std::array<double, 16>& masked_q);

/// Backpropagation through time: accumulates d(loss)/d(params) into grad
/// (size param_count) given d(loss)/dQ for every step.
void backward(const QNet& net, const ForwardCache& cache, const RowMatrix& dQ,
              std::vector<double>& grad);

}  // namespace pitchrl
