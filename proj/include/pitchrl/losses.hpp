#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace pitchrl {

/// Squared Bellman residual, summed over steps: sum_t (r[t] + gamma*q_next[t]
/// - q_cur[t])^2. q_next[t] is Q(s_{t+1}, a_{t+1}) with 0 at the terminal
/// step; it is treated as a constant target.
double td_loss(const std::vector<double>& q_cur, const std::vector<double>& rewards,
               const std::vector<double>& q_next, double gamma);

/// Cross-entropy of the labeled actions under softmax over all 16 entries of
/// q (already masked when masking is on), summed over steps. Throws when a
/// label's mask bit is clear.
double action_loss(const std::vector<std::array<double, 16>>& q, const std::vector<int>& labels,
                   const std::vector<std::uint16_t>& masks);

/// log softmax(q)[index], computed stably.
double log_softmax_at(const std::array<double, 16>& q, int index);

double total_loss(double td, double action, double l1_of_parameters, double lambda1,
                  double lambda2);

double l1_norm(const std::vector<double>& params);

}  // namespace pitchrl
