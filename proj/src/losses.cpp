#include "pitchrl/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace pitchrl {

double td_loss(const std::vector<double>& q_cur, const std::vector<double>& rewards,
               const std::vector<double>& q_next, double gamma) {
    if (q_cur.size() != rewards.size() || q_cur.size() != q_next.size())
        throw std::invalid_argument("td_loss: length mismatch");
    double sum = 0.0;
    for (std::size_t t = 0; t < q_cur.size(); ++t) {
        const double delta = rewards[t] + gamma * q_next[t] - q_cur[t];
        sum += delta * delta;
    }
    return sum;
}

double log_softmax_at(const std::array<double, 16>& q, int index) {
    double m = q[0];
    for (int j = 1; j < 16; ++j) m = std::max(m, q[j]);
    double sum = 0.0;
    for (int j = 0; j < 16; ++j) sum += std::exp(q[j] - m);
    return q[index] - m - std::log(sum);
}

double action_loss(const std::vector<std::array<double, 16>>& q, const std::vector<int>& labels,
                   const std::vector<std::uint16_t>& masks) {
    if (q.size() != labels.size() || q.size() != masks.size())
        throw std::invalid_argument("action_loss: length mismatch");
    double sum = 0.0;
    for (std::size_t t = 0; t < q.size(); ++t) {
        const int a = labels[t];
        if (a < 0 || a >= 16) throw std::invalid_argument("action_loss: label out of range");
        if (!(masks[t] >> a & 1))
            throw std::invalid_argument("action_loss: label invalid under mask at step " +
                                        std::to_string(t));
        sum -= log_softmax_at(q[t], a);
    }
    return sum;
}

double total_loss(double td, double action, double l1_of_parameters, double lambda1,
                  double lambda2) {
    return td + lambda1 * l1_of_parameters + lambda2 * action;
}

double l1_norm(const std::vector<double>& params) {
    double sum = 0.0;
    for (double w : params) sum += std::fabs(w);
    return sum;
}

}  // namespace pitchrl
