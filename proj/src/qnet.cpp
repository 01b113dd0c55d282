#include "pitchrl/qnet.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pitchrl {

void Trajectory::check() const {
    const std::size_t T = states.size();
    if (actions.size() != T || rewards.size() != T || masks.size() != T)
        throw std::invalid_argument("Trajectory: field lengths differ");
    for (std::size_t t = 0; t < T; ++t) {
        if (actions[t] < 0 || actions[t] >= 16)
            throw std::invalid_argument("Trajectory: action out of range");
        if (!(masks[t] >> actions[t] & 1))
            throw std::invalid_argument("Trajectory: label invalid under mask at step " +
                                        std::to_string(t));
    }
}

QNet::QNet(int state_dim_, int hidden_dim_) : state_dim(state_dim_), hidden_dim(hidden_dim_) {
    if (state_dim < 1 || hidden_dim < 1) throw std::invalid_argument("QNet: bad dimensions");
    params.assign(param_count(), 0.0);
}

int QNet::param_count() const {
    return hidden_dim * state_dim + hidden_dim + 3 * (2 * hidden_dim * hidden_dim + hidden_dim) +
           n_actions * hidden_dim + n_actions;
}

QNet QNet::seeded(int state_dim, int hidden_dim, std::uint64_t seed) {
    QNet net(state_dim, hidden_dim);
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (rng() >> 11) * (1.0 / 9007199254740992.0);  // [0, 1)
    };
    auto fill = [&](int offset, int rows, int cols, int fan_in) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (int i = 0; i < rows * cols; ++i)
            net.params[offset + i] = (2.0 * uniform() - 1.0) * bound;
    };
    const int h = hidden_dim, s = state_dim;
    fill(net.off_W_in(), h, s, s);
    fill(net.off_b_in(), h, 1, s);
    fill(net.off_W_z(), h, h, h);
    fill(net.off_U_z(), h, h, h);
    fill(net.off_b_z(), h, 1, h);
    fill(net.off_W_r(), h, h, h);
    fill(net.off_U_r(), h, h, h);
    fill(net.off_b_r(), h, 1, h);
    fill(net.off_W_n(), h, h, h);
    fill(net.off_U_n(), h, h, h);
    fill(net.off_b_n(), h, 1, h);
    fill(net.off_W_out(), n_actions, h, h);
    fill(net.off_b_out(), n_actions, 1, h);
    return net;
}

namespace {

using CMap = Eigen::Map<const RowMatrix>;
using CVMap = Eigen::Map<const Eigen::RowVectorXd>;
using MMap = Eigen::Map<RowMatrix>;
using VMap = Eigen::Map<Eigen::RowVectorXd>;

inline double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

}  // namespace

ForwardCache forward(const QNet& net, const std::vector<std::vector<double>>& states) {
    const int T = static_cast<int>(states.size());
    const int s = net.state_dim, h = net.hidden_dim;
    if (T == 0) throw std::invalid_argument("forward: empty state sequence");
    if (static_cast<int>(net.params.size()) != net.param_count())
        throw std::invalid_argument("forward: parameter vector has wrong length");

    ForwardCache c;
    c.S.resize(T, s);
    for (int t = 0; t < T; ++t) {
        if (static_cast<int>(states[t].size()) != s)
            throw std::invalid_argument("forward: state dim mismatch at step " +
                                        std::to_string(t));
        for (int i = 0; i < s; ++i) c.S(t, i) = states[t][i];
    }

    const double* P = net.params.data();
    CMap W_in(P + net.off_W_in(), h, s);
    CVMap b_in(P + net.off_b_in(), h);
    CMap W_z(P + net.off_W_z(), h, h), U_z(P + net.off_U_z(), h, h);
    CVMap b_z(P + net.off_b_z(), h);
    CMap W_r(P + net.off_W_r(), h, h), U_r(P + net.off_U_r(), h, h);
    CVMap b_r(P + net.off_b_r(), h);
    CMap W_n(P + net.off_W_n(), h, h), U_n(P + net.off_U_n(), h, h);
    CVMap b_n(P + net.off_b_n(), h);
    CMap W_out(P + net.off_W_out(), QNet::n_actions, h);
    CVMap b_out(P + net.off_b_out(), QNet::n_actions);

    c.PreIn = (c.S * W_in.transpose()).rowwise() + b_in;
    c.X = c.PreIn.cwiseMax(0.0);

    // Input-side affine terms batched over time; only the recurrence loops.
    RowMatrix Zin = (c.X * W_z.transpose()).rowwise() + b_z;
    RowMatrix Rin = (c.X * W_r.transpose()).rowwise() + b_r;
    RowMatrix Nin = (c.X * W_n.transpose()).rowwise() + b_n;

    c.Z.resize(T, h);
    c.R.resize(T, h);
    c.N.resize(T, h);
    c.H.resize(T, h);
    RowVec h_prev = RowVec::Zero(h);
    for (int t = 0; t < T; ++t) {
        RowVec z = (Zin.row(t) + h_prev * U_z.transpose()).unaryExpr([](double v) {
            return sigmoid(v);
        });
        RowVec r = (Rin.row(t) + h_prev * U_r.transpose()).unaryExpr([](double v) {
            return sigmoid(v);
        });
        RowVec n = (Nin.row(t) + (r.cwiseProduct(h_prev)) * U_n.transpose())
                       .unaryExpr([](double v) { return std::tanh(v); });
        RowVec ht = (RowVec::Ones(h) - z).cwiseProduct(n) + z.cwiseProduct(h_prev);
        c.Z.row(t) = z;
        c.R.row(t) = r;
        c.N.row(t) = n;
        c.H.row(t) = ht;
        h_prev = ht;
    }
    c.Q = (c.H * W_out.transpose()).rowwise() + b_out;
    return c;
}

void apply_mask(std::array<double, 16>& q, std::uint16_t mask, double mask_value) {
    for (int j = 0; j < 16; ++j)
        if (!(mask >> j & 1)) q[j] = mask_value;
}

std::array<double, 16> raw_row(const ForwardCache& cache, int t) {
    std::array<double, 16> q;
    for (int j = 0; j < 16; ++j) q[j] = cache.Q(t, j);
    return q;
}

std::array<double, 16> masked_row(const ForwardCache& cache, int t, std::uint16_t mask,
                                  double mask_value) {
    auto q = raw_row(cache, t);
    apply_mask(q, mask, mask_value);
    return q;
}

int masked_argmax(const std::array<double, 16>& masked_q) {
    int best = 0;
    for (int j = 1; j < 16; ++j)
        if (masked_q[j] > masked_q[best]) best = j;
    return best;
}

void backward(const QNet& net, const ForwardCache& cache, const RowMatrix& dQ,
              std::vector<double>& grad) {
    const int T = static_cast<int>(cache.S.rows());
    const int s = net.state_dim, h = net.hidden_dim;
    if (dQ.rows() != T || dQ.cols() != QNet::n_actions)
        throw std::invalid_argument("backward: dQ shape mismatch");
    if (static_cast<int>(grad.size()) != net.param_count())
        throw std::invalid_argument("backward: grad vector has wrong length");

    const double* P = net.params.data();
    CMap W_z(P + net.off_W_z(), h, h), U_z(P + net.off_U_z(), h, h);
    CMap W_r(P + net.off_W_r(), h, h), U_r(P + net.off_U_r(), h, h);
    CMap W_n(P + net.off_W_n(), h, h), U_n(P + net.off_U_n(), h, h);
    CMap W_out(P + net.off_W_out(), QNet::n_actions, h);

    double* G = grad.data();
    MMap dW_in(G + net.off_W_in(), h, s);
    VMap db_in(G + net.off_b_in(), h);
    MMap dW_z(G + net.off_W_z(), h, h), dU_z(G + net.off_U_z(), h, h);
    VMap db_z(G + net.off_b_z(), h);
    MMap dW_r(G + net.off_W_r(), h, h), dU_r(G + net.off_U_r(), h, h);
    VMap db_r(G + net.off_b_r(), h);
    MMap dW_n(G + net.off_W_n(), h, h), dU_n(G + net.off_U_n(), h, h);
    VMap db_n(G + net.off_b_n(), h);
    MMap dW_out(G + net.off_W_out(), QNet::n_actions, h);
    VMap db_out(G + net.off_b_out(), QNet::n_actions);

    dW_out += dQ.transpose() * cache.H;
    db_out += dQ.colwise().sum();
    RowMatrix dH = dQ * W_out;  // T x h

    RowMatrix DZ(T, h), DR(T, h), DN(T, h);
    RowVec carry = RowVec::Zero(h);
    for (int t = T - 1; t >= 0; --t) {
        RowVec dh = dH.row(t) + carry;
        RowVec h_prev = t > 0 ? RowVec(cache.H.row(t - 1)) : RowVec(RowVec::Zero(h));
        RowVec z = cache.Z.row(t), r = cache.R.row(t), n = cache.N.row(t);

        RowVec dz = dh.cwiseProduct(h_prev - n)
                        .cwiseProduct(z)
                        .cwiseProduct(RowVec::Ones(h) - z);
        RowVec dn = dh.cwiseProduct(RowVec::Ones(h) - z)
                        .cwiseProduct(RowVec::Ones(h) - n.cwiseProduct(n));
        RowVec dh_prev = dh.cwiseProduct(z);

        dU_n += dn.transpose() * r.cwiseProduct(h_prev);
        RowVec drh = dn * U_n;  // gradient at (r . h_prev)
        RowVec dr = drh.cwiseProduct(h_prev)
                        .cwiseProduct(r)
                        .cwiseProduct(RowVec::Ones(h) - r);
        dh_prev += drh.cwiseProduct(r);

        dU_r += dr.transpose() * h_prev;
        dh_prev += dr * U_r;
        dU_z += dz.transpose() * h_prev;
        dh_prev += dz * U_z;

        DZ.row(t) = dz;
        DR.row(t) = dr;
        DN.row(t) = dn;
        carry = dh_prev;
    }

    dW_z += DZ.transpose() * cache.X;
    db_z += DZ.colwise().sum();
    dW_r += DR.transpose() * cache.X;
    db_r += DR.colwise().sum();
    dW_n += DN.transpose() * cache.X;
    db_n += DN.colwise().sum();

    RowMatrix dX = DZ * W_z + DR * W_r + DN * W_n;
    RowMatrix dPre =
        dX.cwiseProduct(cache.PreIn.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; }));
    dW_in += dPre.transpose() * cache.S;
    db_in += dPre.colwise().sum();
}

}  // namespace pitchrl
