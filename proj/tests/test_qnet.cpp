#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "pitchrl/losses.hpp"
#include "pitchrl/qnet.hpp"
#include "test_helpers.hpp"

using namespace pitchrl;
using namespace pitchrl::testutil;

namespace {

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

// Scalar-loop reimplementation of the recurrent forward pass, reading the
// same flat parameter layout.
std::vector<std::array<double, 16>> naive_forward(const QNet& net,
                                                  const std::vector<std::vector<double>>& states) {
    const int H = net.hidden_dim, S = net.state_dim;
    const double* P = net.params.data();
    const double* W_in = P + net.off_W_in();
    const double* b_in = P + net.off_b_in();
    const double* W_z = P + net.off_W_z();
    const double* U_z = P + net.off_U_z();
    const double* b_z = P + net.off_b_z();
    const double* W_r = P + net.off_W_r();
    const double* U_r = P + net.off_U_r();
    const double* b_r = P + net.off_b_r();
    const double* W_n = P + net.off_W_n();
    const double* U_n = P + net.off_U_n();
    const double* b_n = P + net.off_b_n();
    const double* W_out = P + net.off_W_out();
    const double* b_out = P + net.off_b_out();

    std::vector<std::array<double, 16>> out;
    std::vector<double> hprev(H, 0.0), x(H), z(H), r(H), nn(H), h(H);
    for (const auto& st : states) {
        for (int i = 0; i < H; ++i) {
            double a = b_in[i];
            for (int j = 0; j < S; ++j) a += W_in[i * S + j] * st[j];
            x[i] = a > 0.0 ? a : 0.0;
        }
        for (int i = 0; i < H; ++i) {
            double az = b_z[i], ar = b_r[i];
            for (int j = 0; j < H; ++j) {
                az += W_z[i * H + j] * x[j] + U_z[i * H + j] * hprev[j];
                ar += W_r[i * H + j] * x[j] + U_r[i * H + j] * hprev[j];
            }
            z[i] = sigmoid(az);
            r[i] = sigmoid(ar);
        }
        for (int i = 0; i < H; ++i) {
            double an = b_n[i];
            for (int j = 0; j < H; ++j)
                an += W_n[i * H + j] * x[j] + U_n[i * H + j] * (r[j] * hprev[j]);
            nn[i] = std::tanh(an);
            h[i] = (1.0 - z[i]) * nn[i] + z[i] * hprev[i];
        }
        std::array<double, 16> q{};
        for (int a = 0; a < 16; ++a) {
            double acc = b_out[a];
            for (int j = 0; j < H; ++j) acc += W_out[a * H + j] * h[j];
            q[a] = acc;
        }
        out.push_back(q);
        hprev = h;
    }
    return out;
}

std::vector<std::vector<double>> random_states(std::mt19937_64& rng, int T, int dim) {
    std::vector<std::vector<double>> states(T, std::vector<double>(dim));
    for (auto& s : states)
        for (auto& v : s) v = uniform(rng, -2.0, 2.0);
    return states;
}

}  // namespace

TEST_CASE("parameter layout is packed tight") {
    QNet net(5, 7);
    const int H = 7, S = 5;
    int expect = H * S + H + 6 * H * H + 3 * H + 16 * H + 16;
    CHECK(net.param_count() == expect);
    CHECK(static_cast<int>(net.params.size()) == expect);
    CHECK(net.off_b_out() + 16 == expect);
    CHECK(net.off_W_z() == H * S + H);
    CHECK(net.off_W_out() == net.off_b_n() + H);
}

TEST_CASE("seeded initialization is deterministic") {
    auto a = QNet::seeded(6, 16, 99);
    auto b = QNet::seeded(6, 16, 99);
    CHECK(a.params == b.params);
    auto c = QNet::seeded(6, 16, 100);
    CHECK(a.params != c.params);

    bool nonzero = false;
    for (double p : a.params) {
        CHECK(std::isfinite(p));
        CHECK(std::fabs(p) <= 1.0);
        if (p != 0.0) nonzero = true;
    }
    CHECK(nonzero);
}

TEST_CASE("zero net emits the output bias") {
    QNet net(4, 8);
    for (int a = 0; a < 16; ++a) net.params[net.off_b_out() + a] = 0.25 * a;

    std::mt19937_64 rng(1);
    auto cache = forward(net, random_states(rng, 5, 4));
    REQUIRE(cache.Q.rows() == 5);
    for (int t = 0; t < 5; ++t)
        for (int a = 0; a < 16; ++a) CHECK(cache.Q(t, a) == 0.25 * a);

    // Intermediate tensors take their closed-form fixed-point values.
    for (int t = 0; t < 5; ++t)
        for (int i = 0; i < 8; ++i) {
            CHECK(cache.X(t, i) == 0.0);
            CHECK(cache.Z(t, i) == 0.5);
            CHECK(cache.N(t, i) == 0.0);
            CHECK(cache.H(t, i) == 0.0);
        }
}

TEST_CASE("forward matches the scalar-loop oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        const int S = 1 + static_cast<int>(rng() % 6);
        const int H = 1 + static_cast<int>(rng() % 12);
        const int T = 1 + static_cast<int>(rng() % 7);
        auto net = QNet::seeded(S, H, rng());
        auto states = random_states(rng, T, S);

        auto cache = forward(net, states);
        auto oracle = naive_forward(net, states);
        REQUIRE(cache.Q.rows() == T);
        for (int t = 0; t < T; ++t)
            for (int a = 0; a < 16; ++a)
                CHECK(std::fabs(cache.Q(t, a) - oracle[t][a]) < 1e-9);
    }
}

TEST_CASE("the recurrence carries history") {
    auto net = QNet::seeded(3, 10, 7);
    std::mt19937_64 rng(3);
    auto states = random_states(rng, 4, 3);
    auto cache = forward(net, states);

    auto altered = states;
    altered[0][0] += 1.0;
    auto cache2 = forward(net, altered);

    // Same inputs from t=1 on, but the hidden state remembers t=0.
    double diff = 0.0;
    for (int a = 0; a < 16; ++a) diff += std::fabs(cache.Q(3, a) - cache2.Q(3, a));
    CHECK(diff > 0.0);

    auto cache3 = forward(net, states);
    CHECK((cache.Q - cache3.Q).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS(forward(net, {}));
    CHECK_THROWS(forward(net, {{1.0, 2.0}}));  // wrong state_dim
}

TEST_CASE("mask replaces invalid entries") {
    std::array<double, 16> q{};
    for (int a = 0; a < 16; ++a) q[a] = a;

    auto on = q;
    apply_mask(on, kOnBallMask);
    for (int a = 0; a <= 6; ++a) CHECK(on[a] == a);
    for (int a = 7; a < 16; ++a) CHECK(on[a] == kMaskValue);

    auto off = q;
    apply_mask(off, kOffBallMask);
    for (int a = 0; a <= 6; ++a) CHECK(off[a] == kMaskValue);
    for (int a = 7; a < 16; ++a) CHECK(off[a] == a);

    auto twice = on;
    apply_mask(twice, kOnBallMask);
    CHECK(twice == on);

    auto custom = q;
    apply_mask(custom, kOnBallMask, -1.0);
    CHECK(custom[15] == -1.0);

    auto all = q;
    apply_mask(all, kAllActionsMask);
    CHECK(all == q);
}

TEST_CASE("masked rows come from the cache") {
    auto net = QNet::seeded(2, 6, 5);
    std::mt19937_64 rng(4);
    auto cache = forward(net, random_states(rng, 3, 2));
    auto raw = raw_row(cache, 1);
    auto masked = masked_row(cache, 1, kOffBallMask);
    for (int a = 0; a < 16; ++a) {
        CHECK(raw[a] == cache.Q(1, a));
        CHECK(masked[a] == (a >= 7 ? raw[a] : kMaskValue));
    }
}

TEST_CASE("masked argmax lands on a valid action") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<double, 16> q;
        for (auto& v : q) v = uniform(rng, -5.0, 5.0);
        std::uint16_t mask = trial % 2 ? kOnBallMask : kOffBallMask;
        apply_mask(q, mask);
        int a = masked_argmax(q);
        CHECK((mask >> a & 1) == 1);
    }
}

TEST_CASE("zero net cross entropy is the log action count") {
    QNet net(4, 8);  // all-zero parameters
    std::mt19937_64 rng(8);
    const int T = 50;
    auto cache = forward(net, random_states(rng, T, 4));

    std::vector<std::array<double, 16>> masked_rows, raw_rows;
    std::vector<int> labels;
    std::vector<std::uint16_t> off_masks(T, kOffBallMask), all_masks(T, kAllActionsMask);
    for (int t = 0; t < T; ++t) {
        masked_rows.push_back(masked_row(cache, t, kOffBallMask));
        raw_rows.push_back(raw_row(cache, t));
        labels.push_back(7 + static_cast<int>(rng() % 9));
    }

    double masked_ce = action_loss(masked_rows, labels, off_masks) / T;
    double raw_ce = action_loss(raw_rows, labels, all_masks) / T;
    CHECK(std::fabs(masked_ce - std::log(9.0)) < 1e-6);
    CHECK(std::fabs(raw_ce - std::log(16.0)) < 1e-6);
}

TEST_CASE("masking never increases the action loss") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        std::array<double, 16> q;
        for (auto& v : q) v = uniform(rng, -4.0, 4.0);
        std::uint16_t mask = trial % 2 ? kOnBallMask : kOffBallMask;
        int label;
        do {
            label = static_cast<int>(rng() % 16);
        } while (!(mask >> label & 1));

        auto masked = q;
        apply_mask(masked, mask);
        double lm = action_loss({masked}, {label}, {mask});
        double lu = action_loss({q}, {label}, {kAllActionsMask});
        CHECK(lm <= lu + 1e-12);

        // Strict once an invalid entry outweighs some valid one.
        double min_valid = 1e9, max_invalid = -1e9;
        for (int a = 0; a < 16; ++a) {
            if (mask >> a & 1)
                min_valid = std::min(min_valid, q[a]);
            else
                max_invalid = std::max(max_invalid, q[a]);
        }
        if (max_invalid > min_valid) CHECK(lm < lu);
    }
}

TEST_CASE("action loss hand values and stability") {
    std::array<double, 16> zeros{};
    CHECK(log_softmax_at(zeros, 5) == doctest::Approx(-std::log(16.0)).epsilon(1e-12));

    auto bumped = zeros;
    bumped[3] = std::log(2.0);
    double expect = std::log((15.0 + 2.0) / 2.0);
    CHECK(action_loss({bumped}, {3}, {kAllActionsMask}) ==
          doctest::Approx(expect).epsilon(1e-12));

    auto huge = zeros;
    huge[3] = 1000.0;
    CHECK(action_loss({huge}, {3}, {kAllActionsMask}) == doctest::Approx(0.0).epsilon(1e-9));
    auto tiny = zeros;
    tiny[3] = -1000.0;
    double big_loss = action_loss({tiny}, {3}, {kAllActionsMask});
    CHECK(std::isfinite(big_loss));
    CHECK(big_loss == doctest::Approx(1000.0 + std::log(15.0)).epsilon(1e-9));

    CHECK_THROWS(action_loss({zeros}, {2}, {kOffBallMask}));  // label bit clear
    CHECK_THROWS(action_loss({zeros}, {16}, {kAllActionsMask}));
    CHECK_THROWS(action_loss({zeros}, {3, 4}, {kAllActionsMask}));
}

TEST_CASE("td loss hand values") {
    CHECK(td_loss({2.0}, {0.5}, {3.0}, 1.0) == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(td_loss({2.0}, {0.5}, {3.0}, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(td_loss({1.0, 2.0}, {0.0, 1.0}, {1.0, 0.0}, 1.0) ==
          doctest::Approx(0.0 + 1.0).epsilon(1e-12));
    CHECK_THROWS(td_loss({1.0}, {0.0, 0.0}, {1.0}, 1.0));
}

TEST_CASE("total loss composition") {
    CHECK(total_loss(2.0, 3.0, 10.0, 0.001, 0.05) == doctest::Approx(2.0 + 0.01 + 0.15));
    CHECK(l1_norm({1.0, -2.0, 3.0}) == doctest::Approx(6.0));
    CHECK(l1_norm({}) == 0.0);
}

TEST_CASE("trajectory invariants") {
    Trajectory traj;
    traj.states = {{1.0, 2.0}, {3.0, 4.0}};
    traj.actions = {0, 15};
    traj.rewards = {0.0, 1.0};
    traj.masks = {kOnBallMask, kOffBallMask};
    CHECK(traj.length() == 2);
    CHECK_NOTHROW(traj.check());

    auto bad = traj;
    bad.rewards.pop_back();
    CHECK_THROWS(bad.check());

    bad = traj;
    bad.actions[1] = 3;  // on-ball label under the off-ball mask
    CHECK_THROWS(bad.check());
}
