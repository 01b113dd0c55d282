#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pitchrl/importance.hpp"
#include "pitchrl/rules.hpp"
#include "pitchrl/space.hpp"
#include "test_helpers.hpp"

using namespace pitchrl;
using namespace pitchrl::testutil;

TEST_CASE("importance surface shape") {
    ImportanceSurface s;
    CHECK(importance({17.5, 0.0}, s) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(importance({52.5, 0.0}, s) > importance({0.0, 0.0}, s));
    CHECK(importance({0.0, 0.0}, s) > importance({-52.5, 0.0}, s));
    CHECK(importance({10.0, 0.0}, s) > importance({10.0, 20.0}, s));
    CHECK(importance({10.0, 20.0}, s) == importance({10.0, -20.0}, s));
    // sigmoid(35) * gauss(0) at one steepness decade
    double expect = 1.0 / (1.0 + std::exp(-0.1 * (35.0 - 17.5)));
    CHECK(importance({35.0, 0.0}, s) == doctest::Approx(expect).epsilon(1e-12));

    ImportanceSurface bad = s;
    bad.gaussian_sigma = 0.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("pitch grid covers the pitch") {
    PitchConfig pitch;
    PitchGrid g(pitch, 1.0);
    CHECK(g.n_x == 105);
    CHECK(g.n_y == 68);
    CHECK(g.cell_count() == 105 * 68);
    CHECK(g.cell_center(0, 0) == Vec2{-52.0, -33.5});
    CHECK(g.cell_center(104, 67) == Vec2{52.0, 33.5});
    CHECK(g.cell_area() == doctest::Approx(1.0));

    PitchGrid fine(pitch, 0.5);
    CHECK(fine.n_x == 210);
    CHECK(fine.cell_center(0, 0) == Vec2{-52.25, -33.75});

    CHECK_THROWS(PitchGrid(pitch, 0.0));
}

TEST_CASE("dominant region matches a brute-force rescan") {
    PitchConfig pitch;
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 12; ++trial) {
        auto f = random_frame(rng, pitch);
        for (double res : {1.0, 0.5}) {
            auto field = dominant_region(f, pitch, res);
            auto oracle = brute_owner(f, field.grid, 0.5);
            REQUIRE(field.owner.size() == oracle.size());
            int mismatches = 0;
            for (std::size_t i = 0; i < oracle.size(); ++i)
                if (field.owner[i] != oracle[i]) ++mismatches;
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("velocity shifts the owned region") {
    auto f = make_frame();
    PitchConfig pitch;
    // Striker sprinting +x for 0.5 s owns cells 4 m further upfield.
    f.players[9].velocity = {8.0, 0.0};
    auto field = dominant_region(f, pitch, 1.0);
    auto oracle = brute_owner(f, field.grid, 0.5);
    CHECK(field.owner == oracle);

    auto still = make_frame();
    auto field_still = dominant_region(still, pitch, 1.0);
    int moved_cells = 0, still_cells = 0;
    for (std::size_t i = 0; i < field.owner.size(); ++i) {
        if (field.owner[i] == 110) ++moved_cells;
        if (field_still.owner[i] == 110) ++still_cells;
    }
    CHECK(moved_cells > 0);
    CHECK(still_cells > 0);
    CHECK(field.owner != field_still.owner);
}

TEST_CASE("equidistant cells go to the lower id") {
    auto f = make_frame();
    // Home 110 at (5,-5) and away 210 at (-5,-5) are mirror images; the
    // x = 0 cell column at their y is equidistant from both.
    PitchConfig pitch;
    auto field = dominant_region(f, pitch, 1.0);
    int ix = 52;  // center x = -52 + 52 = 0
    CHECK(field.grid.cell_center(ix, 0).x == 0.0);
    Vec2 c = field.grid.cell_center(ix, 28);  // (0, -5.5)
    double d_home = squared_distance(f.players[9].position, c);
    double d_away = squared_distance(f.players[20].position, c);
    REQUIRE(d_home == d_away);
    CHECK(field.owner[28 * field.grid.n_x + ix] == 110);
}

TEST_CASE("ownership partitions the surface integral") {
    PitchConfig pitch;
    ImportanceSurface surface;
    SpaceParams params;
    SpaceEngine engine(pitch, surface, params);

    std::mt19937_64 rng(7);
    auto f = random_frame(rng, pitch);
    engine.set_frame(f);

    double sum = 0.0;
    for (const auto& p : f.players) sum += engine.owned_importance(p.player_id);
    CHECK(sum == doctest::Approx(engine.surface_integral()).epsilon(1e-9));
    CHECK(engine.surface_integral() > 0.0);
}

TEST_CASE("space score equals the brute-force recomputation") {
    PitchConfig pitch;
    ImportanceSurface surface;
    SpaceParams params;
    SpaceEngine engine(pitch, surface, params);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        auto f = random_frame(rng, pitch);
        engine.set_frame(f);
        for (std::int64_t pid : {101, 105, 110, 203, 211}) {
            double got = engine.space_score(pid);
            double want = brute_space_score(f, pid, pitch, surface, params);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("offside attackers have exactly zero space") {
    auto f = make_frame();
    // Away block sits at x 35; push the striker past it with the ball behind.
    f.players[9].position = {40.0, 0.0};
    PitchConfig pitch;
    SpaceEngine engine(pitch, {}, {});
    engine.set_frame(f);
    CHECK(is_offside(f, f.players[9]));
    CHECK(engine.space_score(110) == 0.0);
    CHECK(engine.owned_importance(110) > 0.0);  // region is owned, score is gated

    // The same position is fine for a defender.
    CHECK(engine.space_score(201) > 0.0);

    // Stepping back onside restores a positive score.
    f.players[9].position = {30.0, 0.0};
    engine.set_frame(f);
    CHECK_FALSE(is_offside(f, f.players[9]));
    CHECK(engine.space_score(110) > 0.0);
}

TEST_CASE("invisible players own nothing") {
    auto f = make_frame();
    f.players[9].visible = false;
    PitchConfig pitch;
    SpaceEngine engine(pitch, {}, {});
    engine.set_frame(f);
    CHECK(engine.owned_importance(110) == 0.0);
    CHECK(engine.space_score(110) == 0.0);
}

TEST_CASE("displaced score matches a full rebuild bit for bit") {
    PitchConfig pitch;
    ImportanceSurface surface;
    SpaceParams params;
    SpaceEngine engine(pitch, surface, params);
    SpaceEngine rebuilt(pitch, surface, params);

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 6; ++trial) {
        auto f = random_frame(rng, pitch);
        engine.set_frame(f);
        std::int64_t pid = 100 + 1 + static_cast<int>(rng() % 11);
        Vec2 target = pitch.clip({uniform(rng, -52.5, 52.5), uniform(rng, -34.0, 34.0)});

        auto moved = f;
        for (auto& p : moved.players)
            if (p.player_id == pid) p.position = target;
        rebuilt.set_frame(moved);

        CHECK(engine.space_score_displaced(pid, target) == rebuilt.space_score(pid));
    }
}

TEST_CASE("delta space 8dir matches displaced probes") {
    PitchConfig pitch;
    ImportanceSurface surface;
    SpaceEngine engine(pitch, surface, {});

    std::mt19937_64 rng(23);
    auto f = random_frame(rng, pitch);
    engine.set_frame(f);

    const auto& steps = direction_steps();
    CHECK(steps[0] == Vec2{1.0, 0.0});
    CHECK(steps[1] == Vec2{std::sqrt(0.5), std::sqrt(0.5)});
    CHECK(steps[2] == Vec2{0.0, 1.0});
    CHECK(steps[4] == Vec2{-1.0, 0.0});
    CHECK(steps[7] == Vec2{std::sqrt(0.5), -std::sqrt(0.5)});

    for (std::int64_t pid : {103, 110, 207}) {
        auto deltas = engine.delta_space_score_8dir(pid);
        double base = engine.space_score(pid);
        const PlayerState* p = f.find_player(pid);
        for (int k = 0; k < 8; ++k) {
            Vec2 moved = pitch.clip(p->position + steps[k]);
            CHECK(deltas[k] == engine.space_score_displaced(pid, moved) - base);
        }
    }
}

TEST_CASE("displacement clips at the boundary") {
    auto f = make_frame();
    f.players[9].position = {52.5, 0.0};  // on the goal line
    f.ball.position = {52.5, 0.0};
    PitchConfig pitch;
    SpaceEngine engine(pitch, {}, {});
    engine.set_frame(f);
    CHECK_NOTHROW(engine.delta_space_score_8dir(110));
}
