#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>
#include <vector>

#include "pitchrl/geometry.hpp"
#include "pitchrl/io.hpp"
#include "pitchrl/kinematics.hpp"
#include "pitchrl/rules.hpp"
#include "pitchrl/tracking.hpp"
#include "test_helpers.hpp"

using namespace pitchrl;
using namespace pitchrl::testutil;

TEST_CASE("vec2 arithmetic") {
    Vec2 a{3.0, 4.0}, b{-1.0, 2.0};
    CHECK((a + b) == Vec2{2.0, 6.0});
    CHECK((a - b) == Vec2{4.0, 2.0});
    CHECK((a * 2.0) == Vec2{6.0, 8.0});
    CHECK(a.norm() == doctest::Approx(5.0));
    CHECK(dot(a, b) == doctest::Approx(5.0));
    CHECK(squared_distance(a, b) == doctest::Approx(20.0));
}

TEST_CASE("pitch config validation and clip") {
    PitchConfig p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.opponent_goal_center() == Vec2{52.5, 0.0});
    CHECK(p.own_goal_center() == Vec2{-52.5, 0.0});
    CHECK(p.clip({1000.0, -1000.0}) == Vec2{52.5, -34.0});
    CHECK(p.clip({1.0, 2.0}) == Vec2{1.0, 2.0});

    PitchConfig bad = p;
    bad.length = 0.0;
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.goal_width = p.width;
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.frame_rate = -1.0;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("goal geometry hand cases") {
    PitchConfig p;

    auto g = goal_geometry({42.5, 0.0}, Goal::opponent, p);
    CHECK(g.distance == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(g.angle == doctest::Approx(0.0).epsilon(1e-12));

    g = goal_geometry({52.5, 10.0}, Goal::opponent, p);
    CHECK(g.distance == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(g.angle == doctest::Approx(M_PI / 2.0).epsilon(1e-12));

    g = goal_geometry({0.0, 10.0}, Goal::own, p);
    CHECK(g.distance == doctest::Approx(std::hypot(52.5, 10.0)).epsilon(1e-12));
    CHECK(g.angle == doctest::Approx(M_PI - std::atan2(10.0, 52.5)).epsilon(1e-12));
    CHECK(g.angle >= 0.0);
    CHECK(g.angle <= M_PI);

    // Symmetric about the long axis.
    auto up = goal_geometry({10.0, 7.0}, Goal::opponent, p);
    auto dn = goal_geometry({10.0, -7.0}, Goal::opponent, p);
    CHECK(up.distance == dn.distance);
    CHECK(up.angle == dn.angle);
}

TEST_CASE("tracking csv round trip") {
    auto dir = temp_dir("pitchrl_test_tracking");
    std::vector<TrackingRow> rows;
    TrackingRow r;
    r.frame = 0;
    r.timestamp_s = 0.0;
    r.object_id = 0;
    r.team = "ball";
    r.jersey = 0;
    r.x_m = 1.0 / 3.0;
    r.y_m = -52.5;
    rows.push_back(r);
    r.object_id = 101;
    r.team = "home";
    r.jersey = 7;
    r.x_m = 0.1;
    r.y_m = 1e-17;
    rows.push_back(r);
    r.frame = 1;
    r.timestamp_s = 0.04;
    r.team = "away";
    r.x_m = -0.0;
    rows.push_back(r);

    auto path = dir + "/t.csv";
    write_tracking_csv(path, rows);
    auto back = read_tracking_csv(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].frame == rows[i].frame);
        CHECK(back[i].timestamp_s == rows[i].timestamp_s);
        CHECK(back[i].object_id == rows[i].object_id);
        CHECK(back[i].team == rows[i].team);
        CHECK(back[i].jersey == rows[i].jersey);
        CHECK(back[i].x_m == rows[i].x_m);
        CHECK(back[i].y_m == rows[i].y_m);
    }

    write_file_atomic(dir + "/bad.csv", "frame,timestamp_s\n1,2\n");
    CHECK_THROWS(read_tracking_csv(dir + "/bad.csv"));
    CHECK_THROWS(read_tracking_csv(dir + "/missing.csv"));
}

TEST_CASE("roster json round trip") {
    auto dir = temp_dir("pitchrl_test_roster");
    Roster roster{{101, 183.5}, {202, 191.0}, {110, 168.25}};
    write_roster_json(dir + "/r.json", roster);
    auto back = read_roster_json(dir + "/r.json");
    CHECK(back == roster);
}

TEST_CASE("frame snapshot validation and lookups") {
    PitchConfig pitch;
    auto f = make_frame();
    CHECK_NOTHROW(f.validate(pitch));

    auto home = f.team_players(Team::home);
    REQUIRE(home.size() == 11);
    for (int j = 0; j < 11; ++j) CHECK(home[j]->jersey == j + 1);
    auto away = f.team_players(Team::away);
    REQUIRE(away.size() == 11);
    CHECK(away[0]->player_id == 201);

    CHECK(f.find_player(110)->jersey == 10);
    CHECK(f.find_player(999) == nullptr);

    auto short_frame = f;
    short_frame.players.pop_back();
    CHECK_THROWS(short_frame.validate(pitch));

    auto oob = f;
    oob.players[3].position.x = 80.0;
    CHECK_THROWS(oob.validate(pitch));

    auto flat = f;
    flat.players[5].height_cm = 0.0;
    CHECK_THROWS(flat.validate(pitch));
}

TEST_CASE("kinematics of uniform motion") {
    const double rate = 25.0;
    const Vec2 v{2.0, -1.0};
    std::vector<std::optional<Vec2>> series;
    for (int i = 0; i < 40; ++i) series.push_back(Vec2{1.0 + v.x * i / rate, v.y * i / rate});

    auto k = compute_kinematics(series, rate);
    REQUIRE(k.positions.size() == series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        CHECK(k.velocities[i].x == doctest::Approx(v.x).epsilon(1e-9));
        CHECK(k.velocities[i].y == doctest::Approx(v.y).epsilon(1e-9));
        CHECK(k.accelerations[i].norm() == doctest::Approx(0.0).epsilon(1e-6));
        CHECK_FALSE(k.long_gap[i]);
    }
}

TEST_CASE("kinematics gap handling") {
    const double rate = 25.0;
    std::vector<std::optional<Vec2>> series;
    for (int i = 0; i < 60; ++i) series.push_back(Vec2{0.1 * i, 0.0});

    SUBCASE("short gap interpolates silently") {
        for (int i = 10; i < 13; ++i) series[i].reset();
        auto k = compute_kinematics(series, rate);
        CHECK(k.positions[11].x == doctest::Approx(1.1).epsilon(1e-9));
        for (int i = 9; i < 14; ++i) CHECK_FALSE(k.long_gap[i]);
    }
    SUBCASE("long gap is bridged but flagged") {
        for (int i = 10; i < 25; ++i) series[i].reset();
        auto k = compute_kinematics(series, rate);
        CHECK(k.positions[17].x == doctest::Approx(1.7).epsilon(1e-9));
        CHECK(k.long_gap[12]);
        CHECK_FALSE(k.long_gap[5]);
        CHECK_FALSE(k.long_gap[30]);
    }
    SUBCASE("missing edges are flagged") {
        series[0].reset();
        series[1].reset();
        series[59].reset();
        auto k = compute_kinematics(series, rate, 1);
        CHECK(k.long_gap[0]);
        CHECK(k.long_gap[59]);
        CHECK_FALSE(k.long_gap[30]);
    }
}

TEST_CASE("attack direction normalization mirrors x") {
    auto f = make_frame();
    f.players[0].velocity = {3.0, 1.5};
    f.ball.velocity = {-2.0, 0.5};
    f.attack_direction = AttackDirection::minus_x;

    auto n = normalize_attack_direction(f);
    CHECK(n.attack_direction == AttackDirection::plus_x);
    CHECK(n.players[0].position.x == -f.players[0].position.x);
    CHECK(n.players[0].position.y == f.players[0].position.y);
    CHECK(n.players[0].velocity.x == -3.0);
    CHECK(n.players[0].velocity.y == 1.5);
    CHECK(n.ball.position.x == -5.0);
    CHECK(n.ball.velocity.x == 2.0);

    auto again = normalize_attack_direction(n);
    CHECK(again.players[0].position.x == n.players[0].position.x);
    CHECK(again.ball.position.x == n.ball.position.x);

    auto blank = f;
    blank.possession_team.reset();
    CHECK_THROWS(normalize_attack_direction(blank));
}

TEST_CASE("offside line") {
    auto f = make_frame();

    SUBCASE("halfway line when every attacker is in their own half") {
        for (auto& p : f.players)
            if (p.team == Team::home) p.position.x = std::min(p.position.x, -1.0);
        CHECK(offside_line(f, Team::home) == 0.0);
    }
    SUBCASE("second-to-last defender") {
        // Away x: GK 50, four at 35, four at 15, two at -5; second highest 35.
        CHECK(offside_line(f, Team::home) == doctest::Approx(35.0));
    }
    SUBCASE("ball beyond the defender line") {
        f.ball.position.x = 41.0;
        CHECK(offside_line(f, Team::home) == doctest::Approx(41.0));
    }
    SUBCASE("invisible defenders do not count") {
        f.players[12].position.x = 45.0;  // away jersey 2
        CHECK(offside_line(f, Team::home) == doctest::Approx(45.0));
        f.players[12].visible = false;
        CHECK(offside_line(f, Team::home) == doctest::Approx(35.0));
    }
}

TEST_CASE("offside position is strictly beyond the line") {
    auto f = make_frame();
    auto& striker = f.players[9];  // home jersey 10
    REQUIRE(striker.player_id == 110);

    striker.position.x = 35.0;  // exactly on the line
    CHECK_FALSE(is_offside(f, striker));
    striker.position.x = 35.0 + 1e-9;
    CHECK(is_offside(f, striker));

    // Defenders are never offside.
    CHECK_FALSE(is_offside(f, f.players[12]));

    auto blank = f;
    blank.possession_team.reset();
    CHECK_FALSE(is_offside(blank, blank.players[9]));
}

TEST_CASE("offside line with an overridden attacker") {
    auto f = make_frame();
    for (auto& p : f.players)
        if (p.team == Team::home) p.position.x = std::min(p.position.x, -1.0);
    CHECK(offside_line(f, Team::home) == 0.0);

    // Probing one attacker into the opponent half restores the defender rule.
    CHECK(offside_line_with_override(f, Team::home, 110, 10.0) == doctest::Approx(35.0));
    CHECK(offside_line_with_override(f, Team::home, 110, -10.0) == 0.0);
}

TEST_CASE("fmt double round trips") {
    for (double d : {0.1, 1.0 / 3.0, -52.5, 1e-300, 123456789.123456789, 0.0}) {
        CHECK(std::stod(fmt_double(d)) == d);
    }
}

TEST_CASE("base64 doubles round trip") {
    std::vector<double> vals{0.0, -1.5, 1.0 / 3.0, 1e308, -2.2250738585072014e-308};
    auto text = doubles_to_base64(vals);
    auto back = base64_to_doubles(text);
    REQUIRE(back.size() == vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) CHECK(back[i] == vals[i]);
    CHECK_THROWS(base64_decode("not base64!!"));
}
