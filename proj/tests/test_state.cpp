#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "pitchrl/state.hpp"
#include "test_helpers.hpp"

using namespace pitchrl;
using namespace pitchrl::testutil;

TEST_CASE("edms layout offsets") {
    EdmsLayout layout{8};
    CHECK(layout.absolute_dim() == 10);
    CHECK(layout.off_ball_offset() == 10);
    CHECK(layout.off_ball_dim() == 130);
    CHECK(layout.off_ball_row_offset(0) == 10);
    CHECK(layout.off_ball_row_offset(9) == 10 + 9 * 13);
    CHECK(layout.intra_offset() == 140);
    CHECK(layout.inter_offset() == 157);
    CHECK(layout.total_dim() == 166);

    EdmsLayout small{3};
    CHECK(small.total_dim() == 5 + 130 + 17 + 9);
}

TEST_CASE("edms channel names") {
    EdmsLayout layout{8};
    auto vocab = default_formation_vocab();
    auto names = layout.channel_names(vocab);
    REQUIRE(static_cast<int>(names.size()) == layout.total_dim());
    CHECK(names[0] == "offside_dist_attacking");
    CHECK(names[2] == "formation_4-4-2");
    CHECK(names[10] == "ob0_dist_ball");
    CHECK(names[10 + 12] == "ob0_pass_score");
    CHECK(names[layout.intra_offset()] == "intra_indicator");
    CHECK(names[layout.inter_offset()] == "inter_indicator");
    CHECK(names.back() == "inter_transition");
    std::set<std::string> uniq(names.begin(), names.end());
    CHECK(uniq.size() == names.size());

    CHECK_THROWS(layout.channel_names({"4-4-2"}));
}

TEST_CASE("pass scaling clamps and guards degenerate ranges") {
    PassScaling sc;
    CHECK(sc.scale(0, 0.5) == 0.5);  // identity default
    sc.lo[0] = 0.0;
    sc.hi[0] = 2.0;
    CHECK(sc.scale(0, 1.0) == doctest::Approx(0.5));
    CHECK(sc.scale(0, 3.0) == 1.0);
    CHECK(sc.scale(0, -1.0) == 0.0);
    sc.lo[1] = 4.0;
    sc.hi[1] = 4.0;
    CHECK(sc.scale(1, 10.0) == 0.0);
}

TEST_CASE("off ball attackers") {
    auto f = make_frame();
    auto rows = off_ball_attackers(f);
    REQUIRE(rows.size() == 10);
    // Carrier 110 excluded, jersey ascending.
    int expect[10] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 11};
    for (int r = 0; r < 10; ++r) {
        CHECK(rows[r]->jersey == expect[r]);
        CHECK(rows[r]->team == Team::home);
    }

    SUBCASE("defensive carrier picks a pseudo-carrier by ball distance") {
        f.on_ball_player = 210;  // an away player has the ball
        auto alt = off_ball_attackers(f);
        REQUIRE(alt.size() == 10);
        // Home 110 stands on the ball spot and is excluded again.
        for (int r = 0; r < 10; ++r) CHECK(alt[r]->jersey == expect[r]);
    }
    SUBCASE("missing carrier behaves like the pseudo-carrier rule") {
        f.on_ball_player.reset();
        auto alt = off_ball_attackers(f);
        REQUIRE(alt.size() == 10);
        for (int r = 0; r < 10; ++r) CHECK(alt[r]->jersey == expect[r]);
    }
    SUBCASE("requires possession") {
        f.possession_team.reset();
        CHECK_THROWS(off_ball_attackers(f));
    }
}

TEST_CASE("edms absolute block") {
    auto f = make_frame();
    EdmsConfig cfg;
    auto s = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", cfg);
    REQUIRE(static_cast<int>(s.size()) == 166);

    // Attacking offside line 35 (second-highest away x), ball at x 5.
    CHECK(s[0] == doctest::Approx(30.0).epsilon(1e-12));
    // Defending line mirrors to -35.
    CHECK(s[1] == doctest::Approx(-40.0).epsilon(1e-12));

    CHECK(s[2] == 1.0);
    for (int i = 3; i < 10; ++i) CHECK(s[i] == 0.0);

    auto s2 = assemble_edms(f, {ContextKind::intra, false}, "4-3-3", cfg);
    CHECK(s2[2] == 0.0);
    CHECK(s2[3] == 1.0);
}

TEST_CASE("edms off ball rows") {
    auto f = make_frame();
    EdmsConfig cfg;
    EdmsLayout layout = cfg.layout();
    auto s = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", cfg);

    // Row 0 is the home goalkeeper at (-50, 0); ball is at (5, -5).
    int off = layout.off_ball_row_offset(0);
    CHECK(s[off + EdmsLayout::kDistBall] ==
          doctest::Approx(std::hypot(55.0, 5.0)).epsilon(1e-12));
    // Nearest away players to (-50, 0) are the forwards at (-5, +-5).
    CHECK(s[off + EdmsLayout::kTtrPlayer] ==
          doctest::Approx(std::hypot(45.0, 5.0) / 8.0).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kSpace] > 0.0);

    // The pass channel recombines the scaled row channels.
    for (int r = 0; r < 10; ++r) {
        int ro = layout.off_ball_row_offset(r);
        double expect = pass_score(cfg.pass_scaling.scale(0, s[ro + EdmsLayout::kDistBall]),
                                   cfg.pass_scaling.scale(1, s[ro + EdmsLayout::kSpace]),
                                   cfg.pass_scaling.scale(2, s[ro + EdmsLayout::kTtrPlayer]),
                                   cfg.pass_scaling.scale(3, s[ro + EdmsLayout::kTtrPassline]));
        CHECK(s[ro + EdmsLayout::kPass] == expect);
    }

    // Scaling feeds only the pass channel; raw channels stay unscaled.
    EdmsConfig scaled = cfg;
    scaled.pass_scaling.lo = {0.0, 0.0, 0.0, 0.0};
    scaled.pass_scaling.hi = {100.0, 0.2, 10.0, 10.0};
    auto t = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", scaled);
    CHECK(t[off + EdmsLayout::kDistBall] == s[off + EdmsLayout::kDistBall]);
    CHECK(t[off + EdmsLayout::kPass] != s[off + EdmsLayout::kPass]);
}

TEST_CASE("edms intra block") {
    auto f = make_frame();
    EdmsConfig cfg;
    EdmsLayout layout = cfg.layout();
    auto s = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", cfg);

    int off = layout.intra_offset();
    CHECK(s[off + EdmsLayout::kIntraIndicator] == 1.0);
    // Nearest away player to the ball (5,-5) is 10 m away.
    CHECK(s[off + EdmsLayout::kIntraTtbOpp] == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kIntraDistGoal] ==
          doctest::Approx(std::hypot(47.5, 5.0)).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kIntraAngleGoal] ==
          doctest::Approx(std::atan2(5.0, 47.5)).epsilon(1e-12));
    // Carrier is out of shot range.
    CHECK(s[off + EdmsLayout::kIntraShot] == 0.0);
    CHECK(s[off + EdmsLayout::kIntraShotValid] == 0.0);
    // Equal heights tie to jersey 1 at y=0: central zone.
    CHECK(s[off + EdmsLayout::kIntraLongBall0] == 0.0);
    CHECK(s[off + EdmsLayout::kIntraLongBall0 + 1] == 1.0);
    CHECK(s[off + EdmsLayout::kIntraLongBall0 + 2] == 0.0);

    // Inter block stays zero.
    for (int i = layout.inter_offset(); i < layout.total_dim(); ++i) CHECK(s[i] == 0.0);

    SUBCASE("shot channels activate in range") {
        f.players[9].position = {45.0, 0.0};
        f.ball.position = {45.0, 0.0};
        auto t = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", cfg);
        CHECK(t[off + EdmsLayout::kIntraShotValid] == 1.0);
        CHECK(t[off + EdmsLayout::kIntraShot] == 1.0);  // no outfield defender in the cone
    }
}

TEST_CASE("edms inter block") {
    auto f = make_frame();
    f.ball.velocity = {3.0, -4.0};
    EdmsConfig cfg;
    EdmsLayout layout = cfg.layout();
    auto s = assemble_edms(f, {ContextKind::inter, true}, "4-4-2", cfg);

    // Intra block stays zero.
    for (int i = layout.intra_offset(); i < layout.inter_offset(); ++i) CHECK(s[i] == 0.0);

    int off = layout.inter_offset();
    CHECK(s[off + EdmsLayout::kInterIndicator] == 1.0);
    CHECK(s[off + EdmsLayout::kInterTtbAtt] == 0.0);  // carrier stands on the ball
    CHECK(s[off + EdmsLayout::kInterTtbDef] == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kInterDistOpp] ==
          doctest::Approx(std::hypot(47.5, 5.0)).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kInterDistOwn] ==
          doctest::Approx(std::hypot(57.5, 5.0)).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kInterAngleOwn] ==
          doctest::Approx(M_PI - std::atan2(5.0, 57.5)).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kInterBallSpeed] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(s[off + EdmsLayout::kInterTransition] == 1.0);

    auto won = assemble_edms(f, {ContextKind::inter, false}, "4-4-2", cfg);
    CHECK(won[off + EdmsLayout::kInterTransition] == 0.0);
}

TEST_CASE("edms determinism and engine reuse") {
    auto f = make_frame();
    EdmsConfig cfg;
    auto a = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", cfg);
    auto b = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", cfg);
    CHECK(a == b);

    SpaceEngine engine(cfg.pitch, cfg.surface, cfg.space);
    auto c = assemble_edms(f, {ContextKind::intra, false}, "4-4-2", cfg, engine);
    CHECK(a == c);
}

TEST_CASE("edms input validation") {
    auto f = make_frame();
    EdmsConfig cfg;

    auto raw = f;
    raw.attack_direction = AttackDirection::minus_x;
    CHECK_THROWS(assemble_edms(raw, {ContextKind::intra, false}, "4-4-2", cfg));

    CHECK_THROWS(assemble_edms(f, {ContextKind::intra, false}, "3-3-4", cfg));

    auto blank = f;
    blank.possession_team.reset();
    CHECK_THROWS(assemble_edms(blank, {ContextKind::intra, false}, "4-4-2", cfg));

    // Intra context needs an attacking carrier.
    auto stolen = f;
    stolen.on_ball_player = 210;
    CHECK_THROWS(assemble_edms(stolen, {ContextKind::intra, false}, "4-4-2", cfg));
    CHECK_NOTHROW(assemble_edms(stolen, {ContextKind::inter, true}, "4-4-2", cfg));

    EdmsConfig badcfg;
    badcfg.formation_vocab.clear();
    CHECK_THROWS(assemble_edms(f, {ContextKind::intra, false}, "4-4-2", badcfg));
}

TEST_CASE("pvs baseline vector") {
    auto f = make_frame();
    f.players[0].velocity = {1.0, 2.0};
    f.ball.velocity = {-3.0, 0.25};
    auto s = assemble_pvs(f);
    REQUIRE(static_cast<int>(s.size()) == kPvsDim);

    // Home jersey 1 leads.
    CHECK(s[0] == -50.0);
    CHECK(s[1] == 0.0);
    CHECK(s[2] == 1.0);
    CHECK(s[3] == 2.0);
    // Away block starts at 44; away jersey 1 sits at (50, 0).
    CHECK(s[44] == 50.0);
    CHECK(s[45] == 0.0);
    // Ball last.
    CHECK(s[88] == 5.0);
    CHECK(s[89] == -5.0);
    CHECK(s[90] == -3.0);
    CHECK(s[91] == 0.25);

    auto short_frame = f;
    short_frame.players.pop_back();
    CHECK_THROWS(assemble_pvs(short_frame));
}
