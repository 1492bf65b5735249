#include <doctest.h>

#include <cmath>

#include "dogfight/engagement.hpp"
#include "dogfight/error.hpp"
#include "dogfight/rng.hpp"
#include "test_helpers.hpp"

using namespace dogfight;

namespace {
BodyState at(Vec3 pos, double yaw_deg = 0.0, double pitch_deg = 0.0) {
    BodyState s;
    s.pos = pos;
    s.vel_body = {200.0, 0.0, 0.0};
    s.euler = {0.0, pitch_deg * kDegToRad, yaw_deg * kDegToRad};
    return s;
}
}  // namespace

TEST_CASE("heading vector: level, yawed, pitched") {
    Vec3 h = heading_vector({0, 0, 0});
    CHECK(h.x == doctest::Approx(1.0));
    CHECK(h.y == doctest::Approx(0.0));
    h = heading_vector({0, 0, kPi / 2});
    CHECK(h.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(h.y == doctest::Approx(1.0));
    h = heading_vector({0, kPi / 4, 0});
    CHECK(h.x == doctest::Approx(std::sqrt(2.0) / 2.0));
    CHECK(h.z == doctest::Approx(-std::sqrt(2.0) / 2.0));
    CHECK(h.norm() == doctest::Approx(1.0));
}

TEST_CASE("relative geometry: head-on") {
    const RelativeGeometry g = relative_geometry(at({0, 0, -5000}), at({1000, 0, -5000}, 180.0));
    CHECK(g.distance == doctest::Approx(1000.0));
    CHECK(g.ata_deg == doctest::Approx(0.0));
    CHECK(g.aa_deg == doctest::Approx(180.0));
    CHECK(g.hca_deg == doctest::Approx(180.0));
}

TEST_CASE("relative geometry: pursuit") {
    const RelativeGeometry g = relative_geometry(at({0, 0, -5000}), at({1000, 0, -5000}, 0.0));
    CHECK(g.ata_deg == doctest::Approx(0.0));
    CHECK(g.aa_deg == doctest::Approx(0.0));
    CHECK(g.hca_deg == doctest::Approx(0.0));
}

TEST_CASE("relative geometry: beam aspect") {
    const RelativeGeometry g = relative_geometry(at({0, 0, -5000}), at({1000, 0, -5000}, 90.0));
    CHECK(g.ata_deg == doctest::Approx(0.0));
    CHECK(g.aa_deg == doctest::Approx(90.0));
    CHECK(g.hca_deg == doctest::Approx(90.0));
}

TEST_CASE("relative geometry: swap symmetry") {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        const BodyState a = at({rng.uniform(-5000, 5000), rng.uniform(-5000, 5000),
                                rng.uniform(-8000, -1000)},
                               rng.uniform(-180, 180), rng.uniform(-80, 80));
        const BodyState b = at({rng.uniform(-5000, 5000), rng.uniform(-5000, 5000),
                                rng.uniform(-8000, -1000)},
                               rng.uniform(-180, 180), rng.uniform(-80, 80));
        if ((a.pos - b.pos).norm() < 1.0) continue;
        const RelativeGeometry gab = relative_geometry(a, b);
        const RelativeGeometry gba = relative_geometry(b, a);
        CHECK(gab.distance == doctest::Approx(gba.distance));
        CHECK(gab.hca_deg == doctest::Approx(gba.hca_deg));
        // The line of sight reverses under the swap, so the angles pair up
        // as supplements: ATA(a->b) + AA(b->a) = 180 and vice versa.
        CHECK(gab.ata_deg + gba.aa_deg == doctest::Approx(180.0));
        CHECK(gab.aa_deg + gba.ata_deg == doctest::Approx(180.0));
        CHECK((gab.los + gba.los).norm() == doctest::Approx(0.0).epsilon(1e-9));
        // Never NaN for finite inputs.
        CHECK(std::isfinite(gab.ata_deg));
        CHECK(std::isfinite(gab.aa_deg));
        CHECK(std::isfinite(gab.hca_deg));
    }
}

TEST_CASE("relative geometry: opponent on the nose ray has zero ATA regardless of attitude") {
    const BodyState own = at({0, 0, -5000}, 30.0, 10.0);
    const Vec3 h = heading_vector(own.euler);
    BodyState opp = at(own.pos + h * 800.0, -120.0, 40.0);
    const RelativeGeometry g = relative_geometry(own, opp);
    CHECK(g.ata_deg < 1e-5);  // acos rounding leaves ~1e-6 deg
}

TEST_CASE("relative geometry: coincident positions raise") {
    BodyState a = at({0, 0, -5000});
    BodyState b = a;
    CHECK_THROWS_AS(relative_geometry(a, b), CoincidentPositionError);
}

TEST_CASE("engagement zone: inside, too far, off boresight, and boundaries") {
    RelativeGeometry g;
    g.distance = 500.0;
    g.ata_deg = 0.5;
    CHECK(in_engagement_zone(g));
    g.distance = 1500.0;
    CHECK_FALSE(in_engagement_zone(g));
    g.distance = 500.0;
    g.ata_deg = 2.0;
    CHECK_FALSE(in_engagement_zone(g));
    // Boundary cases are inclusive.
    g.ata_deg = 1.0;
    CHECK(in_engagement_zone(g));
    g.distance = 100.0;
    CHECK(in_engagement_zone(g));
    g.distance = 1000.0;
    CHECK(in_engagement_zone(g));
    g.distance = 99.999;
    CHECK_FALSE(in_engagement_zone(g));
}

TEST_CASE("damage: one second in the zone drains full blood") {
    CombatStatus blue, red;
    for (int i = 0; i < 100; ++i) apply_damage(blue, red, true, false, 0.01);
    CHECK(blue.blood <= 1e-12);
    CHECK(red.blood == doctest::Approx(1.0));
}

TEST_CASE("damage: out of zone unchanged, partial time partial blood") {
    CombatStatus blue, red;
    apply_damage(blue, red, false, false, 0.01);
    CHECK(blue.blood == 1.0);
    for (int i = 0; i < 37; ++i) apply_damage(blue, red, false, true, 0.01);
    CHECK(red.blood == doctest::Approx(0.63).epsilon(1e-9));
}

TEST_CASE("damage: floored at zero and dealt to both sides in one substep") {
    CombatStatus blue, red;
    blue.blood = 0.005;
    apply_damage(blue, red, true, true, 0.01);
    CHECK(blue.blood == 0.0);
    CHECK(red.blood == doctest::Approx(0.99));
}

TEST_CASE("damage accounting matches time in zone to 1e-9") {
    Rng rng(9);
    CombatStatus blue, red;
    double zone_time = 0.0;
    for (int i = 0; i < 5000 && blue.blood > 0.0; ++i) {
        const bool in_zone = rng.bernoulli(0.01);
        if (in_zone) zone_time += 0.01;
        apply_damage(blue, red, in_zone, false, 0.01);
    }
    CHECK(std::abs((1.0 - blue.blood) - zone_time) < 1e-9);
}

TEST_CASE("termination: blood exhaustion decides the fight") {
    CombatStatus blue, red;
    red.blood = 0.0;
    const RelativeGeometry g = relative_geometry(at({0, 0, -5000}), at({500, 0, -5000}));
    CHECK(check_termination(at({0, 0, -5000}), at({500, 0, -5000}), blue, red, g, 10) ==
          Outcome::BlueWin);
    blue.blood = 0.0;
    CHECK(check_termination(at({0, 0, -5000}), at({500, 0, -5000}), blue, red, g, 10) ==
          Outcome::Tie);
}

TEST_CASE("termination: ground impact fails the low aircraft") {
    CombatStatus blue, red;
    const BodyState low = at({0, 0, -5.0});
    const BodyState high = at({500, 0, -5000});
    const RelativeGeometry g = relative_geometry(low, high);
    CHECK(check_termination(low, high, blue, red, g, 0) == Outcome::RedWin);
    CHECK(blue.crashed);
    CHECK(blue.crash_reason == CrashReason::Ground);
}

TEST_CASE("termination: proximity crash fails both") {
    CombatStatus blue, red;
    const BodyState a = at({0, 0, -5000});
    const BodyState b = at({8, 0, -5000});
    const RelativeGeometry g = relative_geometry(a, b);
    CHECK(check_termination(a, b, blue, red, g, 0) == Outcome::Tie);
    CHECK(blue.crash_reason == CrashReason::Proximity);
    CHECK(red.crash_reason == CrashReason::Proximity);
}

TEST_CASE("termination: decision-step limit is a tie, otherwise ongoing") {
    CombatStatus blue, red;
    const BodyState a = at({0, 0, -5000});
    const BodyState b = at({2000, 0, -5000});
    const RelativeGeometry g = relative_geometry(a, b);
    CHECK(check_termination(a, b, blue, red, g, 299) == Outcome::Ongoing);
    CHECK(check_termination(a, b, blue, red, g, 300) == Outcome::Tie);
}

TEST_CASE("outcome names encode blue's perspective") {
    CHECK(outcome_name(Outcome::BlueWin) == "win");
    CHECK(outcome_name(Outcome::RedWin) == "loss");
    CHECK(outcome_name(Outcome::Tie) == "tie");
}
