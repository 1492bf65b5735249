#include <doctest.h>

#include "dogfight/dt_policy.hpp"
#include "dogfight/error.hpp"
#include "test_helpers.hpp"

using namespace dogfight;

namespace {

// Hand-built inputs; the decision tree only reads altitude, mach, speeds,
// relative depth and the geometry angles.
struct Scenario {
    double altitude = 5000.0;
    double own_mach = 0.6;
    double own_speed = 200.0;
    double opp_speed = 200.0;
    double opp_depth_offset = 0.0;  // opponent p3 - own p3
    double d = 2000.0;
    double ata = 50.0;
    double aa = 50.0;
};

ManeuverId run(const Scenario& sc, const DtOptions& opt) {
    BodyState own;
    own.pos = {0.0, 0.0, -sc.altitude};
    own.vel_body = {sc.own_speed, 0.0, 0.0};
    BodyState opp;
    opp.pos = {sc.d, 0.0, -sc.altitude + sc.opp_depth_offset};
    opp.vel_body = {sc.opp_speed, 0.0, 0.0};
    AirData own_air;
    own_air.speed = sc.own_speed;
    own_air.mach = sc.own_mach;
    AirData opp_air;
    opp_air.speed = sc.opp_speed;
    RelativeGeometry geom;
    geom.distance = sc.d;
    geom.ata_deg = sc.ata;
    geom.aa_deg = sc.aa;
    return decide(own, own_air, opp, opp_air, geom, opt, DtParams{});
}

}  // namespace

TEST_CASE("strategy index mapping covers all eight option sets") {
    CHECK(DtOptions::strategy(1).self_protection == false);
    CHECK(DtOptions::strategy(2).self_protection == true);
    CHECK(DtOptions::strategy(3).escape == true);
    CHECK(DtOptions::strategy(4).yo_yo == true);
    const DtOptions s5 = DtOptions::strategy(5);
    CHECK((s5.escape && s5.yo_yo && !s5.self_protection));
    const DtOptions s6 = DtOptions::strategy(6);
    CHECK((s6.self_protection && s6.yo_yo && !s6.escape));
    const DtOptions s7 = DtOptions::strategy(7);
    CHECK((s7.self_protection && s7.escape && !s7.yo_yo));
    const DtOptions s8 = DtOptions::strategy(8);
    CHECK((s8.self_protection && s8.escape && s8.yo_yo));
    for (int i = 1; i <= 8; ++i) CHECK(DtOptions::strategy(i).strategy_index() == i);
    CHECK_THROWS_AS(DtOptions::strategy(0), ContractViolation);
    CHECK_THROWS_AS(DtOptions::strategy(9), ContractViolation);
}

TEST_CASE("self-protection: low altitude climbs") {
    Scenario sc;
    sc.altitude = 900.0;
    CHECK(run(sc, DtOptions::strategy(2)) == ManeuverId::Climb);
    // Without the option the same state tracks.
    CHECK(run(sc, DtOptions::strategy(1)) == ManeuverId::PositionTracking);
}

TEST_CASE("self-protection: slow speed recovers with straight flight") {
    Scenario sc;
    sc.own_mach = 0.25;
    CHECK(run(sc, DtOptions::strategy(2)) == ManeuverId::StraightFlight);
}

TEST_CASE("self-protection: the altitude check precedes the speed check") {
    Scenario sc;
    sc.altitude = 900.0;
    sc.own_mach = 0.25;
    CHECK(run(sc, DtOptions::strategy(2)) == ManeuverId::Climb);
}

TEST_CASE("escape: chased from behind, higher goes over the top") {
    Scenario sc;
    sc.d = 2000.0;
    sc.ata = 140.0;
    sc.aa = 130.0;
    sc.opp_depth_offset = 1000.0;  // opponent deeper, own higher
    CHECK(run(sc, DtOptions::strategy(3)) == ManeuverId::Somersault);
    sc.opp_depth_offset = -1000.0;  // own lower
    CHECK(run(sc, DtOptions::strategy(3)) == ManeuverId::SplitS);
}

TEST_CASE("yo-yo: aiming from afar, speed picks high or low") {
    Scenario sc;
    sc.d = 4000.0;
    sc.ata = 10.0;
    sc.aa = 45.0;
    sc.own_speed = 250.0;
    sc.opp_speed = 200.0;
    CHECK(run(sc, DtOptions::strategy(4)) == ManeuverId::HighYoYo);
    sc.own_speed = 150.0;
    CHECK(run(sc, DtOptions::strategy(4)) == ManeuverId::LowYoYo);
    // Exact speed tie goes low.
    sc.own_speed = sc.opp_speed;
    CHECK(run(sc, DtOptions::strategy(4)) == ManeuverId::LowYoYo);
}

TEST_CASE("tracking: close and aimed uses attitude tracking, else position tracking") {
    Scenario sc;
    sc.d = 2000.0;
    sc.ata = 10.0;
    CHECK(run(sc, DtOptions::strategy(1)) == ManeuverId::AttitudeTracking);
    sc.d = 4000.0;
    CHECK(run(sc, DtOptions::strategy(1)) == ManeuverId::PositionTracking);
    sc.d = 2000.0;
    sc.ata = 40.0;
    CHECK(run(sc, DtOptions::strategy(1)) == ManeuverId::PositionTracking);
}

TEST_CASE("priority: protection beats escape beats yo-yo beats tracking") {
    // A state satisfying every optional branch at once.
    Scenario all;
    all.altitude = 900.0;
    all.own_mach = 0.25;
    all.d = 2000.0;
    all.ata = 140.0;
    all.aa = 130.0;
    all.opp_depth_offset = 500.0;  // own higher, so escape reverses over the top
    const DtOptions full = DtOptions::strategy(8);
    CHECK(run(all, full) == ManeuverId::Climb);

    Scenario esc_yy = all;
    esc_yy.altitude = 5000.0;
    esc_yy.own_mach = 0.6;
    CHECK(run(esc_yy, full) == ManeuverId::Somersault);
}

TEST_CASE("exhaustive truth table over options and threshold-straddling inputs") {
    const double altitudes[] = {900.0, 1100.0};
    const double machs[] = {0.25, 0.35};
    const double distances[] = {2900.0, 3100.0};
    const double atas[] = {25.0, 35.0, 115.0, 125.0};
    const double aas[] = {25.0, 45.0, 65.0, 125.0};
    const double depth_offsets[] = {-500.0, 500.0};
    const double speeds[] = {180.0, 220.0};

    for (int strat = 1; strat <= 8; ++strat) {
        const DtOptions opt = DtOptions::strategy(strat);
        for (double alt : altitudes)
            for (double mach : machs)
                for (double d : distances)
                    for (double ata : atas)
                        for (double aa : aas)
                            for (double dz : depth_offsets)
                                for (double v : speeds) {
                                    Scenario sc;
                                    sc.altitude = alt;
                                    sc.own_mach = mach;
                                    sc.own_speed = v;
                                    sc.opp_speed = 200.0;
                                    sc.d = d;
                                    sc.ata = ata;
                                    sc.aa = aa;
                                    sc.opp_depth_offset = dz;

                                    // Expected: replay the priority ordering.
                                    ManeuverId expected;
                                    if (opt.self_protection && alt < 1000.0)
                                        expected = ManeuverId::Climb;
                                    else if (opt.self_protection && mach < 0.3)
                                        expected = ManeuverId::StraightFlight;
                                    else if (opt.escape && d < 3000.0 && ata > 120.0 &&
                                             aa > 120.0)
                                        expected = dz > 0.0 ? ManeuverId::Somersault
                                                            : ManeuverId::SplitS;
                                    else if (opt.yo_yo && d > 3000.0 && ata < 30.0 &&
                                             aa > 30.0 && aa < 60.0)
                                        expected = v > 200.0 ? ManeuverId::HighYoYo
                                                             : ManeuverId::LowYoYo;
                                    else if (d < 3000.0 && ata < 30.0)
                                        expected = ManeuverId::AttitudeTracking;
                                    else
                                        expected = ManeuverId::PositionTracking;

                                    CHECK(run(sc, opt) == expected);
                                }
    }
}

TEST_CASE("strategy 1 only ever tracks") {
    const DtOptions baseline = DtOptions::strategy(1);
    const double distances[] = {500.0, 2900.0, 3100.0, 8000.0};
    const double angles[] = {0.0, 29.0, 31.0, 119.0, 121.0, 179.0};
    for (double d : distances)
        for (double ata : angles)
            for (double aa : angles) {
                Scenario sc;
                sc.altitude = 500.0;  // would trigger protection if armed
                sc.own_mach = 0.2;
                sc.d = d;
                sc.ata = ata;
                sc.aa = aa;
                const ManeuverId m = run(sc, baseline);
                const bool tracking = m == ManeuverId::PositionTracking ||
                                      m == ManeuverId::AttitudeTracking;
                CHECK(tracking);
            }
}

TEST_CASE("decide is pure: identical inputs give identical outputs") {
    Scenario sc;
    sc.d = 3500.0;
    sc.ata = 20.0;
    sc.aa = 45.0;
    const ManeuverId first = run(sc, DtOptions::strategy(8));
    for (int i = 0; i < 10; ++i) CHECK(run(sc, DtOptions::strategy(8)) == first);
}
