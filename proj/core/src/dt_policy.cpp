#include "dogfight/dt_policy.hpp"

#include "dogfight/error.hpp"

namespace dogfight {

DtOptions DtOptions::strategy(int index) {
    switch (index) {
        case 1: return {false, false, false};
        case 2: return {true, false, false};
        case 3: return {false, true, false};
        case 4: return {false, false, true};
        case 5: return {false, true, true};
        case 6: return {true, false, true};
        case 7: return {true, true, false};
        case 8: return {true, true, true};
        default:
            throw ContractViolation("dt_policy", "strategy index must be 1..8");
    }
}

int DtOptions::strategy_index() const {
    for (int i = 1; i <= 8; ++i) {
        const DtOptions s = strategy(i);
        if (s.self_protection == self_protection && s.escape == escape && s.yo_yo == yo_yo)
            return i;
    }
    return 0;  // unreachable
}

ManeuverId decide(const BodyState& own, const AirData& own_air, const BodyState& opp,
                  const AirData& opp_air, const RelativeGeometry& geom, const DtOptions& opt,
                  const DtParams& p) {
    // Self-protection: ground avoidance first, then energy recovery.
    if (opt.self_protection) {
        if (own.altitude() < p.h_protect_m) return ManeuverId::Climb;
        if (own_air.mach < p.ma_protect) return ManeuverId::StraightFlight;
    }

    // Escape when about to be chased from behind: reverse over the top if
    // higher than the opponent (own p3 below opponent's), under otherwise.
    if (opt.escape && geom.distance < p.d_close_m && geom.ata_deg > p.ata_escape_deg &&
        geom.aa_deg > p.aa_escape_deg) {
        return own.pos.z < opp.pos.z ? ManeuverId::Somersault : ManeuverId::SplitS;
    }

    // Yo-yo while aiming from a distance; the faster aircraft goes high.
    if (opt.yo_yo && geom.distance > p.d_close_m && geom.ata_deg < p.ata_aim_deg &&
        geom.aa_deg > p.aa_yoyo_min_deg && geom.aa_deg < p.aa_yoyo_max_deg) {
        return own_air.speed > opp_air.speed ? ManeuverId::HighYoYo : ManeuverId::LowYoYo;
    }

    // Tracking baseline.
    if (geom.distance < p.d_close_m && geom.ata_deg < p.ata_aim_deg)
        return ManeuverId::AttitudeTracking;
    return ManeuverId::PositionTracking;
}

}  // namespace dogfight
