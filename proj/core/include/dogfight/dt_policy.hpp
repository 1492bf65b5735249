#pragma once

#include "dogfight/airframe.hpp"
#include "dogfight/engagement.hpp"
#include "dogfight/maneuver_types.hpp"

namespace dogfight {

// Which optional branches of the decision tree are armed. The eight
// combinations enumerate opponent strategies 1..8.
struct DtOptions {
    bool self_protection = false;
    bool escape = false;
    bool yo_yo = false;

    // Strategy index mapping: 1 = baseline tracking only, 2 = SP, 3 = ES,
    // 4 = YY, 5 = ES+YY, 6 = SP+YY, 7 = SP+ES, 8 = SP+ES+YY.
    static DtOptions strategy(int index);
    int strategy_index() const;
};

struct DtParams {
    double h_protect_m = 1000.0;
    double ma_protect = 0.3;
    double d_close_m = 3000.0;
    double ata_aim_deg = 30.0;
    double ata_escape_deg = 120.0;
    double aa_escape_deg = 120.0;
    double aa_yoyo_min_deg = 30.0;
    double aa_yoyo_max_deg = 60.0;
};

// Rule-based maneuver selection, first match wins:
// protection, escape, yo-yo, then tracking.
ManeuverId decide(const BodyState& own, const AirData& own_air, const BodyState& opp,
                  const AirData& opp_air, const RelativeGeometry& geom, const DtOptions& options,
                  const DtParams& params = {});

}  // namespace dogfight
