#include "dogfight/aero_model.hpp"

#include "dogfight/error.hpp"

namespace dogfight {

namespace {
const char* kTableNames[] = {
    "cd0",      "cd_q",     "cs_b",     "cs_da",    "cs_dr",   "cs_p",
    "cs_r",     "lift_ab",  "lift_de",  "lift_q",   "croll0",  "croll_da",
    "croll_dr", "croll_p",  "croll_r",  "cpitch0",  "cpitch_q", "cyaw0",
    "cyaw_da",  "cyaw_dr",  "cyaw_p",   "cyaw_r",
};
}  // namespace

AeroModel AeroModel::load(const std::filesystem::path& dir) {
    AeroModel model;
    for (const char* name : kTableNames) {
        const auto file = dir / ("aero_" + std::string(name) + ".csv");
        model.tables_.emplace(name, Table::load_csv(file));
    }
    return model;
}

const Table& AeroModel::table(const std::string& name) const {
    const auto it = tables_.find(name);
    if (it == tables_.end()) throw DataError("aero", "unknown table '" + name + "'");
    return it->second;
}

void AeroModel::set_table(const std::string& name, Table t) {
    tables_.insert_or_assign(name, std::move(t));
}

AeroCoefficients AeroModel::coefficients(double alpha_deg, double beta_deg,
                                         const ControlSurfaces& s, double phat, double qhat,
                                         double rhat, double dxcg, double chord_over_span,
                                         AeroDiagnostics* diag) const {
    bool clamped = false;
    const auto t1 = [&](const char* name, double a) { return table(name).at1(a, &clamped); };
    const auto t2 = [&](const char* name, double a, double b) {
        return table(name).at2(a, b, &clamped);
    };

    const double da_frac = s.aileron_deg / 20.0;
    const double dr_frac = s.rudder_deg / 30.0;

    AeroCoefficients c;
    c.drag = t2("cd0", alpha_deg, s.elevator_deg) + t1("cd_q", alpha_deg) * qhat;
    c.side = t1("cs_b", beta_deg) + t1("cs_da", s.aileron_deg) + t1("cs_dr", s.rudder_deg) +
             t1("cs_r", alpha_deg) * rhat + t1("cs_p", alpha_deg) * phat;
    c.lift = t2("lift_ab", alpha_deg, beta_deg) + t1("lift_de", s.elevator_deg) +
             t1("lift_q", alpha_deg) * qhat;

    c.roll = t2("croll0", alpha_deg, beta_deg) + t2("croll_da", alpha_deg, beta_deg) * da_frac +
             t2("croll_dr", alpha_deg, beta_deg) * dr_frac + t1("croll_r", alpha_deg) * rhat +
             t1("croll_p", alpha_deg) * phat;
    // cg transfer terms use the total normal/side force, matching the source model.
    c.pitch = t2("cpitch0", alpha_deg, s.elevator_deg) + t1("cpitch_q", alpha_deg) * qhat -
              c.lift * dxcg;
    c.yaw = t2("cyaw0", alpha_deg, beta_deg) + t2("cyaw_da", alpha_deg, beta_deg) * da_frac +
            t2("cyaw_dr", alpha_deg, beta_deg) * dr_frac + t1("cyaw_r", alpha_deg) * rhat +
            t1("cyaw_p", alpha_deg) * phat + c.side * dxcg * chord_over_span;

    if (diag && clamped) ++diag->clamped_lookups;
    return c;
}

}  // namespace dogfight
