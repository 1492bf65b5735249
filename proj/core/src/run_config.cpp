#include "dogfight/run_config.hpp"

#include <fstream>

#include "dogfight/error.hpp"

namespace dogfight {

namespace {

struct KeyDefault {
    const char* key;
    const char* value;
};

// Single source of truth for recognized keys and their defaults.
const KeyDefault kDefaults[] = {
    {"data_dir", DOGFIGHT_SOURCE_DATA_DIR "/f16"},
    {"seed", "0"},
    {"sim.dt", "0.01"},
    {"sim.substeps", "100"},
    {"sim.max_decision_steps", "300"},
    {"init.p1_min", "-3000"}, {"init.p1_max", "3000"},
    {"init.p2_min", "-3000"}, {"init.p2_max", "3000"},
    {"init.p3_min", "-8000"}, {"init.p3_max", "-3000"},
    {"init.mach_min", "0.3"}, {"init.mach_max", "0.9"},
    {"init.yaw_min", "-180"}, {"init.yaw_max", "180"},
    {"aircraft.xcg", "0.30"},
    {"aircraft.throttle_rate", "1.0"},
    {"aircraft.elevator_limit", "25"}, {"aircraft.elevator_rate", "60"},
    {"aircraft.aileron_limit", "21.5"}, {"aircraft.aileron_rate", "80"},
    {"aircraft.rudder_limit", "30"}, {"aircraft.rudder_rate", "120"},
    {"pid.mach_target", "0.9"},
    {"pid.mach.kp", "10"}, {"pid.mach.ki", "0"}, {"pid.mach.kd", "0"},
    {"pid.alpha.kp", "8"}, {"pid.alpha.ki", "12"}, {"pid.alpha.kd", "-15"},
    {"pid.roll.kp", "0.2"}, {"pid.roll.ki", "0"}, {"pid.roll.kd", "0"},
    {"pid.beta.kp", "12"}, {"pid.beta.ki", "0"}, {"pid.beta.kd", "-4"},
    {"guidance.k_chi", "0.02"}, {"guidance.k_zeta", "0.02"},
    {"guidance.k_alpha_per_g", "4"},
    {"guidance.alpha_min", "-4"}, {"guidance.alpha_max", "20"},
    {"guidance.alpha_full_max", "30"},
    {"guidance.load_min", "-1"}, {"guidance.load_max", "7.5"},
    {"guidance.k_h", "0.1"}, {"guidance.climb_pitch", "20"},
    {"opponent.strategy", "8"},
    {"dt.h_protect", "1000"}, {"dt.ma_protect", "0.3"},
    {"dt.d_close", "3000"}, {"dt.ata_aim", "30"},
    {"dt.ata_escape", "120"}, {"dt.aa_escape", "120"},
    {"dt.aa_yoyo_min", "30"}, {"dt.aa_yoyo_max", "60"},
    {"zone.d_min", "100"}, {"zone.d_max", "1000"}, {"zone.ata_max", "1"},
    {"reward.failure", "20"}, {"reward.damage", "1"},
    {"reward.angle", "0.005555555555555556"},
    {"obs.depth_scale", "10000"}, {"obs.speed_scale", "400"},
    {"obs.distance_scale", "10000"}, {"obs.angle_scale", "180"},
    {"train.gamma", "0.95"}, {"train.epsilon", "0.95"},
    {"train.target_sync", "512"}, {"train.learning_rate", "1e-4"},
    {"train.batch_size", "512"}, {"train.total_steps", "500000"},
    {"train.buffer_capacity", "100000"}, {"train.checkpoint_every", "50000"},
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

RunConfig::RunConfig() {
    for (const auto& kv : kDefaults) values_[kv.key] = kv.value;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
    RunConfig config;
    std::ifstream in(file);
    if (!in) throw DataError("config", "cannot open '" + file.string() + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config", file.string() + ":" + std::to_string(lineno) +
                                          ": expected 'key = value'");
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (values_.find(key) == values_.end())
        throw DataError("config", "unknown key '" + key + "'");
    values_[key] = value;
}

const std::string& RunConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw DataError("config", "unknown key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const { return std::stod(get(key)); }
long RunConfig::get_long(const std::string& key) const { return std::stol(get(key)); }
int RunConfig::get_int(const std::string& key) const { return std::stoi(get(key)); }

void RunConfig::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw DataError("config", "cannot open '" + file.string() + "'");
    out << "# resolved run configuration\n";
    for (const auto& [key, value] : values_) out << key << " = " << value << '\n';
}

std::filesystem::path RunConfig::data_dir() const { return get("data_dir"); }

std::uint64_t RunConfig::seed() const {
    return static_cast<std::uint64_t>(std::stoull(get("seed")));
}

EpisodeConfig RunConfig::episode_config(const ActuatorLimits& limits) const {
    EpisodeConfig e;
    e.dt = get_double("sim.dt");
    e.substeps = get_int("sim.substeps");
    e.max_decision_steps = get_int("sim.max_decision_steps");

    e.init.p1_min = get_double("init.p1_min");
    e.init.p1_max = get_double("init.p1_max");
    e.init.p2_min = get_double("init.p2_min");
    e.init.p2_max = get_double("init.p2_max");
    e.init.p3_min = get_double("init.p3_min");
    e.init.p3_max = get_double("init.p3_max");
    e.init.mach_min = get_double("init.mach_min");
    e.init.mach_max = get_double("init.mach_max");
    e.init.yaw_min_deg = get_double("init.yaw_min");
    e.init.yaw_max_deg = get_double("init.yaw_max");

    e.red_options = DtOptions::strategy(get_int("opponent.strategy"));
    e.dt_params.h_protect_m = get_double("dt.h_protect");
    e.dt_params.ma_protect = get_double("dt.ma_protect");
    e.dt_params.d_close_m = get_double("dt.d_close");
    e.dt_params.ata_aim_deg = get_double("dt.ata_aim");
    e.dt_params.ata_escape_deg = get_double("dt.ata_escape");
    e.dt_params.aa_escape_deg = get_double("dt.aa_escape");
    e.dt_params.aa_yoyo_min_deg = get_double("dt.aa_yoyo_min");
    e.dt_params.aa_yoyo_max_deg = get_double("dt.aa_yoyo_max");

    e.guidance.k_chi = get_double("guidance.k_chi");
    e.guidance.k_zeta = get_double("guidance.k_zeta");
    e.guidance.k_alpha_per_g = get_double("guidance.k_alpha_per_g");
    e.guidance.alpha_min_deg = get_double("guidance.alpha_min");
    e.guidance.alpha_max_deg = get_double("guidance.alpha_max");
    e.guidance.alpha_full_max_deg = get_double("guidance.alpha_full_max");
    e.guidance.load_min_g = get_double("guidance.load_min");
    e.guidance.load_max_g = get_double("guidance.load_max");
    e.guidance.k_h = get_double("guidance.k_h");
    e.guidance.climb_pitch_deg = get_double("guidance.climb_pitch");

    e.zone.d_min = get_double("zone.d_min");
    e.zone.d_max = get_double("zone.d_max");
    e.zone.ata_max_deg = get_double("zone.ata_max");

    e.reward.failure = get_double("reward.failure");
    e.reward.damage = get_double("reward.damage");
    e.reward.angle = get_double("reward.angle");

    e.normalization.depth_m = get_double("obs.depth_scale");
    e.normalization.speed_ms = get_double("obs.speed_scale");
    e.normalization.distance_m = get_double("obs.distance_scale");
    e.normalization.angle_deg = get_double("obs.angle_scale");

    ControllerBank bank = ControllerBank::defaults(limits);
    bank.mach_target = get_double("pid.mach_target");
    const auto gains = [this](const char* ch) {
        const std::string base = std::string("pid.") + ch;
        return PidGains{get_double(base + ".kp"), get_double(base + ".ki"),
                        get_double(base + ".kd")};
    };
    bank.mach.gains = gains("mach");
    bank.alpha.gains = gains("alpha");
    bank.roll.gains = gains("roll");
    bank.beta.gains = gains("beta");
    e.controllers = bank;
    return e;
}

TrainConfig RunConfig::train_config() const {
    TrainConfig t;
    t.gamma = get_double("train.gamma");
    t.epsilon = get_double("train.epsilon");
    t.target_sync = get_int("train.target_sync");
    t.learning_rate = get_double("train.learning_rate");
    t.batch_size = get_int("train.batch_size");
    t.total_env_steps = get_long("train.total_steps");
    t.buffer_capacity = static_cast<std::size_t>(get_long("train.buffer_capacity"));
    t.checkpoint_every = get_long("train.checkpoint_every");
    return t;
}

void RunConfig::apply_aircraft_overrides(AircraftConfig& config) const {
    config.xcg = get_double("aircraft.xcg");
    config.limits.throttle.rate = get_double("aircraft.throttle_rate");
    const auto symmetric = [this](ChannelLimit& ch, const char* limit_key,
                                  const char* rate_key) {
        ch.max = get_double(limit_key);
        ch.min = -ch.max;
        ch.rate = get_double(rate_key);
    };
    symmetric(config.limits.elevator, "aircraft.elevator_limit", "aircraft.elevator_rate");
    symmetric(config.limits.aileron, "aircraft.aileron_limit", "aircraft.aileron_rate");
    symmetric(config.limits.rudder, "aircraft.rudder_limit", "aircraft.rudder_rate");
}

}  // namespace dogfight
