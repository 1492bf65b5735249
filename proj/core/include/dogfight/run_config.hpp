#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "dogfight/ddqn.hpp"
#include "dogfight/env.hpp"

namespace dogfight {

// Flat key-value configuration ("key = value" lines, '#' comments). Every
// recognized key has a default; loading a file or applying CLI overrides
// replaces individual values. The fully resolved table is written next to
// each run's outputs for reproducibility.
class RunConfig {
 public:
    RunConfig();  // defaults only

    static RunConfig load(const std::filesystem::path& file);

    void set(const std::string& key, const std::string& value);
    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_long(const std::string& key) const;
    int get_int(const std::string& key) const;

    void save(const std::filesystem::path& file) const;

    std::filesystem::path data_dir() const;
    std::uint64_t seed() const;

    EpisodeConfig episode_config(const ActuatorLimits& limits) const;
    TrainConfig train_config() const;
    void apply_aircraft_overrides(AircraftConfig& config) const;

 private:
    std::map<std::string, std::string> values_;
};

}  // namespace dogfight
