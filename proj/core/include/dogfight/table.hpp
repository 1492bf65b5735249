#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace dogfight {

// Gridded lookup table with multilinear interpolation. Breakpoints must be
// strictly increasing on every axis; queries outside the grid hull clamp to
// the edge and report the clamp to the caller.
//
// CSV layout (one table per file, '#' lines are comments):
//   name,<table name>
//   axis,<axis name>,<unit>,<breakpoint>,<breakpoint>,...
//   ...one axis line per dimension, first axis varies slowest...
//   data
//   <row of values>          rows iterate axis 0; columns iterate the
//   ...                      remaining axes flattened row-major
class Table {
 public:
    struct Axis {
        std::string name;
        std::string unit;
        std::vector<double> breakpoints;
    };

    Table() = default;
    Table(std::string name, std::vector<Axis> axes, std::vector<double> values);

    static Table load_csv(const std::filesystem::path& file);

    const std::string& name() const { return name_; }
    const std::vector<Axis>& axes() const { return axes_; }
    std::size_t size() const { return values_.size(); }
    double value_at_index(std::span<const std::size_t> idx) const;

    // Multilinear interpolation; sets *clamped when the query left the hull.
    double at(std::span<const double> coords, bool* clamped = nullptr) const;

    double at1(double a, bool* clamped = nullptr) const;
    double at2(double a, double b, bool* clamped = nullptr) const;

 private:
    std::string name_;
    std::vector<Axis> axes_;
    std::vector<double> values_;  // row-major, axis 0 slowest
    std::vector<std::size_t> strides_;
};

}  // namespace dogfight
