#include "dogfight/table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dogfight/error.hpp"

namespace dogfight {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

Table::Table(std::string name, std::vector<Axis> axes, std::vector<double> values)
    : name_(std::move(name)), axes_(std::move(axes)), values_(std::move(values)) {
    std::size_t expected = 1;
    for (const auto& axis : axes_) {
        if (axis.breakpoints.empty())
            throw DataError("table", "axis '" + axis.name + "' of '" + name_ + "' has no breakpoints");
        for (std::size_t i = 1; i < axis.breakpoints.size(); ++i) {
            if (!(axis.breakpoints[i] > axis.breakpoints[i - 1]))
                throw DataError("table", "axis '" + axis.name + "' of '" + name_ +
                                             "' is not strictly increasing");
        }
        expected *= axis.breakpoints.size();
    }
    if (axes_.empty() || values_.size() != expected)
        throw DataError("table", "value count mismatch in table '" + name_ + "'");

    strides_.assign(axes_.size(), 1);
    for (int i = static_cast<int>(axes_.size()) - 2; i >= 0; --i)
        strides_[i] = strides_[i + 1] * axes_[i + 1].breakpoints.size();
}

double Table::value_at_index(std::span<const std::size_t> idx) const {
    std::size_t flat = 0;
    for (std::size_t d = 0; d < axes_.size(); ++d) flat += idx[d] * strides_[d];
    return values_[flat];
}

double Table::at(std::span<const double> coords, bool* clamped) const {
    if (coords.size() != axes_.size())
        throw DataError("table", "dimension mismatch querying '" + name_ + "'");

    constexpr std::size_t kMaxDims = 4;
    if (axes_.size() > kMaxDims)
        throw DataError("table", "table '" + name_ + "' exceeds supported dimensionality");

    std::size_t lo[kMaxDims];
    double frac[kMaxDims];
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        const auto& bp = axes_[d].breakpoints;
        double c = coords[d];
        if (c <= bp.front()) {
            if (clamped && c < bp.front()) *clamped = true;
            lo[d] = 0;
            frac[d] = 0.0;
        } else if (c >= bp.back()) {
            if (clamped && c > bp.back()) *clamped = true;
            lo[d] = bp.size() - 1;
            frac[d] = 0.0;
        } else {
            const auto it = std::upper_bound(bp.begin(), bp.end(), c);
            lo[d] = static_cast<std::size_t>(it - bp.begin()) - 1;
            frac[d] = (c - bp[lo[d]]) / (bp[lo[d] + 1] - bp[lo[d]]);
        }
    }

    // Blend the 2^n cell corners.
    const std::size_t dims = axes_.size();
    double acc = 0.0;
    for (std::size_t corner = 0; corner < (1u << dims); ++corner) {
        double weight = 1.0;
        std::size_t flat = 0;
        for (std::size_t d = 0; d < dims; ++d) {
            const bool high = corner & (1u << d);
            if (high) {
                if (frac[d] == 0.0) { weight = 0.0; break; }
                weight *= frac[d];
                flat += (lo[d] + 1) * strides_[d];
            } else {
                weight *= 1.0 - frac[d];
                flat += lo[d] * strides_[d];
            }
        }
        if (weight != 0.0) acc += weight * values_[flat];
    }
    return acc;
}

double Table::at1(double a, bool* clamped) const {
    const double c[1] = {a};
    return at(c, clamped);
}

double Table::at2(double a, double b, bool* clamped) const {
    const double c[2] = {a, b};
    return at(c, clamped);
}

Table Table::load_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("table", "cannot open '" + file.string() + "'");

    std::string name;
    std::vector<Axis> axes;
    std::vector<double> values;
    bool in_data = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        const auto err = [&](const std::string& what) {
            return DataError("table", file.string() + ":" + std::to_string(lineno) + ": " + what);
        };

        if (!in_data) {
            const auto fields = split_csv(line);
            if (fields[0] == "name" && fields.size() >= 2) {
                name = fields[1];
            } else if (fields[0] == "axis") {
                if (fields.size() < 4) throw err("axis needs a name, unit and breakpoints");
                Axis axis;
                axis.name = fields[1];
                axis.unit = fields[2];
                for (std::size_t i = 3; i < fields.size(); ++i)
                    axis.breakpoints.push_back(std::stod(fields[i]));
                axes.push_back(std::move(axis));
            } else if (fields[0] == "data") {
                in_data = true;
            } else {
                throw err("unexpected line '" + line + "'");
            }
        } else {
            for (const auto& f : split_csv(line)) {
                if (!f.empty()) values.push_back(std::stod(f));
            }
        }
    }
    if (name.empty()) throw DataError("table", file.string() + ": missing table name");
    return Table(std::move(name), std::move(axes), std::move(values));
}

}  // namespace dogfight
