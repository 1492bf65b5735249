#pragma once

#include <stdexcept>
#include <string>

namespace dogfight {

// Base for all library errors; messages are prefixed with the module that
// raised them so CLI output stays attributable.
class SimError : public std::runtime_error {
 public:
    SimError(const std::string& module, const std::string& what)
        : std::runtime_error(module + ": " + what) {}
};

// Euler kinematics evaluated too close to |pitch| = 90 deg.
class SingularAttitudeError : public SimError {
 public:
    explicit SingularAttitudeError(double cos_theta)
        : SimError("airframe", "euler rates singular, |cos theta| = " + std::to_string(cos_theta)) {}
};

class ZeroVelocityError : public SimError {
 public:
    ZeroVelocityError() : SimError("airframe", "air data requested at zero velocity") {}
};

// Integration produced NaN/Inf; the episode treats the aircraft as lost.
class NonFiniteStateError : public SimError {
 public:
    explicit NonFiniteStateError(const std::string& where)
        : SimError("airframe", "non-finite state after " + where) {}
};

class CoincidentPositionError : public SimError {
 public:
    explicit CoincidentPositionError(const std::string& module)
        : SimError(module, "aircraft positions coincide (separation < 1 m)") {}
};

class NoConvergenceError : public SimError {
 public:
    NoConvergenceError(const std::string& module, double residual)
        : SimError(module, "search did not converge, residual = " + std::to_string(residual)),
          residual_(residual) {}
    double residual() const { return residual_; }

 private:
    double residual_;
};

class ContractViolation : public SimError {
 public:
    ContractViolation(const std::string& module, const std::string& what)
        : SimError(module, what) {}
};

class DataError : public SimError {
 public:
    DataError(const std::string& module, const std::string& what) : SimError(module, what) {}
};

}  // namespace dogfight
