#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace mtop {

// All library errors derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Velocity with zero norm; direction-dependent quantities are undefined.
struct ZeroVelocity : Error {
    explicit ZeroVelocity(const std::string& what) : Error(what) {}
};

// Spin vector with zero norm, or a spin/velocity pair with degenerate wedge.
struct DegenerateSpin : Error {
    explicit DegenerateSpin(const std::string& what) : Error(what) {}
};

// s.u != 0 where the transversality constraint is required.
struct PiraniViolated : Error {
    explicit PiraniViolated(const std::string& what) : Error(what) {}
};

// Matrix fails the metric-preservation test.
struct NotLorentz : Error {
    explicit NotLorentz(const std::string& what) : Error(what) {}
};

// Matrix fails the antisymmetry test.
struct NotSkew : Error {
    explicit NotSkew(const std::string& what) : Error(what) {}
};

// Denominator of a chart formula vanished (contact chart or bracket).
struct SingularChart : Error {
    explicit SingularChart(const std::string& what) : Error(what) {}
};

// Reparametrization with vanishing or sign-changing derivative.
struct SingularParametrization : Error {
    explicit SingularParametrization(const std::string& what) : Error(what) {}
};

// Worldline direction not timelike where a timelike one is required.
struct NotTimelike : Error {
    explicit NotTimelike(const std::string& what) : Error(what) {}
};

// Trajectory with no samples.
struct EmptyTrajectory : Error {
    explicit EmptyTrajectory(const std::string& what) : Error(what) {}
};

// Adaptive integrator drove the step below the floor.
struct StepUnderflow : Error {
    explicit StepUnderflow(const std::string& what) : Error(what) {}
};

// Adaptive integrator exceeded its step budget.
struct MaxStepsExceeded : Error {
    explicit MaxStepsExceeded(const std::string& what) : Error(what) {}
};

// Config file could not be parsed.
struct ConfigParse : Error {
    explicit ConfigParse(const std::string& what) : Error(what) {}
};

// A probe or RHS evaluation left the valid chart; tau set when known.
struct ChartExit : Error {
    explicit ChartExit(const std::string& what,
                       double tau = std::numeric_limits<double>::quiet_NaN())
        : Error(what), tau(tau) {}
    double tau;
};

} // namespace mtop
