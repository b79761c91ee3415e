#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mtop/dynamics.hpp"

namespace mtop {

enum class StepMethod { Rk4Fixed, Rk45Adaptive };

struct IntegratorConfig {
    StepMethod method = StepMethod::Rk45Adaptive;
    double h0 = 1e-3;
    double tolAbs = 1e-10;
    double tolRel = 1e-10;
    double tauEnd = 10.0;
    long maxSteps = 1000000; // bound on attempted steps, rejections included
    double hMax = 0.0;       // 0 disables the step-size cap
};

// flat first-order system y' = f(t, y)
using OdeRhs = std::function<std::vector<double>(double, const std::vector<double>&)>;

// accepted steps with derivatives, enough for cubic Hermite dense output
struct OdeResult {
    std::vector<double> t;
    std::vector<std::vector<double>> y;
    std::vector<std::vector<double>> dy;
};

OdeResult solveOde(const OdeRhs& f, const std::vector<double>& y0,
                   const IntegratorConfig& cfg);

// cubic Hermite evaluation; t clamped to the covered range
std::vector<double> sampleHermite(const OdeResult& r, double t);

struct TrajectorySample {
    double tau = 0;
    KinState st;
    Vec4 adot{}; // recorded RHS value, slope of st.a
    double firstIntegral = 0;
    double pirani = 0;
    double residualNorm = 0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
};

using Rhs = std::function<Vec4(const KinState&, const Params&)>;

// the 12-dimensional flow xdot = u, udot = a, adot = rhs(x, u, a)
Trajectory integrate(const Rhs& rhs, const KinState& y0, const Params& p,
                     const IntegratorConfig& cfg);

// cubic Hermite state at tau
KinState sampleTrajectory(const Trajectory& tr, double tau);

// same world line relabeled so dot(u,u) = 1 at every sample; u, a, adot get the
// chain-rule jet transform, scalar diagnostics carry over unchanged
Trajectory properTimeReparametrize(const Trajectory& tr, const Signature& g);

struct DiagnosticsSummary {
    double maxFirstIntegralDrift = 0;
    double maxPiraniDrift = 0;
    double maxResidualNorm = 0;
    std::size_t samples = 0;
};

// drifts are measured against the first sample
DiagnosticsSummary diagnosticsSummary(const Trajectory& tr);

} // namespace mtop
