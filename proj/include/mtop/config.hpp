#pragma once

#include <string>

#include "mtop/dynamics.hpp"
#include "mtop/integrator.hpp"

namespace mtop {

enum class OutputFormat { Csv, Json };

// one simulation run, as read from a flat key = value file
struct RunConfig {
    Vec4 x{};
    Vec4 u{1.0, 0.0, 0.0, 0.0};
    Vec4 udot{};
    Vec4 s{0.0, 0.0, 1.0, 0.0};
    double m = 1.0;
    double m0 = 1.0;
    double A = 0.0;
    Signature signature = Signature::minkowski();
    IntegratorConfig integrator;
    bool piraniProject = false;
    bool piraniEnforce = false;
    std::string out = "trajectory.csv";
    OutputFormat format = OutputFormat::Csv;
};

// `key = value` lines, # comments, vectors as comma-separated reals;
// throws ConfigParse naming the offending key or line
RunConfig parseRunConfig(const std::string& text);
RunConfig loadRunConfig(const std::string& path);

struct PreparedRun {
    Params params;
    KinState state;
    std::string projLog; // set when pirani_project moved the spin
};

// applies pirani_project, then the pirani_enforce bound
// |s.u|/(|s||u|) <= 1e-9; throws ConfigParse on violation
PreparedRun prepareRun(const RunConfig& cfg);

} // namespace mtop
