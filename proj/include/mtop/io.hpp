#pragma once

#include <string>

#include "mtop/config.hpp"
#include "mtop/integrator.hpp"

namespace mtop {

// shortest decimal that parses back to the same double
std::string shortestDouble(double v);

// header row plus one row per sample; columns:
// tau, x0..x3, u0..u3, a0..a3, first_integral, pirani, residual_norm
std::string toCsv(const Trajectory& tr);

// sample records mirroring the CSV fields, under a metadata header carrying
// the config echo, artifact version, signature, and orientation
std::string toJson(const Trajectory& tr, const RunConfig& cfg);

// throws Error when the file cannot be written
void writeFile(const std::string& path, const std::string& content);

// throws ConfigParse when the file cannot be read
std::string readFile(const std::string& path);

} // namespace mtop
