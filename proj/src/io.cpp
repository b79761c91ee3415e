#include "mtop/io.hpp"

#include <charconv>
#include <cstdio>

#include "json.hpp"

#include "mtop/errors.hpp"
#include "mtop/version.hpp"

namespace mtop {

std::string shortestDouble(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec; // 40 chars always fit the shortest form
    return std::string(buf, p);
}

std::string toCsv(const Trajectory& tr) {
    std::string out = "tau,x0,x1,x2,x3,u0,u1,u2,u3,a0,a1,a2,a3,"
                      "first_integral,pirani,residual_norm\n";
    for (const TrajectorySample& s : tr.samples) {
        out += shortestDouble(s.tau);
        for (int i = 0; i < 4; ++i) out += "," + shortestDouble(s.st.x[i]);
        for (int i = 0; i < 4; ++i) out += "," + shortestDouble(s.st.u[i]);
        for (int i = 0; i < 4; ++i) out += "," + shortestDouble(s.st.a[i]);
        out += "," + shortestDouble(s.firstIntegral);
        out += "," + shortestDouble(s.pirani);
        out += "," + shortestDouble(s.residualNorm);
        out += "\n";
    }
    return out;
}

std::string toJson(const Trajectory& tr, const RunConfig& cfg) {
    nlohmann::json echo;
    echo["x"] = cfg.x;
    echo["u"] = cfg.u;
    echo["udot"] = cfg.udot;
    echo["s"] = cfg.s;
    echo["m"] = cfg.m;
    echo["m0"] = cfg.m0;
    echo["A"] = cfg.A;
    echo["signature"] = cfg.signature.diag;
    echo["orientation"] = cfg.signature.orientation;
    echo["method"] =
        cfg.integrator.method == StepMethod::Rk4Fixed ? "rk4" : "rk45";
    echo["h0"] = cfg.integrator.h0;
    echo["tol_abs"] = cfg.integrator.tolAbs;
    echo["tol_rel"] = cfg.integrator.tolRel;
    echo["tau_end"] = cfg.integrator.tauEnd;
    echo["max_steps"] = cfg.integrator.maxSteps;
    echo["h_max"] = cfg.integrator.hMax;
    echo["pirani_project"] = cfg.piraniProject;
    echo["pirani_enforce"] = cfg.piraniEnforce;
    echo["out"] = cfg.out;
    echo["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";

    nlohmann::json meta;
    meta["version"] = kVersion;
    meta["signature"] = cfg.signature.diag;
    meta["orientation"] = cfg.signature.orientation;
    meta["config"] = echo;

    nlohmann::json samples = nlohmann::json::array();
    for (const TrajectorySample& s : tr.samples) {
        nlohmann::json r;
        r["tau"] = s.tau;
        for (int i = 0; i < 4; ++i) {
            r["x" + std::to_string(i)] = s.st.x[i];
            r["u" + std::to_string(i)] = s.st.u[i];
            r["a" + std::to_string(i)] = s.st.a[i];
        }
        r["first_integral"] = s.firstIntegral;
        r["pirani"] = s.pirani;
        r["residual_norm"] = s.residualNorm;
        samples.push_back(r);
    }

    nlohmann::json root;
    root["metadata"] = meta;
    root["samples"] = samples;
    return root.dump(2) + "\n";
}

void writeFile(const std::string& path, const std::string& content) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot write file: " + path);
    size_t n = std::fwrite(content.data(), 1, content.size(), f);
    if (std::fclose(f) != 0 || n != content.size())
        throw Error("cannot write file: " + path);
}

std::string readFile(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw ConfigParse("cannot read file: " + path);
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);
    return text;
}

} // namespace mtop
