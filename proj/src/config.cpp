#include "mtop/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "mtop/errors.hpp"

namespace mtop {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> splitCommas(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            return out;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

double parseReal(const std::string& key, const std::string& raw) {
    std::string v = raw;
    if (!v.empty() && v[0] == '+') v = v.substr(1); // from_chars takes no sign prefix
    double d = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
        throw ConfigParse("key '" + key + "': not a number: '" + raw + "'");
    if (!std::isfinite(d))
        throw ConfigParse("key '" + key + "': not finite: '" + raw + "'");
    return d;
}

long parseCount(const std::string& key, const std::string& raw) {
    std::string v = raw;
    if (!v.empty() && v[0] == '+') v = v.substr(1);
    long n = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
        throw ConfigParse("key '" + key + "': not an integer: '" + raw + "'");
    return n;
}

Vec4 parseVec4(const std::string& key, const std::string& raw) {
    std::vector<std::string> parts = splitCommas(raw);
    if (parts.size() != 4)
        throw ConfigParse("key '" + key + "': expected 4 comma-separated reals, got " +
                          std::to_string(parts.size()));
    Vec4 out;
    for (int i = 0; i < 4; ++i) out[i] = parseReal(key, parts[i]);
    return out;
}

int parseSign(const std::string& key, const std::string& v) {
    if (v == "+" || v == "+1" || v == "1") return +1;
    if (v == "-" || v == "-1") return -1;
    throw ConfigParse("key '" + key + "': expected a sign (+1 or -1), got '" + v + "'");
}

bool parseBool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigParse("key '" + key + "': expected true or false, got '" + v + "'");
}

void validate(const RunConfig& cfg) {
    if (!(cfg.m > 0)) throw ConfigParse("key 'm': must be positive");
    if (!(cfg.m0 > 0)) throw ConfigParse("key 'm0': must be positive");
    if (!(normAbs(cfg.s, cfg.signature) > 0))
        throw ConfigParse("key 's': spin must have nonzero norm");
    const IntegratorConfig& ic = cfg.integrator;
    if (!(ic.h0 > 0)) throw ConfigParse("key 'h0': must be positive");
    if (!(ic.tolAbs > 0)) throw ConfigParse("key 'tol_abs': must be positive");
    if (!(ic.tolRel > 0)) throw ConfigParse("key 'tol_rel': must be positive");
    if (!(ic.tauEnd >= 0)) throw ConfigParse("key 'tau_end': must be nonnegative");
    if (ic.maxSteps < 1) throw ConfigParse("key 'max_steps': must be at least 1");
    if (!(ic.hMax >= 0)) throw ConfigParse("key 'h_max': must be nonnegative");
    if (cfg.out.empty()) throw ConfigParse("key 'out': must not be empty");
}

} // namespace

RunConfig parseRunConfig(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParse("line " + std::to_string(lineNo) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigParse("line " + std::to_string(lineNo) + ": empty key");
        if (!kv.emplace(key, val).second)
            throw ConfigParse("duplicate key '" + key + "'");
    }
    RunConfig cfg;
    for (const auto& [key, val] : kv) {
        if (key == "x") cfg.x = parseVec4(key, val);
        else if (key == "u") cfg.u = parseVec4(key, val);
        else if (key == "udot") cfg.udot = parseVec4(key, val);
        else if (key == "s") cfg.s = parseVec4(key, val);
        else if (key == "m") cfg.m = parseReal(key, val);
        else if (key == "m0") cfg.m0 = parseReal(key, val);
        else if (key == "A") cfg.A = parseReal(key, val);
        else if (key == "signature") {
            std::vector<std::string> parts = splitCommas(val);
            if (parts.size() != 4)
                throw ConfigParse("key 'signature': expected 4 comma-separated signs");
            for (int i = 0; i < 4; ++i)
                cfg.signature.diag[i] = parseSign(key, parts[i]);
        } else if (key == "orientation") {
            cfg.signature.orientation = parseSign(key, val);
        } else if (key == "method") {
            if (val == "rk45") cfg.integrator.method = StepMethod::Rk45Adaptive;
            else if (val == "rk4") cfg.integrator.method = StepMethod::Rk4Fixed;
            else throw ConfigParse("key 'method': expected rk45 or rk4, got '" + val + "'");
        } else if (key == "h0") cfg.integrator.h0 = parseReal(key, val);
        else if (key == "tol_abs") cfg.integrator.tolAbs = parseReal(key, val);
        else if (key == "tol_rel") cfg.integrator.tolRel = parseReal(key, val);
        else if (key == "tau_end") cfg.integrator.tauEnd = parseReal(key, val);
        else if (key == "max_steps") cfg.integrator.maxSteps = parseCount(key, val);
        else if (key == "h_max") cfg.integrator.hMax = parseReal(key, val);
        else if (key == "out") cfg.out = val;
        else if (key == "format") {
            if (val == "csv") cfg.format = OutputFormat::Csv;
            else if (val == "json") cfg.format = OutputFormat::Json;
            else throw ConfigParse("key 'format': expected csv or json, got '" + val + "'");
        } else if (key == "pirani_project") cfg.piraniProject = parseBool(key, val);
        else if (key == "pirani_enforce") cfg.piraniEnforce = parseBool(key, val);
        else throw ConfigParse("unknown key '" + key + "'");
    }
    validate(cfg);
    return cfg;
}

RunConfig loadRunConfig(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw ConfigParse("cannot read config file: " + path);
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);
    return parseRunConfig(text);
}

PreparedRun prepareRun(const RunConfig& cfg) {
    const Signature& g = cfg.signature;
    PreparedRun r;
    Vec4 s = cfg.s;
    if (cfg.piraniProject) {
        double uu = dot(cfg.u, cfg.u, g);
        if (uu == 0.0)
            throw ConfigParse("key 'u': null velocity cannot support the spin projection");
        double su = dot(s, cfg.u, g);
        s = sub(s, scale(su / uu, cfg.u));
        if (!(normAbs(s, g) > 0))
            throw ConfigParse("key 's': projection onto s.u = 0 left a zero spin");
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "projected spin onto s.u = 0: s.u was %.3e, now %.3e", su,
                      dot(s, cfg.u, g));
        r.projLog = buf;
    }
    if (cfg.piraniEnforce) {
        double rel = std::abs(dot(s, cfg.u, g)) /
                     (normAbs(s, g) * normAbs(cfg.u, g) + 1e-300);
        if (!(rel <= 1e-9)) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "key 's': |s.u|/(|s||u|) = %.3e exceeds 1e-09", rel);
            throw ConfigParse(buf);
        }
    }
    r.params = Params(cfg.m, cfg.m0, s, cfg.A, g);
    r.state = KinState{cfg.x, cfg.u, cfg.udot};
    return r;
}

} // namespace mtop
