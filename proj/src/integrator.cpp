#include "mtop/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mtop {

namespace {

using DVec = std::vector<double>;

DVec axpy(const DVec& y, double h, const DVec& k) {
    DVec r = y;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += h * k[i];
    return r;
}

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.h0 > 0) || !(cfg.tolAbs > 0) || !(cfg.tolRel > 0) || cfg.maxSteps < 1 ||
        !(cfg.tauEnd >= 0) || cfg.hMax < 0)
        throw ConfigParse("integrator config: positive steps and tolerances required");
}

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

struct StepOut {
    DVec y5;
    DVec k7; // FSAL slope at the new point
    double err = 0;
};

StepOut dp54Step(const OdeRhs& f, double t, const DVec& y, const DVec& k1, double h,
                 double tolAbs, double tolRel) {
    const std::size_t n = y.size();
    DVec k2 = f(t + c2 * h, axpy(y, h * a21, k1));
    DVec y3(n), y4(n), y5in(n), y6in(n);
    for (std::size_t i = 0; i < n; ++i)
        y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    DVec k3 = f(t + c3 * h, y3);
    for (std::size_t i = 0; i < n; ++i)
        y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    DVec k4 = f(t + c4 * h, y4);
    for (std::size_t i = 0; i < n; ++i)
        y5in[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    DVec k5 = f(t + c5 * h, y5in);
    for (std::size_t i = 0; i < n; ++i)
        y6in[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                              a65 * k5[i]);
    DVec k6 = f(t + h, y6in);

    StepOut out;
    out.y5.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);
    out.k7 = f(t + h, out.y5);

    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * out.k7[i]);
        double sc = tolAbs + tolRel * std::max(std::abs(y[i]), std::abs(out.y5[i]));
        acc += (e / sc) * (e / sc);
    }
    out.err = std::sqrt(acc / double(n));
    return out;
}

void rk4Fixed(const OdeRhs& f, const DVec& y0, const IntegratorConfig& cfg,
              OdeResult& out) {
    double t = 0;
    DVec y = y0;
    long steps = 0;
    while (t < cfg.tauEnd) {
        double h = std::min(cfg.h0, cfg.tauEnd - t);
        if (++steps > cfg.maxSteps)
            throw MaxStepsExceeded("rk4: step budget exhausted");
        DVec k1 = f(t, y);
        out.t.push_back(t);
        out.y.push_back(y);
        out.dy.push_back(k1);
        DVec k2 = f(t + h / 2, axpy(y, h / 2, k1));
        DVec k3 = f(t + h / 2, axpy(y, h / 2, k2));
        DVec k4 = f(t + h, axpy(y, h, k3));
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t += h;
    }
    out.t.push_back(t);
    out.y.push_back(y);
    out.dy.push_back(f(t, y));
}

void dp54Adaptive(const OdeRhs& f, const DVec& y0, const IntegratorConfig& cfg,
                  OdeResult& out) {
    double t = 0;
    DVec y = y0;
    DVec k1 = f(t, y);
    out.t.push_back(t);
    out.y.push_back(y);
    out.dy.push_back(k1);

    double h = cfg.h0;
    if (cfg.hMax > 0) h = std::min(h, cfg.hMax);
    double errPrev = 1.0;
    long attempts = 0;
    while (t < cfg.tauEnd) {
        h = std::min(h, cfg.tauEnd - t);
        if (h < 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw StepUnderflow("rk45: step size collapsed at tau = " + std::to_string(t));
        if (++attempts > cfg.maxSteps)
            throw MaxStepsExceeded("rk45: step budget exhausted");

        StepOut s = dp54Step(f, t, y, k1, h, cfg.tolAbs, cfg.tolRel);
        if (!std::isfinite(s.err) || s.err > 1.0) {
            double fac = std::isfinite(s.err) ? 0.9 * std::pow(s.err, -0.2) : 0.2;
            h *= std::clamp(fac, 0.2, 0.9);
            continue;
        }
        t += h;
        y = s.y5;
        k1 = s.k7;
        out.t.push_back(t);
        out.y.push_back(y);
        out.dy.push_back(k1);

        double err = std::max(s.err, 1e-10);
        double fac = 0.9 * std::pow(err, -0.14) * std::pow(errPrev, 0.08);
        errPrev = err;
        h *= std::clamp(fac, 0.2, 5.0);
        if (cfg.hMax > 0) h = std::min(h, cfg.hMax);
    }
}

} // namespace

OdeResult solveOde(const OdeRhs& f, const DVec& y0, const IntegratorConfig& cfg) {
    validate(cfg);
    OdeResult out;
    if (cfg.method == StepMethod::Rk4Fixed)
        rk4Fixed(f, y0, cfg, out);
    else
        dp54Adaptive(f, y0, cfg, out);
    return out;
}

std::vector<double> sampleHermite(const OdeResult& r, double t) {
    if (r.t.empty()) throw EmptyTrajectory("sampleHermite: no samples");
    if (t <= r.t.front()) return r.y.front();
    if (t >= r.t.back()) return r.y.back();
    auto hi = std::upper_bound(r.t.begin(), r.t.end(), t);
    std::size_t i1 = std::size_t(hi - r.t.begin());
    std::size_t i0 = i1 - 1;
    double h = r.t[i1] - r.t[i0];
    double u = (t - r.t[i0]) / h;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    double h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u);
    double h11 = u * u * (u - 1);
    DVec out(r.y[i0].size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = h00 * r.y[i0][k] + h * h10 * r.dy[i0][k] + h01 * r.y[i1][k] +
                 h * h11 * r.dy[i1][k];
    return out;
}

namespace {

DVec packState(const KinState& st) {
    DVec y(12);
    for (int i = 0; i < 4; ++i) {
        y[i] = st.x[i];
        y[4 + i] = st.u[i];
        y[8 + i] = st.a[i];
    }
    return y;
}

KinState unpackState(const DVec& y) {
    KinState st;
    for (int i = 0; i < 4; ++i) {
        st.x[i] = y[i];
        st.u[i] = y[4 + i];
        st.a[i] = y[8 + i];
    }
    return st;
}

TrajectorySample makeSample(double tau, const KinState& st, const Vec4& adot,
                            const Params& p) {
    TrajectorySample s;
    s.tau = tau;
    s.st = st;
    s.adot = adot;
    s.firstIntegral = firstIntegral(st.u, p);
    s.pirani = dot(p.s, st.u, p.g) / (normAbs(p.s, p.g) * normAbs(st.u, p.g));
    s.residualNorm = maxAbs(residualEulerPoisson(Jet3{st, adot}, p));
    return s;
}

} // namespace

Trajectory integrate(const Rhs& rhs, const KinState& y0, const Params& p,
                     const IntegratorConfig& cfg) {
    double tauSeen = 0;
    OdeRhs f = [&](double tau, const DVec& y) {
        tauSeen = std::max(tauSeen, tau);
        KinState st = unpackState(y);
        DVec dy(12);
        for (int i = 0; i < 4; ++i) {
            dy[i] = st.u[i];
            dy[4 + i] = st.a[i];
        }
        Vec4 xi = rhs(st, p);
        for (int i = 0; i < 4; ++i) dy[8 + i] = xi[i];
        return dy;
    };

    OdeResult r;
    try {
        r = solveOde(f, packState(y0), cfg);
    } catch (const ChartExit&) {
        throw;
    } catch (const StepUnderflow&) {
        throw;
    } catch (const MaxStepsExceeded&) {
        throw;
    } catch (const ConfigParse&) {
        throw;
    } catch (const Error& e) {
        throw ChartExit(std::string("integrate: ") + e.what(), tauSeen);
    }

    Trajectory tr;
    tr.samples.reserve(r.t.size());
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        KinState st = unpackState(r.y[i]);
        Vec4 adot{r.dy[i][8], r.dy[i][9], r.dy[i][10], r.dy[i][11]};
        tr.samples.push_back(makeSample(r.t[i], st, adot, p));
    }
    return tr;
}

KinState sampleTrajectory(const Trajectory& tr, double tau) {
    if (tr.samples.empty()) throw EmptyTrajectory("sampleTrajectory: no samples");
    const auto& ss = tr.samples;
    if (tau <= ss.front().tau) return ss.front().st;
    if (tau >= ss.back().tau) return ss.back().st;
    auto hi = std::upper_bound(ss.begin(), ss.end(), tau,
                               [](double v, const TrajectorySample& s) { return v < s.tau; });
    std::size_t i1 = std::size_t(hi - ss.begin());
    std::size_t i0 = i1 - 1;
    double h = ss[i1].tau - ss[i0].tau;
    double u = (tau - ss[i0].tau) / h;
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    double h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u);
    double h11 = u * u * (u - 1);
    auto hermite = [&](const Vec4& y0, const Vec4& d0, const Vec4& y1, const Vec4& d1) {
        Vec4 out;
        for (int k = 0; k < 4; ++k)
            out[k] = h00 * y0[k] + h * h10 * d0[k] + h01 * y1[k] + h * h11 * d1[k];
        return out;
    };
    KinState st;
    st.x = hermite(ss[i0].st.x, ss[i0].st.u, ss[i1].st.x, ss[i1].st.u);
    st.u = hermite(ss[i0].st.u, ss[i0].st.a, ss[i1].st.u, ss[i1].st.a);
    st.a = hermite(ss[i0].st.a, ss[i0].adot, ss[i1].st.a, ss[i1].adot);
    return st;
}

Trajectory properTimeReparametrize(const Trajectory& tr, const Signature& g) {
    if (tr.samples.empty()) throw EmptyTrajectory("properTimeReparametrize: no samples");
    const auto& ss = tr.samples;
    for (const auto& s : ss)
        if (dot(s.st.u, s.st.u, g) <= 0)
            throw NotTimelike("properTimeReparametrize: u is not timelike");

    // arc length on each interval by Simpson with a Hermite midpoint
    std::vector<double> arc(ss.size(), 0.0);
    for (std::size_t i = 1; i < ss.size(); ++i) {
        double dt = ss[i].tau - ss[i - 1].tau;
        double mid = 0.5 * (ss[i].tau + ss[i - 1].tau);
        KinState m = sampleTrajectory(tr, mid);
        double w0 = normAbs(ss[i - 1].st.u, g);
        double wm = normAbs(m.u, g);
        double w1 = normAbs(ss[i].st.u, g);
        arc[i] = arc[i - 1] + dt / 6 * (w0 + 4 * wm + w1);
    }

    Trajectory out;
    out.samples.reserve(ss.size());
    for (std::size_t i = 0; i < ss.size(); ++i) {
        const KinState& st = ss[i].st;
        const Vec4& ad = ss[i].adot;
        double W = normAbs(st.u, g);
        double uu = dot(st.u, st.u, g);
        double ua = dot(st.u, st.a, g);
        double Wp = ua / W;                                              // dW/dtau
        double Wpp = (dot(st.a, st.a, g) + dot(st.u, ad, g)) / W - ua * ua / (W * uu);
        double t1 = 1 / W;                                               // dtau/ds
        double t2 = -Wp / (W * W * W);
        double t3 = (3 * Wp * Wp / W - Wpp) / (W * W * W * W);
        TrajectorySample ns = ss[i];
        ns.tau = arc[i];
        ns.st.u = scale(t1, st.u);
        ns.st.a = add(scale(t1 * t1, st.a), scale(t2, st.u));
        ns.adot = add(add(scale(t1 * t1 * t1, ad), scale(3 * t1 * t2, st.a)),
                      scale(t3, st.u));
        out.samples.push_back(ns);
    }
    return out;
}

DiagnosticsSummary diagnosticsSummary(const Trajectory& tr) {
    if (tr.samples.empty()) throw EmptyTrajectory("diagnosticsSummary: no samples");
    DiagnosticsSummary d;
    d.samples = tr.samples.size();
    double fi0 = tr.samples.front().firstIntegral;
    double pi0 = tr.samples.front().pirani;
    for (const auto& s : tr.samples) {
        d.maxFirstIntegralDrift = std::max(d.maxFirstIntegralDrift,
                                           std::abs(s.firstIntegral - fi0));
        d.maxPiraniDrift = std::max(d.maxPiraniDrift, std::abs(s.pirani - pi0));
        d.maxResidualNorm = std::max(d.maxResidualNorm, s.residualNorm);
    }
    return d;
}

} // namespace mtop
