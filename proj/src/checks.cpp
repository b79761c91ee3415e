#include "mtop/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <random>
#include <vector>

#include "mtop/dynamics.hpp"
#include "mtop/errors.hpp"
#include "mtop/integrator.hpp"
#include "mtop/minkowski.hpp"
#include "mtop/symmetry.hpp"
#include "mtop/variational.hpp"

namespace mtop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double urand(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    int pick(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
    Vec4 randVec(double cap = 1.0) {
        return {urand(-cap, cap), urand(-cap, cap), urand(-cap, cap), urand(-cap, cap)};
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Params randParams(Rng& rng, const Signature& g) {
    while (true) {
        Vec4 s = rng.randVec();
        if (normAbs(s, g) < 0.5) continue;
        return Params(rng.urand(0.5, 2.0), rng.urand(0.5, 2.0), s, 0.0, g);
    }
}

KinState randState(Rng& rng, const Params& p, double uCap = 1.0) {
    while (true) {
        KinState st{rng.randVec(), rng.randVec(uCap), rng.randVec()};
        if (normAbs(st.u, p.g) < 0.5) continue;
        if (wedgeNormAbs(p.s, st.u, p.g) < 0.3) continue;
        return st;
    }
}

Vec4 project(const Vec4& v, const Vec4& n, const Signature& g) {
    return sub(v, scale(dot(v, n, g) / dot(n, n, g), n));
}

// transversal spin, transversal bounded acceleration; the conserved pair
// (s.u, s.a) starts at zero exactly
KinState randPiraniState(Rng& rng, Params& p, double A, const Signature& g,
                         double accel) {
    Vec4 u, s, a;
    do {
        u = rng.randVec(0.4);
        u[0] = 1.0;
    } while (dot(u, u, g) <= 0.25);
    u = scale(1.0 / normAbs(u, g), u);
    do {
        s = project(rng.randVec(), u, g);
    } while (normAbs(s, g) < 0.5);
    do {
        a = project(project(rng.randVec(), u, g), s, g);
    } while (normAbs(a, g) < 0.1);
    a = scale(accel / normAbs(a, g), a);
    p = Params(1.3, 1.3, s, A, g);
    KinState st;
    st.x = rng.randVec();
    st.u = u;
    st.a = a;
    return st;
}

// relative size of the alpha-chart denominator of the homogeneous family
double chartMargin(int alpha, const KinState& st, const Params& p) {
    Vec4 e{};
    e[alpha] = 1.0;
    double ue = dot(st.u, e, p.g), se = dot(p.s, e, p.g);
    Vec4 w = sub(scale(ue, p.s), scale(se, st.u));
    double ww = dot(w, w, p.g);
    double wedge = wedgeNormSq(p.s, st.u, p.g);
    return std::abs(ww - wedge) / (std::abs(ww) + std::abs(wedge) + 1e-300);
}

ScalarField2 bindHomogeneous(int alpha, const Params& p) {
    return [alpha, p](const Vec4& x, const Vec4& u, const Vec4& ud) {
        KinState st{x, u, ud};
        return lagrangianHomogeneous(alpha, st, p);
    };
}

// |component of a off the b direction| / |a|, plain R^4 components
double sinAngle(const Vec4& a, const Vec4& b) {
    double ab = 0, bb = 0, aa = 0;
    for (int i = 0; i < 4; ++i) {
        ab += a[i] * b[i];
        bb += b[i] * b[i];
        aa += a[i] * a[i];
    }
    double r = ab / bb;
    double d2 = 0;
    for (int i = 0; i < 4; ++i) {
        double d = a[i] - r * b[i];
        d2 += d * d;
    }
    return std::sqrt(d2 / aa);
}

Vec4 autoparallelField(const KinState& st, const Params& p) {
    return autoparallelRHS(st, p);
}

// Richardson pair over the stencil width; the plain stencil error is O(h^2).
// rel reports the relative stencil disagreement, an a-posteriori error
// estimate callers gate on before trusting the digits.
Vec4 eulerLagrangeR(const ScalarField2& L, const Jet4& j, double& rel) {
    Vec4 e1 = eulerLagrangeFD(L, j, 1e-5);
    Vec4 e2 = eulerLagrangeFD(L, j, 2e-5);
    Vec4 r = scale(1.0 / 3.0, sub(scale(4.0, e1), e2));
    rel = norm2(sub(e1, e2)) / (3.0 * norm2(r) + 1e-300);
    return r;
}

} // namespace

CheckResult checkVariationality(std::uint64_t seed) {
    Rng rng(seed ^ 0x56415249u);
    const Signature g = Signature::euclidean();
    const int need = 200;
    std::array<int, 4> count{};
    double worstAngle = 0;
    double rMin = kInf, rMax = -kInf, rSum = 0;
    long rN = 0, attempts = 0;
    while (count[0] < need || count[1] < need || count[2] < need ||
           count[3] < need) {
        if (++attempts > 40000) break;
        Params p = randParams(rng, g);
        KinState st = randState(rng, p, 0.8);
        Jet3 j3{st, rng.randVec()};
        Vec4 ep;
        try {
            ep = residualEulerPoisson(j3, p);
        } catch (const Error&) {
            continue;
        }
        double sc = eulerPoissonScale(j3, p);
        if (maxAbs(ep) / sc < 0.2) continue; // keep the FD comparison conditioned
        Jet4 j4{st.x, st.u, st.a, j3.j, rng.randVec()};
        for (int alpha = 0; alpha < 4; ++alpha) {
            if (count[alpha] >= need) continue;
            if (chartMargin(alpha, st, p) < 0.4) continue;
            Vec4 efd;
            double fdRel;
            try {
                efd = eulerLagrangeR(bindHomogeneous(alpha, p), j4, fdRel);
            } catch (const Error&) {
                continue;
            }
            if (fdRel > 1e-6) continue; // stencil digits not trustworthy here
            double epep = 0, epefd = 0;
            for (int k = 0; k < 4; ++k) {
                epep += ep[k] * ep[k];
                epefd += ep[k] * efd[k];
            }
            double r = epefd / epep;
            worstAngle = std::max(worstAngle, sinAngle(efd, ep));
            rMin = std::min(rMin, r);
            rMax = std::max(rMax, r);
            rSum += r;
            ++rN;
            ++count[alpha];
        }
    }
    bool complete = count[0] >= need && count[1] >= need && count[2] >= need &&
                    count[3] >= need;
    double rMean = rN > 0 ? rSum / rN : 0;
    double spread = rN > 0 ? (rMax - rMin) / std::abs(rMean) : kInf;
    CheckResult res;
    res.name = "variationality";
    res.measured = std::max(worstAngle, spread);
    res.tolerance = 1e-6;
    res.pass = complete && worstAngle <= 1e-6 && spread <= 1e-6;
    res.detail = "FD extremal covector aligns with the closed form on 200 jets "
                 "per chart; angle " +
                 num(worstAngle) + ", ratio " + num(rMean) + " with spread " +
                 num(spread) +
                 "; convention: all-plus metric, orientation +1, constant +1";
    if (!complete) res.detail += "; sample budget exhausted";
    return res;
}

CheckResult checkZermelo(std::uint64_t seed) {
    Rng rng(seed ^ 0x5a45524du);
    const Signature g = Signature::euclidean();
    const double lams[5] = {0.6, 0.8, 1.0, 1.25, 1.5};
    const double mus[5] = {-0.4, -0.2, 0.0, 0.2, 0.4};
    const int need = 200;
    std::array<int, 4> count{};
    double worstR = 0, worstF = 0;
    long attempts = 0;
    while (count[0] < need || count[1] < need || count[2] < need ||
           count[3] < need) {
        if (++attempts > 40000) break;
        Params p = randParams(rng, g);
        KinState st = randState(rng, p);
        for (int alpha = 0; alpha < 4; ++alpha) {
            if (count[alpha] >= need) continue;
            if (chartMargin(alpha, st, p) < 0.3) continue;
            ScalarField2 L = bindHomogeneous(alpha, p);
            double L0, wf = 0;
            ZermeloResiduals r;
            try {
                L0 = L(st.x, st.u, st.a);
                r = zermeloCheck(L, st);
                for (double lam : lams)
                    for (double mu : mus)
                        wf = std::max(wf, std::abs(zermeloFinite(L, st, lam, mu)));
            } catch (const Error&) {
                continue;
            }
            double sc = std::abs(L0) + 1;
            worstR = std::max({worstR, std::abs(r.r1) / sc, std::abs(r.r2) / sc});
            worstF = std::max(worstF, wf / sc);
            ++count[alpha];
        }
    }
    bool complete = count[0] >= need && count[1] >= need && count[2] >= need &&
                    count[3] >= need;
    CheckResult res;
    res.name = "zermelo-invariance";
    res.measured = worstR;
    res.tolerance = 1e-8;
    res.pass = complete && worstR <= 1e-8 && worstF <= 1e-9;
    res.detail = "degree-one homogeneity identities on 200 states per chart " +
                 num(worstR) + "; finite reparametrizations on a 5x5 "
                 "(scale, shear) grid " +
                 num(worstF) + " against 1e-09";
    if (!complete) res.detail += "; sample budget exhausted";
    return res;
}

CheckResult checkAutoparallelConditions(std::uint64_t seed) {
    Rng rng(seed ^ 0x4155544fu);
    const Signature g = Signature::euclidean();
    double worst = 0;
    bool complete = true;
    for (double A : {0.0, 0.5, 1.0}) {
        int done = 0;
        long attempts = 0;
        while (done < 100 && ++attempts <= 10000) {
            Params p = randParams(rng, g);
            p.A = A;
            KinState st = randState(rng, p);
            RhsField xi = [&p](const KinState& s) { return autoparallelRHS(s, p); };
            AutoparallelCheck r;
            double sc;
            try {
                r = autoparallelConditionCheck(xi, st);
                sc = maxAbs(autoparallelRHS(st, p)) + maxAbs(st.a) + 1;
            } catch (const Error&) {
                continue;
            }
            worst = std::max({worst, maxAbs(r.c1) / sc, maxAbs(r.c2) / sc,
                              std::abs(r.kappa) / sc, std::abs(r.mu) / sc});
            ++done;
        }
        complete = complete && done >= 100;
    }
    CheckResult res;
    res.name = "autoparallel-conditions";
    res.measured = worst;
    res.tolerance = 1e-6;
    res.pass = complete && worst <= 1e-6;
    res.detail = "commutation and closure defects of the connection field, "
                 "relative to field scale; gauge constants 0, 0.5, 1 with 100 "
                 "states each";
    if (!complete) res.detail += "; sample budget exhausted";
    return res;
}

CheckResult checkClosure(std::uint64_t seed) {
    Rng rng(seed ^ 0x434c4f53u);
    const Signature g = Signature::euclidean();
    const double As[3] = {0.0, 0.5, 1.0};
    double worst = 0;
    int done = 0;
    long attempts = 0;
    while (done < 200 && ++attempts <= 20000) {
        Vec4 u = rng.randVec();
        if (normAbs(u, g) < 0.5) continue;
        Vec4 s = project(rng.randVec(), u, g);
        if (normAbs(s, g) < 0.5) continue;
        Vec4 a = project(rng.randVec(), s, g); // u.a stays free
        double an = normAbs(a, g);
        if (an < 0.05) continue;
        a = scale(rng.urand(0.1, 0.6) / an, a);
        Vec4 ep;
        double sc;
        try {
            Params p(rng.urand(0.5, 2.0), rng.urand(0.5, 2.0), s, As[done % 3], g);
            KinState st{rng.randVec(), u, a};
            Jet3 j{st, autoparallelRHS(st, p)};
            ep = residualEulerPoisson(j, p);
            sc = eulerPoissonScale(j, p);
        } catch (const Error&) {
            continue;
        }
        worst = std::max(worst, maxAbs(ep) / sc);
        ++done;
    }
    CheckResult res;
    res.name = "closure";
    res.measured = worst;
    res.tolerance = 1e-9;
    res.pass = done >= 200 && worst <= 1e-9;
    res.detail = "variational residual vanishes along the connection field on "
                 "200 states with s.u = s.a = 0";
    if (done < 200) res.detail += "; sample budget exhausted";
    return res;
}

CheckResult checkConservation(std::uint64_t seed) {
    Rng rng(seed ^ 0x434f4e53u);
    const Signature g = Signature::minkowski();
    IntegratorConfig cfg;
    cfg.tolAbs = cfg.tolRel = 1e-10;
    cfg.tauEnd = 10.0;
    cfg.hMax = 0.05;
    double worstMain = 0;
    int done = 0;
    long attempts = 0;
    Params pSweep;
    KinState stSweep;
    while (done < 10 && ++attempts <= 200) {
        Params p;
        KinState st = randPiraniState(rng, p, 0.0, g, 0.25);
        Trajectory tr;
        try {
            tr = integrate(&autoparallelField, st, p, cfg);
        } catch (const Error&) {
            continue;
        }
        DiagnosticsSummary d = diagnosticsSummary(tr);
        worstMain = std::max({worstMain, d.maxFirstIntegralDrift, d.maxPiraniDrift});
        if (done == 0) {
            pSweep = p;
            stSweep = st;
        }
        ++done;
    }
    const double tols[4] = {1e-8, 1e-9, 1e-10, 1e-11};
    double sweep[4] = {kInf, kInf, kInf, kInf};
    bool envOk = done > 0;
    for (int k = 0; k < 4 && done > 0; ++k) {
        IntegratorConfig c2 = cfg;
        c2.tolAbs = c2.tolRel = tols[k];
        try {
            DiagnosticsSummary d =
                diagnosticsSummary(integrate(&autoparallelField, stSweep, pSweep, c2));
            sweep[k] = std::max(d.maxFirstIntegralDrift, d.maxPiraniDrift);
        } catch (const Error&) {
        }
        envOk = envOk && sweep[k] <= 10.0 * tols[k];
    }
    CheckResult res;
    res.name = "conservation";
    res.measured = worstMain;
    res.tolerance = 1e-8;
    res.pass = done >= 10 && worstMain <= 1e-8 && envOk;
    res.detail = "s.u/|u| and alignment drift over tau in [0, 10] at tolerance "
                 "1e-10, 10 transversal states; tolerance sweep inside the "
                 "10*tol envelope:";
    for (int k = 0; k < 4; ++k)
        res.detail += " " + num(tols[k]) + ":" + num(sweep[k]);
    if (done < 10) res.detail += "; sample budget exhausted";
    return res;
}

CheckResult checkParametrizationIndependence(std::uint64_t seed) {
    Rng rng(seed ^ 0x50415241u);
    const Signature g = Signature::minkowski();
    CheckResult res;
    res.name = "parametrization-independence";
    res.measured = kInf;
    res.tolerance = 1e-7;
    for (long attempt = 0; attempt < 40; ++attempt) {
        Params p0;
        KinState st = randPiraniState(rng, p0, 0.0, g, 0.05);
        Params p1 = p0;
        p1.A = 1.0;
        auto run = [&](const Params& pp, double tauEnd, Trajectory& out) {
            IntegratorConfig cfg;
            cfg.tolAbs = cfg.tolRel = 1e-10;
            cfg.hMax = 0.01;
            for (double te = tauEnd; te > 2.0; te *= 0.85) {
                cfg.tauEnd = te;
                try {
                    out = properTimeReparametrize(integrate(&autoparallelField,
                                                            st, pp, cfg), g);
                    return true;
                } catch (const Error&) {
                }
            }
            return false;
        };
        Trajectory t0, t1;
        if (!run(p0, 7.0, t0) || !run(p1, 5.0, t1)) continue;
        double smax = std::min({t0.samples.back().tau, t1.samples.back().tau, 5.0});
        if (smax < 4.0) continue;
        double worst = 0;
        for (int k = 0; k <= 400; ++k) {
            double sg = smax * k / 400.0;
            worst = std::max(worst, norm2(sub(sampleTrajectory(t0, sg).x,
                                              sampleTrajectory(t1, sg).x)));
        }
        res.measured = worst;
        res.pass = worst <= 1e-7;
        res.detail = "gauge constants 0 and 1 trace the same worldline after "
                     "unit-speed reparametrization; 401 samples over proper "
                     "time [0, " + num(smax) + "]";
        return res;
    }
    res.pass = false;
    res.detail = "no initial state produced a shared proper-time window of "
                 "length 4";
    return res;
}

CheckResult checkTensorEquivalence(std::uint64_t seed) {
    Rng rng(seed ^ 0x54454e53u);
    const Signature g = Signature::euclidean();

    // residual agreement of all three forms along one unit-speed trajectory
    double worstA = kInf;
    for (long attempt = 0; attempt < 40; ++attempt) {
        Params p;
        KinState st = randPiraniState(rng, p, 0.5, g, 0.3);
        IntegratorConfig cfg;
        cfg.tolAbs = cfg.tolRel = 1e-12;
        cfg.tauEnd = 1.5;
        cfg.hMax = 0.02;
        Trajectory tr;
        try {
            tr = properTimeReparametrize(integrate(&autoparallelField, st, p, cfg), g);
        } catch (const Error&) {
            continue;
        }
        Params pf(p.m, p.m, scale(-1.0, p.s), p.A, g);
        double w = 0;
        bool ok = true;
        for (const TrajectorySample& smp : tr.samples) {
            Jet3 j{smp.st, smp.adot};
            double sc = pf.m0 * normAbs(smp.st.a, g) + 1e-300;
            try {
                SpinTensor S = spinVectorToTensor(pf.s, smp.st.u, g, 1e-6);
                w = std::max({w, maxAbs(residualMathissonFlat(j, S, pf)) / sc,
                              maxAbs(residualSpinVector(j, pf)) / sc});
            } catch (const Error&) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        worstA = w;
        break;
    }

    // the variational and spin-vector covectors stay parallel off shell
    double worstRatio = kInf;
    int done = 0;
    long attempts = 0;
    while (done < 100 && ++attempts <= 10000) {
        Vec4 u = rng.randVec();
        if (normAbs(u, g) < 0.5) continue;
        Vec4 s = project(rng.randVec(), u, g);
        if (normAbs(s, g) < 0.5) continue;
        Vec4 r1, r2;
        double sc;
        try {
            Params p(rng.urand(0.5, 2.0), 1.0, s, 0.0, g);
            Params pf(p.m, p.m, scale(-1.0, s), 0.0, g);
            KinState st{rng.randVec(), u, rng.randVec()};
            Jet3 j{st, rng.randVec()};
            r1 = residualEulerPoisson(j, p);
            r2 = residualSpinVector(j, pf);
            sc = eulerPoissonScale(j, p);
        } catch (const Error&) {
            continue;
        }
        double n1 = norm2(r1), n2 = norm2(r2);
        if (n1 < 1e-6 * sc || n2 < 1e-12) continue;
        Vec4 a = scale(1.0 / n1, r1), b = scale(1.0 / n2, r2);
        // sigma_min/sigma_max of the 2x4 row matrix; the wedge form stays
        // accurate near rank one
        double wedge2 = 0, dotab = 0;
        for (int i = 0; i < 4; ++i) {
            dotab += a[i] * b[i];
            for (int jx = i + 1; jx < 4; ++jx) {
                double w = a[i] * b[jx] - a[jx] * b[i];
                wedge2 += w * w;
            }
        }
        if (done == 0) worstRatio = 0;
        worstRatio = std::max(worstRatio, std::sqrt(wedge2) / (1.0 + std::abs(dotab)));
        ++done;
    }
    CheckResult res;
    res.name = "tensor-equivalence";
    res.measured = worstA;
    res.tolerance = 1e-7;
    res.pass = worstA <= 1e-7 && done >= 100 && worstRatio <= 1e-8;
    res.detail = "tensor and spin-vector forms hold with the spin sign flipped "
                 "against the variational form along a unit-speed trajectory; "
                 "off-shell covector rank ratio " +
                 num(worstRatio) + " against 1e-08 on 100 transversal jets";
    if (done < 100) res.detail += "; sample budget exhausted";
    return res;
}

CheckResult checkCovariance(std::uint64_t seed) {
    Rng rng(seed ^ 0x434f5641u);
    const Signature g = Signature::minkowski();
    const int planes[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    JetCovectorOp epOp = [](const Jet3& j, const Params& p) {
        return residualEulerPoisson(j, p);
    };
    JetCovectorOp svOp = [](const Jet3& j, const Params& p) {
        return residualSpinVector(j, p);
    };
    StateVectorOp apOp = [](const KinState& st, const Params& p) {
        return autoparallelRHS(st, p);
    };
    TensorVectorOp mfOp = [](const Jet3& j, const SpinTensor& S, const Params& p) {
        return residualMathissonFlat(j, S, p);
    };
    double worst = 0;
    int done = 0;
    long attempts = 0;
    while (done < 100 && ++attempts <= 10000) {
        const int* pl1 = planes[rng.pick(3)];
        const int* pl2 = planes[rng.pick(3)];
        LorentzElement lam = compose(
            compose(rotationInPlane(pl1[0], pl1[1], rng.urand(-3.0, 3.0), g),
                    rotationInPlane(pl2[0], pl2[1], rng.urand(-3.0, 3.0), g)),
            boostAlong(1 + rng.pick(3), rng.urand(-2.0, 2.0), g));
        Params p = randParams(rng, g);
        p.A = rng.urand(0.0, 1.0);
        KinState st = randState(rng, p);
        Jet3 j{st, rng.randVec()};
        SpinTensor S = SpinTensor::fromComponents(
            rng.urand(-1, 1), rng.urand(-1, 1), rng.urand(-1, 1),
            rng.urand(-1, 1), rng.urand(-1, 1), rng.urand(-1, 1));
        double r;
        try {
            r = covarianceResidual(epOp, lam, j, p);
            r = std::max(r, covarianceResidual(svOp, lam, j, p));
            r = std::max(r, covarianceResidual(apOp, lam, st, p));
            r = std::max(r, covarianceResidual(mfOp, lam, j, S, p));
        } catch (const Error&) {
            continue;
        }
        worst = std::max(worst, r);
        ++done;
    }
    CheckResult res;
    res.name = "covariance";
    res.measured = worst;
    res.tolerance = 1e-9;
    res.pass = done >= 100 && worst <= 1e-9;
    res.detail = "equivariance of the three residuals and the connection field "
                 "under 100 rotation-boost products, rapidity up to 2";
    if (done < 100) res.detail += "; sample budget exhausted";
    return res;
}

CheckResult checkJetTransform(std::uint64_t seed) {
    Rng rng(seed ^ 0x4a455453u);
    // degree-3 truncated polynomials: independent oracle for the chain rule
    struct Poly3 {
        std::array<double, 4> c{};
    };
    auto mul = [](const Poly3& a, const Poly3& b) {
        Poly3 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; i + j < 4; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    };
    auto composeCubic = [&](double x0, double v1, double v2, double v3,
                            const Poly3& s) {
        Poly3 s2 = mul(s, s);
        Poly3 s3 = mul(s2, s);
        Poly3 r;
        for (int k = 0; k < 4; ++k)
            r.c[k] = v1 * s.c[k] + v2 / 2 * s2.c[k] + v3 / 6 * s3.c[k];
        r.c[0] += x0;
        return r;
    };
    double worst = 0;
    auto track = [&](double got, double want) {
        worst = std::max(worst,
                         std::abs(got - want) / std::max(1.0, std::abs(want)));
    };
    for (int it = 0; it < 500; ++it) {
        ContactJet3 cj;
        cj.t = rng.urand(-1, 1);
        for (int i = 0; i < 3; ++i) {
            cj.x[i] = rng.urand(-2, 2);
            cj.v1[i] = rng.urand(-2, 2);
            cj.v2[i] = rng.urand(-2, 2);
            cj.v3[i] = rng.urand(-2, 2);
        }
        double tp = rng.urand(0.3, 2.0) * (rng.urand(0, 1) < 0.5 ? -1 : 1);
        double tpp = rng.urand(-2, 2), tppp = rng.urand(-2, 2);
        HomJet3 hj = contactToHomogeneous(cj, tp, tpp, tppp);
        Poly3 sPar;
        sPar.c = {0.0, tp, tpp / 2, tppp / 6};
        track(hj.q[0], cj.t);
        track(hj.q1[0], tp);
        track(hj.q2[0], tpp);
        track(hj.q3[0], tppp);
        for (int i = 0; i < 3; ++i) {
            Poly3 comp = composeCubic(cj.x[i], cj.v1[i], cj.v2[i], cj.v3[i], sPar);
            track(hj.q[i + 1], comp.c[0]);
            track(hj.q1[i + 1], comp.c[1]);
            track(hj.q2[i + 1], 2 * comp.c[2]);
            track(hj.q3[i + 1], 6 * comp.c[3]);
        }
        ContactJet3 back = homogeneousToContact(hj);
        track(back.t, cj.t);
        for (int i = 0; i < 3; ++i) {
            track(back.x[i], cj.x[i]);
            track(back.v1[i], cj.v1[i]);
            track(back.v2[i], cj.v2[i]);
            track(back.v3[i], cj.v3[i]);
        }
    }
    CheckResult res;
    res.name = "jet-transform";
    res.measured = worst;
    res.tolerance = 1e-12;
    res.pass = worst <= 1e-12;
    res.detail = "third-order reparametrization against a truncated polynomial "
                 "oracle on 500 jets, round trip included";
    return res;
}

CheckResult checkIntegratorOrder(std::uint64_t seed) {
    Rng rng(seed ^ 0x4f524445u);
    const double phase = rng.urand(0.0, 1.0); // shifts the endpoint off a node
    OdeRhs osc = [](double, const std::vector<double>& y) {
        return std::vector<double>{y[1], -y[0]};
    };
    const double tEnd = 4.0 * std::acos(-1.0) + phase;
    const double hs[4] = {0.2, 0.1, 0.05, 0.025};
    double errs[4];
    for (int k = 0; k < 4; ++k) {
        IntegratorConfig cfg;
        cfg.method = StepMethod::Rk4Fixed;
        cfg.h0 = hs[k];
        cfg.tauEnd = tEnd;
        OdeResult r = solveOde(osc, {1.0, 0.0}, cfg);
        double y0 = r.y.back()[0], y1 = r.y.back()[1];
        errs[k] = std::max(std::abs(y0 - std::cos(tEnd)),
                           std::abs(y1 + std::sin(tEnd)));
    }
    double minSlope = kInf;
    for (int k = 0; k + 1 < 4; ++k)
        minSlope = std::min(minSlope, std::log2(errs[k] / errs[k + 1]));

    // zero-acceleration worldline integrates to a straight line
    const Signature g = Signature::minkowski();
    Params p(1.0, 1.0, Vec4{0.0, 0.0, 0.7, 0.0}, 0.0, g);
    KinState st;
    st.x = rng.randVec();
    st.u = {1.2, 0.1, -0.3, 0.2};
    st.a = {};
    IntegratorConfig cfg;
    cfg.tolAbs = cfg.tolRel = 1e-10;
    cfg.tauEnd = 5.0;
    double geoErr = kInf;
    try {
        Trajectory tr = integrate(&autoparallelField, st, p, cfg);
        const KinState& end = tr.samples.back().st;
        geoErr = std::max(maxAbs(sub(end.x, add(st.x, scale(5.0, st.u)))),
                          maxAbs(sub(end.u, st.u)));
    } catch (const Error&) {
    }
    CheckResult res;
    res.name = "integrator-order";
    res.measured = minSlope;
    res.tolerance = 3.8;
    res.pass = minSlope >= 3.8 && geoErr <= 1e-9;
    res.detail = "fixed-step convergence slope on the harmonic oscillator, "
                 "measured at least the bound; straight worldline endpoint "
                 "error " +
                 num(geoErr) + " against 1e-09";
    return res;
}

CheckResult checkHomogenization(std::uint64_t seed) {
    Rng rng(seed ^ 0x484f4d4fu);
    struct SigReport {
        bool complete = false;
        double worstChart = kInf;
        double worstLift = kInf;
        bool pass() const {
            return complete && worstChart <= 1e-6 && worstLift <= 1e-6;
        }
    };
    auto runSig = [&rng](const Signature& g) {
        SigReport rep;
        double w1 = 0, w2 = 0;
        int done = 0;
        long attempts = 0;
        while (done < 100 && ++attempts <= 20000) {
            Params p = randParams(rng, g);
            KinState st = randState(rng, p, 0.8);
            st.u[0] = rng.urand(0.6, 1.4);
            Vec4 udd = rng.randVec();
            Jet3 j3{st, udd};
            Vec4 ep;
            try {
                ep = residualEulerPoisson(j3, p);
            } catch (const Error&) {
                continue;
            }
            double sc = eulerPoissonScale(j3, p);
            if (maxAbs(ep) / sc < 1e-2) continue;
            HomJet3 hj{st.x, st.u, st.a, udd};
            // chart Lagrangians, homogenized and differentiated numerically
            bool anyChart = false;
            double s1 = 0;
            for (int i = 1; i <= 3; ++i) {
                if (chartMargin(i, st, p) < 0.4) continue;
                ContactLagrangian Lc = [i, &p](double, const std::array<double, 3>&,
                                               const std::array<double, 3>& v,
                                               const std::array<double, 3>& vp) {
                    ContactState c;
                    c.v = v;
                    c.vp = vp;
                    c.s0 = p.s[0];
                    c.svec = {p.s[1], p.s[2], p.s[3]};
                    return lagrangianContact(i, c, p.m);
                };
                Jet4 j4{st.x, st.u, st.a, udd, rng.randVec()};
                Vec4 efd;
                double fdRel;
                try {
                    efd = eulerLagrangeR(homogenizeLagrangian(Lc), j4, fdRel);
                } catch (const Error&) {
                    continue;
                }
                if (fdRel > 1e-6) continue; // stencil digits not trustworthy here
                if (norm2(efd) / sc < 1e-2) continue;
                s1 = std::max(s1, sinAngle(efd, ep));
                anyChart = true;
            }
            if (!anyChart) continue;
            // closed-form chart residual, lifted back to four components
            ContactJet3 cj;
            std::array<double, 3> E{};
            try {
                cj = homogeneousToContact(hj);
                ContactState cs;
                cs.t = cj.t;
                cs.xs = cj.x;
                cs.v = cj.v1;
                cs.vp = cj.v2;
                cs.vpp = cj.v3;
                cs.s0 = p.s[0];
                cs.svec = {p.s[1], p.s[2], p.s[3]};
                E = residualContact(cs, p.m);
            } catch (const Error&) {
                continue;
            }
            Vec4 lifted = homogenizeEulerPoisson(E, hj);
            if (norm2(lifted) / sc < 1e-6) continue;
            w1 = std::max(w1, s1);
            w2 = std::max(w2, sinAngle(lifted, ep));
            ++done;
        }
        rep.complete = done >= 100;
        if (done > 0) {
            rep.worstChart = w1;
            rep.worstLift = w2;
        }
        return rep;
    };
    SigReport re = runSig(Signature::euclidean());
    SigReport rm = runSig(Signature::minkowski());
    CheckResult res;
    res.name = "homogenization";
    res.tolerance = 1e-6;
    res.pass = re.pass() || rm.pass();
    const SigReport& best = re.pass() ? re : (rm.pass() ? rm : re);
    res.measured = std::max(best.worstChart, best.worstLift);
    auto word = [](const SigReport& r) { return r.pass() ? "pass" : "fail"; };
    res.detail = std::string("chart Lagrangians homogenize to the full family "
                             "and chart residuals lift to the full covector; "
                             "all-plus signature ") +
                 word(re) + " (angles " + num(re.worstChart) + " / " +
                 num(re.worstLift) + "), indefinite signature " + word(rm) +
                 " (angles " + num(rm.worstChart) + " / " + num(rm.worstLift) +
                 ")";
    if (re.pass() != rm.pass())
        res.detail += std::string("; the ") +
                      (re.pass() ? "all-plus" : "indefinite") +
                      " convention is the variational one";
    return res;
}

std::vector<CheckResult> runSuite(const std::string& suite, std::uint64_t seed) {
    using Fn = CheckResult (*)(std::uint64_t);
    struct Entry {
        const char* name;
        Fn fn;
    };
    static const Entry all[] = {
        {"variationality", &checkVariationality},
        {"zermelo-invariance", &checkZermelo},
        {"autoparallel-conditions", &checkAutoparallelConditions},
        {"closure", &checkClosure},
        {"conservation", &checkConservation},
        {"parametrization-independence", &checkParametrizationIndependence},
        {"tensor-equivalence", &checkTensorEquivalence},
        {"covariance", &checkCovariance},
        {"jet-transform", &checkJetTransform},
        {"integrator-order", &checkIntegratorOrder},
        {"homogenization", &checkHomogenization},
    };
    auto pick = [&](std::initializer_list<const char*> names) {
        std::vector<CheckResult> out;
        for (const char* n : names)
            for (const Entry& e : all)
                if (std::string(n) == e.name) out.push_back(e.fn(seed));
        return out;
    };
    if (suite == "all")
        return pick({"variationality", "zermelo-invariance",
                     "autoparallel-conditions", "closure", "conservation",
                     "parametrization-independence", "tensor-equivalence",
                     "covariance", "jet-transform", "integrator-order",
                     "homogenization"});
    if (suite == "variationality") return pick({"variationality", "homogenization"});
    if (suite == "zermelo") return pick({"zermelo-invariance"});
    if (suite == "covariance") return pick({"covariance"});
    if (suite == "conservation")
        return pick({"conservation", "parametrization-independence",
                     "integrator-order"});
    if (suite == "equivalence") return pick({"tensor-equivalence", "jet-transform"});
    if (suite == "autoparallel") return pick({"autoparallel-conditions", "closure"});
    throw ConfigParse("unknown check suite: " + suite +
                      " (expected variationality, zermelo, covariance, "
                      "conservation, equivalence, autoparallel, or all)");
}

} // namespace mtop
