#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mtop/symmetry.hpp"

using namespace mtop;

namespace {

const Signature kMink = Signature::minkowski();
const Signature kEucl = Signature::euclidean();

std::mt19937_64 rng(52180);

double urand(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec4 randVec(double cap = 1.0) {
    return {urand(-cap, cap), urand(-cap, cap), urand(-cap, cap), urand(-cap, cap)};
}

Mat4 randSkew(double cap = 1.0) {
    Mat4 o{};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            o[i][j] = urand(-cap, cap);
            o[j][i] = -o[i][j];
        }
    return o;
}

Params randParams(const Signature& g, double A = 0.0) {
    while (true) {
        Vec4 s = randVec();
        if (normAbs(s, g) < 0.5) continue;
        return Params(urand(0.5, 2.0), urand(0.5, 2.0), s, A, g);
    }
}

KinState randState(const Params& p) {
    while (true) {
        KinState st{randVec(), randVec(), randVec()};
        if (std::abs(dot(st.u, st.u, p.g)) < 0.4) continue;
        if (wedgeNormAbs(p.s, st.u, p.g) < 0.3) continue;
        return st;
    }
}

LorentzElement randProper(const Signature& g) {
    int axis = 1 + int(urand(0, 2.999));
    LorentzElement b = boostAlong(axis, urand(-2, 2), g);
    int i = 1 + int(urand(0, 2.999));
    int j = 1 + (i % 3);
    LorentzElement r = rotationInPlane(i, j, urand(0, 6.28), g);
    return compose(b, r);
}

double chartDenMargin(const Vec4& e, const KinState& st, const Params& p) {
    double ue = dot(st.u, e, p.g), se = dot(p.s, e, p.g);
    Vec4 w = sub(scale(ue, p.s), scale(se, st.u));
    double ww = dot(w, w, p.g);
    double wedge = wedgeNormSq(p.s, st.u, p.g);
    return std::abs(ww - wedge) / (std::abs(ww) + std::abs(wedge) + 1e-300);
}

} // namespace

TEST_CASE("expGenerator: zero parameter gives the exact identity") {
    LorentzElement lam = expGenerator(randSkew(), 0.0, kMink);
    CHECK(lam.matrix == identity4());
    Vec4 v = randVec();
    CHECK(transformContra(lam, v) == v);
}

TEST_CASE("expGenerator: elements preserve the metric and have unit determinant") {
    for (const Signature& g : {kMink, kEucl}) {
        for (int it = 0; it < 40; ++it) {
            LorentzElement lam = expGenerator(randSkew(), urand(-2, 2), g);
            CHECK(lorentzDefect(lam.matrix, g) < 1e-12);
            CHECK(det4(lam.matrix) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("expGenerator: quarter-turn spatial rotation permutes basis vectors") {
    Mat4 omega{};
    omega[1][2] = 1.0;
    omega[2][1] = -1.0;
    LorentzElement lam = expGenerator(omega, std::acos(-1.0) / 2, kMink);
    Vec4 img = transformContra(lam, Vec4{0, 1, 0, 0});
    CHECK(std::abs(img[2]) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(img[0]) < 1e-13);
    CHECK(std::abs(img[1]) < 1e-13);
    CHECK(std::abs(img[3]) < 1e-13);
}

TEST_CASE("expGenerator: one-parameter group law") {
    for (const Signature& g : {kMink, kEucl}) {
        for (int it = 0; it < 25; ++it) {
            Mat4 omega = randSkew();
            double e1 = urand(-1.5, 1.5), e2 = urand(-1.5, 1.5);
            Mat4 lhs = matMul(expGenerator(omega, e1, g).matrix,
                              expGenerator(omega, e2, g).matrix);
            Mat4 rhs = expGenerator(omega, e1 + e2, g).matrix;
            double gap = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) gap = std::max(gap, std::abs(lhs[i][j] - rhs[i][j]));
            CHECK(gap < 1e-10);
        }
    }
}

TEST_CASE("expGenerator rejects a non-skew parameter") {
    Mat4 bad{};
    bad[0][1] = 1.0;
    bad[1][0] = 1.0;
    CHECK_THROWS_AS(expGenerator(bad, 0.5, kMink), NotSkew);
}

TEST_CASE("expGenerator derivative at zero is the generator action") {
    for (const Signature& g : {kMink, kEucl}) {
        for (int it = 0; it < 20; ++it) {
            Mat4 omega = randSkew();
            Vec4 v = randVec(2.0);
            double h = 1e-5;
            Vec4 plus = transformContra(expGenerator(omega, h, g), v);
            Vec4 minus = transformContra(expGenerator(omega, -h, g), v);
            Vec4 fd = scale(1.0 / (2 * h), sub(plus, minus));
            Vec4 exact = generatorAction(omega, v, g);
            CHECK(maxAbs(sub(fd, exact)) < 1e-8 * (1 + maxAbs(exact)));
        }
    }
}

TEST_CASE("closed-form boost and rotation factories") {
    double chi = 0.8;
    LorentzElement b = boostAlong(1, chi, kMink);
    CHECK(b.kind == LorentzKind::Boost);
    Vec4 e0 = transformContra(b, Vec4{1, 0, 0, 0});
    CHECK(e0[0] == doctest::Approx(std::cosh(chi)).epsilon(1e-13));
    CHECK(e0[1] == doctest::Approx(std::sinh(chi)).epsilon(1e-13));
    CHECK(std::abs(e0[2]) < 1e-14);
    CHECK(std::abs(e0[3]) < 1e-14);

    LorentzElement r = rotationInPlane(2, 3, 6.2831853071795864769, kMink);
    CHECK(r.kind == LorentzKind::Rotation);
    Vec4 v = randVec();
    CHECK(maxAbs(sub(transformContra(r, v), v)) < 1e-12);

    CHECK(compose(r, r).kind == LorentzKind::Rotation);
    CHECK(compose(b, r).kind == LorentzKind::Product);
}

TEST_CASE("every element preserves the dot product") {
    for (const Signature& g : {kMink, kEucl}) {
        for (int it = 0; it < 50; ++it) {
            LorentzElement lam = compose(randProper(g), randProper(g));
            Vec4 u = randVec(2.0), v = randVec(2.0);
            double before = dot(u, v, g);
            double after = dot(transformContra(lam, u), transformContra(lam, v), g);
            CHECK(std::abs(after - before) < 1e-12 * (std::abs(before) + norm2(u) * norm2(v)));
        }
    }
}

TEST_CASE("transformState: invariants of the state and the first integral") {
    Params p = randParams(kMink);
    KinState st = randState(p);
    for (int it = 0; it < 25; ++it) {
        LorentzElement lam = randProper(kMink);
        KinState moved = transformState(lam, st);
        CHECK(dot(moved.u, moved.u, kMink) ==
              doctest::Approx(dot(st.u, st.u, kMink)).epsilon(1e-12));
        Params q = transformParams(lam, p);
        CHECK(firstIntegral(moved.u, q) ==
              doctest::Approx(firstIntegral(st.u, p)).epsilon(1e-11));
    }
}

TEST_CASE("covarianceResidual: identity transform gives zero") {
    Params p = randParams(kMink);
    Jet3 j{randState(p), randVec()};
    LorentzElement id;
    double cr = covarianceResidual(JetCovectorOp(residualEulerPoisson), id, j, p);
    CHECK(cr == 0.0);
}

TEST_CASE("covarianceResidual rejects a non-isometry") {
    Params p = randParams(kMink);
    Jet3 j{randState(p), randVec()};
    LorentzElement bad;
    bad.matrix[0][0] = 2.0;
    CHECK_THROWS_AS(covarianceResidual(JetCovectorOp(residualEulerPoisson), bad, j, p),
                    NotLorentz);
}

TEST_CASE("covariance of the covariant residual forms") {
    for (const Signature& g : {kMink, kEucl}) {
        for (int it = 0; it < 30; ++it) {
            Params p = randParams(g);
            Jet3 j{randState(p), randVec()};
            LorentzElement lam = randProper(g);
            CHECK(covarianceResidual(JetCovectorOp(residualSpinVector), lam, j, p) < 1e-9);
            CHECK(covarianceResidual(JetCovectorOp(residualEulerPoisson), lam, j, p) < 1e-9);
        }
    }
}

TEST_CASE("covariance of the tensor form with the spin tensor transported") {
    for (int it = 0; it < 30; ++it) {
        Params p = randParams(kMink);
        Jet3 j{randState(p), randVec()};
        SpinTensor S = SpinTensor::fromComponents(urand(-1, 1), urand(-1, 1), urand(-1, 1),
                                                  urand(-1, 1), urand(-1, 1), urand(-1, 1));
        LorentzElement lam = randProper(kMink);
        TensorVectorOp op = [](const Jet3& jj, const SpinTensor& SS, const Params& pp) {
            return residualMathissonFlat(jj, SS, pp);
        };
        CHECK(covarianceResidual(op, lam, j, S, p) < 1e-9);
    }
}

TEST_CASE("equivariance of the connection right-hand side") {
    for (double A : {0.0, 0.7}) {
        for (int it = 0; it < 25; ++it) {
            Params p = randParams(kMink, A);
            KinState st = randState(p);
            LorentzElement lam = randProper(kMink);
            StateVectorOp op = [](const KinState& s2, const Params& p2) {
                return autoparallelRHS(s2, p2);
            };
            CHECK(covarianceResidual(op, lam, st, p) < 1e-9);
        }
    }
}

TEST_CASE("the Lagrange family is invariant when the chart vector rides along") {
    ChartScalarOp op = [](const Vec4& e, const KinState& st, const Params& p) {
        return lagrangianHomogeneousE(e, st, p);
    };
    int done = 0;
    while (done < 25) {
        Params p = randParams(kEucl);
        KinState st = randState(p);
        Vec4 e{};
        e[int(urand(0, 3.999))] = 1.0;
        if (chartDenMargin(e, st, p) < 0.3) continue;
        LorentzElement lam = randProper(kEucl);
        try {
            CHECK(covarianceResidual(op, lam, e, st, p) < 1e-9);
        } catch (const SingularChart&) {
            continue;
        }
        ++done;
    }

    // with the chart vector held fixed the scalar is not invariant
    bool moved = false;
    for (int it = 0; it < 50 && !moved; ++it) {
        Params p = randParams(kEucl);
        KinState st = randState(p);
        Vec4 e{0, 1, 0, 0};
        if (chartDenMargin(e, st, p) < 0.3) continue;
        LorentzElement lam = randProper(kEucl);
        try {
            double before = lagrangianHomogeneousE(e, st, p);
            double after =
                lagrangianHomogeneousE(e, transformState(lam, st), transformParams(lam, p));
            if (std::abs(after - before) >
                1e-3 * (std::abs(after) + std::abs(before) + 1e-300))
                moved = true;
        } catch (const Error&) {
            continue;
        }
    }
    CHECK(moved);
}

TEST_CASE("covarianceResidual flags a deliberately broken residual") {
    JetCovectorOp broken = [](const Jet3& j, const Params& p) {
        Vec4 r = residualEulerPoisson(j, p);
        r[2] = -r[2];
        return r;
    };
    bool flagged = false;
    for (int it = 0; it < 50 && !flagged; ++it) {
        Params p = randParams(kMink);
        Jet3 j{randState(p), randVec()};
        LorentzElement lam = boostAlong(2, 1.0, kMink);
        if (covarianceResidual(broken, lam, j, p) > 1e-4) flagged = true;
    }
    CHECK(flagged);
}
