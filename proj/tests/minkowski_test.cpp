#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "mtop/minkowski.hpp"

using namespace mtop;

namespace {

const Signature kMink = Signature::minkowski();
const Signature kEucl = Signature::euclidean();

Vec4 e(int i) {
    Vec4 v{};
    v[i] = 1.0;
    return v;
}

double relDiff(const Vec4& a, const Vec4& b) {
    double d = 0, s = 0;
    for (int i = 0; i < 4; ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
        s = std::max({s, std::abs(a[i]), std::abs(b[i])});
    }
    return d / std::max(s, 1e-300);
}

// independent sign-of-permutation oracle: explicit bubble count on a copy
int permSignOracle(std::array<int, 4> p) {
    for (int v : p)
        if (std::count(p.begin(), p.end(), v) != 1) return 0;
    int swaps = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            if (p[j] > p[j + 1]) {
                std::swap(p[j], p[j + 1]);
                ++swaps;
            }
    return swaps % 2 == 0 ? 1 : -1;
}

// quadruple-loop Levi-Civita contraction, independent of hodgeTriple internals
double quadOracle(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d,
                  const Signature& g) {
    double acc = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    acc += g.orientation * permSignOracle({i, j, k, l}) *
                           a[i] * b[j] * c[k] * d[l];
    return acc;
}

Vec4 tripleOracle(const Vec4& a, const Vec4& b, const Vec4& c, const Signature& g) {
    Vec4 out{};
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be)
            for (int ga = 0; ga < 4; ++ga)
                for (int de = 0; de < 4; ++de)
                    out[al] += g.orientation * permSignOracle({al, be, ga, de}) *
                               a[be] * b[ga] * c[de];
    return out;
}

std::mt19937_64 rng(912832);

double urand(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec4 randVec() {
    return {urand(-1, 1), urand(-1, 1), urand(-1, 1), urand(-1, 1)};
}

// 13-term Taylor exponential with scaling and squaring; local oracle only
Mat4 expmOracle(const Mat4& m) {
    int k = 0;
    double s = maxAbs(m);
    while (s > 0.25) {
        s /= 2;
        ++k;
    }
    Mat4 t = matScale(std::pow(0.5, k), m);
    Mat4 acc = identity4();
    Mat4 term = identity4();
    for (int n = 1; n <= 13; ++n) {
        term = matScale(1.0 / n, matMul(term, t));
        acc = matAdd(acc, term);
    }
    for (int i = 0; i < k; ++i) acc = matMul(acc, acc);
    return acc;
}

Mat4 randSkew(double boostCap) {
    Mat4 o{};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double cap = (i == 0) ? boostCap : 1.5;
            o[i][j] = urand(-cap, cap);
            o[j][i] = -o[i][j];
        }
    return o;
}

} // namespace

TEST_CASE("dot examples and bilinearity") {
    CHECK(dot(e(0), e(0), kMink) == doctest::Approx(1.0));
    CHECK(dot(e(1), e(1), kMink) == doctest::Approx(-1.0));
    CHECK(dot(Vec4{1, 1, 0, 0}, Vec4{1, -1, 0, 0}, kMink) == doctest::Approx(2.0));
    for (int it = 0; it < 50; ++it) {
        Vec4 a = randVec(), b = randVec(), c = randVec();
        double k1 = urand(-2, 2), k2 = urand(-2, 2);
        CHECK(dot(a, b, kMink) == doctest::Approx(dot(b, a, kMink)));
        CHECK(dot(add(scale(k1, a), scale(k2, b)), c, kMink) ==
              doctest::Approx(k1 * dot(a, c, kMink) + k2 * dot(b, c, kMink)));
    }
}

TEST_CASE("variance handling") {
    FourVector vc{{1, 2, 3, 4}, Variance::Contra};
    FourVector vl{lower(vc.c, kMink), Variance::Co};
    CHECK(relDiff(contraComponents(vl, kMink), vc.c) < 1e-15);
    CHECK(dot(vc, vc, kMink) == doctest::Approx(dot(vl, vl, kMink)));
    CHECK(pairing(vl.c, vc.c) == doctest::Approx(dot(vc.c, vc.c, kMink)));
}

TEST_CASE("normAbs examples") {
    CHECK(normAbs(e(0), kMink) == doctest::Approx(1.0));
    CHECK(normAbs(Vec4{0, 0, 0, -2.5}, kMink) == doctest::Approx(2.5));
    CHECK(normAbs(Vec4{1, 1, 0, 0}, kMink) == doctest::Approx(0.0));
}

TEST_CASE("wedgeNormSq examples") {
    CHECK(wedgeNormSq(e(0), e(3), kMink) == doctest::Approx(-1.0));
    Vec4 a = randVec();
    CHECK(wedgeNormSq(a, scale(3.7, a), kMink) == doctest::Approx(0.0));
    CHECK(wedgeNormSq(Vec4{1, 0, 0, 0}, Vec4{1, 0, 0, 1}, kMink) == doctest::Approx(-1.0));
    CHECK(wedgeNormAbs(e(0), e(3), kMink) == doctest::Approx(1.0));
}

TEST_CASE("permSymbol matches independent parity oracle") {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    CHECK(permSymbol(i, j, k, l) == permSignOracle({i, j, k, l}));
}

TEST_CASE("hodgeTriple fixed values and oracle") {
    Vec4 t = hodgeTriple(e(1), e(2), e(3), kMink);
    CHECK(relDiff(t, Vec4{1, 0, 0, 0}) < 1e-15);
    t = hodgeTriple(e(0), e(1), e(2), kMink);
    CHECK(relDiff(t, Vec4{0, 0, 0, -1}) < 1e-15);

    Vec4 a = randVec();
    CHECK(maxAbs(hodgeTriple(a, a, randVec(), kMink)) < 1e-15);

    for (int it = 0; it < 50; ++it) {
        Vec4 x = randVec(), y = randVec(), z = randVec();
        CHECK(relDiff(hodgeTriple(x, y, z, kMink), tripleOracle(x, y, z, kMink)) < 1e-13);
        // antisymmetry under a transposition
        Vec4 p = hodgeTriple(x, y, z, kMink), q = hodgeTriple(y, x, z, kMink);
        CHECK(relDiff(p, scale(-1, q)) < 1e-13);
        // linear dependence kills it
        Vec4 comb = add(scale(0.3, x), scale(-1.2, y));
        CHECK(maxAbs(hodgeTriple(x, y, comb, kMink)) < 1e-13);
    }

    // orientation flips the sign
    Signature flipped = kMink;
    flipped.orientation = -1;
    Vec4 x = randVec(), y = randVec(), z = randVec();
    CHECK(relDiff(hodgeTriple(x, y, z, flipped),
                  scale(-1, hodgeTriple(x, y, z, kMink))) < 1e-15);
}

TEST_CASE("hodgeQuad fixed values, oracle, chaining identity") {
    CHECK(hodgeQuad(e(0), e(1), e(2), e(3), kMink) == doctest::Approx(1.0));
    CHECK(hodgeQuad(e(1), e(0), e(2), e(3), kMink) == doctest::Approx(-1.0));
    Vec4 a = randVec();
    CHECK(hodgeQuad(a, randVec(), a, randVec(), kMink) == doctest::Approx(0.0));

    for (int it = 0; it < 50; ++it) {
        Vec4 w = randVec(), x = randVec(), y = randVec(), z = randVec();
        double q = hodgeQuad(w, x, y, z, kMink);
        CHECK(q == doctest::Approx(quadOracle(w, x, y, z, kMink)).epsilon(1e-12));
        // chaining: full contraction equals pairing of the triple against the first slot
        CHECK(q == doctest::Approx(pairing(hodgeTriple(x, y, z, kMink), w)).epsilon(1e-12));
    }
}

TEST_CASE("spinTensorToVector fixed values") {
    double sigma = 0.8;
    SpinTensor s = SpinTensor::fromComponents(0, 0, 0, sigma, 0, 0);
    Vec4 v = spinTensorToVector(s, e(0), kMink);
    CHECK(relDiff(v, Vec4{0, 0, 0, sigma}) < 1e-15);
    // degree 0 in u
    Vec4 v2 = spinTensorToVector(s, scale(3.0, e(0)), kMink);
    CHECK(relDiff(v, v2) < 1e-15);
    CHECK(maxAbs(spinTensorToVector(SpinTensor::zero(), e(0), kMink)) == 0.0);
    CHECK_THROWS_AS(spinTensorToVector(s, Vec4{1, 1, 0, 0}, kMink), ZeroVelocity);
}

TEST_CASE("SpinTensor storage and validation") {
    SpinTensor s = SpinTensor::fromComponents(1, 2, 3, 4, 5, 6);
    CHECK(s(0, 1) == 1.0);
    CHECK(s(1, 0) == -1.0);
    CHECK(s(2, 3) == 6.0);
    CHECK(s(3, 3) == 0.0);
    Mat4 m = s.toMatrix();
    SpinTensor back = SpinTensor::fromMatrix(m);
    CHECK(back.c == s.c);
    m[1][2] += 1e-3;
    CHECK_THROWS_AS(SpinTensor::fromMatrix(m), NotSkew);
}

TEST_CASE("spinVectorToTensor fixed signs and round-trip") {
    double sigma = 1.3;
    // contravariant s along axis 3
    Vec4 s{0, 0, 0, sigma};
    SpinTensor tMink = spinVectorToTensor(s, e(0), kMink);
    CHECK(tMink(1, 2) == doctest::Approx(-sigma));
    SpinTensor tEucl = spinVectorToTensor(s, e(0), kEucl);
    CHECK(tEucl(1, 2) == doctest::Approx(sigma));

    for (const Signature& g : {kMink, kEucl}) {
        for (int it = 0; it < 100; ++it) {
            Vec4 u = randVec();
            u[0] += (u[0] >= 0 ? 1.5 : -1.5); // keep |u.u| away from zero
            if (std::abs(dot(u, u, g)) < 0.3) continue;
            Vec4 s0 = randVec();
            // project onto the Pirani surface s.u = 0
            Vec4 sp = sub(s0, scale(dot(s0, u, g) / dot(u, u, g), u));
            if (normAbs(sp, g) < 0.1) continue;
            SpinTensor S = spinVectorToTensor(sp, u, g);
            Vec4 back = raise(spinTensorToVector(S, u, g), g);
            CHECK(relDiff(back, sp) < 1e-12);
            // transversality u_be S^{al be} = 0
            Vec4 ul = lower(u, g);
            for (int al = 0; al < 4; ++al) {
                double acc = 0;
                for (int be = 0; be < 4; ++be) acc += ul[be] * S(al, be);
                CHECK(std::abs(acc) < 1e-12 * std::max(1.0, maxAbs(S.toMatrix())));
            }
        }
    }

    CHECK(maxAbs(spinVectorToTensor(Vec4{}, e(0), kMink).toMatrix()) == 0.0);
    CHECK_THROWS_AS(spinVectorToTensor(e(0), e(0), kMink), PiraniViolated);
}

TEST_CASE("lorentzApply examples and isometry") {
    Mat4 id = identity4();
    Vec4 v = randVec();
    CHECK(relDiff(lorentzApply(id, v, kMink), v) < 1e-15);

    // rotation by pi/2 in the (1,2) plane
    Mat4 rot = identity4();
    rot[1][1] = 0;
    rot[2][2] = 0;
    rot[2][1] = 1;
    rot[1][2] = -1;
    CHECK(relDiff(lorentzApply(rot, e(1), kMink), e(2)) < 1e-15);

    double chi = 0.7;
    Mat4 boost = identity4();
    boost[0][0] = std::cosh(chi);
    boost[0][1] = std::sinh(chi);
    boost[1][0] = std::sinh(chi);
    boost[1][1] = std::cosh(chi);
    Vec4 b = lorentzApply(boost, e(0), kMink);
    CHECK(relDiff(b, Vec4{std::cosh(chi), std::sinh(chi), 0, 0}) < 1e-15);

    Mat4 bad = identity4();
    bad[0][0] = 2.0;
    CHECK_THROWS_AS(lorentzApply(bad, v, kMink), NotLorentz);

    for (int it = 0; it < 30; ++it) {
        Mat4 lam = expmOracle(generatorMatrix(randSkew(0.8), kMink));
        Vec4 a = randVec(), c = randVec();
        CHECK(dot(lorentzApply(lam, a, kMink), lorentzApply(lam, c, kMink), kMink) ==
              doctest::Approx(dot(a, c, kMink)).epsilon(1e-12));
        // covariant transform keeps the pairing
        FourVector co{lower(a, kMink), Variance::Co};
        FourVector co2 = lorentzApply(lam, co, kMink);
        CHECK(pairing(co2.c, lorentzApply(lam, c, kMink)) ==
              doctest::Approx(pairing(co.c, c)).epsilon(1e-12));
    }
}

TEST_CASE("generatorAction fixed value and exp consistency") {
    Mat4 zero{};
    CHECK(maxAbs(generatorAction(zero, randVec(), kMink)) == 0.0);

    Mat4 om{};
    om[0][1] = 1.0;
    om[1][0] = -1.0;
    Vec4 out = generatorAction(om, e(0), kMink);
    CHECK(relDiff(out, Vec4{0, 1, 0, 0}) < 1e-15);

    Mat4 notSkew{};
    notSkew[0][1] = 1.0;
    CHECK_THROWS_AS(generatorAction(notSkew, e(0), kMink), NotSkew);

    for (int it = 0; it < 20; ++it) {
        Mat4 omega = randSkew(0.8);
        Mat4 g = generatorMatrix(omega, kMink);
        Vec4 v = randVec();
        double eps = 1e-6;
        Vec4 plus = matVec(expmOracle(matScale(eps, g)), v);
        Vec4 minus = matVec(expmOracle(matScale(-eps, g)), v);
        Vec4 fd = scale(1.0 / (2 * eps), sub(plus, minus));
        CHECK(relDiff(fd, generatorAction(omega, v, kMink)) < 1e-8);
    }
}

TEST_CASE("hodgeTriple equivariance under proper transforms") {
    for (int it = 0; it < 30; ++it) {
        Mat4 lam = expmOracle(generatorMatrix(randSkew(0.8), kMink));
        CHECK(det4(lam) == doctest::Approx(1.0).epsilon(1e-10));
        Vec4 a = randVec(), b = randVec(), c = randVec();
        Vec4 lhs = hodgeTriple(matVec(lam, a), matVec(lam, b), matVec(lam, c), kMink);
        Vec4 rhs = matVec(inverseTransposeLorentz(lam, kMink), hodgeTriple(a, b, c, kMink));
        CHECK(relDiff(lhs, rhs) < 1e-10);
    }
}
