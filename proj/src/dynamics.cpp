#include "mtop/dynamics.hpp"

#include <cmath>

namespace mtop {

namespace {

using V3 = std::array<double, 3>;

double dot3(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

V3 cross3(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

V3 add3(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

V3 scale3(double k, const V3& a) { return {k * a[0], k * a[1], k * a[2]}; }

double tiny() { return 1e-300; }

} // namespace

Params::Params(double m_, double m0_, const Vec4& s_, double A_, const Signature& g_)
    : m(m_), m0(m0_), s(s_), A(A_), g(g_) {
    if (!(m > 0)) throw Error("Params: m must be positive");
    if (!(m0 > 0)) throw Error("Params: m0 must be positive");
    if (!(normAbs(s, g) > 0)) throw DegenerateSpin("Params: spin vector has zero norm");
}

Vec4 residualSpinVector(const Jet3& j, const Params& p) {
    const Signature& g = p.g;
    const Vec4 &u = j.base.u, &udot = j.base.a, &uddot = j.j;
    double n2 = std::abs(dot(u, u, g));
    if (n2 == 0) throw ZeroVelocity("residualSpinVector: velocity has zero norm");
    Vec4 head = hodgeTriple(uddot, u, p.s, g);
    Vec4 mid = hodgeTriple(udot, u, p.s, g);
    double udotu = dot(udot, u, g);
    Vec4 udl = lower(udot, g), ul = lower(u, g);
    Vec4 out{};
    for (int al = 0; al < 4; ++al)
        out[al] = head[al] - 3.0 * (udotu / n2) * mid[al] -
                  p.m0 * (n2 * udl[al] - udotu * ul[al]);
    return out;
}

Vec4 residualMathissonFlat(const Jet3& j, const SpinTensor& S, const Params& p) {
    Vec4 al = lower(j.j, p.g);
    Vec4 out{};
    for (int i = 0; i < 4; ++i) {
        double acc = 0;
        for (int k = 0; k < 4; ++k) acc += S(i, k) * al[k];
        out[i] = p.m0 * j.base.a[i] - acc;
    }
    return out;
}

namespace {

struct EulerPoissonTerms {
    Vec4 head, mid, mterm;
};

EulerPoissonTerms eulerPoissonSplit(const Jet3& j, const Params& p) {
    const Signature& g = p.g;
    const Vec4 &u = j.base.u, &udot = j.base.a, &uddot = j.j;
    double nu = normAbs(u, g);
    if (nu == 0) throw ZeroVelocity("residualEulerPoisson: velocity has zero norm");
    double W = wedgeNormAbs(p.s, u, g);
    double chartScale = norm2(p.s) * norm2(u);
    if (W * W <= 1e-9 * chartScale * chartScale)
        throw DegenerateSpin("residualEulerPoisson: s and u nearly dependent");
    double W3 = W * W * W, W5 = W3 * W * W;
    double G = dot(udot, u, g) * dot(p.s, p.s, g) - dot(udot, p.s, g) * dot(p.s, u, g);
    double ns = normAbs(p.s, g);
    double mFac = p.m / (ns * ns * ns);
    double udotu = dot(udot, u, g);
    Vec4 udl = lower(udot, g), ul = lower(u, g);
    EulerPoissonTerms t;
    t.head = scale(1.0 / W3, hodgeTriple(uddot, u, p.s, g));
    t.mid = scale(-3.0 * G / W5, hodgeTriple(udot, u, p.s, g));
    for (int al = 0; al < 4; ++al)
        t.mterm[al] = mFac * (udl[al] / nu - udotu * ul[al] / (nu * nu * nu));
    return t;
}

} // namespace

Vec4 residualEulerPoisson(const Jet3& j, const Params& p) {
    EulerPoissonTerms t = eulerPoissonSplit(j, p);
    return add(add(t.head, t.mid), t.mterm);
}

double eulerPoissonScale(const Jet3& j, const Params& p) {
    EulerPoissonTerms t = eulerPoissonSplit(j, p);
    return maxAbs(t.head) + maxAbs(t.mid) + maxAbs(t.mterm) + tiny();
}

double lagrangianHomogeneousE(const Vec4& e, const KinState& st, const Params& p) {
    const Signature& g = p.g;
    const Vec4 &u = st.u, &udot = st.a, &s = p.s;
    double W = wedgeNormAbs(s, u, g);
    double chartScale = norm2(s) * norm2(u);
    if (W * W <= 1e-9 * chartScale * chartScale)
        throw DegenerateSpin("lagrangianHomogeneous: s and u nearly dependent");
    double ue = dot(u, e, g);
    double se = dot(s, e, g);
    Vec4 w = sub(scale(ue, s), scale(se, u));
    double den = dot(w, w, g) - wedgeNormSq(s, u, g);
    double denScale = norm2(w) * norm2(w) + chartScale * chartScale + tiny();
    if (std::abs(den) <= 1e-6 * denScale)
        throw SingularChart("lagrangianHomogeneous: chart denominator vanishes");
    double num = dot(s, u, g) * se - dot(s, s, g) * ue;
    double ss = std::abs(dot(s, s, g));
    double ns = normAbs(s, g);
    double hq = hodgeQuad(udot, u, s, e, g);
    return hq * num / (den * ss * W) - p.m / (ns * ns * ns) * normAbs(u, g);
}

double lagrangianHomogeneous(int alpha, const KinState& st, const Params& p) {
    Vec4 e{};
    e[alpha] = 1.0;
    return lagrangianHomogeneousE(e, st, p);
}

double lagrangianContact(int i, const ContactState& cs, double m) {
    int ii = i - 1; // axis label 1..3 to storage index
    const V3 &S = cs.svec, &V = cs.v, &W = cs.vp;
    double s0 = cs.s0;
    double S2 = dot3(S, S);
    double spinScale = s0 * s0 + S2;
    if (spinScale <= tiny()) throw DegenerateSpin("lagrangianContact: zero spin");
    V3 k = S;
    k[ii] = 0;
    V3 SmV = add3(S, scale3(-s0, V));
    V3 z = SmV;
    z[ii] = 0;
    double k2 = dot3(k, k), kz = dot3(k, z), z2 = dot3(z, z);
    double d1 = (s0 * s0 + k2) * z2 - kz * kz;
    double d1Scale = (s0 * s0 + k2) * z2 + kz * kz + tiny();
    if (std::abs(d1) <= 1e-6 * d1Scale)
        throw SingularChart("lagrangianContact: chart denominator vanishes");
    V3 SxV = cross3(S, V);
    double d2 = dot3(SmV, SmV) + dot3(SxV, SxV);
    if (d2 <= 1e-12 * spinScale * (1.0 + dot3(V, V)))
        throw SingularChart("lagrangianContact: wedge denominator vanishes");
    // value: the axis-i member of the homogeneous family at the canonical
    // lift u = (1, V), udot = (0, V'); its Euler-Lagrange expression is the
    // three-component residual with constant 1
    KinState st;
    st.u = {1.0, V[0], V[1], V[2]};
    st.a = {0.0, W[0], W[1], W[2]};
    Params p(m, m, Vec4{s0, S[0], S[1], S[2]}, 0.0, Signature::euclidean());
    Vec4 e{};
    e[ii + 1] = 1.0;
    return lagrangianHomogeneousE(e, st, p);
}

std::array<double, 3> residualContact(const ContactState& cs, double m) {
    const V3 &v = cs.v, &vp = cs.vp, &vpp = cs.vpp, &svec = cs.svec;
    double s0 = cs.s0;
    double v2 = dot3(v, v);
    double s2 = dot3(svec, svec);
    double sv = dot3(svec, v);
    double spinScale = s0 * s0 + s2;
    double B = (1.0 + v2) * spinScale - (s0 + sv) * (s0 + sv);
    if (B <= 1e-9 * ((1.0 + v2) * spinScale + tiny()))
        throw SingularChart("residualContact: bracket not positive");
    double B32 = std::pow(B, 1.5), B52 = B32 * B;
    V3 sms = add3(svec, scale3(-s0, v)); // s - s0 v
    V3 t1 = scale3(1.0 / B32, cross3(vpp, sms));
    double G3 = spinScale * dot3(vp, v) - (s0 + sv) * dot3(svec, vp);
    V3 t2 = scale3(-3.0 * G3 / B52, cross3(vp, sms));
    double w2 = 1.0 + v2;
    V3 t3 = scale3(m / (std::pow(w2, 1.5) * std::pow(spinScale, 1.5)),
                   add3(scale3(w2, vp), scale3(-dot3(vp, v), v)));
    return add3(add3(t1, t2), t3);
}

double firstIntegral(const Vec4& u, const Params& p) {
    double n = normAbs(u, p.g);
    if (n == 0) throw ZeroVelocity("firstIntegral: velocity has zero norm");
    return dot(p.s, u, p.g) / n;
}

double psiAnsatz(const Vec4& u, const Vec4& udot, double A, const Signature& g) {
    double n2 = std::abs(dot(u, u, g));
    if (n2 == 0) throw ZeroVelocity("psiAnsatz: velocity has zero norm");
    double gram = std::abs(wedgeNormSq(udot, u, g));
    return 3.0 / n2 * (0.5 * dot(udot, udot, g) + A * std::pow(gram, 2.0 / 3.0));
}

Vec4 autoparallelRHS(const KinState& st, const Params& p) {
    const Signature& g = p.g;
    const Vec4 &u = st.u, &udot = st.a;
    double n2 = std::abs(dot(u, u, g));
    if (n2 == 0) throw ZeroVelocity("autoparallelRHS: velocity has zero norm");
    double n = std::sqrt(n2);
    double Wus = wedgeNormAbs(u, p.s, g);
    double chartScale = norm2(p.s) * norm2(u);
    if (Wus * Wus <= 1e-9 * chartScale * chartScale)
        throw DegenerateSpin("autoparallelRHS: s and u nearly dependent");
    double udotu = dot(udot, u, g);
    double gram = std::abs(wedgeNormSq(udot, u, g));
    double ns = normAbs(p.s, g);
    double bracket = udotu * udotu / (n2 * n2) - 0.5 * dot(udot, udot, g) / n2 -
                     p.A * std::pow(gram, 2.0 / 3.0) / n2;
    Vec4 spinForce = raise(hodgeTriple(udot, u, p.s, g), g);
    Vec4 out{};
    for (int al = 0; al < 4; ++al)
        out[al] = 3.0 * (udotu / n2) * udot[al] - 3.0 * bracket * u[al] +
                  p.m * (Wus / (ns * ns * ns * n)) * spinForce[al];
    return out;
}

} // namespace mtop
