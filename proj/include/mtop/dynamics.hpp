#pragma once

#include <array>

#include "mtop/minkowski.hpp"

namespace mtop {

// point of the second-order jet: position, velocity, acceleration (contravariant)
struct KinState {
    Vec4 x{};
    Vec4 u{};
    Vec4 a{};
};

// KinState plus the second derivative of u
struct Jet3 {
    KinState base;
    Vec4 j{}; // u-double-dot
};

// non-varied data of the equations of motion
struct Params {
    double m = 1.0;  // mass constant of the variational form
    double m0 = 1.0; // mass constant of the tensor / spin-vector forms
    Vec4 s{};        // spin vector, contravariant
    double A = 0.0;  // parametrization constant
    Signature g;

    Params() = default;
    // validates m > 0, m0 > 0, normAbs(s) > 0
    Params(double m, double m0, const Vec4& s, double A, const Signature& g);
};

// chart of the three-dimensional (unparametrized-time) picture
struct ContactState {
    double t = 0;
    std::array<double, 3> xs{};
    std::array<double, 3> v{};   // dx/dt
    std::array<double, 3> vp{};  // v'
    std::array<double, 3> vpp{}; // v''
    double s0 = 0;
    std::array<double, 3> svec{};
};

// third-order spin-vector equation; covariant residual, zero on solutions
Vec4 residualSpinVector(const Jet3& j, const Params& p);

// tensor equation in flat space: m0 udot^al - S^{al be} uddot_be; contravariant
Vec4 residualMathissonFlat(const Jet3& j, const SpinTensor& S, const Params& p);

// variational (Euler-Poisson) residual; covariant, zero on extremals
Vec4 residualEulerPoisson(const Jet3& j, const Params& p);

// scale of residualEulerPoisson at this jet: sum of the magnitudes of its terms
double eulerPoissonScale(const Jet3& j, const Params& p);

// Lagrange function family indexed by a chart vector e; canonical e = basis vector alpha
double lagrangianHomogeneousE(const Vec4& e, const KinState& st, const Params& p);
double lagrangianHomogeneous(int alpha, const KinState& st, const Params& p);

// three-dimensional Lagrange functions, one per spatial axis label i in 1..3
double lagrangianContact(int i, const ContactState& cs, double m);

// three-dimensional Euler-Poisson expression of the contact chart
std::array<double, 3> residualContact(const ContactState& cs, double m);

// conserved s.u/|u|
double firstIntegral(const Vec4& u, const Params& p);

// parametrization gauge scalar; |udot|^2 enters signed, the wedge norm absolute
double psiAnsatz(const Vec4& u, const Vec4& udot, double A, const Signature& g);

// right-hand side of the second-order connection: uddot = xi(udot, u, x)
Vec4 autoparallelRHS(const KinState& st, const Params& p);

} // namespace mtop
