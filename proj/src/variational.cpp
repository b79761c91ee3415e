#include "mtop/variational.hpp"

#include <cmath>

namespace mtop {

namespace {

double probe(const ScalarField2& L, const Vec4& x, const Vec4& u,
             const Vec4& ud) {
    double v;
    try {
        v = L(x, u, ud);
    } catch (const ChartExit&) {
        throw;
    } catch (const Error& e) {
        throw ChartExit(std::string("lagrangian probe left the chart: ") + e.what());
    }
    if (!std::isfinite(v)) throw ChartExit("lagrangian probe not finite");
    return v;
}

// first derivative at 0, node spacing e, one Richardson level
template <class F>
double d1(F&& f, double e) {
    double c2 = (f(e) - f(-e)) / (2 * e);
    double c1 = (f(2 * e) - f(-2 * e)) / (4 * e);
    return (4 * c2 - c1) / 3;
}

// second derivative at 0 given f(0), one Richardson level
template <class F>
double d2(F&& f, double f0, double e) {
    double c2 = (f(e) - 2 * f0 + f(-e)) / (e * e);
    double c1 = (f(2 * e) - 2 * f0 + f(-2 * e)) / (4 * e * e);
    return (4 * c2 - c1) / 3;
}

} // namespace

Vec4 eulerLagrangeFD(const ScalarField2& L, const Jet4& j, double h) {
    if (!(h > 0)) throw Error("eulerLagrangeFD: step must be positive");
    // two scales: inner gradient steps at sqrt(h) so the outer total
    // derivatives taken at eps see a smooth function of the curve parameter
    const double hIn = std::sqrt(h);
    const double eps = 2 * std::sqrt(h);

    auto curve = [&j](double t, Vec4& x, Vec4& u, Vec4& ud) {
        for (int i = 0; i < 4; ++i) {
            x[i] = j.x[i] + t * (j.u[i] + t * (j.udot[i] / 2 +
                   t * (j.uddot[i] / 6 + t * j.u3[i] / 24)));
            u[i] = j.u[i] + t * (j.udot[i] + t * (j.uddot[i] / 2 + t * j.u3[i] / 6));
            ud[i] = j.udot[i] + t * (j.uddot[i] + t * j.u3[i] / 2);
        }
    };

    // dL/du^c or dL/dudot^c evaluated on the prolonged curve at parameter t
    auto gradAt = [&](double t, int c, bool wrtU) {
        Vec4 x, u, ud;
        curve(t, x, u, ud);
        double base = wrtU ? u[c] : ud[c];
        double e = hIn * (1 + std::abs(base));
        return d1(
            [&](double dd) {
                Vec4 uu = u, aa = ud;
                (wrtU ? uu[c] : aa[c]) += dd;
                return probe(L, x, uu, aa);
            },
            e);
    };

    Vec4 out{};
    for (int al = 0; al < 4; ++al) {
        double ex = h * (1 + std::abs(j.x[al]));
        double t1 = d1(
            [&](double dd) {
                Vec4 xx = j.x;
                xx[al] += dd;
                return probe(L, xx, j.u, j.udot);
            },
            ex);
        double t2 = d1([&](double t) { return gradAt(t, al, true); }, eps);
        double q0 = gradAt(0.0, al, false);
        double t3 = d2([&](double t) { return gradAt(t, al, false); }, q0, eps);
        out[al] = t1 - t2 + t3;
    }
    return out;
}

ZermeloResiduals zermeloCheck(const ScalarField2& L, const KinState& st,
                              double h) {
    if (!(h > 0)) throw Error("zermeloCheck: step must be positive");
    double L0 = probe(L, st.x, st.u, st.a);
    ZermeloResiduals r;
    r.r1 = -L0;
    for (int al = 0; al < 4; ++al) {
        double eu = h * (1 + std::abs(st.u[al]));
        double dLdu = d1(
            [&](double dd) {
                Vec4 uu = st.u;
                uu[al] += dd;
                return probe(L, st.x, uu, st.a);
            },
            eu);
        double ea = h * (1 + std::abs(st.a[al]));
        double dLda = d1(
            [&](double dd) {
                Vec4 aa = st.a;
                aa[al] += dd;
                return probe(L, st.x, st.u, aa);
            },
            ea);
        r.r1 += st.u[al] * dLdu + 2 * st.a[al] * dLda;
        r.r2 += st.u[al] * dLda;
    }
    return r;
}

double zermeloFinite(const ScalarField2& L, const KinState& st, double lambda,
                     double mu) {
    if (!(lambda > 0)) throw Error("zermeloFinite: lambda must be positive");
    Vec4 u2 = scale(lambda, st.u);
    Vec4 a2 = add(scale(lambda * lambda, st.a), scale(lambda * mu, st.u));
    return probe(L, st.x, u2, a2) - lambda * probe(L, st.x, st.u, st.a);
}

HomJet3 contactToHomogeneous(const ContactJet3& cj, double tp, double tpp,
                             double tppp) {
    if (tp == 0.0)
        throw SingularParametrization("contactToHomogeneous: dt/dtau vanishes");
    HomJet3 hj;
    hj.q = {cj.t, cj.x[0], cj.x[1], cj.x[2]};
    hj.q1[0] = tp;
    hj.q2[0] = tpp;
    hj.q3[0] = tppp;
    for (int i = 0; i < 3; ++i) {
        hj.q1[i + 1] = cj.v1[i] * tp;
        hj.q2[i + 1] = cj.v2[i] * tp * tp + cj.v1[i] * tpp;
        hj.q3[i + 1] =
            cj.v3[i] * tp * tp * tp + 3 * cj.v2[i] * tp * tpp + cj.v1[i] * tppp;
    }
    return hj;
}

ContactJet3 homogeneousToContact(const HomJet3& hj) {
    double tp = hj.q1[0], tpp = hj.q2[0], tppp = hj.q3[0];
    if (tp == 0.0)
        throw SingularParametrization("homogeneousToContact: dt/dtau vanishes");
    ContactJet3 cj;
    cj.t = hj.q[0];
    for (int i = 0; i < 3; ++i) {
        cj.x[i] = hj.q[i + 1];
        cj.v1[i] = hj.q1[i + 1] / tp;
        cj.v2[i] = (hj.q2[i + 1] - cj.v1[i] * tpp) / (tp * tp);
        cj.v3[i] = (hj.q3[i + 1] - 3 * cj.v2[i] * tp * tpp - cj.v1[i] * tppp) /
                   (tp * tp * tp);
    }
    return cj;
}

ScalarField2 homogenizeLagrangian(ContactLagrangian L) {
    return [L = std::move(L)](const Vec4& x, const Vec4& u, const Vec4& ud) {
        double u0 = u[0];
        if (u0 == 0.0)
            throw SingularParametrization("homogenizeLagrangian: dt/dtau vanishes");
        std::array<double, 3> xs{x[1], x[2], x[3]};
        std::array<double, 3> v1, v2;
        for (int i = 0; i < 3; ++i) v1[i] = u[i + 1] / u0;
        for (int i = 0; i < 3; ++i) v2[i] = (ud[i + 1] - v1[i] * ud[0]) / (u0 * u0);
        return L(x[0], xs, v1, v2) * u0;
    };
}

Vec4 homogenizeEulerPoisson(const std::array<double, 3>& E, const HomJet3& hj) {
    Vec4 out{};
    for (int i = 0; i < 3; ++i) {
        out[0] -= hj.q1[i + 1] * E[i];
        out[i + 1] = hj.q1[0] * E[i];
    }
    return out;
}

AutoparallelCheck autoparallelConditionCheck(const RhsField& xi,
                                             const KinState& st, double h) {
    if (!(h > 0)) throw Error("autoparallelConditionCheck: step must be positive");
    auto probeXi = [&](const KinState& s) -> Vec4 {
        Vec4 v;
        try {
            v = xi(s);
        } catch (const ChartExit&) {
            throw;
        } catch (const Error& e) {
            throw ChartExit(std::string("rhs probe left the chart: ") + e.what());
        }
        for (double c : v)
            if (!std::isfinite(c)) throw ChartExit("rhs probe not finite");
        return v;
    };

    // Jacobian column d xi / d coord^be by one-Richardson central differences
    auto column = [&](int be, bool wrtU) {
        double base = wrtU ? st.u[be] : st.a[be];
        double e = h * (1 + std::abs(base));
        auto at = [&](double dd) {
            KinState s = st;
            (wrtU ? s.u[be] : s.a[be]) += dd;
            return probeXi(s);
        };
        Vec4 p1 = at(e), m1 = at(-e), p2 = at(2 * e), m2 = at(-2 * e);
        Vec4 col;
        for (int al = 0; al < 4; ++al) {
            double c2 = (p1[al] - m1[al]) / (2 * e);
            double c1 = (p2[al] - m2[al]) / (4 * e);
            col[al] = (4 * c2 - c1) / 3;
        }
        return col;
    };

    Vec4 xi0 = probeXi(st);
    Vec4 juU{}, juA{}, jaU{}; // (dxi/du).u, (dxi/dudot).u, (dxi/dudot).udot
    for (int be = 0; be < 4; ++be) {
        Vec4 cu = column(be, true);
        Vec4 ca = column(be, false);
        for (int al = 0; al < 4; ++al) {
            juU[al] += cu[al] * st.u[be];
            juA[al] += ca[al] * st.u[be];
            jaU[al] += ca[al] * st.a[be];
        }
    }

    AutoparallelCheck res;
    Vec4 w1 = sub(st.a, scale(1.0 / 3.0, juA));
    Vec4 w2 = sub(sub(xi0, scale(1.0 / 3.0, juU)), scale(2.0 / 3.0, jaU));
    double uu = 0, w1u = 0, w2u = 0;
    for (int i = 0; i < 4; ++i) {
        uu += st.u[i] * st.u[i];
        w1u += w1[i] * st.u[i];
        w2u += w2[i] * st.u[i];
    }
    if (uu == 0.0) throw ZeroVelocity("autoparallelConditionCheck: zero velocity");
    res.kappa = w1u / uu;
    res.mu = w2u / uu;
    res.c1 = sub(w1, scale(res.kappa, st.u));
    res.c2 = sub(w2, scale(res.mu, st.u));
    return res;
}

} // namespace mtop
