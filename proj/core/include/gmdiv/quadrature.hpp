#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace gmdiv {

/// Integration strategy shared by the divergence and norm routines.
struct QuadratureSpec {
    enum class Family { adaptive_interval, gauss_hermite };
    Family family = Family::adaptive_interval;
    double truncation_radius = 0.0;  // <= 0: auto, M + max(12, sqrt(2 ln(1/abs_tol)))
    long node_budget = 2000000;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int precision_digits = 0;  // 0 = double, > 0 = extended working precision

    double radius_for(double M) const {
        if (truncation_radius > 0.0) return truncation_radius;
        return M + std::max(12.0, std::sqrt(2.0 * std::log(1.0 / abs_tol)));
    }
};

namespace detail {
// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace detail

template <class Real>
struct QuadResult {
    Real value{};
    Real error{};
    long nodes = 0;
    bool converged = true;
};

/// One GK15 panel on [a, b]; error estimate follows QUADPACK's rescaling.
template <class Real, class F>
QuadResult<Real> gk15_panel(F&& f, Real a, Real b) {
    using std::fabs;
    const Real half = (b - a) / 2;
    const Real mid = (a + b) / 2;
    const Real fc = f(mid);
    Real resk = fc * Real(detail::kGK15WeightsK[7]);
    Real resg = fc * Real(detail::kGK15WeightsG[3]);
    Real resabs = fabs(resk);
    Real fv[7];
    for (int i = 0; i < 7; ++i) {
        const Real dx = half * Real(detail::kGK15Nodes[i]);
        const Real f1 = f(mid - dx), f2 = f(mid + dx);
        fv[i] = f1 + f2;
        resk += Real(detail::kGK15WeightsK[i]) * fv[i];
        resabs += Real(detail::kGK15WeightsK[i]) * (fabs(f1) + fabs(f2));
        if (i % 2 == 1) resg += Real(detail::kGK15WeightsG[i / 2]) * fv[i];
    }
    const Real reskh = resk / 2;
    Real resasc = Real(detail::kGK15WeightsK[7]) * fabs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += Real(detail::kGK15WeightsK[i]) * fabs(fv[i] - 2 * reskh);
    resasc *= fabs(half);
    resabs *= fabs(half);
    QuadResult<Real> out;
    out.value = resk * half;
    Real err = fabs((resk - resg) * half);
    if (resasc != Real(0) && err != Real(0)) {
        using std::pow;
        using std::sqrt;
        const Real scale = pow(Real(200) * err / resasc, Real(1.5));
        if (scale < Real(1)) err = resasc * scale; else err = resasc;
    }
    out.error = err;
    out.nodes = 15;
    return out;
}

/// Globally adaptive bisection driven by the GK15 error estimate.
template <class Real, class F>
QuadResult<Real> integrate_adaptive(F&& f, Real a, Real b, Real abs_tol,
                                    Real rel_tol, long node_budget = 2000000) {
    struct Seg {
        Real a, b, value, error;
    };
    QuadResult<Real> first = gk15_panel(f, a, b);
    std::vector<Seg> segs{{a, b, first.value, first.error}};
    long nodes = 15;
    while (true) {
        Real total = 0, err = 0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        using std::fabs;
        const Real tol = std::max<Real>(abs_tol, rel_tol * fabs(total));
        if (err <= tol || nodes + 30 > node_budget) {
            QuadResult<Real> out;
            out.value = total;
            out.error = err;
            out.nodes = nodes;
            out.converged = err <= tol;
            return out;
        }
        Seg s = segs[worst];
        const Real m = (s.a + s.b) / 2;
        QuadResult<Real> l = gk15_panel(f, s.a, m);
        QuadResult<Real> r = gk15_panel(f, m, s.b);
        segs[worst] = {s.a, m, l.value, l.error};
        segs.push_back({m, s.b, r.value, r.error});
        nodes += 30;
    }
}

/// Gauss rule for the weight phi (standard normal density): integrates
/// int f(x) phi(x) dx exactly for polynomials of degree <= 2m-1.
/// Nodes are roots of the normalized Hermite polynomial h_m, weights are
/// Christoffel numbers 1 / sum_{k<m} h_k(x)^2.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermiteRule gauss_hermite_rule(int m);

}  // namespace gmdiv
