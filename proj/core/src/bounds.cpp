#include "gmdiv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gmdiv/hermite.hpp"

namespace gmdiv {

double alpha(double t, double delta) {
    if (t <= 0.0 || t >= 1.0) throw std::domain_error("alpha: t must be in (0,1)");
    if (delta <= 0.0) throw std::domain_error("alpha: delta must be positive");
    return (2.0 + delta) / std::log(std::max(std::log(1.0 / t), M_E));
}

namespace {

// max(1, A(kappa)/2, log-term) for the A1 infimum
double a1_objective(double kappa, double kappa1) {
    const double gap = kappa1 - kappa;
    const double arg = std::max(
        std::pow(3.0, 8) * std::exp(1.0 + 2.0 * kappa) / (2.0 * gap), M_E);
    const double third = std::log(arg) / (2.0 * gap);
    return std::max({1.0, 0.5 * A_of_kappa(kappa), third});
}

template <class F>
double golden_min(const F& f, double a, double b, int iters = 80) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return f(0.5 * (a + b));
}

double w0_of(double kappa2, double B0) {
    return std::max(1.0, 2.0 / (kappa2 - 1.0) *
                             std::log(std::max(B0 / (kappa2 - 1.0), M_E)));
}

}  // namespace

double A1_constant(double kappa1) {
    if (kappa1 <= 1.0) throw std::domain_error("A1_constant: kappa1 must exceed 1");
    const double lo = 1.0 + 1e-9 * (kappa1 - 1.0);
    const double hi = kappa1 - 1e-9 * (kappa1 - 1.0);
    double best = std::numeric_limits<double>::infinity();
    double best_k = lo;
    const int N = 512;
    for (int i = 0; i <= N; ++i) {
        const double k = lo + (hi - lo) * i / N;
        const double v = a1_objective(k, kappa1);
        if (v < best) { best = v; best_k = k; }
    }
    const double h = (hi - lo) / N;
    const double a = std::max(lo, best_k - h), b = std::min(hi, best_k + h);
    return std::min(best, golden_min(
        [&](double k) { return a1_objective(k, kappa1); }, a, b));
}

long lambert_n0(double kappa2, double B0, double t) {
    if (kappa2 <= 1.0) throw std::domain_error("lambert_n0: kappa2 must exceed 1");
    if (B0 < 1.0) throw std::domain_error("lambert_n0: B0 >= 1 required");
    if (t <= 0.0 || t >= 1.0) throw std::domain_error("lambert_n0: t in (0,1)");
    const double w0 = w0_of(kappa2, B0);
    const double first = 2.0 * B0 * std::exp(w0);
    const double second = 2.0 * kappa2 * std::log(1.0 / t) /
                          std::log(std::max(std::log(1.0 / t), M_E));
    return static_cast<long>(std::floor(std::max(first, second)));
}

BoundConstants compute_C0(double delta, double M, int d) {
    if (delta <= 0.0) throw std::domain_error("compute_C0: delta must be positive");
    if (M <= 0.0 || d < 1) throw std::domain_error("compute_C0: bad M or d");

    // constraint curve: kappa2 = (2 + delta) / (2 kappa1), both must exceed 1
    const double k1_max = (2.0 + delta) / 2.0;
    auto eval = [&](double kappa1) -> BoundConstants {
        BoundConstants bc;
        bc.delta = delta;
        bc.M = M;
        bc.d = d;
        bc.kappa1 = kappa1;
        bc.kappa2 = (2.0 + delta) / (2.0 * kappa1);
        bc.A1 = A1_constant(kappa1);
        bc.B0 = std::max(1.0, 2.0 * M_E * M * M * d) * std::exp(2.0 * kappa1);
        const double w0 = w0_of(bc.kappa2, bc.B0);
        const double logB = std::log(2.0 * bc.B0) + w0;
        bc.B = logB > 700.0 ? std::numeric_limits<double>::infinity()
                            : std::floor(2.0 * bc.B0 * std::exp(w0));
        bc.logC0 = kappa1 * std::max(bc.A1 * d, bc.B);
        return bc;
    };

    const double lo = 1.0 + 1e-6 * (k1_max - 1.0);
    const double hi = k1_max - 1e-6 * (k1_max - 1.0);
    BoundConstants best = eval(lo);
    const int N = 512;
    for (int i = 1; i <= N; ++i) {
        const double k1 = lo + (hi - lo) * i / N;
        const BoundConstants bc = eval(k1);
        // deterministic tie-break: smallest kappa1 wins
        if (bc.logC0 < best.logC0) best = bc;
    }
    const double h = (hi - lo) / N;
    const double a = std::max(lo, best.kappa1 - h);
    const double b = std::min(hi, best.kappa1 + h);
    // refine around the grid winner
    const int R = 64;
    for (int i = 0; i <= R; ++i) {
        const BoundConstants bc = eval(a + (b - a) * i / R);
        if (bc.logC0 < best.logC0) best = bc;
    }
    return best;
}

double log_J_transfer(double t, const BoundConstants& bc) {
    if (t <= 0.0 || t >= 1.0) throw std::domain_error("log_J_transfer: t in (0,1)");
    const double lt = std::log(t);
    return std::max(bc.logC0 + lt, (1.0 - alpha(t, bc.delta)) * lt);
}

TheoremReport verify_main_theorem(const MixingMeasure& pi,
                                  const MixingMeasure& eta, double delta,
                                  const QuadratureSpec& quad) {
    TheoremReport rep;
    const auto tv = divergence(DivKind::TV, pi, eta, quad);
    const auto h = divergence(DivKind::H, pi, eta, quad);
    const auto chi = divergence(DivKind::CHI2, pi, eta, quad);
    const auto l2 = phi_norm(pi, eta, 2, quad);
    rep.tv = tv.value;
    rep.h = h.value;
    rep.chi2 = chi.value;
    rep.l2norm = l2.value;

    const double Ms = std::max({pi.support_radius(), eta.support_radius(),
                                1e-3});
    const BoundConstants bc = compute_C0(delta, Ms, pi.d);
    // the L2-norm variant is stated for supports in [-2M', 2M']^d
    const BoundConstants bc_half = compute_C0(delta, std::max(Ms / 2.0, 1e-3),
                                              pi.d);

    auto add_line = [&](const std::string& name, double lhs, double lhs_err,
                        const BoundConstants& c) {
        InequalityReport ir;
        ir.name = name;
        ir.lhs = lhs;
        ir.error_bound = lhs_err + tv.error_bound;
        if (rep.tv <= 10.0 * tv.error_bound) {
            // pi and eta numerically identical: rhs is 0-like; pass if lhs is too
            ir.rhs_log = -std::numeric_limits<double>::infinity();
            ir.margin_log = 0.0;
            ir.ok = lhs <= 10.0 * ir.error_bound;
        } else {
            const double ltv = std::log(rep.tv);
            ir.rhs_log = std::max(c.logC0, -alpha(rep.tv, delta) * ltv) + ltv;
            const double lhs_hi = lhs + 10.0 * ir.error_bound;
            ir.margin_log = ir.rhs_log - std::log(std::max(lhs, 1e-300));
            ir.ok = std::log(std::max(lhs_hi, 1e-300)) <= ir.rhs_log;
        }
        rep.lines.push_back(ir);
        rep.all_ok = rep.all_ok && ir.ok;
    };

    add_line("sqrt_chi2_vs_TV", std::sqrt(std::max(0.0, chi.value)),
             chi.error_bound, bc);
    add_line("L2norm_vs_TV", l2.value, l2.error_bound, bc_half);
    add_line("H_vs_TV", h.value, h.error_bound, bc);
    return rep;
}

}  // namespace gmdiv
