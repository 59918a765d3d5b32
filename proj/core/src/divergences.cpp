#include "gmdiv/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace gmdiv {

DivKind div_kind_from_string(const std::string& s) {
    if (s == "TV" || s == "tv") return DivKind::TV;
    if (s == "H" || s == "h") return DivKind::H;
    if (s == "H2" || s == "h2") return DivKind::H2;
    if (s == "CHI2" || s == "chi2") return DivKind::CHI2;
    if (s == "KL" || s == "kl") return DivKind::KL;
    throw std::invalid_argument("unknown divergence kind: " + s);
}

std::string to_string(DivKind k) {
    switch (k) {
        case DivKind::TV: return "TV";
        case DivKind::H: return "H";
        case DivKind::H2: return "H2";
        case DivKind::CHI2: return "CHI2";
        case DivKind::KL: return "KL";
    }
    return "?";
}

std::vector<double> density_diff_roots(const MixingMeasure& pi,
                                       const MixingMeasure& eta, double a,
                                       double b, double step,
                                       std::size_t max_roots) {
    std::vector<double> roots;
    double xp = a, fp = mixture_density_diff(pi, eta, xp);
    const long steps = std::max(1L, std::lround((b - a) / step));
    for (long i = 1; i <= steps; ++i) {
        const double x = a + (b - a) * i / steps;
        const double f = mixture_density_diff(pi, eta, x);
        if (fp * f < 0.0) {
            double lo = xp, hi = x, flo = fp;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (lo + hi);
                const double fm = mixture_density_diff(pi, eta, m);
                if (flo * fm <= 0.0) hi = m;
                else { lo = m; flo = fm; }
            }
            roots.push_back(0.5 * (lo + hi));
            if (roots.size() >= max_roots) break;
        } else if (f == 0.0 && fp != 0.0) {
            roots.push_back(x);
            if (roots.size() >= max_roots) break;
        }
        xp = x;
        fp = f;
    }
    return roots;
}

namespace {

double tail_mass(double R, double M) {
    // int_{|x|>R} f_mix <= 2 Phibar(R - M) for atoms in [-M, M]
    return 2.0 * (1.0 - normal_cdf(R - M));
}

// Certified tail envelopes for the d = 1 integrands beyond [-R, R].
double tail_envelope(DivKind kind, double R, double M) {
    const double pb = 1.0 - normal_cdf(R - M);  // Phibar(R - M)
    switch (kind) {
        case DivKind::TV:
            // |p - q|/2 <= (p + q)/2, tail mass of each <= 2 Phibar(R-M)
            return 2.0 * pb;
        case DivKind::H:
        case DivKind::H2:
            // (sqrt p - sqrt q)^2/2 <= (p + q)/2
            return 2.0 * pb;
        case DivKind::CHI2:
            // (p-q)^2/q <= p^2/q <= e^{4M^2} phi(|x| - 3M) for |x| >= R
            return 2.0 * std::exp(4.0 * M * M) * (1.0 - normal_cdf(R - 3.0 * M));
        case DivKind::KL: {
            // |p log(p/q)| <= phi(|x|-M) * 2M|x| for |x| >= R (and the
            // negative branch |q/p - 1| contribution is dominated likewise)
            const double t = std::exp(-0.5 * (R - M) * (R - M)) /
                             std::sqrt(2.0 * M_PI);
            return 2.0 * 2.0 * M * (t + (M + R) * pb);
        }
    }
    return 0.0;
}

// d >= 2: tensor Gauss rule against N(0, s^2 I) reference.
template <class F>
double tensor_gauss(const F& f, int d, double s, const GaussHermiteRule& rule) {
    std::vector<double> x(d);
    CompensatedSum<double> acc;
    std::function<void(int, double)> rec = [&](int pos, double w) {
        if (pos == d) {
            double lref = 0.0;
            for (double v : x) lref += v * v;
            const double ref =
                std::exp(-0.5 * lref - 0.5 * d * std::log(2.0 * M_PI));
            std::vector<double> sx(d);
            for (int j = 0; j < d; ++j) sx[j] = s * x[j];
            acc.add(w * f(sx) / ref);
            return;
        }
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            x[pos] = rule.nodes[i];
            rec(pos + 1, w * rule.weights[i]);
        }
    };
    rec(0, 1.0);
    return std::pow(s, d) * acc.result();
}

double integrand(DivKind kind, const MixingMeasure& pi, const MixingMeasure& eta,
                 const std::vector<double>& x) {
    const double p = mixture_density(pi, x);
    const double q = mixture_density(eta, x);
    switch (kind) {
        case DivKind::TV:
            return 0.5 * std::fabs(mixture_density_diff(pi, eta, x));
        case DivKind::H:
        case DivKind::H2: {
            const double diff = mixture_density_diff(pi, eta, x);
            const double den = std::sqrt(p) + std::sqrt(q);
            if (den < 1e-300) return 0.0;
            return 0.5 * diff * diff / (den * den);
        }
        case DivKind::CHI2: {
            if (q < 1e-300) return 0.0;
            const double diff = mixture_density_diff(pi, eta, x);
            return diff * diff / q;
        }
        case DivKind::KL: {
            if (p < 1e-300) return 0.0;
            if (q < 1e-300) return 0.0;
            return p * (std::log(p) - std::log(q));
        }
    }
    return 0.0;
}

DivergenceResult divergence_1d(DivKind kind, const MixingMeasure& pi,
                               const MixingMeasure& eta,
                               const QuadratureSpec& quad) {
    const double M = std::max(pi.support_radius(), eta.support_radius());
    const double R = quad.radius_for(M);
    DivergenceResult out;

    std::vector<double> cuts{-R};
    if (kind == DivKind::TV) {
        // |.| kinks: subdivide at sign changes of the density difference
        const auto roots = density_diff_roots(pi, eta, -R, R);
        cuts.insert(cuts.end(), roots.begin(), roots.end());
    }
    cuts.push_back(R);

    auto f = [&](double x) { return integrand(kind, pi, eta, {x}); };
    CompensatedSum<double> val, err;
    long nodes = 0;
    const long seg_budget =
        std::max(30000L, quad.node_budget / static_cast<long>(cuts.size()));
    bool conv = true;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto r = integrate_adaptive<double>(
            f, cuts[i], cuts[i + 1], quad.abs_tol / cuts.size(), quad.rel_tol,
            seg_budget);
        val.add(r.value);
        err.add(r.error);
        nodes += r.nodes;
        conv = conv && r.converged;
    }
    out.value = std::max(0.0, val.result());
    out.error_bound = err.result() + tail_envelope(kind, R, M);
    out.nodes_used = nodes;
    out.converged = conv;
    if (kind == DivKind::H) {
        const double h2 = out.value, e2 = out.error_bound;
        out.value = std::sqrt(h2);
        out.error_bound =
            (out.value > 1e-8) ? e2 / (2.0 * out.value) : std::sqrt(e2);
    }
    return out;
}

DivergenceResult divergence_nd(DivKind kind, const MixingMeasure& pi,
                               const MixingMeasure& eta,
                               const QuadratureSpec& quad) {
    const int d = pi.d;
    const double M = std::max(pi.support_radius(), eta.support_radius());
    long m = std::lround(std::pow(static_cast<double>(quad.node_budget),
                                  1.0 / d));
    m = std::clamp(m, 16L, 80L);
    auto run = [&](int mm) {
        const auto rule = gauss_hermite_rule(mm);
        double max_node = 0.0;
        for (double v : rule.nodes) max_node = std::max(max_node, std::fabs(v));
        const double s = std::max(1.5, (M + 7.0) / max_node);
        auto f = [&](const std::vector<double>& x) {
            return integrand(kind, pi, eta, x);
        };
        return tensor_gauss(f, d, s, rule);
    };
    const double coarse = run(static_cast<int>(m) - m / 4);
    const double fine = run(static_cast<int>(m));
    DivergenceResult out;
    out.value = std::max(0.0, fine);
    out.error_bound = std::fabs(fine - coarse);
    out.nodes_used = static_cast<long>(std::pow(static_cast<double>(m), d));
    out.heuristic = true;
    if (kind == DivKind::H) {
        const double h2 = out.value, e2 = out.error_bound;
        out.value = std::sqrt(h2);
        out.error_bound =
            (out.value > 1e-8) ? e2 / (2.0 * out.value) : std::sqrt(e2);
    }
    return out;
}

}  // namespace

DivergenceResult divergence(DivKind kind, const MixingMeasure& pi,
                            const MixingMeasure& eta,
                            const QuadratureSpec& quad) {
    if (pi.d != eta.d) throw std::invalid_argument("divergence: dimension mismatch");
    if (pi.d == 1) return divergence_1d(kind, pi, eta, quad);
    return divergence_nd(kind, pi, eta, quad);
}

DivergenceResult phi_norm(const MixingMeasure& pi, const MixingMeasure& eta,
                          int p, const QuadratureSpec& quad) {
    if (p != 1 && p != 2) throw std::invalid_argument("phi_norm: p must be 1 or 2");
    if (pi.d != eta.d) throw std::invalid_argument("phi_norm: dimension mismatch");
    const int d = pi.d;
    const double M = std::max(pi.support_radius(), eta.support_radius());
    DivergenceResult out;
    if (d == 1) {
        const double R = quad.radius_for(M);
        std::vector<double> cuts{-R};
        if (p == 1) {
            const auto roots = density_diff_roots(pi, eta, -R, R);
            cuts.insert(cuts.end(), roots.begin(), roots.end());
        }
        cuts.push_back(R);
        auto f = [&](double x) {
            const double g = g_ratio(pi, eta, x);
            const double w = phi_pdf(x);
            return p == 1 ? std::fabs(g) * w : g * g * w;
        };
        CompensatedSum<double> val, err;
        long nodes = 0;
        bool conv = true;
        const long seg_budget =
            std::max(30000L, quad.node_budget / static_cast<long>(cuts.size()));
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const auto r = integrate_adaptive<double>(
                f, cuts[i], cuts[i + 1], quad.abs_tol / cuts.size(),
                quad.rel_tol, seg_budget);
            val.add(r.value);
            err.add(r.error);
            nodes += r.nodes;
            conv = conv && r.converged;
        }
        // tails: |g| phi = |p - q| <= p + q; g^2 phi <= e^{4M^2} phi(|x|-3M)
        const double tail =
            p == 1 ? 2.0 * tail_mass(R, M)
                   : 2.0 * std::exp(4.0 * M * M) *
                         (1.0 - normal_cdf(R - 3.0 * M));
        out.value = std::max(0.0, val.result());
        out.error_bound = err.result() + tail;
        out.nodes_used = nodes;
        out.converged = conv;
    } else {
        const auto rule = gauss_hermite_rule(48);
        auto f = [&](const std::vector<double>& x) {
            const double g = g_ratio(pi, eta, x);
            const double w = phi_d_pdf(x);
            return p == 1 ? std::fabs(g) * w : g * g * w;
        };
        double max_node = 0.0;
        for (double v : rule.nodes) max_node = std::max(max_node, std::fabs(v));
        const double s = std::max(1.5, (M + 7.0) / max_node);
        out.value = std::max(0.0, tensor_gauss(f, d, s, rule));
        const auto rule2 = gauss_hermite_rule(36);
        double mn2 = 0.0;
        for (double v : rule2.nodes) mn2 = std::max(mn2, std::fabs(v));
        const double s2 = std::max(1.5, (M + 7.0) / mn2);
        out.error_bound = std::fabs(out.value - tensor_gauss(f, d, s2, rule2));
        out.heuristic = true;
        out.nodes_used = static_cast<long>(std::pow(48.0, d));
    }
    if (p == 2) {
        const double v2 = out.value, e2 = out.error_bound;
        out.value = std::sqrt(v2);
        out.error_bound = (out.value > 1e-8) ? e2 / (2.0 * out.value)
                                             : std::sqrt(e2);
    }
    return out;
}

TranslateBound chi2_translate_bound(const MixingMeasure& pi,
                                    const MixingMeasure& eta,
                                    const QuadratureSpec& quad) {
    if (pi.d != eta.d) throw std::invalid_argument("chi2_translate_bound: dimension mismatch");
    const int d = pi.d;
    if (d > 2) throw std::invalid_argument("chi2_translate_bound: d <= 2 only");
    const double M = std::max({pi.support_radius(), eta.support_radius(),
                               std::min(pi.radius_M, eta.radius_M)});
    const double R = quad.radius_for(M);

    auto objective = [&](const std::vector<double>& th) {
        if (d == 1) {
            auto f = [&](double x) {
                const double diff = mixture_density_diff(pi, eta, {x});
                const double w = phi_pdf(x - th[0]);
                if (w < 1e-300) return 0.0;
                return diff * diff / w;
            };
            return integrate_adaptive<double>(f, -R, R, quad.abs_tol,
                                              quad.rel_tol, quad.node_budget)
                .value;
        }
        const auto rule = gauss_hermite_rule(40);
        auto f = [&](const std::vector<double>& x) {
            const double diff = mixture_density_diff(pi, eta, x);
            double n2 = 0.0;
            for (int j = 0; j < d; ++j) {
                const double dl = x[j] - th[j];
                n2 += dl * dl;
            }
            const double w = std::exp(-0.5 * n2 - 0.5 * d * std::log(2.0 * M_PI));
            if (w < 1e-300) return 0.0;
            return diff * diff / w;
        };
        double max_node = 0.0;
        for (double v : rule.nodes) max_node = std::max(max_node, std::fabs(v));
        const double s = std::max(1.5, (M + 7.0) / max_node);
        return tensor_gauss(f, d, s, rule);
    };

    TranslateBound out;
    out.argmax.assign(d, 0.0);
    const int steps = d == 1 ? 41 : 17;
    std::vector<int> ix(d, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == d) {
            std::vector<double> th(d);
            for (int j = 0; j < d; ++j)
                th[j] = -M + 2.0 * M * ix[j] / (steps - 1);
            const double v = objective(th);
            if (v > out.value) {
                out.value = v;
                out.argmax = th;
            }
            return;
        }
        for (ix[pos] = 0; ix[pos] < steps; ++ix[pos]) rec(pos + 1);
    };
    if (M == 0.0) out.value = objective(std::vector<double>(d, 0.0));
    else rec(0);
    out.error_bound = 2.0 * std::exp(4.0 * M * M) *
                      (1.0 - normal_cdf(R - 3.0 * M));
    return out;
}

}  // namespace gmdiv
