#include "gmdiv/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "gmdiv/mixtures.hpp"

namespace gmdiv {

double PolyInBasis::eval(const std::vector<double>& x) const {
    std::vector<std::vector<double>> tab(d);
    for (int j = 0; j < d; ++j) tab[j] = hermite_all_1d(n, x[j]);
    CompensatedSum<double> s;
    for (std::size_t i = 0; i < index.size(); ++i) {
        double p = coeffs[i];
        if (p == 0.0) continue;
        for (int j = 0; j < d; ++j) p *= tab[j][index[i].entries[j]];
        s.add(p);
    }
    return s.result();
}

double PolyInBasis::norm_L2() const {
    CompensatedSum<double> s;
    for (double c : coeffs) s.add(c * c);
    return std::sqrt(std::max(0.0, s.result()));
}

PolyInBasis monomial_in_basis(int n, int d) {
    // x^n = n! sum_m He_{n-2m}(x) / (2^m m! (n-2m)!), h_k = He_k / sqrt(k!)
    PolyInBasis P;
    P.d = d;
    P.n = n;
    P.index = enumerate_multi_indices(n, d);
    P.coeffs.assign(P.index.size(), 0.0);
    for (std::size_t i = 0; i < P.index.size(); ++i) {
        const auto& k = P.index[i];
        bool pure = true;
        for (int j = 1; j < d; ++j)
            if (k.entries[j] != 0) pure = false;
        if (!pure) continue;
        const int deg = k.entries[0];
        if ((n - deg) % 2 != 0 || deg > n) continue;
        const int m = (n - deg) / 2;
        const double lc = log_factorial(n) - m * std::log(2.0) -
                          log_factorial(m) - 0.5 * log_factorial(deg);
        P.coeffs[i] = std::exp(lc);
    }
    return P;
}

double monomial_L1_norm(int n) {
    return std::exp(0.5 * n * std::log(2.0) + std::lgamma(0.5 * (n + 1)) -
                    0.5 * std::log(M_PI));
}

double monomial_L2_norm(int n) {
    return std::sqrt(double_factorial(2 * n - 1));
}

namespace {

struct QuadGrid {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;  // include the phi_d weight
};

QuadGrid make_grid(int n, int d) {
    QuadGrid g;
    if (d == 1) {
        const double E = 2.0 * n + d;
        const double R = std::sqrt(6.0 * E) + 3.0;
        const double step = 0.02;
        const long m = std::lround(2.0 * R / step);
        for (long i = 0; i <= m; ++i) {
            const double x = -R + 2.0 * R * i / m;
            g.points.push_back({x});
            g.weights.push_back(phi_pdf(x) * (2.0 * R / m));
        }
        return g;
    }
    const auto rule = gauss_hermite_rule(std::min(64, 2 * n + 24));
    std::vector<double> x(d);
    std::function<void(int, double)> rec = [&](int pos, double w) {
        if (pos == d) {
            g.points.push_back(x);
            g.weights.push_back(w);
            return;
        }
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            x[pos] = rule.nodes[i];
            rec(pos + 1, w * rule.weights[i]);
        }
    };
    rec(0, 1.0);
    return g;
}

// basis matrix B[i][k] = h_{index[k]}(points[i])
std::vector<std::vector<double>> basis_matrix(
    const QuadGrid& g, const std::vector<MultiIndex>& index, int n, int d) {
    std::vector<std::vector<double>> B(g.points.size(),
                                       std::vector<double>(index.size()));
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        std::vector<std::vector<double>> tab(d);
        for (int j = 0; j < d; ++j)
            tab[j] = hermite_all_1d(n, g.points[i][j]);
        for (std::size_t k = 0; k < index.size(); ++k) {
            double p = 1.0;
            for (int j = 0; j < d; ++j) p *= tab[j][index[k].entries[j]];
            B[i][k] = p;
        }
    }
    return B;
}

double exact_L1(const PolyInBasis& P, const QuadratureSpec& quad) {
    if (P.d == 1) {
        const double E = 2.0 * P.n + 1.0;
        const double R = std::sqrt(6.0 * E) + 6.0;
        // subdivide at the (at most n) real roots
        std::vector<double> cuts{-R};
        double xp = -R, fp = P.eval({xp});
        const long m = std::lround(2.0 * R / 0.005);
        for (long i = 1; i <= m; ++i) {
            const double x = -R + 2.0 * R * i / m;
            const double f = P.eval({x});
            if (fp * f < 0.0) {
                double lo = xp, hi = x, flo = fp;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = P.eval({mid});
                    if (flo * fm <= 0.0) hi = mid;
                    else { lo = mid; flo = fm; }
                }
                cuts.push_back(0.5 * (lo + hi));
            }
            xp = x;
            fp = f;
        }
        cuts.push_back(R);
        auto f = [&](double x) { return std::fabs(P.eval({x})) * phi_pdf(x); };
        CompensatedSum<double> s;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            s.add(integrate_adaptive<double>(f, cuts[i], cuts[i + 1],
                                             quad.abs_tol, quad.rel_tol,
                                             200000L)
                      .value);
        return s.result();
    }
    const auto g = make_grid(P.n, P.d);
    CompensatedSum<double> s;
    for (std::size_t i = 0; i < g.points.size(); ++i)
        s.add(g.weights[i] * std::fabs(P.eval(g.points[i])));
    return s.result();
}

// projected gradient descent on the unit sphere restricted to `mask`
double optimize_subspace(const QuadGrid& g,
                         const std::vector<std::vector<double>>& B,
                         std::vector<double>& c,
                         const std::vector<char>& mask) {
    const std::size_t K = c.size();
    const double eps = 1e-9;
    auto normalize = [&](std::vector<double>& v) {
        double n2 = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            if (!mask[k]) v[k] = 0.0;
            n2 += v[k] * v[k];
        }
        const double nrm = std::sqrt(n2);
        if (nrm > 0.0)
            for (double& x : v) x /= nrm;
    };
    auto value_grad = [&](const std::vector<double>& v,
                          std::vector<double>& grad) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double val = 0.0;
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            double P = 0.0;
            for (std::size_t k = 0; k < K; ++k) P += v[k] * B[i][k];
            const double a = std::sqrt(P * P + eps * eps);
            val += g.weights[i] * a;
            const double s = g.weights[i] * P / a;
            for (std::size_t k = 0; k < K; ++k) grad[k] += s * B[i][k];
        }
        return val;
    };
    normalize(c);
    std::vector<double> grad(K), trial(K);
    double val = value_grad(c, grad);
    double lr = 0.2;
    for (int it = 0; it < 400; ++it) {
        // project the gradient onto the tangent space of the sphere
        double dot = 0.0;
        for (std::size_t k = 0; k < K; ++k) dot += grad[k] * c[k];
        double gnorm = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            trial[k] = grad[k] - dot * c[k];
            gnorm += trial[k] * trial[k];
        }
        if (gnorm < 1e-24) break;
        bool improved = false;
        for (int bt = 0; bt < 30; ++bt) {
            std::vector<double> cand(K);
            for (std::size_t k = 0; k < K; ++k)
                cand[k] = c[k] - lr * trial[k];
            normalize(cand);
            std::vector<double> g2(K);
            const double v2 = value_grad(cand, g2);
            if (v2 < val - 1e-15) {
                c = cand;
                grad = g2;
                val = v2;
                lr *= 1.2;
                improved = true;
                break;
            }
            lr *= 0.5;
        }
        if (!improved || lr < 1e-14) break;
    }
    return val;
}

}  // namespace

CnEstimate estimate_cn(int n, int d, int restarts, std::uint64_t seed,
                       const QuadratureSpec& quad) {
    if (multi_index_count(n, d) > 200.0)
        throw std::length_error("estimate_cn: coefficient dimension cap (200) exceeded");
    CnEstimate out;
    out.n = n;
    out.d = d;

    const auto index = enumerate_multi_indices(n, d);
    const std::size_t K = index.size();
    const auto g = make_grid(n, d);
    const auto B = basis_matrix(g, index, n, d);

    // parity masks (d = 1): the extremizer family is parity-pure
    std::vector<std::vector<char>> masks;
    if (d == 1 && n >= 1) {
        std::vector<char> even(K, 0), odd(K, 0);
        for (std::size_t k = 0; k < K; ++k)
            (index[k].total_degree() % 2 == 0 ? even : odd)[k] = 1;
        masks.push_back(even);
        masks.push_back(odd);
    } else {
        masks.emplace_back(K, 1);
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> best_c(K, 0.0);
    best_c[0] = 1.0;
    for (int r = 0; r < restarts; ++r) {
        for (const auto& mask : masks) {
            std::vector<double> c(K);
            for (double& v : c) v = gauss(rng);
            const double v = optimize_subspace(g, B, c, mask);
            if (v < best_val) {
                best_val = v;
                best_c = c;
            }
        }
    }

    out.best_poly.d = d;
    out.best_poly.n = n;
    out.best_poly.index = index;
    out.best_poly.coeffs = best_c;
    out.estimate = n == 0 ? 1.0 : exact_L1(out.best_poly, quad);

    // spectral lower bound: valid when E_{n,d}/d >= A(kappa)
    const double E = 2.0 * n + d;
    out.lower_bound = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double kappa = 1.0 + 1e-4 + 9.0 * i / 4000.0;
        if (E / d < A_of_kappa(kappa)) continue;
        const double lb =
            0.5 * std::exp(-0.5 * log_C_nd(n, d) - 0.5 * kappa * E);
        if (lb > out.lower_bound) {
            out.lower_bound = lb;
            out.kappa_at_lower = kappa;
        }
    }

    out.monomial_ratio = monomial_L1_norm(n) / monomial_L2_norm(n);
    return out;
}

NikolskiiReport nikolskii_check(const PolyInBasis& P, double grid_step) {
    NikolskiiReport rep;
    const double E = 2.0 * P.n + P.d;
    const double R = std::sqrt(6.0 * E) + 2.0;
    const double step = grid_step > 0.0 ? grid_step : (P.d == 1 ? 0.01 : 0.05);
    const long m = std::lround(2.0 * R / step);
    std::vector<double> x(P.d);
    rep.arg_sup.assign(P.d, 0.0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == P.d) {
            double n2 = 0.0;
            for (double v : x) n2 += v * v;
            const double lhs =
                std::fabs(P.eval(x)) *
                std::exp(-0.25 * n2 - 0.25 * P.d * std::log(2.0 * M_PI));
            if (lhs > rep.sup_lhs) {
                rep.sup_lhs = lhs;
                rep.arg_sup = x;
            }
            return;
        }
        for (long i = 0; i <= m; ++i) {
            x[pos] = -R + 2.0 * R * i / m;
            rec(pos + 1);
        }
    };
    rec(0);
    rep.rhs = std::pow(2.0 * M_PI, -0.25 * P.d) *
              std::exp(0.5 * log_C_nd(P.n, P.d)) * P.norm_L2();
    rep.ok = rep.sup_lhs <= rep.rhs + 1e-12;
    return rep;
}

RestrictedRangeReport restricted_range_check(int n, int d, double kappa,
                                             const QuadratureSpec& quad) {
    if (kappa <= 1.0) throw std::domain_error("restricted_range_check: kappa > 1");
    RestrictedRangeReport rep;
    const double E = 2.0 * n + d;
    const double R0 = std::sqrt(2.0 * kappa * E);

    // K_n(x,x) is rotation invariant: reduce the tail integral to radius
    const double log_surface = std::log(2.0) + 0.5 * d * std::log(M_PI) -
                               std::lgamma(0.5 * d);
    auto f = [&](double r) {
        std::vector<double> x(d, 0.0);
        x[0] = r;
        const double K = cd_kernel_diag(n, x);
        return K * std::exp(log_surface + (d - 1) * std::log(r) - 0.5 * r * r -
                            0.5 * d * std::log(2.0 * M_PI));
    };
    rep.trace = integrate_adaptive<double>(f, R0, R0 + 14.0, quad.abs_tol,
                                           quad.rel_tol, quad.node_budget)
                    .value;

    const double c = c_of_kappa(kappa);
    rep.bound = std::pow(M_E / (2.0 * d) * std::sqrt(kappa / (kappa - 1.0)),
                         0.5 * d) *
                std::pow(E, 0.5 * d) * std::exp(-c * E);
    rep.condition_applies = E / d >= A_of_kappa(kappa);
    rep.trace_le_bound = rep.trace <= rep.bound * (1.0 + 1e-10) + 1e-12;
    rep.trace_le_half = rep.trace <= 0.5 + 1e-12;
    return rep;
}

}  // namespace gmdiv
