#include "gmdiv/hermite.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gmdiv/quadrature.hpp"

namespace gmdiv {

double MultiIndex::log_factorial() const {
    double s = 0.0;
    for (int k : entries) s += gmdiv::log_factorial(k);
    return s;
}

std::vector<MultiIndex> enumerate_multi_indices(int n, int d, std::int64_t cap) {
    if (n < 0 || d < 1) throw std::invalid_argument("enumerate_multi_indices: need n >= 0, d >= 1");
    const double count = multi_index_count(n, d);
    if (count > static_cast<double>(cap))
        throw std::length_error("multi-index enumeration cap exceeded");
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<int> k(d, 0);
    // graded order: degree 0, 1, ..., n; lexicographic within a degree
    for (int deg = 0; deg <= n; ++deg) {
        std::function<void(int, int)> rec = [&](int pos, int rem) {
            if (pos == d - 1) {
                k[pos] = rem;
                out.push_back(MultiIndex{k});
                return;
            }
            for (int v = rem; v >= 0; --v) {
                k[pos] = v;
                rec(pos + 1, rem - v);
            }
        };
        rec(0, deg);
    }
    return out;
}

double hermite_eval(const MultiIndex& k, const std::vector<double>& x) {
    if (k.entries.size() != x.size())
        throw std::invalid_argument("hermite_eval: dimension mismatch");
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        p *= hermite_eval_1d(k.entries[j], x[j]);
    return p;
}

double cd_kernel_diag(int n, const std::vector<double>& x, std::int64_t cap) {
    const int d = static_cast<int>(x.size());
    const auto idx = enumerate_multi_indices(n, d, cap);
    // per-axis tables h_k(x_j), k <= n
    std::vector<std::vector<double>> tab(d);
    for (int j = 0; j < d; ++j) tab[j] = hermite_all_1d(n, x[j]);
    double s = 0.0;
    for (const auto& k : idx) {
        double p = 1.0;
        for (int j = 0; j < d; ++j) p *= tab[j][k.entries[j]];
        s += p * p;
    }
    return s;
}

namespace {
double log_phi_d(const std::vector<double>& x) {
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    return -0.5 * n2 - 0.5 * x.size() * std::log(2.0 * M_PI);
}
}  // namespace

double mehler(const std::vector<double>& x, const std::vector<double>& y,
              double t, MehlerMode mode, int n_max) {
    if (t <= 0.0) throw std::domain_error("mehler: t must be positive");
    if (x.size() != y.size()) throw std::invalid_argument("mehler: dimension mismatch");
    const int d = static_cast<int>(x.size());
    if (mode == MehlerMode::closed) {
        double nx = 0.0, ny = 0.0, xy = 0.0;
        for (int j = 0; j < d; ++j) {
            nx += x[j] * x[j];
            ny += y[j] * y[j];
            xy += x[j] * y[j];
        }
        const double s2 = std::sinh(2.0 * t), th2 = std::tanh(2.0 * t);
        return std::pow(4.0 * M_PI * s2, -0.5 * d) *
               std::exp(-(nx + ny) / (4.0 * th2) + xy / (2.0 * s2));
    }
    if (n_max < 0) throw std::invalid_argument("mehler: series needs n_max >= 0");
    const auto idx = enumerate_multi_indices(n_max, d);
    std::vector<std::vector<double>> hx(d), hy(d);
    for (int j = 0; j < d; ++j) {
        hx[j] = hermite_all_1d(n_max, x[j]);
        hy[j] = hermite_all_1d(n_max, y[j]);
    }
    double s = 0.0;
    for (const auto& k : idx) {
        double p = 1.0;
        for (int j = 0; j < d; ++j) p *= hx[j][k.entries[j]] * hy[j][k.entries[j]];
        s += std::exp(-t * (2.0 * k.total_degree() + d)) * p;
    }
    return s * std::exp(0.5 * (log_phi_d(x) + log_phi_d(y)));
}

double c_of_kappa(double kappa) {
    if (kappa <= 1.0) throw std::domain_error("c(kappa): kappa must exceed 1");
    return std::sqrt(kappa * (kappa - 1.0)) -
           std::log(std::sqrt(kappa) + std::sqrt(kappa - 1.0));
}

double A_of_kappa(double kappa) {
    const double c = c_of_kappa(kappa);
    const double arg = std::max(M_E / c * std::sqrt(kappa / (kappa - 1.0)), M_E);
    return std::log(arg) / c;
}

double log_C_nd(int n, int d) {
    if (n == 0) return 0.0;
    return 0.5 * ((n + d) * std::log(static_cast<double>(n + d)) -
                  n * std::log(static_cast<double>(n)) -
                  d * std::log(static_cast<double>(d)));
}

SpectralConstants spectral_constants(int n, int d, double kappa) {
    if (n < 0 || d < 1) throw std::invalid_argument("spectral_constants: bad n or d");
    SpectralConstants sc;
    sc.n = n;
    sc.d = d;
    sc.E = 2.0 * n + d;
    sc.C = std::exp(log_C_nd(n, d));
    sc.kappa = kappa;
    sc.c_kappa = c_of_kappa(kappa);
    sc.A_kappa = A_of_kappa(kappa);
    return sc;
}

GaussHermiteRule gauss_hermite_rule(int m) {
    if (m < 1) throw std::invalid_argument("gauss_hermite_rule: m >= 1");
    GaussHermiteRule rule;
    if (m == 1) {
        rule.nodes = {0.0};
        rule.weights = {1.0};
        return rule;
    }
    // roots of h_m by sign scan + bisection, polished with Newton
    // (h_m'(x) = sqrt(m) h_{m-1}(x))
    const double R = 2.0 * std::sqrt(static_cast<double>(m)) + 4.0;
    const int scan = 50 * m;
    auto hm = [&](double x) { return hermite_eval_1d(m, x); };
    std::vector<double> roots;
    double xp = -R, fp = hm(xp);
    for (int i = 1; i <= scan; ++i) {
        const double x = -R + 2.0 * R * i / scan;
        const double f = hm(x);
        if (fp == 0.0) roots.push_back(xp);
        else if (fp * f < 0.0) {
            double a = xp, b = x;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                if (hm(a) * hm(mid) <= 0.0) b = mid; else a = mid;
            }
            double r = 0.5 * (a + b);
            for (int it = 0; it < 4; ++it) {
                const double f0 = hermite_eval_1d(m, r);
                const double df = std::sqrt(static_cast<double>(m)) *
                                  hermite_eval_1d(m - 1, r);
                if (df != 0.0) r -= f0 / df;
            }
            roots.push_back(r);
        }
        xp = x;
        fp = f;
    }
    if (static_cast<int>(roots.size()) != m)
        throw std::runtime_error("gauss_hermite_rule: root scan failed");
    rule.nodes = roots;
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        const auto h = hermite_all_1d(m - 1, roots[i]);
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += h[k] * h[k];
        rule.weights[i] = 1.0 / s;
    }
    return rule;
}

}  // namespace gmdiv
