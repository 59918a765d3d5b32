#pragma once

#include <cmath>
#include <vector>

#include "gmdiv/multi_index.hpp"

namespace gmdiv {

/// Normalized one-dimensional Hermite polynomial h_k(x), orthonormal under
/// the standard normal weight. Three-term recurrence:
///   h_0 = 1, h_1(x) = x, sqrt(k+1) h_{k+1}(x) = x h_k(x) - sqrt(k) h_{k-1}(x).
template <class Real>
Real hermite_eval_1d(int k, Real x) {
    if (k == 0) return Real(1);
    Real hm = Real(1), h = x;
    for (int j = 1; j < k; ++j) {
        using std::sqrt;
        Real hn = (x * h - sqrt(Real(j)) * hm) / sqrt(Real(j + 1));
        hm = h;
        h = hn;
    }
    return h;
}

/// All of h_0(x), ..., h_n(x) in one recurrence sweep.
template <class Real>
std::vector<Real> hermite_all_1d(int n, Real x) {
    std::vector<Real> h(n + 1);
    h[0] = Real(1);
    if (n >= 1) h[1] = x;
    for (int j = 1; j < n; ++j) {
        using std::sqrt;
        h[j + 1] = (x * h[j] - sqrt(Real(j)) * h[j - 1]) / sqrt(Real(j + 1));
    }
    return h;
}

/// Tensor-product Hermite polynomial h_k(x) = prod_j h_{k_j}(x_j).
double hermite_eval(const MultiIndex& k, const std::vector<double>& x);

/// Diagonal of the Christoffel-Darboux kernel,
/// K_n(x, x) = sum_{|k| <= n} h_k(x)^2.
/// Throws std::length_error if binom(n+d, d) exceeds `cap`.
double cd_kernel_diag(int n, const std::vector<double>& x,
                      std::int64_t cap = 1000000);

enum class MehlerMode { closed, series };

/// Mehler kernel M(x, y; t). Closed form:
///   (4 pi sinh 2t)^{-d/2} exp(-(|x|^2+|y|^2)/(4 tanh 2t) + <x,y>/(2 sinh 2t)).
/// Series mode truncates sum_{|k| <= n_max} e^{-t(2|k|+d)} h_k(x) h_k(y)
/// phi_d^{1/2}(x) phi_d^{1/2}(y).
double mehler(const std::vector<double>& x, const std::vector<double>& y,
              double t, MehlerMode mode = MehlerMode::closed, int n_max = 0);

/// Spectral constants attached to degree n in dimension d.
struct SpectralConstants {
    int n = 0;
    int d = 1;
    double E = 0;        // E_{n,d} = 2n + d
    double C = 1;        // C_{n,d} = ((n+d)^{n+d} / (n^n d^d))^{1/2}, C_{0,d} = 1
    double kappa = 2;
    double c_kappa = 0;  // sqrt(kappa(kappa-1)) - log(sqrt(kappa)+sqrt(kappa-1))
    double A_kappa = 0;  // (1/c) log(e/c * sqrt(kappa/(kappa-1)) v e)
};

double c_of_kappa(double kappa);  // requires kappa > 1
double A_of_kappa(double kappa);  // requires kappa > 1

SpectralConstants spectral_constants(int n, int d, double kappa = 2.0);

/// log C_{n,d}; exact at n = 0 (continuity limit C = 1).
double log_C_nd(int n, int d);

}  // namespace gmdiv
