#pragma once

#include <cstdint>
#include <vector>

#include "gmdiv/hermite.hpp"
#include "gmdiv/quadrature.hpp"

namespace gmdiv {

/// Polynomial in the orthonormal Hermite basis; ||P||_{L2(phi_d)}^2 = sum c^2.
struct PolyInBasis {
    int d = 1;
    int n = 0;
    std::vector<MultiIndex> index;   // graded order, |k| <= n
    std::vector<double> coeffs;      // aligned with `index`

    double eval(const std::vector<double>& x) const;
    double norm_L2() const;
};

PolyInBasis monomial_in_basis(int n, int d);  // x_1^n expanded in the basis

struct CnEstimate {
    int n = 0, d = 1;
    double estimate = 1;        // optimizer upper bound on c_{n,d}
    double lower_bound = 0;     // best valid spectral lower bound (0 if none)
    double monomial_ratio = 1;  // ||x_1^n||_1 / ||x_1^n||_2 (upper bound)
    double kappa_at_lower = 0;
    PolyInBasis best_poly;
};

/// Random-restart projected gradient on the unit coefficient sphere for
///   inf { ||P||_{L1(phi_d)} : ||P||_{L2(phi_d)} = 1, deg P <= n }.
/// d = 1 runs even and odd subspaces separately.
CnEstimate estimate_cn(int n, int d, int restarts = 64,
                       std::uint64_t seed = 1234,
                       const QuadratureSpec& quad = {});

/// ||x^n||_{L1(phi_1)} = 2^{n/2} Gamma((n+1)/2) / sqrt(pi);
/// ||x^n||_{L2(phi_1)}^2 = (2n-1)!!.
double monomial_L1_norm(int n);
double monomial_L2_norm(int n);

struct NikolskiiReport {
    double sup_lhs = 0;
    double rhs = 0;
    bool ok = false;
    std::vector<double> arg_sup;
};
/// sup_x |P(x)| phi_d^{1/2}(x) vs (2 pi)^{-d/4} C_{n,d}^{1/2} ||P||_2 on a
/// tensor grid over [-sqrt(6 E_{n,d}) - 2, +]^d.
NikolskiiReport nikolskii_check(const PolyInBasis& P, double grid_step = 0.0);

struct RestrictedRangeReport {
    double trace = 0;       // int_{|x| > sqrt(2 kappa E)} K_n(x,x) phi_d
    double bound = 0;       // ((e/2d) sqrt(kappa/(kappa-1)))^{d/2} E^{d/2} e^{-cE}
    bool trace_le_bound = false;
    bool trace_le_half = false;  // asserted when E_{n,d} >= A(kappa) d
    bool condition_applies = false;
};
RestrictedRangeReport restricted_range_check(int n, int d, double kappa,
                                             const QuadratureSpec& quad = {});

}  // namespace gmdiv
