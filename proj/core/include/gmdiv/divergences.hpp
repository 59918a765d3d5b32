#pragma once

#include <string>
#include <vector>

#include "gmdiv/mixtures.hpp"
#include "gmdiv/quadrature.hpp"

namespace gmdiv {

enum class DivKind { TV, H, H2, CHI2, KL };

DivKind div_kind_from_string(const std::string& s);
std::string to_string(DivKind k);

struct DivergenceResult {
    double value = 0;
    double error_bound = 0;
    long nodes_used = 0;
    bool converged = true;
    bool heuristic = false;  // d >= 2 tensor rule: error estimated, not certified
};

/// TV, Hellinger, chi-square, KL between two Gaussian location mixtures.
/// d = 1: adaptive GK15 on [-R, R] with analytic Gaussian tail envelopes;
/// the TV integrand is subdivided at sign changes of f_pi - f_eta.
/// d >= 2: tensor Gauss rule against a scaled normal reference, two
/// resolutions give the (heuristic) error estimate.
DivergenceResult divergence(DivKind kind, const MixingMeasure& pi,
                            const MixingMeasure& eta,
                            const QuadratureSpec& quad = {});

/// ||(f_pi - f_eta)/phi_d||_{L^p(phi_d)} for p in {1, 2}.
DivergenceResult phi_norm(const MixingMeasure& pi, const MixingMeasure& eta,
                          int p, const QuadratureSpec& quad = {});

/// sup over theta in [-M, M]^d of int (f_pi - f_eta)^2 / phi_d(x - theta) dx,
/// maximized on a grid (d <= 2). Dominates chi2 in both argument orders.
struct TranslateBound {
    double value = 0;
    std::vector<double> argmax;
    double error_bound = 0;
};
TranslateBound chi2_translate_bound(const MixingMeasure& pi,
                                    const MixingMeasure& eta,
                                    const QuadratureSpec& quad = {});

/// Sign changes of f_pi - f_eta in [a, b]: scan step `step` + bisection.
std::vector<double> density_diff_roots(const MixingMeasure& pi,
                                       const MixingMeasure& eta, double a,
                                       double b, double step = 0.01,
                                       std::size_t max_roots = 4096);

}  // namespace gmdiv
