#pragma once

#include <cstdint>
#include <vector>

#include "gmdiv/robust.hpp"

namespace gmdiv {

/// Oracle posterior-mean denoiser x + grad f_pi(x) / f_pi(x).
std::vector<double> tweedie(const MixingMeasure& pi,
                            const std::vector<double>& x);
double tweedie(const MixingMeasure& pi, double x);  // d = 1

/// Plug-in denoiser x + grad f(x) / max(f(x), rho).
std::vector<double> tweedie_regularized(const MixingMeasure& fhat,
                                        const std::vector<double>& x,
                                        double rho);
double tweedie_regularized(const MixingMeasure& fhat, double x, double rho);

/// rho = (2 pi)^{-d/2} (E^2 ^ e^{-2}) with the accuracy proxy
/// E^2 = eps^{2 (1 - alpha(eps))} + log^{d+1}(n) / n (alpha at `delta`).
double regularizer_rho(double eps, long n, int d, double delta = 1.0);

struct RegretResult {
    double value = 0;       // int || denoise_hat - denoise_oracle ||^2 f_truth
    double error_bound = 0; // quadrature error + truncation envelope
    double rho = 0;
    bool heuristic = false; // d >= 2 tensor rule
};

/// Squared-error regret of the regularized plug-in against the oracle,
/// integrated against the true marginal.
RegretResult tweedie_regret(const MixingMeasure& truth,
                            const MixingMeasure& fhat, double rho,
                            const QuadratureSpec& quad = {});

struct EBRow {
    double epsilon = 0;
    long n = 0;
    std::uint64_t seed = 0;
    int estimate_index = -1;
    double rho = 0;
    double tv = 0;      // TV(truth, selected candidate)
    double regret = 0;  // plug-in vs oracle regret
};

/// Contaminated sample -> minimum-distance density estimate -> regularized
/// plug-in denoiser; one row per (epsilon, n, replicate).
std::vector<EBRow> eb_experiment(const ContaminationModel& base_model,
                                 const std::vector<double>& epsilons,
                                 const std::vector<long>& ns, int replicates,
                                 std::uint64_t seed,
                                 const YatracosCovering& cov,
                                 const QuadratureSpec& quad = {});

}  // namespace gmdiv
