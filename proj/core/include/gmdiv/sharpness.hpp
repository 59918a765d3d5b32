#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gmdiv/mixtures.hpp"

namespace gmdiv {

enum class PrecisionTier { automatic, double_prec, extended };

PrecisionTier precision_tier_from_string(const std::string& s);

/// Working digits needed at sample size n: 0 = double suffices (n <= 19),
/// 50 = extended required (21 <= n <= 31). Throws beyond 31.
int required_digits(int n);

/// Raised when the requested tier cannot certify the cancellation at this n.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> chebyshev_nodes(int n);  // zeros of T_{n+1}, descending

/// The Chebyshev-node construction: base pair, dilution lift, mixing lift.
struct SharpExample {
    int n = 11;
    double M = 1;
    double a = 1;         // min(1, M)
    double b = 0;         // a sqrt(n / 2.77)
    double R_n = 0;       // sqrt(8n + 4)
    double lambda_n = 0;  // exp(-R_n)
    std::vector<double> nodes;      // theta_j, descending
    std::vector<double> weights_w;  // w_j solving the moment system
    std::vector<double> delta;      // Delta_0 .. Delta_n targets
    MixingMeasure base_pi, base_eta;
    MixingMeasure lift1_pi, lift1_eta;
    MixingMeasure lift2_pi, lift2_eta;
    double solve_residual = 0;  // max_k |sum_j w_j (a theta_j)^k - Delta_k|
    double max_abs_w = 0;
    bool theory_valid = false;  // n odd and >= 11
};

/// Solves the Vandermonde-transpose moment system at the Chebyshev nodes
/// (Lagrange coefficient form; always in >= 50-digit internals) and
/// assembles all three measure pairs.
SharpExample construct_base(int n, double M);

struct MomentBoundReport {
    int n = 0, k_max = 0;
    double worst_ratio = 0;  // max_k |Delta_k| / bound_k, want <= 1
    bool all_ok = false;
    bool recursion_ok = false;  // |Delta_{n+1}| <= sum sigma_{2m} a^{2m} |Delta_{n+1-2m}|
    bool root_identity_ok = false;
};
MomentBoundReport verify_moment_bound(int n, double M, int k_max);

struct SharpnessReport {
    int n = 0;
    double M = 1;
    int digits_used = 0;  // 0 = double
    // all magnitudes in log domain (natural log)
    double log_TV_formula = 0;  // log(lambda_n / 8 * ||g||_1)
    double log_TV_direct = 0;   // log of direct lift2 quadrature
    double log_H = 0;
    double log_q_L1 = 0, log_q_L2 = 0, log_g_L1 = 0;
    double alpha_star = 0;   // 0.33 / loglog(1/TV)
    double margin_log = 0;   // log H - (1 - alpha*) log TV, want >= 0
    double rate = 0;         // log(1/TV) / (n log n)
    double dual_path_rel = 0;
    double qn_monomial_rel = 0;
    double u_sup = 0;
    bool tv_below_threshold = false;  // TV < e^{-e}
    bool dual_path_ok = false;        // 3 significant digits
    bool qn_matches_monomial = false;
    bool u_inf_ok = false;            // sup u <= 1
    bool density_bound_ok = false;    // f_eta1 <= 2 phi on |x| <= R_n
    bool chain_chi2_ok = false;       // H^2 >= chi2(lift1) / 256
    bool chain_q2_ok = false;         // H >= (lambda/64) ||q||_2
    bool exponent_ok = false;         // margin_log >= 0
    bool weights_ok = false;          // |w_j| <= 1/(n+1)
    bool ok = false;
};
SharpnessReport verify_sharpness(int n, double M,
                                 PrecisionTier tier = PrecisionTier::automatic);

}  // namespace gmdiv
