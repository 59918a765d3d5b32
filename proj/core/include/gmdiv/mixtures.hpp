#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmdiv/multi_index.hpp"
#include "gmdiv/quadrature.hpp"

namespace gmdiv {

/// Neumaier-compensated accumulator.
template <class Real>
struct CompensatedSum {
    Real sum{}, comp{};
    void add(Real v) {
        using std::fabs;
        const Real t = sum + v;
        if (fabs(sum) >= fabs(v)) comp += (sum - t) + v;
        else comp += (v - t) + sum;
        sum = t;
    }
    Real result() const { return sum + comp; }
};

/// Finitely supported probability measure on [-M, M]^d.
/// Weights may be signed when the object represents a difference of two
/// probability measures; `validate()` enforces the probability contract.
struct MixingMeasure {
    int d = 1;
    double radius_M = 1.0;
    std::vector<std::vector<double>> atoms;
    std::vector<double> weights;

    std::size_t size() const { return atoms.size(); }
    void validate() const;  // throws on weight/support violations
    double support_radius() const;  // max |atom|_inf

    static MixingMeasure point_mass(double x, double M = 0.0);
    static MixingMeasure point_mass_d(const std::vector<double>& x, double M = 0.0);

    std::string to_json() const;
    static MixingMeasure from_json(const std::string& text);
};

/// Seeded mixture with 1..max_atoms atoms uniform in [-M, M]^d and Dirichlet-
/// like weights. One generator state drives everything, so a fixed seed
/// reproduces the same sequence of measures.
MixingMeasure random_mixture(int d, double M, int max_atoms,
                             std::uint64_t& state);

double log_phi(double x);
double phi_pdf(double x);
double normal_cdf(double x);
double phi_d_pdf(const std::vector<double>& x);

/// Mixture density f_pi(x) = sum_j w_j phi_d(x - theta_j).
double mixture_density(const MixingMeasure& mix, const std::vector<double>& x);
double mixture_density(const MixingMeasure& mix, double x);  // d = 1

/// Gradient of f_pi: sum_j w_j (theta_j - x) phi_d(x - theta_j).
std::vector<double> mixture_density_grad(const MixingMeasure& mix,
                                         const std::vector<double>& x);

/// (f_pi - f_eta)(x) evaluated as one signed sum over the merged atom list.
double mixture_density_diff(const MixingMeasure& pi, const MixingMeasure& eta,
                            const std::vector<double>& x);
double mixture_density_diff(const MixingMeasure& pi, const MixingMeasure& eta,
                            double x);

/// g(x) = (f_pi - f_eta)(x) / phi_d(x) = sum_j c_j exp(<theta_j, x> - |theta_j|^2/2).
double g_ratio(const MixingMeasure& pi, const MixingMeasure& eta,
               const std::vector<double>& x);
double g_ratio(const MixingMeasure& pi, const MixingMeasure& eta, double x);

/// Moment differences Delta_k = int theta^k d(pi - eta), |k| <= max_degree.
struct SignedMoments {
    int d = 1;
    int max_degree = 0;
    std::vector<MultiIndex> index;   // graded order
    std::vector<double> delta;       // Delta_k, aligned with `index`
    double delta_of(const MultiIndex& k) const;
};
SignedMoments moment_diffs(const MixingMeasure& pi, const MixingMeasure& eta,
                           int max_degree);

/// Truncated Hermite expansion of g: g = q + r at degree n.
struct ExpansionSplit {
    int n = 0;
    double q_norm_L1 = 0;
    double q_norm_L2 = 0;          // sqrt(sum_{|k|<=n} Delta_k^2 / k!)
    double r_norm_L2_bound = 0;    // (4 e M^2 d / (n+1))^{(n+1)/2}
    bool bound_valid = false;      // requires n+1 >= max(16, 8 e M^2 d)
    double r_norm_L2_estimate = 0; // truncated series n < |k| <= n_big
    int n_big = 0;
};
ExpansionSplit expansion_split(const MixingMeasure& pi, const MixingMeasure& eta,
                               int n, const QuadratureSpec& quad = {},
                               int n_big = -1);

}  // namespace gmdiv
