#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gmdiv/divergences.hpp"
#include "gmdiv/mixtures.hpp"

namespace gmdiv {

/// Huber contamination (1 - eps) P_{f_pi} + eps Q.
struct ContaminationModel {
    enum class Kind { point_mass, uniform, adversarial };
    MixingMeasure clean;
    double epsilon = 0;
    Kind kind = Kind::point_mass;
    // point_mass: sample at `point`; uniform: uniform on [-width, width]^d;
    // adversarial: sample from the shifted mixture `adversary`
    std::vector<double> point;
    double width = 0;
    MixingMeasure adversary;

    static ContaminationModel make(const MixingMeasure& clean, double eps,
                                   const std::string& kind);
};

std::vector<std::vector<double>> sample_contaminated(
    const ContaminationModel& model, long n, std::uint64_t seed);

struct IntervalUnion {
    std::vector<std::pair<double, double>> intervals;  // disjoint, sorted
    bool contains(double x) const;
    double measure_prob(const MixingMeasure& m) const;  // sum of CDF gaps
    double empirical_prob(const std::vector<double>& sorted) const;
};

/// Covering of the bounded 1-D mixture class plus its Yatracos class.
struct YatracosCovering {
    double M = 1;
    int d = 1;
    double eta_target = 0.1;
    double eta_actual = 0.1;  // empirically calibrated covering radius
    bool budget_limited = false;
    std::vector<MixingMeasure> candidates;
    std::vector<std::pair<int, int>> pairs;   // (i, j), i < j
    std::vector<IntervalUnion> sets;          // A_{ij} aligned with `pairs`
    std::vector<std::vector<double>> cand_prob;  // [candidate][set]
};

/// Atom-grid x weight-simplex candidates at the finest pitch the candidate
/// budget allows; eta_actual is the measured covering radius and
/// budget_limited flags eta_actual > eta (d = 1 only).
YatracosCovering build_covering(double M, int d, double eta, long budget,
                                std::uint64_t seed = 7,
                                const QuadratureSpec& quad = {});

/// argmin over candidates of sup_{A} |P'(A) - empirical(A)|; smallest index
/// wins ties. Returns the candidate index.
int yatracos_estimate(const std::vector<double>& samples,
                      const YatracosCovering& cov);

/// dist(P, empirical) where P = (1 - eps) P_{f_pi} + eps Q from the model.
double dist_model_empirical(const ContaminationModel& model,
                            const std::vector<double>& samples,
                            const YatracosCovering& cov);

struct RiskRow {
    double epsilon = 0;
    long n = 0;
    std::uint64_t seed = 0;
    int estimate_index = -1;
    double tv = 0, tv2 = 0, h2 = 0;
    double dist_emp = 0;     // dist(P, empirical)
    double yatracos_rhs = 0; // 3 eps + 3 eta + 2 dist
    double hoeffding_env = 0;
    bool yatracos_ok = false;
};

std::vector<RiskRow> risk_sweep(const ContaminationModel& base_model,
                                const std::vector<double>& epsilons,
                                const std::vector<long>& ns, int replicates,
                                std::uint64_t seed,
                                const YatracosCovering& cov,
                                const QuadratureSpec& quad = {});

struct TwoPointReport {
    int n_sharp = 0;
    double epsilon = 0;
    double tv_pair = 0, h_pair = 0;  // 1-D sharp pair distances
    double coincide_sup = 0;         // grid sup of the mixed-density gap
    double q1_mass = 0, q2_mass = 0;
    double q_min = 0;                // min of the two contamination densities
    double lift_tv_rel = 0, lift_h_rel = 0;  // d-dim product vs 1-D, relative
    double lower_exponent_log = 0;   // log(H^2 / 2)
    double predicted_log = 0;        // 2 (1 - 0.33/loglog(1/eps)) log(eps)
    bool ok = false;
};

/// Two-point robust lower-bound construction: the sharp pair with
/// TV <= eps/(1-eps), contaminations Q1, Q2 realizing the mixture identity,
/// and the d-dimensional product lift.
TwoPointReport two_point_lower_bound(double epsilon, int n_sharp, double M,
                                     int d, const QuadratureSpec& quad = {});

}  // namespace gmdiv
