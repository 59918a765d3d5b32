#pragma once

#include <string>
#include <vector>

#include "gmdiv/divergences.hpp"
#include "gmdiv/mixtures.hpp"

namespace gmdiv {

/// Constants of the chi-square/TV transfer inequality for a given (delta, M, d).
struct BoundConstants {
    double delta = 1;
    double kappa1 = 0, kappa2 = 0;  // 2 kappa1 kappa2 = 2 + delta
    double A1 = 0;
    double B0 = 0;
    double B = 0;
    double logC0 = 0;  // log C0 = kappa1 * (A1 d v B); astronomically large
    double M = 1;
    int d = 1;
};

/// alpha(t) = (2 + delta) / log(log(1/t) v e).
double alpha(double t, double delta);

/// inf over 1 < kappa < kappa1 of
///   max(1, A(kappa)/2, log(3^8 e^{1+2 kappa} / (2(kappa1-kappa)) v e)
///                       / (2(kappa1-kappa))).
double A1_constant(double kappa1);

/// Smallest n0 with (2 B0 / (n+1))^{(n+1)/2} <= t for all n >= n0.
long lambert_n0(double kappa2, double B0, double t);

/// Minimizes kappa1 (A1 d v B) over the constraint curve 2 kappa1 kappa2 = 2+delta.
BoundConstants compute_C0(double delta, double M, int d);

/// J(t) = C0 t v t^{1 - alpha(t)}, returned in log domain: log J(t).
double log_J_transfer(double t, const BoundConstants& bc);

/// One inequality line of the end-to-end check. All right-hand sides are
/// evaluated in log domain; `margin_log` = log(rhs) - log(lhs) (>= 0 wanted).
struct InequalityReport {
    std::string name;
    double lhs = 0;
    double rhs_log = 0;
    double margin_log = 0;
    double error_bound = 0;
    bool ok = true;
};

struct TheoremReport {
    double tv = 0, h = 0, chi2 = 0, l2norm = 0;
    std::vector<InequalityReport> lines;
    bool all_ok = true;
};

/// Verifies: sqrt(chi2) <= (C0 v TV^{-alpha(TV)}) TV, the L2(phi_d) analogue,
/// and H <= sqrt(C0 v TV^{-alpha}) * sqrt(TV) corollary chain. Violation
/// tolerance is 10x the quadrature error bound.
TheoremReport verify_main_theorem(const MixingMeasure& pi,
                                  const MixingMeasure& eta, double delta,
                                  const QuadratureSpec& quad = {});

}  // namespace gmdiv
