#include <doctest.h>

#include <cmath>

#include "gmdiv/hermite.hpp"
#include "gmdiv/quadrature.hpp"

using namespace gmdiv;

TEST_CASE("low-order Hermite values") {
    // h_2(x) = (x^2 - 1)/sqrt(2), h_3(x) = (x^3 - 3x)/sqrt(6)
    CHECK(hermite_eval_1d(0, 0.7) == doctest::Approx(1.0));
    CHECK(hermite_eval_1d(1, 0.7) == doctest::Approx(0.7));
    CHECK(hermite_eval_1d(2, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(hermite_eval_1d(2, 2.0) == doctest::Approx(3.0 / std::sqrt(2.0)));
    CHECK(hermite_eval_1d(3, 1.0) == doctest::Approx(-2.0 / std::sqrt(6.0)));
}

TEST_CASE("hermite_all_1d agrees with single evaluations") {
    const auto h = hermite_all_1d(15, 0.3);
    for (int k = 0; k <= 15; ++k)
        CHECK(h[k] == doctest::Approx(hermite_eval_1d(k, 0.3)).epsilon(1e-13));
}

TEST_CASE("Gauss-Hermite orthonormality up to degree 12") {
    const auto rule = gauss_hermite_rule(40);
    for (int j = 0; j <= 12; ++j) {
        for (int k = 0; k <= j; ++k) {
            double s = 0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                s += rule.weights[i] * hermite_eval_1d(j, rule.nodes[i]) *
                     hermite_eval_1d(k, rule.nodes[i]);
            CHECK(std::fabs(s - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("CD kernel diagonal oracles") {
    CHECK(cd_kernel_diag(1, {2.0}) == doctest::Approx(5.0));       // 1 + x^2
    CHECK(cd_kernel_diag(2, {0.0}) == doctest::Approx(1.5));       // 1 + 0 + 1/2
    // d = 2, n = 1: 1 + x1^2 + x2^2
    CHECK(cd_kernel_diag(1, {1.0, 2.0}) == doctest::Approx(6.0));
}

TEST_CASE("Mehler closed form vs truncated series") {
    for (double t : {0.3, 0.6, 1.0}) {
        CHECK(std::fabs(mehler({0.4}, {-0.2}, t, MehlerMode::closed) -
                        mehler({0.4}, {-0.2}, t, MehlerMode::series, 60)) <
              1e-12);
        CHECK(std::fabs(
                  mehler({0.4, 1.1}, {-0.2, 0.5}, t, MehlerMode::closed) -
                  mehler({0.4, 1.1}, {-0.2, 0.5}, t, MehlerMode::series, 40)) <
              1e-12);
    }
}

TEST_CASE("spectral constants") {
    CHECK(log_C_nd(0, 3) == doctest::Approx(0.0));
    CHECK(std::exp(log_C_nd(1, 1)) == doctest::Approx(2.0));  // (2^2/1)^{1/2}
    CHECK(c_of_kappa(2.0) ==
          doctest::Approx(std::sqrt(2.0) - std::log(std::sqrt(2.0) + 1.0)));
    // c is increasing and A is decreasing in kappa on (1, inf)
    CHECK(c_of_kappa(3.0) > c_of_kappa(2.0));
    CHECK(A_of_kappa(3.0) < A_of_kappa(2.0));
    const auto sc = spectral_constants(4, 2);
    CHECK(sc.E == doctest::Approx(10.0));
    CHECK(sc.C == doctest::Approx(std::sqrt(std::pow(6.0, 6) /
                                            (std::pow(4.0, 4) * 4.0))));
}

TEST_CASE("quadrature sanity: adaptive GK15 on a Gaussian") {
    const auto r = integrate_adaptive<double>(
        [](double x) { return std::exp(-0.5 * x * x); }, -10.0, 10.0, 1e-14,
        1e-12, 100000);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(2.0 * std::acos(-1.0)))
                         .epsilon(1e-12));
}
