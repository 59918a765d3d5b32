#include <doctest.h>

#include <cmath>

#include "gmdiv/extremal.hpp"

using namespace gmdiv;

TEST_CASE("monomial norms match their closed forms") {
    // ||x||_1 = sqrt(2/pi), ||x||_2 = 1; ||x^2||_2^2 = 3
    CHECK(monomial_L1_norm(1) ==
          doctest::Approx(std::sqrt(2.0 / std::acos(-1.0))).epsilon(1e-12));
    CHECK(monomial_L2_norm(1) == doctest::Approx(1.0));
    CHECK(monomial_L2_norm(2) == doctest::Approx(std::sqrt(3.0)));
    CHECK(monomial_L2_norm(3) == doctest::Approx(std::sqrt(15.0)));
}

TEST_CASE("monomial expanded in the basis has the right norm") {
    for (int n : {1, 2, 3, 5, 8}) {
        const auto P = monomial_in_basis(n, 1);
        CHECK(P.norm_L2() == doctest::Approx(monomial_L2_norm(n)).epsilon(1e-12));
        // pointwise check at a few abscissae
        for (double x : {-1.3, 0.4, 2.0})
            CHECK(P.eval({x}) == doctest::Approx(std::pow(x, n)).epsilon(1e-10));
    }
}

TEST_CASE("c_0 is exactly one and c_1 is the monomial value") {
    const auto e0 = estimate_cn(0, 1, 4, 7);
    CHECK(e0.estimate == doctest::Approx(1.0));
    const auto e1 = estimate_cn(1, 1, 16, 7);
    // degree-1 optimum is attained by x itself
    CHECK(e1.estimate ==
          doctest::Approx(std::sqrt(2.0 / std::acos(-1.0))).epsilon(1e-4));
    CHECK(e1.lower_bound <= e1.estimate);
}

TEST_CASE("extremal sandwich for small degrees") {
    for (int n : {2, 3, 4}) {
        const auto est = estimate_cn(n, 1, 24, 11);
        const double mono = monomial_L1_norm(n) / monomial_L2_norm(n);
        CHECK(est.monomial_ratio == doctest::Approx(mono).epsilon(1e-12));
        CHECK(est.lower_bound <= est.estimate * (1 + 1e-9));
        CHECK(est.estimate <= est.monomial_ratio * (1 + 1e-9));
    }
}

TEST_CASE("Nikolskii-type sup bound for the optimizer output") {
    const auto est = estimate_cn(4, 1, 8, 3);
    const auto nk = nikolskii_check(est.best_poly);
    CHECK(nk.ok);
    CHECK(nk.sup_lhs <= nk.rhs + 1e-12);
}

TEST_CASE("restricted-range mass is small beyond the spectral radius") {
    for (int d : {1, 2}) {
        for (int n : {2, 6}) {
            const auto rr = restricted_range_check(n, d, 2.0);
            CHECK(rr.trace_le_bound);
            if (rr.condition_applies) CHECK(rr.trace_le_half);
        }
    }
}
