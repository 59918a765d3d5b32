#include <doctest.h>

#include <cmath>

#include "gmdiv/bounds.hpp"

using namespace gmdiv;

TEST_CASE("alpha oracle values") {
    // t = e^{-e}: log(1/t) = e, loglog = 1, alpha = 2 + delta
    CHECK(alpha(std::exp(-std::exp(1.0)), 1.0) == doctest::Approx(3.0));
    // large t clamps the inner log at e
    CHECK(alpha(0.5, 1.0) == doctest::Approx(3.0));
    // decreasing in t below the clamp
    CHECK(alpha(1e-8, 1.0) > alpha(1e-20, 1.0));
}

TEST_CASE("A1 is finite and at least one") {
    for (double k1 : {1.1, 1.5, 2.0, 3.0}) {
        const double a1 = A1_constant(k1);
        CHECK(a1 >= 1.0);
        CHECK(std::isfinite(a1));
    }
}

TEST_CASE("lambert_n0 delivers its guarantee") {
    const double kappa2 = 1.5, B0 = 40.0, t = 1e-6;
    const long n0 = lambert_n0(kappa2, B0, t);
    auto val = [&](long n) {
        return 0.5 * (n + 1) * std::log(2.0 * B0 / (n + 1));
    };
    CHECK(val(n0) <= std::log(t) + 1e-9);
    CHECK(val(n0 + 5) <= std::log(t) + 1e-9);
}

TEST_CASE("C0 constants satisfy the constraint curve") {
    const auto bc = compute_C0(1.0, 1.0, 1);
    CHECK(2.0 * bc.kappa1 * bc.kappa2 == doctest::Approx(3.0));
    CHECK(bc.kappa1 > 1.0);
    CHECK(bc.kappa2 > 1.0);
    CHECK(bc.logC0 > 0.0);
    // more room (larger M, d) can only increase the constant
    CHECK(compute_C0(1.0, 2.0, 1).logC0 >= bc.logC0);
    CHECK(compute_C0(1.0, 1.0, 2).logC0 >= bc.logC0);
}

TEST_CASE("J transfer envelope") {
    const auto bc = compute_C0(1.0, 1.0, 1);
    // for desk-scale t the polynomial branch dominates: J = t^{1-alpha}
    const double t = 1e-10;
    CHECK(log_J_transfer(t, bc) ==
          doctest::Approx(std::max(bc.logC0 + std::log(t),
                                   (1.0 - alpha(t, 1.0)) * std::log(t))));
    // J >= t always
    CHECK(log_J_transfer(t, bc) >= std::log(t));
}

TEST_CASE("theorem verification on an easy pair") {
    MixingMeasure p, q;
    p.d = q.d = 1;
    p.radius_M = q.radius_M = 1.0;
    p.atoms = {{-0.6}, {0.4}};
    p.weights = {0.5, 0.5};
    q.atoms = {{0.1}};
    q.weights = {1.0};
    const auto rep = verify_main_theorem(p, q, 1.0);
    CHECK(rep.all_ok);
    CHECK(rep.tv > 0.0);
    REQUIRE(rep.lines.size() >= 3);
    for (const auto& line : rep.lines) CHECK(line.ok);
}

TEST_CASE("theorem verification on an identical pair") {
    const auto p = MixingMeasure::point_mass(0.2, 1.0);
    const auto rep = verify_main_theorem(p, p, 1.0);
    CHECK(rep.all_ok);
}
