#include <doctest.h>

#include <cmath>

#include "gmdiv/sharpness.hpp"

using namespace gmdiv;

TEST_CASE("precision tier policy") {
    CHECK(required_digits(11) == 0);
    CHECK(required_digits(19) == 0);
    CHECK(required_digits(21) == 50);
    CHECK(required_digits(31) == 50);
    CHECK_THROWS_AS((void)required_digits(33), std::invalid_argument);
    CHECK_THROWS_AS((void)verify_sharpness(21, 1.0, PrecisionTier::double_prec),
                    PrecisionError);
}

TEST_CASE("Chebyshev nodes") {
    const auto nodes = chebyshev_nodes(3);  // zeros of T_4
    REQUIRE(nodes.size() == 4);
    CHECK(nodes[0] == doctest::Approx(std::cos(M_PI / 8.0)));
    CHECK(nodes[3] == doctest::Approx(-std::cos(M_PI / 8.0)));
}

TEST_CASE("n = 1 moment system solves by hand") {
    // nodes cos(pi/4) = 1/sqrt2, -1/sqrt2; targets Delta_0 = 0,
    // Delta_1 = (sqrt2-1)^2; solution w_0 = -w_1 = (3 - 2 sqrt2)/sqrt2
    const auto ex = construct_base(1, 1.0);
    const double expect = (3.0 - 2.0 * std::sqrt(2.0)) / std::sqrt(2.0);
    CHECK(ex.weights_w[0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(ex.weights_w[1] == doctest::Approx(-expect).epsilon(1e-12));
    CHECK(ex.solve_residual < 1e-15);
    CHECK_FALSE(ex.theory_valid);  // n < 11
}

TEST_CASE("construction invariants at n = 11") {
    const auto ex = construct_base(11, 1.0);
    CHECK(ex.theory_valid);
    CHECK(ex.R_n == doctest::Approx(std::sqrt(92.0)));
    CHECK(ex.lambda_n == doctest::Approx(std::exp(-std::sqrt(92.0))));
    // Delta_11 = (sqrt2 - 1)^12, even targets vanish
    CHECK(ex.delta[11] ==
          doctest::Approx(std::pow(std::sqrt(2.0) - 1.0, 12)).epsilon(1e-12));
    for (int k = 0; k <= 11; k += 2) CHECK(ex.delta[k] == 0.0);
    double wsum = 0.0;
    for (double w : ex.weights_w) {
        CHECK(std::fabs(w) <= 1.0 / 12.0 + 1e-15);
        wsum += w;
    }
    CHECK(std::fabs(wsum) < 1e-16);  // Delta_0 = 0
    // lift measures are probability measures
    CHECK_NOTHROW(ex.lift1_pi.validate());
    CHECK_NOTHROW(ex.lift1_eta.validate());
    CHECK_NOTHROW(ex.lift2_pi.validate());
    CHECK_NOTHROW(ex.lift2_eta.validate());
}

TEST_CASE("moment bound report at n = 11") {
    const auto mb = verify_moment_bound(11, 1.0, 33);
    CHECK(mb.all_ok);
    CHECK(mb.worst_ratio <= 1.0 + 1e-12);
    CHECK(mb.recursion_ok);
    CHECK(mb.root_identity_ok);
}

TEST_CASE("full verification at n = 11 in double precision") {
    const auto rep = verify_sharpness(11, 1.0, PrecisionTier::double_prec);
    CHECK(rep.ok);
    CHECK(rep.tv_below_threshold);
    CHECK(rep.margin_log >= 0.0);
    CHECK(rep.dual_path_rel < 1e-3);
    CHECK(rep.qn_monomial_rel < 1e-10);
    CHECK(rep.u_sup <= 1.0 + 1e-12);
    CHECK(rep.digits_used == 0);
}

TEST_CASE("extended tier reproduces the double-tier result at n = 11") {
    const auto d = verify_sharpness(11, 1.0, PrecisionTier::double_prec);
    const auto e = verify_sharpness(11, 1.0, PrecisionTier::extended);
    CHECK(e.digits_used == 50);
    CHECK(e.log_TV_formula ==
          doctest::Approx(d.log_TV_formula).epsilon(1e-6));
    CHECK(e.log_H == doctest::Approx(d.log_H).epsilon(1e-4));
}
