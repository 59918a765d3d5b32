#include <doctest.h>

#include <cmath>

#include "gmdiv/ebayes.hpp"

using namespace gmdiv;

namespace {

MixingMeasure two_point_prior() {
    MixingMeasure m;
    m.d = 1;
    m.radius_M = 1.0;
    m.atoms = {{-1.0}, {1.0}};
    m.weights = {0.5, 0.5};
    return m;
}

}  // namespace

TEST_CASE("point priors collapse the posterior mean") {
    const auto origin = MixingMeasure::point_mass(0.0, 1.0);
    const auto shifted = MixingMeasure::point_mass(0.7, 1.0);
    for (double x : {-3.0, 0.0, 1.2}) {
        CHECK(std::fabs(tweedie(origin, x)) < 1e-12);
        CHECK(tweedie(shifted, x) == doctest::Approx(0.7).epsilon(1e-12));
    }
}

TEST_CASE("two-point prior gives tanh") {
    const auto prior = two_point_prior();
    for (double x = -6.0; x <= 6.0; x += 0.25)
        CHECK(std::fabs(tweedie(prior, x) - std::tanh(x)) < 1e-10);
}

TEST_CASE("posterior mean stays inside the atom hull and is odd") {
    const auto prior = two_point_prior();
    for (double x = -8.0; x <= 8.0; x += 0.5) {
        const double t = tweedie(prior, x);
        CHECK(t >= -1.0 - 1e-12);
        CHECK(t <= 1.0 + 1e-12);
        CHECK(t == doctest::Approx(-tweedie(prior, -x)).epsilon(1e-12));
    }
}

TEST_CASE("regularized denoiser matches the oracle where f >= rho") {
    const auto prior = two_point_prior();
    const double rho = 1e-12;
    for (double x : {-2.0, 0.0, 1.5})
        CHECK(tweedie_regularized(prior, x, rho) ==
              doctest::Approx(tweedie(prior, x)).epsilon(1e-10));
    // huge floor shrinks toward the identity
    const double big = 1e6;
    CHECK(tweedie_regularized(prior, 0.5, big) ==
          doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("oracle-density regret vanishes as rho -> 0") {
    const auto prior = two_point_prior();
    double prev = 1e300;
    for (double rho : {1e-1, 1e-2, 1e-4, 1e-8, 1e-12}) {
        const auto r = tweedie_regret(prior, prior, rho);
        CHECK(r.value >= -1e-15);
        CHECK(r.value <= prev + 1e-15);
        prev = r.value;
    }
    CHECK(prev < 1e-10);
}

TEST_CASE("regret grows continuously with a prior shift") {
    const auto prior = two_point_prior();
    double prev = 0.0;
    for (double shift : {0.01, 0.05, 0.2}) {
        MixingMeasure plug = prior;
        for (auto& a : plug.atoms) a[0] += shift;
        plug.radius_M = 1.5;
        const auto r = tweedie_regret(prior, plug, 1e-6);
        CHECK(r.value > prev);
        prev = r.value;
    }
}

TEST_CASE("regularizer floor formula") {
    const double r = regularizer_rho(0.0, 1000, 1);
    const double expect =
        std::pow(2 * M_PI, -0.5) *
        std::min(std::pow(std::log(1000.0), 2) / 1000.0, std::exp(-2.0));
    CHECK(r == doctest::Approx(expect).epsilon(1e-12));
    // decreasing in n, increasing in eps
    CHECK(regularizer_rho(0.0, 100000, 1) < r);
    CHECK(regularizer_rho(0.1, 1000, 1) > r);
}
