#include <doctest.h>

#include <cmath>

#include "gmdiv/divergences.hpp"

using namespace gmdiv;

namespace {

double tv_closed(double mu) { return 2.0 * normal_cdf(mu / 2.0) - 1.0; }
double h2_closed(double mu) { return 1.0 - std::exp(-mu * mu / 8.0); }
double chi2_closed(double mu) { return std::exp(mu * mu) - 1.0; }
double kl_closed(double mu) { return mu * mu / 2.0; }

}  // namespace

TEST_CASE("closed forms for a normal location pair") {
    for (double mu : {0.1, 0.5, 1.0, 2.0}) {
        const auto p = MixingMeasure::point_mass(0.0, mu);
        const auto q = MixingMeasure::point_mass(mu, mu);
        CHECK(divergence(DivKind::TV, p, q).value ==
              doctest::Approx(tv_closed(mu)).epsilon(1e-8));
        CHECK(divergence(DivKind::H2, p, q).value ==
              doctest::Approx(h2_closed(mu)).epsilon(1e-8));
        CHECK(divergence(DivKind::CHI2, p, q).value ==
              doctest::Approx(chi2_closed(mu)).epsilon(1e-8));
        CHECK(divergence(DivKind::KL, p, q).value ==
              doctest::Approx(kl_closed(mu)).epsilon(1e-8));
        CHECK(divergence(DivKind::H, p, q).value ==
              doctest::Approx(std::sqrt(h2_closed(mu))).epsilon(1e-8));
    }
}

TEST_CASE("identical measures give zero") {
    const auto p = MixingMeasure::point_mass(0.3, 1.0);
    for (auto k : {DivKind::TV, DivKind::H2, DivKind::CHI2, DivKind::KL})
        CHECK(std::fabs(divergence(k, p, p).value) < 1e-12);
}

TEST_CASE("TV symmetry and the sandwich on a fixed pair") {
    MixingMeasure p, q;
    p.d = q.d = 1;
    p.radius_M = q.radius_M = 1.0;
    p.atoms = {{-0.8}, {0.5}};
    p.weights = {0.4, 0.6};
    q.atoms = {{-0.1}, {0.9}};
    q.weights = {0.7, 0.3};
    const double tv = divergence(DivKind::TV, p, q).value;
    CHECK(divergence(DivKind::TV, q, p).value ==
          doctest::Approx(tv).epsilon(1e-10));
    const double h2 = divergence(DivKind::H2, p, q).value;
    const double chi2 = divergence(DivKind::CHI2, p, q).value;
    CHECK(h2 <= tv + 1e-12);
    CHECK(tv <= std::sqrt(2.0 * h2) + 1e-12);
    CHECK(h2 <= chi2 + 1e-12);
}

TEST_CASE("d = 2 tensor rule agrees with a product pair") {
    // product measures with one active coordinate reduce to the 1-D value
    MixingMeasure p1 = MixingMeasure::point_mass(0.0, 1.0);
    MixingMeasure q1 = MixingMeasure::point_mass(1.0, 1.0);
    MixingMeasure p2, q2;
    p2.d = q2.d = 2;
    p2.radius_M = q2.radius_M = 1.0;
    p2.atoms = {{0.0, 0.0}};
    p2.weights = {1.0};
    q2.atoms = {{1.0, 0.0}};
    q2.weights = {1.0};
    const double tv1 = divergence(DivKind::TV, p1, q1).value;
    const auto tv2 = divergence(DivKind::TV, p2, q2);
    CHECK(tv2.heuristic);
    // |diff| has a kink, so the tensor rule is only ~1% accurate here
    CHECK(tv2.value == doctest::Approx(tv1).epsilon(2e-2));
    const double h1 = divergence(DivKind::H2, p1, q1).value;
    CHECK(divergence(DivKind::H2, p2, q2).value ==
          doctest::Approx(h1).epsilon(1e-6));
}

TEST_CASE("phi_norm oracles") {
    // p = N(0,1) vs q = N(mu,1): g(x) = exp(mu x - mu^2/2) - 1,
    // ||g||^2_{L2(phi)} = e^{mu^2} - 1 = chi2
    const double mu = 0.8;
    const auto p = MixingMeasure::point_mass(mu, 1.0);
    const auto q = MixingMeasure::point_mass(0.0, 1.0);
    const double n2 = phi_norm(p, q, 2).value;
    CHECK(n2 * n2 == doctest::Approx(chi2_closed(mu)).epsilon(1e-8));
    // ||g||_1 = 2 TV
    CHECK(phi_norm(p, q, 1).value ==
          doctest::Approx(2.0 * tv_closed(mu)).epsilon(1e-8));
}

TEST_CASE("translate bound dominates chi-square both ways") {
    MixingMeasure p, q;
    p.d = q.d = 1;
    p.radius_M = q.radius_M = 1.0;
    p.atoms = {{-0.5}, {0.5}};
    p.weights = {0.5, 0.5};
    q.atoms = {{0.0}};
    q.weights = {1.0};
    const auto tb = chi2_translate_bound(p, q);
    CHECK(tb.value + 1e-10 >= divergence(DivKind::CHI2, p, q).value);
    CHECK(tb.value + 1e-10 >= divergence(DivKind::CHI2, q, p).value);
}

TEST_CASE("density_diff_roots finds the single crossing") {
    const auto p = MixingMeasure::point_mass(0.0, 1.0);
    const auto q = MixingMeasure::point_mass(1.0, 1.0);
    const auto roots = density_diff_roots(p, q, -8.0, 9.0);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(0.5).epsilon(1e-8));
}
