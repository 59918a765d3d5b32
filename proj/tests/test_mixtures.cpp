#include <doctest.h>

#include <cmath>

#include "gmdiv/mixtures.hpp"

using namespace gmdiv;

namespace {

MixingMeasure two_atoms() {
    MixingMeasure m;
    m.d = 1;
    m.radius_M = 1.0;
    m.atoms = {{-1.0}, {1.0}};
    m.weights = {0.5, 0.5};
    return m;
}

}  // namespace

TEST_CASE("point-mass density equals a shifted normal") {
    const auto m = MixingMeasure::point_mass(0.7, 1.0);
    for (double x : {-2.0, 0.0, 0.7, 3.0})
        CHECK(mixture_density(m, x) == doctest::Approx(phi_pdf(x - 0.7)));
}

TEST_CASE("validate rejects broken measures") {
    auto m = two_atoms();
    CHECK_NOTHROW(m.validate());
    m.weights = {0.7, 0.7};
    CHECK_THROWS(m.validate());
    m = two_atoms();
    m.atoms[0][0] = 2.0;  // outside [-M, M]
    CHECK_THROWS(m.validate());
}

TEST_CASE("analytic gradient vs central differences") {
    const auto m = two_atoms();
    const double hstep = 1e-5;
    for (double x : {-1.3, -0.2, 0.0, 0.8, 2.5}) {
        const double fd = (mixture_density(m, x + hstep) -
                           mixture_density(m, x - hstep)) /
                          (2 * hstep);
        const auto g = mixture_density_grad(m, {x});
        CHECK(g[0] == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("g ratio identity") {
    const auto p = two_atoms();
    const auto q = MixingMeasure::point_mass(0.0, 1.0);
    for (double x : {-1.0, 0.3, 2.0})
        CHECK(g_ratio(p, q, x) ==
              doctest::Approx(mixture_density_diff(p, q, x) / phi_pdf(x))
                  .epsilon(1e-12));
}

TEST_CASE("moment differences of a symmetric pair") {
    // pi = (delta_{-1}+delta_{+1})/2, eta = delta_0: even moments differ,
    // odd moments vanish
    const auto sm = moment_diffs(two_atoms(), MixingMeasure::point_mass(0.0, 1.0), 6);
    for (std::size_t i = 0; i < sm.index.size(); ++i) {
        const int k = sm.index[i].total_degree();
        if (k % 2 == 1)
            CHECK(std::fabs(sm.delta[i]) < 1e-15);
        else if (k > 0)
            CHECK(sm.delta[i] == doctest::Approx(1.0));  // E theta^k = 1
    }
}

TEST_CASE("JSON round trip") {
    const auto m = two_atoms();
    const auto back = MixingMeasure::from_json(m.to_json());
    REQUIRE(back.size() == m.size());
    CHECK(back.d == m.d);
    CHECK(back.radius_M == m.radius_M);
    for (std::size_t j = 0; j < m.size(); ++j) {
        CHECK(back.atoms[j][0] == m.atoms[j][0]);
        CHECK(back.weights[j] == m.weights[j]);
    }
}

TEST_CASE("random_mixture is valid and deterministic") {
    std::uint64_t s1 = 42, s2 = 42;
    for (int i = 0; i < 20; ++i) {
        const auto a = random_mixture(2, 1.5, 4, s1);
        const auto b = random_mixture(2, 1.5, 4, s2);
        CHECK_NOTHROW(a.validate());
        REQUIRE(a.size() == b.size());
        CHECK(a.atoms[0][0] == b.atoms[0][0]);
        CHECK(a.weights.back() == b.weights.back());
    }
}

TEST_CASE("Parseval: expansion L2 mass matches the direct norm") {
    // q-part L2 norm from moments must agree with the quadrature norm of g
    // once the tail is negligible
    const auto p = two_atoms();
    const auto q = MixingMeasure::point_mass(0.2, 1.0);
    const auto es = expansion_split(p, q, 40);
    const double direct = [&] {
        QuadratureSpec spec;
        const double R = spec.radius_for(1.0);
        return std::sqrt(
            integrate_adaptive<double>(
                [&](double x) {
                    const double g = g_ratio(p, q, x);
                    return g * g * phi_pdf(x);
                },
                -R, R, 1e-14, 1e-12, 500000)
                .value);
    }();
    CHECK(es.q_norm_L2 == doctest::Approx(direct).epsilon(1e-8));
    CHECK(es.r_norm_L2_estimate < 1e-10);
}

TEST_CASE("truncation tail bound is valid for large n") {
    const auto es = expansion_split(two_atoms(), MixingMeasure::point_mass(0.0, 1.0), 21);
    CHECK(es.bound_valid);  // n+1 = 22 >= 8e M^2 d ~ 21.7
    CHECK(es.r_norm_L2_estimate <= es.r_norm_L2_bound * (1 + 1e-9));
}
