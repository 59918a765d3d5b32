#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gmdiv/robust.hpp"

using namespace gmdiv;

namespace {

MixingMeasure clean_pair() {
    MixingMeasure m;
    m.d = 1;
    m.radius_M = 1.0;
    m.atoms = {{-0.5}, {0.5}};
    m.weights = {0.5, 0.5};
    return m;
}

}  // namespace

TEST_CASE("contaminated sampling is deterministic and well-mixed") {
    const auto model = ContaminationModel::make(clean_pair(), 0.2, "point_mass");
    const auto a = sample_contaminated(model, 2000, 5);
    const auto b = sample_contaminated(model, 2000, 5);
    REQUIRE(a.size() == 2000);
    CHECK(a == b);
    // about 20% of the points sit exactly at the contamination point 3M
    const long hits = std::count_if(a.begin(), a.end(),
                                    [](const auto& x) { return x[0] == 3.0; });
    CHECK(hits > 300);
    CHECK(hits < 500);
}

TEST_CASE("interval union probabilities") {
    IntervalUnion iu;
    iu.intervals = {{-1e9, 0.0}};
    CHECK(iu.measure_prob(MixingMeasure::point_mass(0.0, 1.0)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(iu.contains(-3.0));
    CHECK_FALSE(iu.contains(0.5));
    std::vector<double> sorted{-2.0, -1.0, 0.5, 1.0};
    CHECK(iu.empirical_prob(sorted) == doctest::Approx(0.5));
}

TEST_CASE("covering construction is consistent") {
    const auto cov = build_covering(1.0, 1, 0.1, 250);
    CHECK(cov.eta_actual <= 0.1);
    CHECK_FALSE(cov.budget_limited);
    CHECK(cov.pairs.size() == cov.sets.size());
    CHECK(cov.pairs.size() ==
          cov.candidates.size() * (cov.candidates.size() - 1) / 2);
    // model probabilities of A_ij lie in [0,1] and P_i(A_ij) >= P_j(A_ij)
    for (std::size_t s = 0; s < cov.sets.size(); ++s) {
        const auto [i, j] = cov.pairs[s];
        const double pi_prob = cov.cand_prob[i][s];
        const double pj_prob = cov.cand_prob[j][s];
        CHECK(pi_prob >= -1e-12);
        CHECK(pi_prob <= 1 + 1e-12);
        CHECK(pi_prob >= pj_prob - 1e-9);
    }
    CHECK_THROWS(build_covering(1.0, 2, 0.1, 250));
}

TEST_CASE("estimator recovers a candidate from its own samples") {
    const auto cov = build_covering(1.0, 1, 0.1, 250);
    const auto model =
        ContaminationModel::make(cov.candidates[17], 0.0, "point_mass");
    const auto pts = sample_contaminated(model, 8000, 99);
    std::vector<double> xs(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) xs[i] = pts[i][0];
    const int est = yatracos_estimate(xs, cov);
    const double tv =
        divergence(DivKind::TV, cov.candidates[17], cov.candidates[est]).value;
    CHECK(tv < 0.1);  // within a few covering radii
}

TEST_CASE("risk sweep rows satisfy the replicate-wise bound") {
    const auto cov = build_covering(1.0, 1, 0.1, 250);
    const auto model = ContaminationModel::make(clean_pair(), 0.0, "point_mass");
    const auto rows = risk_sweep(model, {0.0, 0.1}, {500}, 3, 1, cov);
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.yatracos_ok);
        CHECK(r.tv <= r.yatracos_rhs + 1e-9);
        CHECK(r.h2 <= r.tv + 1e-9);  // sandwich for the selected candidate
        CHECK(r.hoeffding_env > 0.0);
    }
}

TEST_CASE("two-point construction at epsilon matched to the sharp pair") {
    const auto rep = two_point_lower_bound(2e-14, 11, 1.0, 1);
    CHECK(rep.ok);
    CHECK(rep.tv_pair <= 2e-14 / (1 - 2e-14));
    CHECK(rep.coincide_sup <= 1e-10);
    CHECK(rep.q_min >= -1e-12);
    CHECK(rep.q1_mass == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.q2_mass == doctest::Approx(1.0).epsilon(1e-6));
    // infeasible epsilon refuses
    CHECK_THROWS(two_point_lower_bound(1e-15, 11, 1.0, 1));
}
