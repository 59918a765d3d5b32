#include "gmdiv/robust.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "gmdiv/sharpness.hpp"

namespace gmdiv {

ContaminationModel ContaminationModel::make(const MixingMeasure& clean,
                                            double eps,
                                            const std::string& kind) {
    ContaminationModel m;
    m.clean = clean;
    m.epsilon = eps;
    const double M = clean.radius_M;
    if (kind == "point_mass") {
        m.kind = Kind::point_mass;
        m.point.assign(clean.d, 0.0);
        m.point[0] = 3.0 * M;
    } else if (kind == "uniform") {
        m.kind = Kind::uniform;
        m.width = 5.0 * M;
    } else if (kind == "adversarial") {
        m.kind = Kind::adversarial;
        m.adversary = clean;
        m.adversary.radius_M = 3.0 * M;
        for (auto& a : m.adversary.atoms)
            for (double& c : a) c += 2.0 * M;
    } else {
        throw std::invalid_argument("unknown contamination kind: " + kind);
    }
    return m;
}

std::vector<std::vector<double>> sample_contaminated(
    const ContaminationModel& model, long n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int d = model.clean.d;
    auto draw_mixture = [&](const MixingMeasure& m) {
        double u = unif(rng);
        std::size_t j = 0;
        for (; j + 1 < m.size(); ++j) {
            if (u < m.weights[j]) break;
            u -= m.weights[j];
        }
        std::vector<double> x(d);
        for (int c = 0; c < d; ++c) x[c] = m.atoms[j][c] + gauss(rng);
        return x;
    };
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (long i = 0; i < n; ++i) {
        if (unif(rng) < model.epsilon) {
            switch (model.kind) {
                case ContaminationModel::Kind::point_mass:
                    out.push_back(model.point);
                    break;
                case ContaminationModel::Kind::uniform: {
                    std::vector<double> x(d);
                    for (int c = 0; c < d; ++c)
                        x[c] = model.width * (2.0 * unif(rng) - 1.0);
                    out.push_back(x);
                    break;
                }
                case ContaminationModel::Kind::adversarial:
                    out.push_back(draw_mixture(model.adversary));
                    break;
            }
        } else {
            out.push_back(draw_mixture(model.clean));
        }
    }
    return out;
}

bool IntervalUnion::contains(double x) const {
    for (const auto& [a, b] : intervals)
        if (x >= a && x <= b) return true;
    return false;
}

double IntervalUnion::measure_prob(const MixingMeasure& m) const {
    CompensatedSum<double> s;
    for (const auto& [a, b] : intervals)
        for (std::size_t j = 0; j < m.size(); ++j)
            s.add(m.weights[j] * (normal_cdf(b - m.atoms[j][0]) -
                                  normal_cdf(a - m.atoms[j][0])));
    return s.result();
}

double IntervalUnion::empirical_prob(const std::vector<double>& sorted) const {
    long count = 0;
    for (const auto& [a, b] : intervals) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), a);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), b);
        count += hi - lo;
    }
    return static_cast<double>(count) / std::max<std::size_t>(1, sorted.size());
}

namespace {

// quick TV on a fixed grid: good to ~1e-6, used only for covering calibration
double grid_tv(const MixingMeasure& p, const MixingMeasure& q, double R) {
    const double step = 0.02;
    const long m = std::lround(2.0 * R / step);
    double s = 0.0;
    for (long i = 0; i <= m; ++i) {
        const double x = -R + 2.0 * R * i / m;
        const double w = (i == 0 || i == m) ? 0.5 : 1.0;
        s += w * std::fabs(mixture_density_diff(p, q, x));
    }
    return 0.5 * s * step;
}

std::vector<MixingMeasure> make_candidates(double M, int atoms_n, int simplex_q) {
    std::vector<double> grid(atoms_n);
    for (int i = 0; i < atoms_n; ++i)
        grid[i] = atoms_n == 1 ? 0.0 : -M + 2.0 * M * i / (atoms_n - 1);
    std::vector<MixingMeasure> out;
    std::vector<int> comp(atoms_n, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == atoms_n - 1) {
            comp[pos] = rem;
            MixingMeasure m;
            m.d = 1;
            m.radius_M = M;
            for (int i = 0; i < atoms_n; ++i) {
                if (comp[i] == 0) continue;
                m.atoms.push_back({grid[i]});
                m.weights.push_back(static_cast<double>(comp[i]) / simplex_q);
            }
            out.push_back(std::move(m));
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            comp[pos] = v;
            rec(pos + 1, rem - v);
        }
    };
    rec(0, simplex_q);
    return out;
}

double measure_covering_radius(const std::vector<MixingMeasure>& cands,
                               double M, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double R = M + 9.0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        MixingMeasure m;
        m.d = 1;
        m.radius_M = M;
        const int k = 2 + static_cast<int>(unif(rng) * 2);
        double wsum = 0.0;
        for (int j = 0; j < k; ++j) {
            m.atoms.push_back({M * (2.0 * unif(rng) - 1.0)});
            const double w = 0.05 + unif(rng);
            m.weights.push_back(w);
            wsum += w;
        }
        for (double& w : m.weights) w /= wsum;
        double best = 1e9;
        for (const auto& c : cands) best = std::min(best, grid_tv(m, c, R));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

YatracosCovering build_covering(double M, int d, double eta, long budget,
                                std::uint64_t seed,
                                const QuadratureSpec& quad) {
    if (d != 1)
        throw std::invalid_argument("build_covering: only d = 1 is supported");
    if (eta <= 0.0) throw std::invalid_argument("build_covering: eta > 0");
    YatracosCovering cov;
    cov.M = M;
    cov.d = 1;
    cov.eta_target = eta;

    // coarse-to-fine pitch schedule; take the finest pitch the budget allows
    // (a finer net shrinks both eta_actual and the discretization floor)
    const std::vector<std::pair<int, int>> schedule = {
        {3, 2}, {3, 3}, {5, 3}, {5, 4}, {7, 4}, {7, 5}, {9, 5}, {9, 6}};
    std::vector<MixingMeasure> chosen;
    double achieved = 1e9;
    for (const auto& [g, q] : schedule) {
        auto cands = make_candidates(M, g, q);
        if (static_cast<long>(cands.size()) > budget) break;
        const double r = measure_covering_radius(cands, M, seed);
        if (chosen.empty() || r < achieved) {
            chosen = std::move(cands);
            achieved = r;
        }
    }
    cov.budget_limited = achieved > eta;
    if (chosen.empty())
        throw std::invalid_argument("build_covering: budget too small for any grid");
    cov.candidates = std::move(chosen);
    cov.eta_actual = achieved;

    const double R = M + 9.0;
    const int N = static_cast<int>(cov.candidates.size());
    for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
            auto roots = density_diff_roots(cov.candidates[i],
                                            cov.candidates[j], -R, R, 0.02);
            IntervalUnion iu;
            std::vector<double> cuts{-1e9};
            cuts.insert(cuts.end(), roots.begin(), roots.end());
            cuts.push_back(1e9);
            for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
                double mid = 0.5 * (std::max(cuts[s], -R - 2.0) +
                                    std::min(cuts[s + 1], R + 2.0));
                if (mixture_density_diff(cov.candidates[i], cov.candidates[j],
                                         mid) >= 0.0)
                    iu.intervals.emplace_back(cuts[s], cuts[s + 1]);
            }
            cov.pairs.emplace_back(i, j);
            cov.sets.push_back(std::move(iu));
        }
    }
    cov.cand_prob.assign(N, std::vector<double>(cov.sets.size()));
    for (int k = 0; k < N; ++k)
        for (std::size_t s = 0; s < cov.sets.size(); ++s)
            cov.cand_prob[k][s] = cov.sets[s].measure_prob(cov.candidates[k]);
    (void)quad;
    return cov;
}

namespace {

std::vector<double> empirical_set_probs(const std::vector<double>& samples,
                                        const YatracosCovering& cov) {
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> emp(cov.sets.size());
    for (std::size_t s = 0; s < cov.sets.size(); ++s)
        emp[s] = cov.sets[s].empirical_prob(sorted);
    return emp;
}

}  // namespace

int yatracos_estimate(const std::vector<double>& samples,
                      const YatracosCovering& cov) {
    if (cov.candidates.empty())
        throw std::invalid_argument("yatracos_estimate: empty covering");
    const auto emp = empirical_set_probs(samples, cov);
    int best = 0;
    double best_dist = 1e300;
    for (std::size_t k = 0; k < cov.candidates.size(); ++k) {
        double dist = 0.0;
        for (std::size_t s = 0; s < cov.sets.size(); ++s)
            dist = std::max(dist, std::fabs(cov.cand_prob[k][s] - emp[s]));
        if (dist < best_dist - 1e-15) {
            best_dist = dist;
            best = static_cast<int>(k);
        }
    }
    return best;
}

double dist_model_empirical(const ContaminationModel& model,
                            const std::vector<double>& samples,
                            const YatracosCovering& cov) {
    const auto emp = empirical_set_probs(samples, cov);
    double dist = 0.0;
    for (std::size_t s = 0; s < cov.sets.size(); ++s) {
        double contam = 0.0;
        switch (model.kind) {
            case ContaminationModel::Kind::point_mass:
                contam = cov.sets[s].contains(model.point[0]) ? 1.0 : 0.0;
                break;
            case ContaminationModel::Kind::uniform: {
                double overlap = 0.0;
                for (const auto& [a, b] : cov.sets[s].intervals)
                    overlap += std::max(0.0, std::min(b, model.width) -
                                                 std::max(a, -model.width));
                contam = overlap / (2.0 * model.width);
                break;
            }
            case ContaminationModel::Kind::adversarial:
                contam = cov.sets[s].measure_prob(model.adversary);
                break;
        }
        const double p = (1.0 - model.epsilon) *
                             cov.sets[s].measure_prob(model.clean) +
                         model.epsilon * contam;
        dist = std::max(dist, std::fabs(p - emp[s]));
    }
    return dist;
}

std::vector<RiskRow> risk_sweep(const ContaminationModel& base_model,
                                const std::vector<double>& epsilons,
                                const std::vector<long>& ns, int replicates,
                                std::uint64_t seed,
                                const YatracosCovering& cov,
                                const QuadratureSpec& quad) {
    std::vector<RiskRow> rows;
    // per-candidate divergence cache (the clean target is fixed)
    std::vector<double> tv_cache(cov.candidates.size(), -1.0);
    std::vector<double> h2_cache(cov.candidates.size(), -1.0);
    const double env_const =
        2.0 * (std::log(2.0 * cov.sets.size()) + std::log(1.0 / 0.05));
    long cell = 0;
    for (double eps : epsilons) {
        for (long n : ns) {
            ++cell;
            for (int r = 0; r < replicates; ++r) {
                ContaminationModel model = base_model;
                model.epsilon = eps;
                RiskRow row;
                row.epsilon = eps;
                row.n = n;
                row.seed = seed + 1000003ULL * cell + r;
                const auto pts = sample_contaminated(model, n, row.seed);
                std::vector<double> xs(pts.size());
                for (std::size_t i = 0; i < pts.size(); ++i) xs[i] = pts[i][0];
                row.estimate_index = yatracos_estimate(xs, cov);
                if (tv_cache[row.estimate_index] < 0.0) {
                    tv_cache[row.estimate_index] =
                        divergence(DivKind::TV, model.clean,
                                   cov.candidates[row.estimate_index], quad)
                            .value;
                    h2_cache[row.estimate_index] =
                        divergence(DivKind::H2, model.clean,
                                   cov.candidates[row.estimate_index], quad)
                            .value;
                }
                row.tv = tv_cache[row.estimate_index];
                row.tv2 = row.tv * row.tv;
                row.h2 = h2_cache[row.estimate_index];
                row.dist_emp = dist_model_empirical(model, xs, cov);
                row.yatracos_rhs =
                    3.0 * eps + 3.0 * cov.eta_actual + 2.0 * row.dist_emp;
                row.yatracos_ok = row.tv <= row.yatracos_rhs + 1e-9;
                row.hoeffding_env = std::sqrt(env_const / n);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

TwoPointReport two_point_lower_bound(double epsilon, int n_sharp, double M,
                                     int d, const QuadratureSpec& quad) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::domain_error("two_point_lower_bound: epsilon in (0,1)");
    TwoPointReport rep;
    rep.n_sharp = n_sharp;
    rep.epsilon = epsilon;

    const SharpExample ex = construct_base(n_sharp, M);
    const MixingMeasure& P1 = ex.lift2_pi;
    const MixingMeasure& P2 = ex.lift2_eta;
    // the pair distances are ~ e^{-sqrt(8n+4)} scale: force relative targets
    QuadratureSpec tight = quad;
    tight.abs_tol = 1e-280;
    tight.rel_tol = std::max(quad.rel_tol, 1e-9);
    const auto tv = divergence(DivKind::TV, P1, P2, tight);
    const auto h = divergence(DivKind::H, P1, P2, tight);
    rep.tv_pair = tv.value;
    rep.h_pair = h.value;
    if (rep.tv_pair > epsilon / (1.0 - epsilon))
        throw std::invalid_argument(
            "two_point_lower_bound: no sharp pair with TV <= eps/(1-eps)");

    // Q2 = D_+/eps + r phi, Q1 = D_-/eps + r phi with D = (1-eps)(f1 - f2)
    const double filler = 1.0 - (1.0 - epsilon) * rep.tv_pair / epsilon;
    auto D = [&](double x) {
        return (1.0 - epsilon) * mixture_density_diff(P1, P2, x);
    };
    auto q1 = [&](double x) {
        return std::max(0.0, -D(x)) / epsilon + filler * phi_pdf(x);
    };
    auto q2 = [&](double x) {
        return std::max(0.0, D(x)) / epsilon + filler * phi_pdf(x);
    };

    const double R = M + 10.0;
    rep.coincide_sup = 0.0;
    rep.q_min = 1e300;
    for (double x = -R; x <= R; x += 0.01) {
        const double lhs = (1.0 - epsilon) * mixture_density(P1, x) +
                           epsilon * q1(x);
        const double rhs = (1.0 - epsilon) * mixture_density(P2, x) +
                           epsilon * q2(x);
        rep.coincide_sup = std::max(rep.coincide_sup, std::fabs(lhs - rhs));
        rep.q_min = std::min({rep.q_min, q1(x), q2(x)});
    }
    rep.q1_mass = integrate_adaptive<double>(q1, -R, R, quad.abs_tol,
                                             quad.rel_tol, quad.node_budget)
                      .value;
    rep.q2_mass = integrate_adaptive<double>(q2, -R, R, quad.abs_tol,
                                             quad.rel_tol, quad.node_budget)
                      .value;

    // d-dimensional product lift with point masses at zero
    if (d >= 2) {
        auto lift = [&](const MixingMeasure& m) {
            MixingMeasure out;
            out.d = d;
            out.radius_M = m.radius_M;
            for (std::size_t j = 0; j < m.size(); ++j) {
                std::vector<double> a(d, 0.0);
                a[0] = m.atoms[j][0];
                out.atoms.push_back(a);
                out.weights.push_back(m.weights[j]);
            }
            return out;
        };
        const MixingMeasure L1 = lift(P1), L2 = lift(P2);
        const auto tvd = divergence(DivKind::TV, L1, L2, quad);
        const auto hd = divergence(DivKind::H, L1, L2, quad);
        rep.lift_tv_rel = std::fabs(tvd.value / rep.tv_pair - 1.0);
        rep.lift_h_rel = std::fabs(hd.value / rep.h_pair - 1.0);
    }

    rep.lower_exponent_log = 2.0 * std::log(rep.h_pair) - std::log(2.0);
    const double ll = std::log(std::max(std::log(1.0 / epsilon), M_E));
    rep.predicted_log = 2.0 * (1.0 - 0.33 / ll) * std::log(epsilon);
    rep.ok = rep.coincide_sup <= 1e-10 && rep.q_min >= -1e-12 &&
             std::fabs(rep.q1_mass - 1.0) <= 1e-6 &&
             std::fabs(rep.q2_mass - 1.0) <= 1e-6;
    return rep;
}

}  // namespace gmdiv
