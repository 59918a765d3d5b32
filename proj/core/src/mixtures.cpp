#include "gmdiv/mixtures.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "gmdiv/hermite.hpp"

#include <json.hpp>

namespace gmdiv {

double log_phi(double x) { return -0.5 * x * x - 0.5 * std::log(2.0 * M_PI); }
double phi_pdf(double x) { return std::exp(log_phi(x)); }
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double phi_d_pdf(const std::vector<double>& x) {
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    return std::exp(-0.5 * n2 - 0.5 * x.size() * std::log(2.0 * M_PI));
}

void MixingMeasure::validate() const {
    if (d < 1) throw std::invalid_argument("MixingMeasure: d >= 1 required");
    if (atoms.size() != weights.size())
        throw std::invalid_argument("MixingMeasure: atoms/weights size mismatch");
    CompensatedSum<double> s;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        if (static_cast<int>(atoms[j].size()) != d)
            throw std::invalid_argument("MixingMeasure: atom dimension mismatch");
        for (double c : atoms[j])
            if (std::fabs(c) > radius_M + 1e-12)
                throw std::invalid_argument("MixingMeasure: atom outside [-M, M]^d");
        if (weights[j] < -1e-12)
            throw std::invalid_argument("MixingMeasure: negative weight");
        s.add(weights[j]);
    }
    if (std::fabs(s.result() - 1.0) > 1e-12)
        throw std::invalid_argument("MixingMeasure: weights must sum to 1");
}

double MixingMeasure::support_radius() const {
    double r = 0.0;
    for (const auto& a : atoms)
        for (double c : a) r = std::max(r, std::fabs(c));
    return r;
}

MixingMeasure MixingMeasure::point_mass(double x, double M) {
    MixingMeasure m;
    m.d = 1;
    m.radius_M = M > 0.0 ? M : std::max(1.0, std::fabs(x));
    m.atoms = {{x}};
    m.weights = {1.0};
    return m;
}

MixingMeasure MixingMeasure::point_mass_d(const std::vector<double>& x, double M) {
    MixingMeasure m;
    m.d = static_cast<int>(x.size());
    double r = 0.0;
    for (double c : x) r = std::max(r, std::fabs(c));
    m.radius_M = M > 0.0 ? M : std::max(1.0, r);
    m.atoms = {x};
    m.weights = {1.0};
    return m;
}

std::string MixingMeasure::to_json() const {
    nlohmann::json j;
    j["d"] = d;
    j["M"] = radius_M;
    j["atoms"] = atoms;
    j["weights"] = weights;
    return j.dump(2);
}

MixingMeasure MixingMeasure::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    MixingMeasure m;
    m.d = j.at("d").get<int>();
    m.radius_M = j.at("M").get<double>();
    m.atoms = j.at("atoms").get<std::vector<std::vector<double>>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    return m;
}

double mixture_density(const MixingMeasure& mix, const std::vector<double>& x) {
    CompensatedSum<double> s;
    for (std::size_t j = 0; j < mix.size(); ++j) {
        double n2 = 0.0;
        for (int c = 0; c < mix.d; ++c) {
            const double dl = x[c] - mix.atoms[j][c];
            n2 += dl * dl;
        }
        s.add(mix.weights[j] *
              std::exp(-0.5 * n2 - 0.5 * mix.d * std::log(2.0 * M_PI)));
    }
    return s.result();
}

double mixture_density(const MixingMeasure& mix, double x) {
    return mixture_density(mix, std::vector<double>{x});
}

std::vector<double> mixture_density_grad(const MixingMeasure& mix,
                                         const std::vector<double>& x) {
    std::vector<CompensatedSum<double>> g(mix.d);
    for (std::size_t j = 0; j < mix.size(); ++j) {
        double n2 = 0.0;
        for (int c = 0; c < mix.d; ++c) {
            const double dl = x[c] - mix.atoms[j][c];
            n2 += dl * dl;
        }
        const double dens = mix.weights[j] *
                            std::exp(-0.5 * n2 - 0.5 * mix.d * std::log(2.0 * M_PI));
        for (int c = 0; c < mix.d; ++c)
            g[c].add((mix.atoms[j][c] - x[c]) * dens);
    }
    std::vector<double> out(mix.d);
    for (int c = 0; c < mix.d; ++c) out[c] = g[c].result();
    return out;
}

double mixture_density_diff(const MixingMeasure& pi, const MixingMeasure& eta,
                            const std::vector<double>& x) {
    if (pi.d != eta.d) throw std::invalid_argument("density_diff: dimension mismatch");
    CompensatedSum<double> s;
    const double lc = -0.5 * pi.d * std::log(2.0 * M_PI);
    auto accum = [&](const MixingMeasure& m, double sign) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            double n2 = 0.0;
            for (int c = 0; c < m.d; ++c) {
                const double dl = x[c] - m.atoms[j][c];
                n2 += dl * dl;
            }
            s.add(sign * m.weights[j] * std::exp(-0.5 * n2 + lc));
        }
    };
    accum(pi, 1.0);
    accum(eta, -1.0);
    return s.result();
}

double mixture_density_diff(const MixingMeasure& pi, const MixingMeasure& eta,
                            double x) {
    return mixture_density_diff(pi, eta, std::vector<double>{x});
}

double g_ratio(const MixingMeasure& pi, const MixingMeasure& eta,
               const std::vector<double>& x) {
    if (pi.d != eta.d) throw std::invalid_argument("g_ratio: dimension mismatch");
    CompensatedSum<double> s;
    auto accum = [&](const MixingMeasure& m, double sign) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            double dot = 0.0, n2 = 0.0;
            for (int c = 0; c < m.d; ++c) {
                dot += m.atoms[j][c] * x[c];
                n2 += m.atoms[j][c] * m.atoms[j][c];
            }
            s.add(sign * m.weights[j] * std::exp(dot - 0.5 * n2));
        }
    };
    accum(pi, 1.0);
    accum(eta, -1.0);
    return s.result();
}

double g_ratio(const MixingMeasure& pi, const MixingMeasure& eta, double x) {
    return g_ratio(pi, eta, std::vector<double>{x});
}

double SignedMoments::delta_of(const MultiIndex& k) const {
    for (std::size_t i = 0; i < index.size(); ++i)
        if (index[i] == k) return delta[i];
    throw std::out_of_range("SignedMoments: index not stored");
}

SignedMoments moment_diffs(const MixingMeasure& pi, const MixingMeasure& eta,
                           int max_degree) {
    if (pi.d != eta.d) throw std::invalid_argument("moment_diffs: dimension mismatch");
    SignedMoments sm;
    sm.d = pi.d;
    sm.max_degree = max_degree;
    sm.index = enumerate_multi_indices(max_degree, pi.d);
    sm.delta.resize(sm.index.size());
    for (std::size_t i = 0; i < sm.index.size(); ++i) {
        const auto& k = sm.index[i];
        CompensatedSum<double> s;
        auto accum = [&](const MixingMeasure& m, double sign) {
            for (std::size_t j = 0; j < m.size(); ++j) {
                double p = 1.0;
                for (int c = 0; c < m.d; ++c)
                    p *= std::pow(m.atoms[j][c], k.entries[c]);
                s.add(sign * m.weights[j] * p);
            }
        };
        accum(pi, 1.0);
        accum(eta, -1.0);
        sm.delta[i] = s.result();
    }
    return sm;
}

ExpansionSplit expansion_split(const MixingMeasure& pi, const MixingMeasure& eta,
                               int n, const QuadratureSpec& quad, int n_big) {
    if (n < 0) throw std::invalid_argument("expansion_split: n >= 0");
    ExpansionSplit es;
    es.n = n;
    es.n_big = n_big > n ? n_big : n + 60;
    const double M = std::max(pi.support_radius(), eta.support_radius());
    const int d = pi.d;

    const auto sm = moment_diffs(pi, eta, es.n_big);
    CompensatedSum<double> q2, r2;
    for (std::size_t i = 0; i < sm.index.size(); ++i) {
        const auto& k = sm.index[i];
        const double term = sm.delta[i] * sm.delta[i] *
                            std::exp(-k.log_factorial());
        if (k.total_degree() <= n) q2.add(term);
        else r2.add(term);
    }
    es.q_norm_L2 = std::sqrt(std::max(0.0, q2.result()));
    es.r_norm_L2_estimate = std::sqrt(std::max(0.0, r2.result()));

    const double crit = 4.0 * M_E * M * M * d;
    es.bound_valid = (n + 1) >= std::max(16.0, 2.0 * crit);
    es.r_norm_L2_bound = std::pow(crit / (n + 1), 0.5 * (n + 1));

    // ||q||_{L1(phi_d)} by quadrature of |q| phi_d (d = 1 adaptive; d >= 2
    // tensor Gauss rule on the phi weight)
    auto q_eval = [&](const std::vector<double>& x) {
        std::vector<std::vector<double>> tab(d);
        for (int j = 0; j < d; ++j) tab[j] = hermite_all_1d(n, x[j]);
        CompensatedSum<double> s;
        for (std::size_t i = 0; i < sm.index.size(); ++i) {
            const auto& k = sm.index[i];
            if (k.total_degree() > n) continue;
            double p = 1.0;
            for (int j = 0; j < d; ++j) p *= tab[j][k.entries[j]];
            s.add(sm.delta[i] * std::exp(-0.5 * k.log_factorial()) * p);
        }
        return s.result();
    };
    if (d == 1) {
        const double R = quad.radius_for(M) ;
        auto f = [&](double x) {
            return std::fabs(q_eval({x})) * phi_pdf(x);
        };
        es.q_norm_L1 = integrate_adaptive<double>(f, -R, R, quad.abs_tol,
                                                  quad.rel_tol, quad.node_budget)
                           .value;
    } else {
        const auto rule = gauss_hermite_rule(60);
        std::function<void(std::vector<double>&, int, double, CompensatedSum<double>&)>
            rec = [&](std::vector<double>& x, int pos, double w,
                      CompensatedSum<double>& acc) {
                if (pos == d) {
                    acc.add(w * std::fabs(q_eval(x)));
                    return;
                }
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    x[pos] = rule.nodes[i];
                    rec(x, pos + 1, w * rule.weights[i], acc);
                }
            };
        std::vector<double> x(d);
        CompensatedSum<double> acc;
        rec(x, 0, 1.0, acc);
        es.q_norm_L1 = acc.result();
    }
    return es;
}

namespace {
// splitmix64: tiny, portable, and good enough for test-pair generation
std::uint64_t next_u64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
double next_unit(std::uint64_t& state) {
    return (next_u64(state) >> 11) * 0x1.0p-53;
}
}  // namespace

MixingMeasure random_mixture(int d, double M, int max_atoms,
                             std::uint64_t& state) {
    MixingMeasure m;
    m.d = d;
    m.radius_M = M;
    const int k = 1 + static_cast<int>(next_unit(state) * max_atoms);
    double wsum = 0.0;
    for (int j = 0; j < std::min(k, max_atoms); ++j) {
        std::vector<double> a(d);
        for (int c = 0; c < d; ++c) a[c] = M * (2.0 * next_unit(state) - 1.0);
        m.atoms.push_back(std::move(a));
        const double w = -std::log(std::max(next_unit(state), 1e-300));
        m.weights.push_back(w);
        wsum += w;
    }
    for (double& w : m.weights) w /= wsum;
    return m;
}

}  // namespace gmdiv
