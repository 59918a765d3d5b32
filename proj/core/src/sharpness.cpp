#include "gmdiv/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gmdiv/quadrature.hpp"

namespace gmdiv {

using BigReal = boost::multiprecision::cpp_bin_float_50;

PrecisionTier precision_tier_from_string(const std::string& s) {
    if (s == "auto") return PrecisionTier::automatic;
    if (s == "double") return PrecisionTier::double_prec;
    if (s == "extended") return PrecisionTier::extended;
    throw std::invalid_argument("unknown precision tier: " + s);
}

int required_digits(int n) {
    if (n <= 19) return 0;
    if (n <= 31) return 50;
    throw std::invalid_argument(
        "sharpness: n > 31 exceeds the certified precision range");
}

std::vector<double> chebyshev_nodes(int n) {
    std::vector<double> out(n + 1);
    for (int j = 0; j <= n; ++j)
        out[j] = std::cos((2.0 * j + 1.0) * M_PI / (2.0 * n + 2.0));
    return out;
}

namespace {

// Construction internals always run at 50 digits: the moment targets span
// ~n/2 orders of magnitude and the Vandermonde solve cancels heavily.
struct BigWork {
    int n = 0;
    BigReal a, scale;                 // scale = (a(sqrt(2)-1))^{n+1}
    std::vector<BigReal> theta, x;    // nodes, a*nodes
    std::vector<BigReal> w;           // solved weights
    std::vector<BigReal> delta;       // targets Delta_0..Delta_n
    std::vector<BigReal> sigma;       // sigma_{2m}, m = 1..(n+1)/2
    BigReal residual = 0;
};

BigReal big_pi() { return acos(BigReal(-1)); }

BigWork build_work(int n, double M) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("sharpness: n must be odd and >= 1");
    BigWork wk;
    wk.n = n;
    wk.a = std::min(BigReal(1), BigReal(M));
    wk.scale = pow(wk.a * (sqrt(BigReal(2)) - 1), n + 1);
    const BigReal pi_v = big_pi();
    wk.theta.resize(n + 1);
    wk.x.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        wk.theta[j] = cos((2 * j + 1) * pi_v / (2 * n + 2));
        wk.x[j] = wk.a * wk.theta[j];
    }
    wk.delta.assign(n + 1, BigReal(0));
    for (int k = 1; k <= n; k += 2) {
        BigReal df = 1;  // (n - k)!!
        for (int v = n - k; v >= 2; v -= 2) df *= v;
        wk.delta[k] = wk.scale / df;
    }

    // node polynomial N(x) = prod_j (x - x_j)
    std::vector<BigReal> N{1};
    for (int j = 0; j <= n; ++j) {
        std::vector<BigReal> next(N.size() + 1, BigReal(0));
        for (std::size_t k = 0; k < N.size(); ++k) {
            next[k + 1] += N[k];
            next[k] -= wk.x[j] * N[k];
        }
        N = next;
    }
    // w_j = sum_k Delta_k [x^k] l_j(x), l_j = N / ((x - x_j) N'(x_j))
    wk.w.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        // synthetic division of N by (x - x_j)
        std::vector<BigReal> b(n + 1);
        b[n] = N[n + 1];
        for (int k = n - 1; k >= 0; --k) b[k] = N[k + 1] + wk.x[j] * b[k + 1];
        BigReal dN = 0;  // N'(x_j) = quotient evaluated at x_j
        for (int k = n; k >= 0; --k) dN = dN * wk.x[j] + b[k];
        BigReal s = 0;
        for (int k = 0; k <= n; ++k) s += wk.delta[k] * b[k];
        wk.w[j] = s / dN;
    }
    // residual of the moment system
    for (int k = 0; k <= n; ++k) {
        BigReal s = 0;
        std::vector<BigReal> p(n + 1, BigReal(1));
        for (int j = 0; j <= n; ++j) s += wk.w[j] * pow(wk.x[j], k);
        wk.residual = std::max(wk.residual, abs(s - wk.delta[k]));
    }

    // sigma_{2m} from T_{n+1} = 2^n (x^{n+1} - sigma_2 x^{n-1} + ...)
    std::vector<BigReal> Tm{1}, Tc{0, 1};  // T_0, T_1
    for (int k = 1; k <= n; ++k) {
        std::vector<BigReal> Tn(Tc.size() + 1, BigReal(0));
        for (std::size_t i = 0; i < Tc.size(); ++i) Tn[i + 1] += 2 * Tc[i];
        for (std::size_t i = 0; i < Tm.size(); ++i) Tn[i] -= Tm[i];
        Tm = Tc;
        Tc = Tn;
    }
    const BigReal lead = pow(BigReal(2), n);
    wk.sigma.resize((n + 1) / 2);
    for (int m = 1; m <= (n + 1) / 2; ++m)
        wk.sigma[m - 1] = abs(Tc[n + 1 - 2 * m]) / lead;
    return wk;
}

// signed atom list of a (difference of) mixture(s)
template <class Real>
struct SignedMixture {
    std::vector<Real> atoms, weights;
    Real density(Real x) const {
        using std::acos;
        using std::exp;
        using std::sqrt;
        const Real c = 1 / sqrt(2 * acos(Real(-1)));
        CompensatedSum<Real> s;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            const Real dl = x - atoms[j];
            s.add(weights[j] * c * exp(-dl * dl / 2));
        }
        return s.result();
    }
};

template <class Real>
Real phi_of(Real x) {
    using std::acos;
    using std::exp;
    using std::sqrt;
    return exp(-x * x / 2) / sqrt(2 * acos(Real(-1)));
}

// log of a positive Real, as double
template <class Real>
double log_d(const Real& v) {
    using std::log;
    return static_cast<double>(log(v));
}

template <class Real>
struct Lifts {
    int n;
    Real lambda;
    std::vector<Real> x, w;
    SignedMixture<Real> pi1, eta1, pi2, eta2;      // probability atom lists
    SignedMixture<Real> diff1, diff2;              // merged signed lists
};

template <class Real>
Lifts<Real> make_lifts(const BigWork& wk) {
    using std::exp;
    using std::sqrt;
    Lifts<Real> lf;
    const int n = wk.n;
    lf.n = n;
    lf.lambda = exp(-sqrt(Real(8 * n + 4)));
    lf.x.resize(n + 1);
    lf.w.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        lf.x[j] = static_cast<Real>(wk.x[j]);
        lf.w[j] = static_cast<Real>(wk.w[j]);
    }
    const Real unif = Real(1) / (n + 1);
    const Real lam = lf.lambda;
    lf.pi1.atoms.push_back(Real(0));
    lf.pi1.weights.push_back(1 - lam);
    lf.eta1.atoms.push_back(Real(0));
    lf.eta1.weights.push_back(1 - lam);
    lf.pi2.atoms.push_back(Real(0));
    lf.pi2.weights.push_back(1 - lam);
    lf.eta2.atoms.push_back(Real(0));
    lf.eta2.weights.push_back(1 - lam);
    for (int j = 0; j <= n; ++j) {
        lf.pi1.atoms.push_back(lf.x[j]);
        lf.pi1.weights.push_back(lam * (unif + lf.w[j]));
        lf.eta1.atoms.push_back(lf.x[j]);
        lf.eta1.weights.push_back(lam * unif);
        lf.pi2.atoms.push_back(lf.x[j]);
        lf.pi2.weights.push_back(lam * (unif + lf.w[j]) / 4 +
                                 3 * lam * unif / 4);
        lf.eta2.atoms.push_back(lf.x[j]);
        lf.eta2.weights.push_back(lam * unif);
    }
    // The delta_0 mass and the lambda/(n+1) dilution cancel between pi and
    // eta, so the difference weights are exactly lambda w_j (lift 1) and
    // lambda w_j / 4 (lift 2). Assembling them any other way (separate +/-
    // entries, or subtracting the composite weights) freezes rounding debris
    // of order eps * lambda/(n+1) per atom into the measure, which swamps
    // the ~e^{-4n}-sized signal in the double tier from n = 17 on.
    lf.diff1.atoms = lf.x;
    lf.diff2.atoms = lf.x;
    lf.diff1.weights.resize(n + 1);
    lf.diff2.weights.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        lf.diff1.weights[j] = lam * lf.w[j];
        lf.diff2.weights[j] = lam * lf.w[j] / 4;
    }
    return lf;
}

template <class Real>
Real g_of(const Lifts<Real>& lf, Real t) {
    using std::exp;
    CompensatedSum<Real> s;
    for (std::size_t j = 0; j < lf.x.size(); ++j)
        s.add(lf.w[j] * exp(lf.x[j] * t - lf.x[j] * lf.x[j] / 2));
    return s.result();
}

template <class Real, class F>
Real integrate_segments(const F& f, const std::vector<Real>& cuts, Real rel_tol,
                        long budget) {
    CompensatedSum<Real> s;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        s.add(integrate_adaptive<Real>(f, cuts[i], cuts[i + 1], Real(0),
                                       rel_tol, budget)
                  .value);
    return s.result();
}

template <class Real>
std::vector<Real> sign_change_cuts(const std::function<Real(Real)>& f, Real lo,
                                   Real hi, int scan) {
    std::vector<Real> cuts{lo};
    Real xp = lo, fp = f(xp);
    for (int i = 1; i <= scan; ++i) {
        const Real xx = lo + (hi - lo) * i / scan;
        const Real fx = f(xx);
        if (fp * fx < 0) {
            Real a = xp, b = xx, fa = fp;
            for (int it = 0; it < 80; ++it) {
                const Real m = (a + b) / 2;
                const Real fm = f(m);
                if (fa * fm <= 0) b = m;
                else { a = m; fa = fm; }
            }
            cuts.push_back((a + b) / 2);
        }
        xp = xx;
        fp = fx;
    }
    cuts.push_back(hi);
    return cuts;
}

template <class Real>
SharpnessReport verify_impl(const BigWork& wk, double M, int digits) {
    using std::abs;
    using std::sqrt;
    const int n = wk.n;
    SharpnessReport rep;
    rep.n = n;
    rep.M = M;
    rep.digits_used = digits;

    const Lifts<Real> lf = make_lifts<Real>(wk);
    // 50-digit arithmetic is needed for the cancellation, but the quadrature
    // itself only has to beat the reported-digit targets by a margin
    const Real rel_tol = digits == 0 ? Real(1e-11) : Real(1e-13);
    const long budget = 400000;
    const Real R = 2 * sqrt(Real(n)) + 14;

    rep.weights_ok = true;
    for (int j = 0; j <= n; ++j)
        if (abs(wk.w[j]) > BigReal(1) / (n + 1) * (1 + BigReal(1e-30)))
            rep.weights_ok = false;

    // ||g||_1 with sign-change subdivision (g has at most n real zeros)
    std::function<Real(Real)> g = [&](Real t) { return g_of(lf, t); };
    const auto cuts = sign_change_cuts<Real>(g, -R, R, 40 * static_cast<int>(
        static_cast<double>(R) / 0.2));
    auto abs_g_phi = [&](Real t) { return abs(g_of(lf, t)) * phi_of(t); };
    const Real g_L1 = integrate_segments<Real>(abs_g_phi, cuts, rel_tol, budget);
    rep.log_g_L1 = log_d(g_L1);

    // formula path: TV = lambda/8 ||g||_1
    const Real tv_formula = lf.lambda / 8 * g_L1;
    rep.log_TV_formula = log_d(tv_formula);

    // direct path: half the L1 distance of the assembled lift2 densities
    auto abs_diff2 = [&](Real t) { return abs(lf.diff2.density(t)) / 2; };
    const Real tv_direct =
        integrate_segments<Real>(abs_diff2, cuts, rel_tol, budget);
    rep.log_TV_direct = log_d(tv_direct);
    rep.dual_path_rel =
        std::fabs(static_cast<double>(tv_direct / tv_formula) - 1.0);
    rep.dual_path_ok = rep.dual_path_rel <= 1e-3;

    // Hellinger of the lift2 pair: (p - q)^2 / (2 (sqrt p + sqrt q)^2)
    auto h2_integrand = [&](Real t) {
        const Real diff = lf.diff2.density(t);
        const Real den = sqrt(lf.pi2.density(t)) + sqrt(lf.eta2.density(t));
        return diff * diff / (2 * den * den);
    };
    std::vector<Real> plain{-R, Real(0), R};
    const Real h2 =
        integrate_segments<Real>(h2_integrand, plain, rel_tol, budget);
    rep.log_H = 0.5 * log_d(h2);

    // chi-square of the lift1 pair
    auto chi_integrand = [&](Real t) {
        const Real diff = lf.diff1.density(t);
        return diff * diff / lf.eta1.density(t);
    };
    const Real chi1 =
        integrate_segments<Real>(chi_integrand, plain, rel_tol, budget);
    rep.chain_chi2_ok = h2 >= chi1 / 256 * (1 - Real(1e-6));

    // q_n is the monomial scale * x^n / n!: closed-form norms (log domain)
    const double log_scale = log_d(wk.scale);
    double log_nfact = 0, log_ddf = 0;
    for (int k = 2; k <= n; ++k) log_nfact += std::log(static_cast<double>(k));
    for (int k = 2 * n - 1; k >= 2; k -= 2)
        log_ddf += std::log(static_cast<double>(k));
    rep.log_q_L2 = log_scale + 0.5 * log_ddf - log_nfact;
    rep.log_q_L1 = log_scale - log_nfact + 0.5 * n * std::log(2.0) +
                   std::lgamma(0.5 * (n + 1)) - 0.5 * std::log(M_PI);

    // chain H >= (lambda/64) ||q||_2, in logs
    const double log_lambda = log_d(lf.lambda);
    rep.chain_q2_ok =
        rep.log_H >= log_lambda - std::log(64.0) + rep.log_q_L2 - 1e-9;

    // q_n vs the monomial coefficient identity, from the solved weights
    rep.qn_monomial_rel = 0;
    {
        std::vector<BigReal> p(n + 1, BigReal(1));
        for (int k = 0; k <= n; ++k) {
            BigReal got = 0;
            for (int j = 0; j <= n; ++j) {
                got += wk.w[j] * p[j];
                p[j] *= wk.x[j];
            }
            const double rel =
                k % 2 == 1
                    ? std::fabs(static_cast<double>((got - wk.delta[k]) /
                                                    wk.delta[k]))
                    : std::fabs(static_cast<double>(got / wk.scale));
            rep.qn_monomial_rel = std::max(rep.qn_monomial_rel, rel);
        }
    }
    rep.qn_matches_monomial = rep.qn_monomial_rel <= 1e-10;

    // ratio bounds on a dense grid
    const Real Rn = sqrt(Real(8 * n + 4));
    rep.u_inf_ok = true;
    rep.density_bound_ok = true;
    double u_sup = -1;
    const int gridN = 2 * static_cast<int>(static_cast<double>(Rn) / 0.05) + 40;
    for (int i = 0; i <= gridN; ++i) {
        const Real t = -(Rn + 1) + 2 * (Rn + 1) * i / gridN;
        const Real u = lf.pi1.density(t) / lf.eta1.density(t) - 1;
        u_sup = std::max(u_sup, static_cast<double>(u));
        if (u > 1 + Real(1e-12)) rep.u_inf_ok = false;
        if (abs(t) <= Rn &&
            lf.eta1.density(t) > 2 * phi_of(t) * (1 + Real(1e-12)))
            rep.density_bound_ok = false;
    }
    rep.u_sup = u_sup;

    // final exponent comparison, log domain
    const double log_tv = rep.log_TV_formula;
    rep.tv_below_threshold = log_tv < -M_E;
    rep.alpha_star = 0.33 / std::log(-log_tv);
    rep.margin_log = rep.log_H - (1.0 - rep.alpha_star) * log_tv;
    rep.exponent_ok = rep.margin_log >= 0.0;
    rep.rate = -log_tv / (n * std::log(static_cast<double>(n)));

    rep.ok = rep.weights_ok && rep.dual_path_ok && rep.qn_matches_monomial &&
             rep.u_inf_ok && rep.density_bound_ok && rep.chain_chi2_ok &&
             rep.chain_q2_ok && rep.tv_below_threshold && rep.exponent_ok;
    return rep;
}

}  // namespace

SharpExample construct_base(int n, double M) {
    const BigWork wk = build_work(n, M);
    SharpExample ex;
    ex.n = n;
    ex.M = M;
    ex.a = static_cast<double>(wk.a);
    ex.b = ex.a * std::sqrt(n / 2.77);
    ex.R_n = std::sqrt(8.0 * n + 4.0);
    ex.lambda_n = std::exp(-ex.R_n);
    ex.theory_valid = n >= 11 && n % 2 == 1;
    ex.nodes.resize(n + 1);
    ex.weights_w.resize(n + 1);
    ex.delta.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        ex.nodes[j] = static_cast<double>(wk.theta[j]);
        ex.weights_w[j] = static_cast<double>(wk.w[j]);
        ex.delta[j] = static_cast<double>(wk.delta[j]);
        ex.max_abs_w = std::max(ex.max_abs_w, std::fabs(ex.weights_w[j]));
    }
    ex.solve_residual = static_cast<double>(wk.residual);
    if (ex.solve_residual >
        1e-10 * std::max(1e-300, static_cast<double>(wk.scale)))
        throw PrecisionError("sharpness: moment-system residual too large");

    auto mk = [&](bool with_w) {
        MixingMeasure m;
        m.d = 1;
        m.radius_M = M;
        for (int j = 0; j <= n; ++j) {
            m.atoms.push_back({static_cast<double>(wk.x[j])});
            m.weights.push_back(1.0 / (n + 1) +
                                (with_w ? ex.weights_w[j] : 0.0));
        }
        return m;
    };
    ex.base_pi = mk(true);
    ex.base_eta = mk(false);
    auto lift1 = [&](const MixingMeasure& base) {
        MixingMeasure m;
        m.d = 1;
        m.radius_M = M;
        m.atoms.push_back({0.0});
        m.weights.push_back(1.0 - ex.lambda_n);
        for (std::size_t j = 0; j < base.atoms.size(); ++j) {
            m.atoms.push_back(base.atoms[j]);
            m.weights.push_back(ex.lambda_n * base.weights[j]);
        }
        return m;
    };
    ex.lift1_pi = lift1(ex.base_pi);
    ex.lift1_eta = lift1(ex.base_eta);
    ex.lift2_eta = ex.lift1_eta;
    ex.lift2_pi = ex.lift1_eta;
    for (std::size_t j = 0; j < ex.lift2_pi.weights.size(); ++j)
        ex.lift2_pi.weights[j] = 0.25 * ex.lift1_pi.weights[j] +
                                 0.75 * ex.lift1_eta.weights[j];
    return ex;
}

MomentBoundReport verify_moment_bound(int n, double M, int k_max) {
    if (k_max < n) throw std::invalid_argument("verify_moment_bound: k_max >= n");
    const BigWork wk = build_work(n, M);
    MomentBoundReport rep;
    rep.n = n;
    rep.k_max = k_max;

    std::vector<BigReal> deltas(k_max + 1, BigReal(0));
    std::vector<BigReal> p(n + 1, BigReal(1));
    for (int k = 0; k <= k_max; ++k) {
        BigReal s = 0;
        for (int j = 0; j <= n; ++j) {
            s += wk.w[j] * p[j];
            p[j] *= wk.x[j];
        }
        deltas[k] = s;
    }
    const BigReal b = wk.a * sqrt(BigReal(n) / BigReal(2.77));
    const BigReal front = wk.scale * exp(BigReal(n) / BigReal(5.54));
    rep.all_ok = true;
    for (int k = 0; k <= k_max; ++k) {
        const BigReal bound = front * pow(b, k - n);
        const double ratio = static_cast<double>(abs(deltas[k]) / bound);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (ratio > 1.0 + 1e-12) rep.all_ok = false;
    }

    // recursion |Delta_{n+1}| <= sum_m sigma_{2m} a^{2m} |Delta_{n+1-2m}|
    BigReal rhs = 0;
    for (int m = 1; m <= (n + 1) / 2; ++m)
        rhs += wk.sigma[m - 1] * pow(wk.a, 2 * m) * abs(deltas[n + 1 - 2 * m]);
    rep.recursion_ok = abs(deltas[n + 1]) <= rhs * (1 + BigReal(1e-20));

    // T_{n+1}(theta_j) = 0: the root identity sums vanish
    rep.root_identity_ok = true;
    for (int m = 0; m <= 5; ++m) {
        BigReal s = 0;
        for (int j = 0; j <= n; ++j) {
            // Chebyshev recurrence at theta_j
            BigReal tm = 1, tc = wk.theta[j];
            for (int k = 1; k <= n; ++k) {
                const BigReal tn = 2 * wk.theta[j] * tc - tm;
                tm = tc;
                tc = tn;
            }
            s += wk.w[j] * tc * pow(wk.x[j], m);
        }
        if (abs(s) > wk.scale * BigReal(1e-20)) rep.root_identity_ok = false;
    }
    return rep;
}

SharpnessReport verify_sharpness(int n, double M, PrecisionTier tier) {
    const int need = required_digits(n);
    int digits = need;
    if (tier == PrecisionTier::double_prec) {
        if (need > 0)
            throw PrecisionError(
                "sharpness: double precision cannot certify n >= 21");
        digits = 0;
    } else if (tier == PrecisionTier::extended) {
        digits = 50;
    }
    const BigWork wk = build_work(n, M);
    if (digits == 0) return verify_impl<double>(wk, M, 0);
    return verify_impl<BigReal>(wk, M, 50);
}

}  // namespace gmdiv
