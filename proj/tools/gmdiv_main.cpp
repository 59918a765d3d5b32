// gmdiv: divergence bounds, extremal constants, and robust-estimation
// experiments for Gaussian location mixtures.

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmdiv/bounds.hpp"
#include "gmdiv/divergences.hpp"
#include "gmdiv/ebayes.hpp"
#include "gmdiv/extremal.hpp"
#include "gmdiv/manifest.hpp"
#include "gmdiv/mixtures.hpp"
#include "gmdiv/robust.hpp"
#include "gmdiv/sharpness.hpp"

using nlohmann::json;
using namespace gmdiv;

namespace {

constexpr int kExitViolation = 2;
constexpr int kExitPrecision = 3;

std::string utc_now() {
    char buf[32];
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit_manifest(const std::string& command, const json& config,
                   std::uint64_t seed, const std::string& tier,
                   const std::string& out_path) {
    if (out_path.empty()) return;
    RunManifest m;
    m.command = command;
    m.config_json = config.dump();
    m.seed = seed;
    m.precision_tier = tier;
    m.timestamp = utc_now();
    m.write_sidecar(out_path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string precision_override(const std::string& flag_value) {
    const char* env = std::getenv("GMDL_PRECISION");
    return env && *env ? std::string(env) : flag_value;
}

MixingMeasure clean_from_config(const json& cfg, double M) {
    if (cfg.contains("clean"))
        return MixingMeasure::from_json(cfg["clean"].dump());
    MixingMeasure m;
    m.d = 1;
    m.radius_M = M;
    m.atoms = {{-0.5 * M}, {0.5 * M}};
    m.weights = {0.5, 0.5};
    return m;
}

int cmd_div(const std::string& kind, const std::string& file_a,
            const std::string& file_b, const std::string& out) {
    const auto pi = MixingMeasure::from_json(read_file(file_a));
    const auto eta = MixingMeasure::from_json(read_file(file_b));
    pi.validate();
    eta.validate();
    const auto res = divergence(div_kind_from_string(kind), pi, eta);
    std::cout << kind << " = " << format_g17(res.value)
              << "  (error <= " << format_g17(res.error_bound)
              << ", nodes = " << res.nodes_used
              << (res.heuristic ? ", heuristic" : "") << ")\n";
    if (!out.empty()) {
        CsvWriter csv(out, {"kind", "value", "error_bound", "nodes"});
        csv.row_mixed({kind, format_g17(res.value),
                       format_g17(res.error_bound),
                       std::to_string(res.nodes_used)});
        csv.close();
        emit_manifest("div",
                      json{{"kind", kind}, {"a", file_a}, {"b", file_b}}, 0,
                      "auto", out);
    }
    return 0;
}

int cmd_bounds_verify(double delta, int pairs, std::uint64_t seed, int d,
                      double M, const std::string& out) {
    std::uint64_t state = seed;
    CsvWriter csv(out.empty() ? "/dev/null" : out,
                  {"pair_id", "TV", "H", "chi2", "lhs_sqrt_chi2", "rhs_log",
                   "margin_log", "ok"});
    int violations = 0;
    for (int i = 0; i < pairs; ++i) {
        const auto a = random_mixture(d, M, 4, state);
        const auto b = random_mixture(d, M, 4, state);
        const auto rep = verify_main_theorem(a, b, delta);
        for (const auto& line : rep.lines)
            if (!line.ok) ++violations;
        const auto& chi_line = rep.lines.front();
        csv.row_mixed({std::to_string(i), format_g17(rep.tv),
                       format_g17(rep.h), format_g17(rep.chi2),
                       format_g17(chi_line.lhs), format_g17(chi_line.rhs_log),
                       format_g17(chi_line.margin_log),
                       rep.all_ok ? "1" : "0"});
        if (!rep.all_ok)
            std::cerr << "pair " << i << ": inequality violation\n";
    }
    csv.close();
    emit_manifest("bounds verify",
                  json{{"delta", delta},
                       {"pairs", pairs},
                       {"seed", seed},
                       {"d", d},
                       {"M", M}},
                  seed, "auto", out);
    std::cout << pairs << " pairs checked, " << violations << " violations\n";
    return violations == 0 ? 0 : kExitViolation;
}

int cmd_extremal_cn(int n, int d, int restarts, std::uint64_t seed,
                    const std::string& out) {
    CsvWriter csv(out.empty() ? "/dev/null" : out,
                  {"n", "d", "lower", "estimate", "monomial_ratio"});
    bool sandwich_ok = true;
    for (int k = 0; k <= n; ++k) {
        const auto est = estimate_cn(k, d, restarts, seed);
        csv.row_mixed({std::to_string(k), std::to_string(d),
                       format_g17(est.lower_bound), format_g17(est.estimate),
                       format_g17(est.monomial_ratio)});
        std::cout << "n=" << k << "  lower=" << est.lower_bound
                  << "  estimate=" << est.estimate
                  << "  monomial=" << est.monomial_ratio << "\n";
        if (est.lower_bound > est.estimate * (1 + 1e-9) ||
            est.estimate > est.monomial_ratio * (1 + 1e-9))
            sandwich_ok = false;
    }
    csv.close();
    emit_manifest("extremal cn",
                  json{{"n", n},
                       {"d", d},
                       {"restarts", restarts},
                       {"seed", seed}},
                  seed, "auto", out);
    return sandwich_ok ? 0 : kExitViolation;
}

int cmd_sharp(const std::vector<int>& n_list, double M,
              const std::string& precision, const std::string& out,
              const std::string& json_dir) {
    const auto tier = precision_tier_from_string(precision);
    CsvWriter csv(out.empty() ? "/dev/null" : out,
                  {"n", "TV_n", "H_n", "logTV", "logH", "alpha_star",
                   "margin_log", "rate", "ok"});
    bool all_ok = true;
    for (int n : n_list) {
        const auto rep = verify_sharpness(n, M, tier);
        csv.row_mixed({std::to_string(n),
                       format_g17(std::exp(rep.log_TV_formula)),
                       format_g17(std::exp(rep.log_H)),
                       format_g17(rep.log_TV_formula), format_g17(rep.log_H),
                       format_g17(rep.alpha_star), format_g17(rep.margin_log),
                       format_g17(rep.rate), rep.ok ? "1" : "0"});
        std::cout << "n=" << n << "  logTV=" << rep.log_TV_formula
                  << "  margin=" << rep.margin_log
                  << (rep.ok ? "  ok" : "  VIOLATION") << "\n";
        if (!rep.ok) all_ok = false;
        if (!json_dir.empty()) {
            const auto ex = construct_base(n, M);
            std::ofstream os(json_dir + "/sharp_n" + std::to_string(n) +
                             ".json");
            os << json{{"n", n},
                       {"pi", json::parse(ex.lift2_pi.to_json())},
                       {"eta", json::parse(ex.lift2_eta.to_json())}}
                      .dump(2)
               << "\n";
        }
    }
    csv.close();
    emit_manifest("sharp",
                  json{{"n_list", n_list}, {"M", M}, {"precision", precision}},
                  0, precision, out);
    return all_ok ? 0 : kExitViolation;
}

YatracosCovering covering_from_config(const json& cfg, double M) {
    return build_covering(M, 1, cfg.value("eta", 0.1),
                          cfg.value("budget", 250L),
                          cfg.value("covering_seed", 7ULL));
}

int cmd_robust_sweep(const std::string& config_path, const std::string& out) {
    const json cfg = json::parse(read_file(config_path));
    const double M = cfg.value("M", 1.0);
    const auto clean = clean_from_config(cfg, M);
    const auto model =
        ContaminationModel::make(clean, 0.0, cfg.value("kind", "point_mass"));
    const auto cov = covering_from_config(cfg, M);
    const auto rows = risk_sweep(
        model, cfg.value("epsilons", std::vector<double>{0.0, 0.05, 0.1}),
        cfg.value("ns", std::vector<long>{500, 2000, 8000}),
        cfg.value("replicates", 50), cfg.value("seed", 1ULL), cov);
    CsvWriter csv(out, {"epsilon", "n", "seed", "estimate_index", "tv", "tv2",
                        "h2", "dist_emp", "yatracos_rhs", "hoeffding_env",
                        "yatracos_ok", "eta_actual"});
    int violations = 0;
    for (const auto& r : rows) {
        if (!r.yatracos_ok) ++violations;
        csv.row_mixed({format_g17(r.epsilon), std::to_string(r.n),
                       std::to_string(r.seed), std::to_string(r.estimate_index),
                       format_g17(r.tv), format_g17(r.tv2), format_g17(r.h2),
                       format_g17(r.dist_emp), format_g17(r.yatracos_rhs),
                       format_g17(r.hoeffding_env), r.yatracos_ok ? "1" : "0",
                       format_g17(cov.eta_actual)});
    }
    csv.close();
    emit_manifest("robust sweep", cfg, cfg.value("seed", 1ULL), "auto", out);
    std::cout << rows.size() << " replicates, covering radius "
              << cov.eta_actual << ", " << violations
              << " bound violations\n";
    return violations == 0 ? 0 : kExitViolation;
}

int cmd_eb_regret(const std::string& config_path, const std::string& out) {
    const json cfg = json::parse(read_file(config_path));
    const double M = cfg.value("M", 1.0);
    const auto clean = clean_from_config(cfg, M);
    const auto model =
        ContaminationModel::make(clean, 0.0, cfg.value("kind", "point_mass"));
    const auto cov = covering_from_config(cfg, M);
    const auto rows = eb_experiment(
        model, cfg.value("epsilons", std::vector<double>{0.0, 0.05, 0.1}),
        cfg.value("ns", std::vector<long>{500, 2000, 8000}),
        cfg.value("replicates", 20), cfg.value("seed", 1ULL), cov);
    CsvWriter csv(out, {"epsilon", "n", "seed", "estimate_index", "rho", "tv",
                        "regret"});
    for (const auto& r : rows)
        csv.row_mixed({format_g17(r.epsilon), std::to_string(r.n),
                       std::to_string(r.seed), std::to_string(r.estimate_index),
                       format_g17(r.rho), format_g17(r.tv),
                       format_g17(r.regret)});
    csv.close();
    emit_manifest("eb regret", cfg, cfg.value("seed", 1ULL), "auto", out);
    std::cout << rows.size() << " replicates written\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& inputs, double delta, double M,
               int d, const std::string& out_dir) {
    // J(t) envelope on a log grid, for the H-vs-TV scatter overlay
    const auto bc = compute_C0(delta, M, d);
    {
        CsvWriter csv(out_dir + "/envelope.csv", {"t", "log_t", "log_J"});
        for (int i = 0; i <= 120; ++i) {
            const double logt = -12.0 * std::log(10.0) +
                                i * (12.0 * std::log(10.0) +
                                     std::log(0.5)) /
                                    120.0;
            const double t = std::exp(logt);
            csv.row({t, logt, log_J_transfer(t, bc)});
        }
        csv.close();
        emit_manifest("report", json{{"delta", delta}, {"M", M}, {"d", d}}, 0,
                      "auto", out_dir + "/envelope.csv");
    }
    // tidy long format: source,row,column,value
    CsvWriter tidy(out_dir + "/tidy.csv", {"source", "row", "column", "value"});
    for (const auto& path : inputs) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot read " + path);
        std::string line;
        std::vector<std::string> header;
        long rownum = -1;
        while (std::getline(is, line)) {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) cells.push_back(cell);
            if (rownum < 0) {
                header = cells;
            } else {
                for (std::size_t c = 0; c < cells.size() && c < header.size();
                     ++c)
                    tidy.row_mixed({path, std::to_string(rownum), header[c],
                                    cells[c]});
            }
            ++rownum;
        }
    }
    tidy.close();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divergence inequalities for Gaussian location mixtures"};
    app.require_subcommand(1);

    // div
    std::string div_kind = "TV", div_a, div_b, div_out;
    auto* div_cmd = app.add_subcommand("div", "divergence between two mixtures");
    div_cmd->add_option("--kind", div_kind, "TV|H|H2|CHI2|KL");
    div_cmd->add_option("a", div_a, "mixture JSON")->required();
    div_cmd->add_option("b", div_b, "mixture JSON")->required();
    div_cmd->add_option("--out", div_out, "CSV output");

    // bounds verify
    auto* bounds_cmd = app.add_subcommand("bounds", "transfer inequalities");
    double bv_delta = 1.0, bv_M = 1.0;
    int bv_pairs = 200, bv_d = 1;
    std::uint64_t bv_seed = 20260823;
    std::string bv_out;
    auto* bv = bounds_cmd->add_subcommand("verify", "check on random pairs");
    bv->add_option("--delta", bv_delta);
    bv->add_option("--pairs", bv_pairs);
    bv->add_option("--seed", bv_seed);
    bv->add_option("--d", bv_d);
    bv->add_option("--M", bv_M);
    bv->add_option("--out", bv_out);

    // extremal cn
    auto* ext_cmd = app.add_subcommand("extremal", "extremal L1 constants");
    int cn_n = 8, cn_d = 1, cn_restarts = 64;
    std::uint64_t cn_seed = 1234;
    std::string cn_out;
    auto* cn = ext_cmd->add_subcommand("cn", "estimate c_n up to degree n");
    cn->add_option("--n", cn_n);
    cn->add_option("--d", cn_d);
    cn->add_option("--restarts", cn_restarts);
    cn->add_option("--seed", cn_seed);
    cn->add_option("--out", cn_out);

    // sharp
    std::vector<int> sharp_ns{11};
    double sharp_M = 1.0;
    std::string sharp_precision = "auto", sharp_out, sharp_json_dir;
    auto* sharp_cmd = app.add_subcommand("sharp", "near-tight mixture pairs");
    sharp_cmd->add_option("--n-list", sharp_ns)->delimiter(',');
    sharp_cmd->add_option("--M", sharp_M);
    sharp_cmd->add_option("--precision", sharp_precision,
                          "auto|double|extended");
    sharp_cmd->add_option("--out", sharp_out);
    sharp_cmd->add_option("--json-dir", sharp_json_dir);

    // robust sweep
    auto* robust_cmd = app.add_subcommand("robust", "contaminated estimation");
    std::string rs_config, rs_out = "risks.csv";
    auto* rs = robust_cmd->add_subcommand("sweep", "risk sweep over (eps, n)");
    rs->add_option("--config", rs_config)->required();
    rs->add_option("--out", rs_out);

    // eb regret
    auto* eb_cmd = app.add_subcommand("eb", "empirical Bayes");
    std::string eb_config, eb_out = "regret.csv";
    auto* ebr = eb_cmd->add_subcommand("regret", "plug-in denoiser regret");
    ebr->add_option("--config", eb_config)->required();
    ebr->add_option("--out", eb_out);

    // report
    std::vector<std::string> rep_inputs;
    double rep_delta = 1.0, rep_M = 1.0;
    int rep_d = 1;
    std::string rep_out_dir = ".";
    auto* rep_cmd = app.add_subcommand("report", "plot data + J(t) envelope");
    rep_cmd->add_option("inputs", rep_inputs, "CSVs produced by this tool");
    rep_cmd->add_option("--delta", rep_delta);
    rep_cmd->add_option("--M", rep_M);
    rep_cmd->add_option("--d", rep_d);
    rep_cmd->add_option("--out-dir", rep_out_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (div_cmd->parsed()) return cmd_div(div_kind, div_a, div_b, div_out);
        if (bv->parsed())
            return cmd_bounds_verify(bv_delta, bv_pairs, bv_seed, bv_d, bv_M,
                                     bv_out);
        if (cn->parsed())
            return cmd_extremal_cn(cn_n, cn_d, cn_restarts, cn_seed, cn_out);
        if (sharp_cmd->parsed())
            return cmd_sharp(sharp_ns, sharp_M,
                             precision_override(sharp_precision), sharp_out,
                             sharp_json_dir);
        if (rs->parsed()) return cmd_robust_sweep(rs_config, rs_out);
        if (ebr->parsed()) return cmd_eb_regret(eb_config, eb_out);
        if (rep_cmd->parsed())
            return cmd_report(rep_inputs, rep_delta, rep_M, rep_d, rep_out_dir);
        std::cerr << app.help();
        return 1;
    } catch (const PrecisionError& e) {
        std::cerr << "precision refusal: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
