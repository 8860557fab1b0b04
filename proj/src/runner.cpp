#include "eelab/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <thread>

#include "eelab/entropy_functions.hpp"
#include "eelab/free_kernel.hpp"
#include "eelab/lattice_model.hpp"
#include "eelab/restricted_projection.hpp"
#include "eelab/riesz_projector.hpp"
#include "eelab/scaling_fit.hpp"
#include "eelab/schatten.hpp"

namespace eelab {

using nlohmann::json;

namespace {

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Run one task per scale on `threads` workers; rows land in scale order.
void for_each_scale(const std::vector<double>& scales, int threads,
                    const std::function<void(std::size_t)>& task) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < scales.size(); ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= scales.size()) return;
            task(i);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(scales.size()));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

json report_json(const InequalityReport& report, double tolerance) {
    json j;
    j["samples"] = report.samples;
    j["max_violation"] = report.max_violation;
    j["worst_input"] = report.worst_input;
    j["tolerance"] = tolerance;
    j["pass"] = report.passed(tolerance);
    return j;
}

json fit_json(const FitResult& fit) {
    json j;
    j["sigma_hat"] = fit.sigma_hat;
    j["area_coeff"] = fit.area_coeff;
    j["offset"] = fit.offset;
    j["residual_rms"] = fit.residual_rms;
    j["method"] =
        fit.method == FitMethod::JointRegression ? "joint-regression" : "dyadic-difference";
    if (!fit.pair_estimates.empty()) j["pair_estimates"] = fit.pair_estimates;
    return j;
}

json verdict_json(const BoundVerdict& verdict) {
    json j;
    j["pass"] = verdict.pass;
    j["sigma_hat"] = verdict.sigma_hat;
    j["sigma_l"] = verdict.sigma_l;
    j["sigma_u"] = verdict.sigma_u;
    j["lower_margin"] = verdict.lower_margin;
    j["upper_margin"] = verdict.upper_margin;
    j["note"] = "finite-L surrogate: fitted coefficient vs asymptotic constants";
    return j;
}

/// Fits + verdicts for a completed entropy sweep, in both log conventions,
/// with the base selected by comparing against the Widom coefficient.
json analyze_sweep(const RunConfig& config, const std::vector<double>& scales,
                   const std::vector<double>& s_log2) {
    json out;
    DomainSpec domain{config.dimension, shape_from_name(config.shape), 1.0};
    const double sig0 = sigma0(domain, config.fermi_energy);
    const auto [sig_l, sig_u] = sigma_bounds(sig0);
    out["sigma0"] = sig0;
    out["sigma_l"] = sig_l;
    out["sigma_u"] = sig_u;

    if (scales.size() < 4) {
        out["note"] = "fewer than 4 scales; no regression attempted";
        return out;
    }
    ScalingSeries log2_series{config.dimension, scales, s_log2};
    ScalingSeries nat_series = log2_series;
    for (double& s : nat_series.entropies) s *= std::numbers::ln2;

    out["fit_log2"] = fit_json(fit_enhanced(log2_series));
    out["fit_nat"] = fit_json(fit_enhanced(nat_series));
    try {
        out["dyadic_log2"] = fit_json(dyadic_sigma(log2_series));
        out["dyadic_nat"] = fit_json(dyadic_sigma(nat_series));
    } catch (const std::invalid_argument&) {
        // no dyadic pairs in the grid
    }

    const BaseSelection sel = select_entropy_base(log2_series, sig0, 0.15);
    json selj;
    selj["selected"] = base_name(sel.selected);
    selj["sigma_hat_log2"] = sel.sigma_hat_log2;
    selj["sigma_hat_nat"] = sel.sigma_hat_nat;
    selj["rel_err_log2"] = sel.rel_err_log2;
    selj["rel_err_nat"] = sel.rel_err_nat;
    selj["within_tolerance"] = sel.within_tolerance;
    out["base_selection"] = selj;

    const FitResult selected_fit =
        fit_enhanced(sel.selected == EntropyBase::Nat ? nat_series : log2_series);
    out["verdict"] = verdict_json(bound_verdict(selected_fit, sig_l, sig_u));
    return out;
}

PotentialSpec potential_from_config(const RunConfig& config) {
    if (config.potential_type == "square-well")
        return PotentialSpec::square_well(config.potential_radius, config.potential_amplitude);
    // sampled profile from file: whitespace separated values on [-R, R]
    std::ifstream in(config.potential_file);
    if (!in)
        throw ConfigError("cannot open potential file " + config.potential_file);
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    Eigen::VectorXd samples =
        Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return PotentialSpec::sampled(config.potential_radius, samples);
}

} // namespace

RunOutcome run_sweep_free(const RunConfig& config) {
    RunOutcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ResultRow> rows(config.scales.size());
    std::vector<int> failed(config.scales.size(), 0);

    for_each_scale(config.scales, config.threads, [&](std::size_t i) {
        const double L = config.scales[i];
        ResultRow& row = rows[i];
        row.set("mode", mode_name(config.mode));
        row.set("dimension", static_cast<long>(config.dimension));
        row.set("shape", config.shape);
        row.set("fermi_energy", config.fermi_energy);
        row.set("L", L);
        row.set("resolution", config.resolution);
        try {
            DomainSpec domain{config.dimension, shape_from_name(config.shape), L};
            const KernelOperator op =
                assemble_free_restriction(domain, config.fermi_energy, config.resolution);
            const SpectrumReport spec = spectrum01(op);
            row.set("n_nodes", static_cast<long>(op.matrix.rows()));
            row.set("S_log2", entanglement_entropy(spec));
            row.set("S_nat", entanglement_entropy_nat(spec));
            row.set("purity_defect", purity_defect(spec));
            row.set("clipped_count", static_cast<long>(spec.clipped_count));
            row.set("max_excursion", spec.max_excursion);
            row.set("status", "ok");
        } catch (const std::exception& e) {
            row.set("status", "error");
            row.set("message", e.what());
            failed[i] = 1;
        }
    });

    outcome.rows = rows;
    outcome.summary["config"] = echo_config(config);
    std::vector<double> scales, s_log2, purity;
    for (const auto& row : rows)
        if (row.get("status") == std::optional<std::string>("ok")) {
            scales.push_back(row.get_double("L"));
            s_log2.push_back(row.get_double("S_log2"));
            purity.push_back(row.get_double("purity_defect"));
        }
    if (!scales.empty()) {
        outcome.summary["analysis"] = analyze_sweep(config, scales, s_log2);
        if (scales.size() >= 3) {
            const TrendStat trend = trend_vs_log(scales, purity);
            outcome.summary["analysis"]["purity_trend_slope"] = trend.slope;
            outcome.summary["analysis"]["purity_trend_stderr"] = trend.slope_stderr;
        }
    }
    for (int f : failed)
        if (f) outcome.exit_code = 1;
    outcome.summary["elapsed_s"] = elapsed_s(t0);
    return outcome;
}

RunOutcome run_sweep_perturbed(const RunConfig& config) {
    RunOutcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ResultRow> rows(config.scales.size());
    std::vector<int> failed(config.scales.size(), 0);
    const bool has_potential = config.potential_type != "none";

    for_each_scale(config.scales, config.threads, [&](std::size_t i) {
        const double L = config.scales[i];
        ResultRow& row = rows[i];
        row.set("mode", mode_name(config.mode));
        row.set("dimension", static_cast<long>(config.dimension));
        row.set("shape", config.shape);
        row.set("fermi_energy", config.fermi_energy);
        row.set("L", L);
        row.set("spacing", config.lattice_spacing);
        row.set("buffer_ratio", config.buffer_ratio);
        row.set("potential_type", config.potential_type);
        if (has_potential) {
            row.set("potential_radius", config.potential_radius);
            row.set("potential_amplitude", config.potential_amplitude);
        }
        try {
            LatticeBox box{config.dimension, config.buffer_ratio * L, config.lattice_spacing};
            box.validate(config.fermi_energy);
            DomainSpec domain{config.dimension, shape_from_name(config.shape), L};
            const std::vector<int> region = region_sites(box, domain);

            ProjectionMatrix p0 =
                config.dimension == 1
                    ? free_fermi_projection(box, config.fermi_energy)
                    : fermi_projection(build_hamiltonian(box, std::nullopt), box,
                                       config.fermi_energy);
            ProjectionMatrix p = p0;
            if (has_potential) {
                const PotentialSpec potential = potential_from_config(config);
                const KernelOperator h = build_hamiltonian(box, potential);
                p = fermi_projection(h, box, config.fermi_energy);
            }

            const SpectrumReport spec = restricted_spectrum(p, region);
            const double s_log2 = entanglement_entropy(spec);
            const double cross = cross_term_hs(p, p0, region);
            const double off0_sq =
                off_region_block(p0.matrix, region).squaredNorm();

            row.set("n_sites", static_cast<long>(box.total_sites()));
            row.set("occupied", static_cast<long>(p.rank));
            row.set("S_log2", s_log2);
            row.set("S_nat", s_log2 * std::numbers::ln2);
            row.set("purity_defect", purity_defect(spec));
            row.set("cross_term_hs", cross);
            for (double s : config.schatten_exponents)
                row.set("schatten_2s_" + format_double(s),
                        schatten_difference(p, p0, region, s));
            // lower-bound mechanism: S >= 0.5 ||off P0||_2^2 - ||off (P0-P)||_2^2
            row.set("eq55_lower", 0.5 * off0_sq - cross * cross);
            row.set("eq55_slack", s_log2 - (0.5 * off0_sq - cross * cross));
            row.set("clipped_count", static_cast<long>(spec.clipped_count));
            row.set("max_excursion", spec.max_excursion);
            row.set("status", "ok");
        } catch (const std::exception& e) {
            row.set("status", "error");
            row.set("message", e.what());
            failed[i] = 1;
        }
    });

    outcome.rows = rows;
    outcome.summary["config"] = echo_config(config);
    std::vector<double> scales, s_log2, purity, cross;
    for (const auto& row : rows)
        if (row.get("status") == std::optional<std::string>("ok")) {
            scales.push_back(row.get_double("L"));
            s_log2.push_back(row.get_double("S_log2"));
            purity.push_back(row.get_double("purity_defect"));
            cross.push_back(row.get_double("cross_term_hs"));
        }
    if (!scales.empty()) {
        json analysis = analyze_sweep(config, scales, s_log2);
        if (scales.size() >= 3) {
            const TrendStat pt = trend_vs_log(scales, purity);
            analysis["purity_trend_slope"] = pt.slope;
            const TrendStat ct = trend_vs_log(scales, cross);
            analysis["cross_term_trend_slope"] = ct.slope;
            analysis["cross_term_trend_stderr"] = ct.slope_stderr;
            for (double s : config.schatten_exponents) {
                std::vector<double> logv;
                bool usable = true;
                for (const auto& row : rows) {
                    if (row.get("status") != std::optional<std::string>("ok")) continue;
                    const double v = row.get_double("schatten_2s_" + format_double(s));
                    if (!(v > 0.0)) {
                        usable = false;
                        break;
                    }
                    logv.push_back(std::log(v));
                }
                if (usable && logv.size() == scales.size())
                    analysis["schatten_loglog_slope_" + format_double(s)] =
                        trend_vs_log(scales, logv).slope;
            }
        }
        bool eq55_all = true;
        for (const auto& row : rows)
            if (row.get("status") == std::optional<std::string>("ok") &&
                row.get_double("eq55_slack") < 0.0)
                eq55_all = false;
        analysis["eq55_pointwise_pass"] = eq55_all;
        outcome.summary["analysis"] = analysis;
    }
    for (int f : failed)
        if (f) outcome.exit_code = 1;
    outcome.summary["elapsed_s"] = elapsed_s(t0);
    return outcome;
}

RunOutcome run_fit(const RunConfig& config, const std::filesystem::path& base_dir) {
    RunOutcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::path input = config.fit_input;
    if (input.is_relative() && !std::filesystem::exists(input)) {
        const auto candidate = base_dir / input;
        if (std::filesystem::exists(candidate)) input = candidate;
    }
    const std::vector<ResultRow> rows = read_csv(input);
    std::vector<double> scales, s_log2;
    for (const auto& row : rows) {
        if (row.get("status") != std::optional<std::string>("ok")) continue;
        scales.push_back(row.get_double("L"));
        s_log2.push_back(row.get_double("S_log2"));
    }
    if (scales.size() < 4)
        throw std::runtime_error("fit: input has fewer than 4 usable rows");
    outcome.summary["config"] = echo_config(config);
    outcome.summary["analysis"] = analyze_sweep(config, scales, s_log2);
    if (config.entropy_base != "auto") {
        ScalingSeries series{config.dimension, scales, s_log2};
        if (config.entropy_base == "nat")
            for (double& s : series.entropies) s *= std::numbers::ln2;
        outcome.summary["analysis"]["fit_requested_base"] = fit_json(fit_enhanced(series));
    }
    outcome.summary["elapsed_s"] = elapsed_s(t0);
    return outcome;
}

RunOutcome run_verify_inequalities(const RunConfig& config) {
    RunOutcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    constexpr double scalar_tol = 1e-12;
    constexpr double matrix_tol = 1e-10;
    json checks;

    const auto grid = uniform_grid(static_cast<std::size_t>(config.grid_points));
    checks["sandwich"] = report_json(check_sandwich(grid), scalar_tol);
    for (double s : config.power_exponents)
        checks["power_bounds_s" + format_double(s)] =
            report_json(check_power_bounds(grid, s), scalar_tol);

    const auto pair_grid = uniform_grid(
        std::min<std::size_t>(static_cast<std::size_t>(config.grid_points), 1000));
    checks["log_sum"] = report_json(check_log_sum_bound(pair_grid), scalar_tol);

    {
        // monotonicity of the singular-value entropy bound on [0, e^{-1/2}]
        const auto mono_grid =
            uniform_grid(static_cast<std::size_t>(config.grid_points), 0.0, std::exp(-0.5));
        InequalityReport mono;
        for (std::size_t i = 1; i < mono_grid.size(); ++i)
            mono.record(quadratic_log_entropy(mono_grid[i]) -
                            quadratic_log_entropy(mono_grid[i - 1]),
                        {mono_grid[i]});
        checks["quadratic_log_monotone"] = report_json(mono, scalar_tol);
    }

    checks["singular_additivity"] = report_json(
        run_singular_additivity_corpus(config.matrix_samples, config.matrix_size, config.seed),
        matrix_tol);
    std::vector<double> s_grid;
    for (double s : config.power_exponents)
        if (s > 0.5 && s < 1.0) s_grid.push_back(s);
    if (s_grid.empty()) s_grid = {0.55, 0.65, 0.75, 0.85, 0.95};
    checks["interpolation"] = report_json(
        run_interpolation_corpus(config.matrix_samples, config.matrix_size, s_grid,
                                 config.seed + 1),
        matrix_tol);
    checks["log_triangle"] = report_json(
        run_log_triangle_corpus(config.matrix_samples, config.matrix_size, config.seed + 2),
        matrix_tol);

    bool all_pass = true;
    for (const auto& [name, check] : checks.items()) {
        ResultRow row;
        row.set("mode", mode_name(config.mode));
        row.set("check", name);
        row.set("samples", static_cast<long>(check.at("samples").get<std::size_t>()));
        row.set("max_violation", check.at("max_violation").get<double>());
        row.set("pass", check.at("pass").get<bool>() ? "true" : "false");
        outcome.rows.push_back(row);
        if (!check.at("pass").get<bool>()) all_pass = false;
    }
    outcome.summary["config"] = echo_config(config);
    outcome.summary["checks"] = checks;
    outcome.summary["all_pass"] = all_pass;
    outcome.exit_code = all_pass ? 0 : 1;
    outcome.summary["elapsed_s"] = elapsed_s(t0);
    return outcome;
}

namespace {

/// Spectral-decomposition reference for A1 1_{<E}(K) A2.
Eigen::MatrixXd spectral_reference(const Eigen::MatrixXd& k, const Eigen::MatrixXd& a1,
                                   const Eigen::MatrixXd& a2, double e) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a1.rows(), a2.cols());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] < e)
            out.noalias() +=
                (a1 * es.eigenvectors().col(i)) * (es.eigenvectors().col(i).transpose() * a2);
    return out;
}

} // namespace

RunOutcome run_riesz_check(const RunConfig& config) {
    RunOutcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    json cases = json::array();
    bool all_pass = true;

    auto push_case = [&](const std::string& name, double rel_error, long solves, double tol,
                         bool pass) {
        json c;
        c["name"] = name;
        c["rel_error"] = rel_error;
        c["resolvent_solves"] = solves;
        c["tolerance"] = tol;
        c["pass"] = pass;
        cases.push_back(c);
        if (!pass) all_pass = false;
        ResultRow row;
        row.set("mode", mode_name(config.mode));
        row.set("case", name);
        row.set("rel_error", rel_error);
        row.set("resolvent_solves", solves);
        row.set("pass", pass ? "true" : "false");
        outcome.rows.push_back(row);
    };

    {
        // isolated spectrum, residue theorem by hand
        Eigen::MatrixXd k(2, 2);
        k << 0.0, 0.0, 0.0, 2.0;
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
        auto res = riesz_sandwich(k, id, id, 1.0);
        Eigen::MatrixXd expected(2, 2);
        expected << 1.0, 0.0, 0.0, 0.0;
        const double err = (res.value.real() - expected).norm();
        push_case("diag_residue", err, res.resolvent_solves, 1e-8, err <= 1e-8);
    }

    for (int c = 0; c < config.gapped_cases; ++c) {
        const int n = config.gapped_size;
        Eigen::MatrixXd m = random_uniform_matrix(n, n, config.seed, 100 + c);
        Eigen::MatrixXd k = 0.5 * (m + m.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = es.eigenvalues();
        // split at the widest interior gap so the contour stays well separated
        int cut = 0;
        double best = -1.0;
        for (int i = 0; i + 1 < n; ++i)
            if (ev[i + 1] - ev[i] > best) {
                best = ev[i + 1] - ev[i];
                cut = i;
            }
        const double e = 0.5 * (ev[cut] + ev[cut + 1]);
        const Eigen::MatrixXd a1 = random_uniform_matrix(n, n, config.seed, 200 + c);
        const Eigen::MatrixXd a2 = random_uniform_matrix(n, n, config.seed, 300 + c);
        auto res = riesz_sandwich(k, a1, a2, e);
        const Eigen::MatrixXd ref = spectral_reference(k, a1, a2, e);
        const double err = (res.value.real() - ref).norm() / std::max(1e-300, ref.norm());
        push_case("gapped_8x8_" + std::to_string(c), err, res.resolvent_solves, 1e-8,
                  err <= 1e-8);
    }

    {
        // contour height independence on the first gapped case
        const int n = config.gapped_size;
        Eigen::MatrixXd m = random_uniform_matrix(n, n, config.seed, 100);
        Eigen::MatrixXd k = 0.5 * (m + m.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = es.eigenvalues();
        int cut = 0;
        double best = -1.0;
        for (int i = 0; i + 1 < n; ++i)
            if (ev[i + 1] - ev[i] > best) {
                best = ev[i + 1] - ev[i];
                cut = i;
            }
        const double e = 0.5 * (ev[cut] + ev[cut + 1]);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
        ContourSpec c1 = ContourSpec::defaults();
        ContourSpec c2 = ContourSpec::defaults();
        c2.half_height = 2.0 * c1.half_height;
        auto r1 = riesz_sandwich(k, id, id, e, c1);
        auto r2 = riesz_sandwich(k, id, id, e, c2);
        const double delta = (r1.value - r2.value).norm() / std::max(1e-300, r1.value.norm());
        push_case("contour_height_independence", delta,
                  r1.resolvent_solves + r2.resolvent_solves, 1e-8, delta <= 1e-8);
    }

    {
        // half-filled band of the discrete Laplacian with <x>^{-1} weights
        const int n = config.lattice_sites;
        Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            k(i, i) = 2.0;
            if (i + 1 < n) {
                k(i, i + 1) = -1.0;
                k(i + 1, i) = -1.0;
            }
        }
        Eigen::MatrixXd coords(n, 1);
        for (int i = 0; i < n; ++i) coords(i, 0) = i - 0.5 * (n - 1);
        const WeightOperator w = WeightOperator::japanese_bracket(coords);
        const Eigen::MatrixXd a = Eigen::MatrixXd(w.diagonal.asDiagonal());
        const double e = 2.0;  // band center
        ContourSpec spec = ContourSpec::defaults();
        spec.target_rel = config.riesz_target_rel;
        spec.max_resolvent_solves = config.riesz_max_solves;
        auto res = riesz_sandwich(k, a, a, e, spec);
        const Eigen::MatrixXd ref = spectral_reference(k, a, a, e);
        const double err = (res.value.real() - ref).norm() / std::max(1e-300, ref.norm());
        push_case("midband_weighted", err, res.resolvent_solves, 1e-4,
                  err <= 1e-4 && res.resolvent_solves <= config.riesz_max_solves);
    }

    outcome.summary["config"] = echo_config(config);
    outcome.summary["cases"] = cases;
    outcome.summary["all_pass"] = all_pass;
    outcome.exit_code = all_pass ? 0 : 1;
    outcome.summary["elapsed_s"] = elapsed_s(t0);
    return outcome;
}

RunOutcome run_green_decay(const RunConfig& config) {
    RunOutcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    json cases = json::array();
    bool all_pass = true;

    for (int d : config.decay_dimensions) {
        for (const auto& z : config.spectral_parameters) {
            const double r_min = std::max(1.0, 3.0 / std::sqrt(std::abs(z)));
            const double r_max = 20.0 * r_min;
            std::vector<double> seps(static_cast<std::size_t>(config.separation_count));
            for (int i = 0; i < config.separation_count; ++i)
                seps[static_cast<std::size_t>(i)] =
                    r_min * std::pow(r_max / r_min,
                                     static_cast<double>(i) / (config.separation_count - 1));
            const DecayFitReport report = verify_green_decay(z, d, seps);
            const bool pass = report.relative_rate_error <= 0.05;
            json c;
            c["dimension"] = d;
            c["z"] = {z.real(), z.imag()};
            c["fitted_rate"] = report.fitted_rate;
            c["predicted_rate"] = report.predicted_rate;
            c["relative_rate_error"] = report.relative_rate_error;
            c["r_min"] = report.r_min;
            c["r_max"] = report.r_max;
            c["pass"] = pass;
            cases.push_back(c);
            if (!pass) all_pass = false;

            ResultRow row;
            row.set("mode", mode_name(config.mode));
            row.set("dimension", static_cast<long>(d));
            row.set("z_re", z.real());
            row.set("z_im", z.imag());
            row.set("fitted_rate", report.fitted_rate);
            row.set("predicted_rate", report.predicted_rate);
            row.set("relative_rate_error", report.relative_rate_error);
            row.set("pass", pass ? "true" : "false");
            outcome.rows.push_back(row);
        }
    }

    {
        // |Im sqrt(E + i eta)| closed-form identity on an (E, eta) grid
        double worst = 0.0;
        for (double e : {0.25, 1.0, 4.0})
            for (double mag : {1e-4, 1e-3, 1e-2, 1e-1, 0.5, 1.0})
                for (double sign : {-1.0, 1.0}) {
                    const double eta = sign * mag;
                    const double lhs =
                        std::abs(sqrt_upper(std::complex<double>(e, eta)).imag());
                    worst = std::max(worst, std::abs(lhs - im_sqrt_closed_form(e, eta)));
                }
        json c;
        c["name"] = "im_sqrt_identity";
        c["max_abs_gap"] = worst;
        c["pass"] = worst <= 1e-10;
        cases.push_back(c);
        if (worst > 1e-10) all_pass = false;
    }

    outcome.summary["config"] = echo_config(config);
    outcome.summary["cases"] = cases;
    outcome.summary["all_pass"] = all_pass;
    outcome.exit_code = all_pass ? 0 : 1;
    outcome.summary["elapsed_s"] = elapsed_s(t0);
    return outcome;
}

int run(const RunConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    RunOutcome outcome;
    switch (config.mode) {
        case RunMode::SweepFree: outcome = run_sweep_free(config); break;
        case RunMode::SweepPerturbed: outcome = run_sweep_perturbed(config); break;
        case RunMode::Fit: outcome = run_fit(config, out_dir); break;
        case RunMode::VerifyInequalities: outcome = run_verify_inequalities(config); break;
        case RunMode::RieszCheck: outcome = run_riesz_check(config); break;
        case RunMode::GreenDecay: outcome = run_green_decay(config); break;
    }
    if (!outcome.rows.empty()) write_csv(out_dir / "results.csv", outcome.rows);
    std::ofstream summary(out_dir / "summary.json");
    summary << outcome.summary.dump(2) << "\n";
    return outcome.exit_code;
}

nlohmann::json compare_results(const std::filesystem::path& run_a,
                               const std::filesystem::path& run_b) {
    const auto rows_a = read_csv(run_a);
    const auto rows_b = read_csv(run_b);
    std::vector<double> scales_a, scales_b;
    for (const auto& r : rows_a)
        if (r.get("L")) scales_a.push_back(r.get_double("L"));
    for (const auto& r : rows_b)
        if (r.get("L")) scales_b.push_back(r.get_double("L"));
    if (scales_a != scales_b)
        throw std::runtime_error("compare: result files have mismatched L grids");
    if (scales_a.empty())
        throw std::runtime_error("compare: no L column found");

    json report;
    report["run_a"] = run_a.string();
    report["run_b"] = run_b.string();
    report["scales"] = scales_a;
    for (const std::string key :
         {"S_log2", "S_nat", "purity_defect", "cross_term_hs"}) {
        if (!rows_a.front().get(key) || !rows_b.front().get(key)) continue;
        std::vector<double> delta(scales_a.size());
        for (std::size_t i = 0; i < scales_a.size(); ++i)
            delta[i] = rows_b[i].get_double(key) - rows_a[i].get_double(key);
        json block;
        block["delta"] = delta;
        if (scales_a.size() >= 3) {
            const TrendStat trend = trend_vs_log(scales_a, delta);
            block["delta_trend_slope"] = trend.slope;
            block["delta_trend_stderr"] = trend.slope_stderr;
            std::vector<double> vb(scales_a.size());
            for (std::size_t i = 0; i < scales_a.size(); ++i)
                vb[i] = rows_b[i].get_double(key);
            const TrendStat tb = trend_vs_log(scales_a, vb);
            block["run_b_trend_slope"] = tb.slope;
            block["run_b_trend_stderr"] = tb.slope_stderr;
        }
        report[key] = block;
    }
    return report;
}

} // namespace eelab
