#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace eelab {

enum class RunMode {
    SweepFree,
    SweepPerturbed,
    Fit,
    VerifyInequalities,
    RieszCheck,
    GreenDecay,
};

std::string mode_name(RunMode mode);
RunMode mode_from_name(const std::string& name);

/// Raised on invalid configuration; the message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    RunMode mode = RunMode::SweepFree;

    // sweep geometry
    int dimension = 1;
    std::string shape = "interval";
    double fermi_energy = 1.0;
    std::vector<double> scales;
    double resolution = 4.0;  // Nystrom nodes per unit length

    // lattice discretization
    double lattice_spacing = 0.25;
    double buffer_ratio = 2.0;

    // potential (sweep-perturbed)
    std::string potential_type = "none";  // none | square-well | file
    double potential_radius = 0.0;
    double potential_amplitude = 0.0;
    std::string potential_file;

    std::vector<double> schatten_exponents = {0.75};

    // verify-inequalities corpora
    long grid_points = 100000;
    int matrix_samples = 500;
    int matrix_size = 20;
    std::vector<double> power_exponents = {0.55, 0.65, 0.75, 0.85, 0.95};

    // riesz-check battery
    int gapped_cases = 5;
    int gapped_size = 8;
    int lattice_sites = 400;
    double riesz_target_rel = 1e-6;
    long riesz_max_solves = 10000;

    // green-decay
    std::vector<std::complex<double>> spectral_parameters;
    std::vector<int> decay_dimensions = {1, 3};
    int separation_count = 24;

    // fit mode
    std::string fit_input;
    std::string entropy_base = "auto";  // auto | nat | log2

    std::uint64_t seed = 1;
    int threads = 1;
};

/// Parse and validate a config document; throws ConfigError naming the field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Fully defaulted config document for a mode, as written by --print-config.
nlohmann::json default_config(RunMode mode);

/// The config echoed back with every default made explicit.
nlohmann::json echo_config(const RunConfig& config);

} // namespace eelab
