#include "eelab/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace eelab {

using nlohmann::json;

std::string mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::SweepFree: return "sweep-free";
        case RunMode::SweepPerturbed: return "sweep-perturbed";
        case RunMode::Fit: return "fit";
        case RunMode::VerifyInequalities: return "verify-inequalities";
        case RunMode::RieszCheck: return "riesz-check";
        case RunMode::GreenDecay: return "green-decay";
    }
    return "?";
}

RunMode mode_from_name(const std::string& name) {
    if (name == "sweep-free") return RunMode::SweepFree;
    if (name == "sweep-perturbed") return RunMode::SweepPerturbed;
    if (name == "fit") return RunMode::Fit;
    if (name == "verify-inequalities") return RunMode::VerifyInequalities;
    if (name == "riesz-check") return RunMode::RieszCheck;
    if (name == "green-decay") return RunMode::GreenDecay;
    throw ConfigError("unknown mode '" + name + "'");
}

namespace {

template <typename T>
T require(const json& doc, const std::string& field, const std::string& mode) {
    if (!doc.contains(field))
        throw ConfigError("missing required field '" + field + "' for mode " + mode);
    try {
        return doc.at(field).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + field + "' has the wrong type");
    }
}

template <typename T>
void maybe(const json& doc, const std::string& field, T& into) {
    if (!doc.contains(field)) return;
    try {
        into = doc.at(field).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + field + "' has the wrong type");
    }
}

void parse_scales(const json& doc, RunConfig& config, const std::string& mode) {
    config.scales = require<std::vector<double>>(doc, "scales", mode);
    if (config.scales.empty())
        throw ConfigError("field 'scales' must not be empty");
    for (std::size_t i = 0; i < config.scales.size(); ++i) {
        if (!(config.scales[i] > 0.0))
            throw ConfigError("field 'scales' must contain positive lengths");
        if (i > 0 && !(config.scales[i] > config.scales[i - 1]))
            throw ConfigError("field 'scales' must be strictly increasing");
    }
}

void parse_potential(const json& doc, RunConfig& config) {
    if (!doc.contains("potential")) return;
    const json& pot = doc.at("potential");
    maybe(pot, "type", config.potential_type);
    if (config.potential_type == "none") return;
    if (config.potential_type != "square-well" && config.potential_type != "file")
        throw ConfigError("field 'potential.type' must be none, square-well or file");
    config.potential_radius = require<double>(pot, "support_radius", "sweep-perturbed");
    if (!(config.potential_radius > 0.0))
        throw ConfigError("field 'potential.support_radius' must be positive");
    if (config.potential_type == "square-well") {
        config.potential_amplitude = require<double>(pot, "amplitude", "sweep-perturbed");
    } else {
        config.potential_file = require<std::string>(pot, "file", "sweep-perturbed");
    }
}

} // namespace

RunConfig parse_config(const json& doc) {
    RunConfig config;
    const std::string mode = require<std::string>(doc, "mode", "(any)");
    config.mode = mode_from_name(mode);

    maybe(doc, "seed", config.seed);
    maybe(doc, "threads", config.threads);
    if (config.threads < 1) throw ConfigError("field 'threads' must be >= 1");

    switch (config.mode) {
        case RunMode::SweepFree: {
            config.dimension = require<int>(doc, "dimension", mode);
            maybe(doc, "shape", config.shape);
            config.fermi_energy = require<double>(doc, "fermi_energy", mode);
            if (!(config.fermi_energy > 0.0))
                throw ConfigError("field 'fermi_energy' must be positive");
            parse_scales(doc, config, mode);
            maybe(doc, "resolution", config.resolution);
            if (!(config.resolution > 0.0))
                throw ConfigError("field 'resolution' must be positive");
            break;
        }
        case RunMode::SweepPerturbed: {
            config.dimension = require<int>(doc, "dimension", mode);
            maybe(doc, "shape", config.shape);
            config.fermi_energy = require<double>(doc, "fermi_energy", mode);
            if (!(config.fermi_energy > 0.0))
                throw ConfigError("field 'fermi_energy' must be positive");
            parse_scales(doc, config, mode);
            if (doc.contains("lattice")) {
                const json& lat = doc.at("lattice");
                maybe(lat, "spacing", config.lattice_spacing);
                maybe(lat, "buffer_ratio", config.buffer_ratio);
            }
            if (!(config.lattice_spacing > 0.0))
                throw ConfigError("field 'lattice.spacing' must be positive");
            if (!(config.buffer_ratio >= 2.0))
                throw ConfigError("field 'lattice.buffer_ratio' must be >= 2");
            parse_potential(doc, config);
            maybe(doc, "schatten_exponents", config.schatten_exponents);
            for (double s : config.schatten_exponents)
                if (!(s > 0.5 && s < 1.0))
                    throw ConfigError("field 'schatten_exponents' entries must lie in ]1/2,1[");
            break;
        }
        case RunMode::Fit: {
            config.fit_input = require<std::string>(doc, "input", mode);
            config.dimension = require<int>(doc, "dimension", mode);
            maybe(doc, "shape", config.shape);
            config.fermi_energy = require<double>(doc, "fermi_energy", mode);
            maybe(doc, "entropy_base", config.entropy_base);
            if (config.entropy_base != "auto" && config.entropy_base != "nat" &&
                config.entropy_base != "log2")
                throw ConfigError("field 'entropy_base' must be auto, nat or log2");
            break;
        }
        case RunMode::VerifyInequalities: {
            maybe(doc, "grid_points", config.grid_points);
            if (config.grid_points < 3)
                throw ConfigError("field 'grid_points' must be >= 3");
            maybe(doc, "matrix_samples", config.matrix_samples);
            maybe(doc, "matrix_size", config.matrix_size);
            if (config.matrix_samples < 1 || config.matrix_size < 2)
                throw ConfigError("fields 'matrix_samples'/'matrix_size' out of range");
            maybe(doc, "power_exponents", config.power_exponents);
            for (double s : config.power_exponents)
                if (!(s > 0.0 && s < 1.0))
                    throw ConfigError("field 'power_exponents' entries must lie in ]0,1[");
            break;
        }
        case RunMode::RieszCheck: {
            maybe(doc, "gapped_cases", config.gapped_cases);
            maybe(doc, "gapped_size", config.gapped_size);
            maybe(doc, "lattice_sites", config.lattice_sites);
            maybe(doc, "target_rel", config.riesz_target_rel);
            maybe(doc, "max_solves", config.riesz_max_solves);
            if (config.lattice_sites < 4)
                throw ConfigError("field 'lattice_sites' must be >= 4");
            break;
        }
        case RunMode::GreenDecay: {
            maybe(doc, "dimensions", config.decay_dimensions);
            for (int d : config.decay_dimensions)
                if (d < 1 || d > 3)
                    throw ConfigError("field 'dimensions' entries must be 1, 2 or 3");
            if (!doc.contains("spectral_parameters"))
                throw ConfigError("missing required field 'spectral_parameters' for mode " +
                                  mode);
            for (const auto& item : doc.at("spectral_parameters")) {
                if (!item.is_array() || item.size() != 2)
                    throw ConfigError(
                        "field 'spectral_parameters' entries must be [re, im] pairs");
                const double re = item[0].get<double>();
                const double im = item[1].get<double>();
                if (im == 0.0)
                    throw ConfigError(
                        "field 'spectral_parameters' entries must have nonzero imaginary "
                        "part");
                config.spectral_parameters.emplace_back(re, im);
            }
            maybe(doc, "separation_count", config.separation_count);
            if (config.separation_count < 10)
                throw ConfigError("field 'separation_count' must be >= 10");
            break;
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json echo_config(const RunConfig& c) {
    json doc;
    doc["mode"] = mode_name(c.mode);
    doc["seed"] = c.seed;
    doc["threads"] = c.threads;
    switch (c.mode) {
        case RunMode::SweepFree:
            doc["dimension"] = c.dimension;
            doc["shape"] = c.shape;
            doc["fermi_energy"] = c.fermi_energy;
            doc["scales"] = c.scales;
            doc["resolution"] = c.resolution;
            break;
        case RunMode::SweepPerturbed: {
            doc["dimension"] = c.dimension;
            doc["shape"] = c.shape;
            doc["fermi_energy"] = c.fermi_energy;
            doc["scales"] = c.scales;
            doc["lattice"] = {{"spacing", c.lattice_spacing}, {"buffer_ratio", c.buffer_ratio}};
            json pot;
            pot["type"] = c.potential_type;
            if (c.potential_type == "square-well") {
                pot["support_radius"] = c.potential_radius;
                pot["amplitude"] = c.potential_amplitude;
            } else if (c.potential_type == "file") {
                pot["support_radius"] = c.potential_radius;
                pot["file"] = c.potential_file;
            }
            doc["potential"] = pot;
            doc["schatten_exponents"] = c.schatten_exponents;
            break;
        }
        case RunMode::Fit:
            doc["input"] = c.fit_input;
            doc["dimension"] = c.dimension;
            doc["shape"] = c.shape;
            doc["fermi_energy"] = c.fermi_energy;
            doc["entropy_base"] = c.entropy_base;
            break;
        case RunMode::VerifyInequalities:
            doc["grid_points"] = c.grid_points;
            doc["matrix_samples"] = c.matrix_samples;
            doc["matrix_size"] = c.matrix_size;
            doc["power_exponents"] = c.power_exponents;
            break;
        case RunMode::RieszCheck:
            doc["gapped_cases"] = c.gapped_cases;
            doc["gapped_size"] = c.gapped_size;
            doc["lattice_sites"] = c.lattice_sites;
            doc["target_rel"] = c.riesz_target_rel;
            doc["max_solves"] = c.riesz_max_solves;
            break;
        case RunMode::GreenDecay: {
            doc["dimensions"] = c.decay_dimensions;
            json zs = json::array();
            for (const auto& z : c.spectral_parameters) zs.push_back({z.real(), z.imag()});
            doc["spectral_parameters"] = zs;
            doc["separation_count"] = c.separation_count;
            break;
        }
    }
    return doc;
}

json default_config(RunMode mode) {
    RunConfig c;
    c.mode = mode;
    switch (mode) {
        case RunMode::SweepFree:
            c.scales = {25, 50, 100, 200};
            break;
        case RunMode::SweepPerturbed:
            c.scales = {25, 50, 100, 200};
            c.potential_type = "square-well";
            c.potential_radius = 2.0;
            c.potential_amplitude = 1.0;
            break;
        case RunMode::Fit:
            c.fit_input = "results.csv";
            break;
        case RunMode::GreenDecay:
            c.spectral_parameters = {{1.0, 1.0}, {0.0, 1.0}, {4.0, 0.5}};
            break;
        default:
            break;
    }
    return echo_config(c);
}

} // namespace eelab
