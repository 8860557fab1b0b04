#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <vector>

#include "eelab/config.hpp"
#include "eelab/runner.hpp"

namespace {

struct ModeArgs {
    std::string config_path;
    std::string out_dir = "eelab-out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    bool print_config = false;
};

int run_mode(eelab::RunMode mode, const ModeArgs& args) {
    if (args.print_config) {
        std::cout << eelab::default_config(mode).dump(2) << "\n";
        return 0;
    }
    if (args.config_path.empty()) {
        std::cerr << "error: --config is required (or use --print-config)\n";
        return 2;
    }
    eelab::RunConfig config = eelab::load_config(args.config_path);
    if (config.mode != mode) {
        std::cerr << "error: config file declares mode '" << eelab::mode_name(config.mode)
                  << "' but the '" << eelab::mode_name(mode) << "' subcommand was invoked\n";
        return 2;
    }
    if (args.seed_set) config.seed = args.seed;
    if (args.threads > 0) config.threads = args.threads;
    return eelab::run(config, args.out_dir);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement-entropy laboratory for quasi-free Fermi gases"};
    app.require_subcommand(0, 1);

    const eelab::RunMode modes[] = {
        eelab::RunMode::SweepFree,        eelab::RunMode::SweepPerturbed,
        eelab::RunMode::Fit,              eelab::RunMode::VerifyInequalities,
        eelab::RunMode::RieszCheck,       eelab::RunMode::GreenDecay,
    };
    std::vector<std::shared_ptr<ModeArgs>> mode_args;
    std::vector<CLI::App*> subs;
    for (const auto mode : modes) {
        auto args = std::make_shared<ModeArgs>();
        CLI::App* sub = app.add_subcommand(eelab::mode_name(mode), "run " +
                                           eelab::mode_name(mode) + " from a config file");
        sub->add_option("--config", args->config_path, "JSON config file");
        sub->add_option("--out", args->out_dir, "output directory");
        sub->add_option("--seed", args->seed, "override the config seed")
            ->each([args](const std::string&) { args->seed_set = true; });
        sub->add_option("--threads", args->threads, "worker threads for sweep scales");
        sub->add_flag("--print-config", args->print_config,
                      "print the fully defaulted config for this mode and exit");
        mode_args.push_back(args);
        subs.push_back(sub);
    }

    std::string compare_a, compare_b, compare_out;
    CLI::App* cmp = app.add_subcommand("compare", "diff two result files on a shared L grid");
    cmp->add_option("--a", compare_a, "first results.csv")->required();
    cmp->add_option("--b", compare_b, "second results.csv")->required();
    cmp->add_option("--out", compare_out, "optional path for the JSON diff report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmp->parsed()) {
            const nlohmann::json report = eelab::compare_results(compare_a, compare_b);
            if (!compare_out.empty()) {
                std::ofstream out(compare_out);
                out << report.dump(2) << "\n";
            }
            std::cout << report.dump(2) << "\n";
            return 0;
        }
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) return run_mode(modes[i], *mode_args[i]);
        std::cout << app.help();
        return 0;
    } catch (const eelab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
