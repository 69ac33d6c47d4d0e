#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "deltachannel/config.hpp"
#include "deltachannel/errors.hpp"
#include "deltachannel/runner.hpp"

using namespace deltachannel;

int main(int argc, char** argv) {
    CLI::App app{"Multichannel delta-coupled 1D scattering solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode;
    bool oracle = false;
    bool lenient = false;
    int jobs = 0;
    std::string output;
    int channel = 0;

    auto* run_cmd = app.add_subcommand("run", "Sweep the energy grid and write CSV results");
    run_cmd->add_option("config", config_path, "Model description file")->required();
    run_cmd->add_option("--mode", mode, "exact or born")->check(CLI::IsMember({"exact", "born"}));
    run_cmd->add_flag("--oracle", oracle, "Cross-check against the coupled-channel solver");
    run_cmd->add_flag("--lenient", lenient, "Skip channels sitting on a threshold");
    run_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run_cmd->add_option("-o,--output", output, "Output CSV path (default: stdout)");

    auto* validate_cmd = app.add_subcommand("validate", "Check a model description");
    validate_cmd->add_option("config", config_path, "Model description file")->required();

    auto* greens_cmd = app.add_subcommand("greens", "Dump G_n(x_n, x_n; E) over the grid");
    greens_cmd->add_option("config", config_path, "Model description file")->required();
    greens_cmd->add_option("--channel", channel, "Channel index n >= 2")->required();
    greens_cmd->add_option("-o,--output", output, "Output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    if (*validate_cmd) {
        for (const auto& w : cfg.warnings) std::cout << "warning: " << w << '\n';
        std::cout << "ok\n";
        return 0;
    }

    if (*run_cmd) {
        if (!mode.empty()) cfg.mode = mode == "born" ? SolveMode::born : SolveMode::exact;
        if (oracle) cfg.compare_oracle = true;
        if (lenient) cfg.lenient = true;
        if (jobs > 0) cfg.jobs = jobs;
        if (!output.empty()) cfg.output_path = output;
    }

    try {
        std::ofstream file;
        std::ostream* out = &std::cout;
        const std::string& path = *run_cmd ? cfg.output_path : output;
        if (!path.empty()) {
            file.open(path);
            if (!file) {
                std::cerr << "error: cannot open '" << path << "' for writing\n";
                return 1;
            }
            out = &file;
        }
        if (*run_cmd) return run(cfg, *out, std::cerr);

        *out << greens_table(cfg, channel);
        out->flush();
        if (!*out) {
            std::cerr << "error: failed to write output\n";
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
