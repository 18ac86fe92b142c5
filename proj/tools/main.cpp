// main.cpp — raman_cli: spectra, beats, sweeps, temporal statistics and oracle
// checks from a scenario file or a built-in figure preset.
//
// Exit codes: 0 success, 1 configuration error, 2 computation error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "scenario.hpp"

#ifndef RAMAN_VERSION
#define RAMAN_VERSION "dev"
#endif

namespace cli = raman::cli;

int main(int argc, char** argv) {
    CLI::App app{"Spectra of single Raman photons from a three-level atom"};
    std::string config_path, preset, out_path, profile;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool list = false;
    auto* cfg = app.add_option("--config", config_path, "scenario file (INI)")->check(CLI::ExistingFile);
    auto* pre = app.add_option("--preset", preset, "built-in figure preset");
    cfg->excludes(pre);
    app.add_option("--out", out_path, "output CSV path; metadata goes to <out>.meta.ini");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides scenario.seed)");
    auto* threads_opt = app.add_option("--threads", threads, "worker threads (overrides scenario.threads)")
                            ->check(CLI::Range(1u, 256u));
    auto* profile_opt = app.add_option("--tolerance-profile", profile, "quadrature tolerances")
                            ->check(CLI::IsMember({"default", "strict"}));
    app.add_flag("--list-presets", list, "print the preset catalog and exit");
    app.set_version_flag("--version", RAMAN_VERSION);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (list) {
        for (const auto& p : cli::presets()) std::printf("%-7s %s\n", p.name.c_str(), p.summary.c_str());
        return 0;
    }

    cli::RunOutput result;
    std::string meta_path;
    try {
        if (config_path.empty() && preset.empty()) throw cli::ConfigError("", "one of --config or --preset is required");
        if (out_path.empty()) throw cli::ConfigError("--out", "output path required");
        auto settings = preset.empty() ? cli::parse_ini_file(config_path) : cli::preset_settings(preset);
        if (*seed_opt) settings.set("scenario.seed", cli::format_number(seed));
        if (*threads_opt) settings.set("scenario.threads", std::to_string(threads));
        if (*profile_opt) settings.set("scenario.tolerance_profile", profile);
        result = cli::run(settings);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const raman::Error& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 2;
    }

    meta_path = out_path + ".meta.ini";
    std::ofstream csv(out_path, std::ios::binary);
    std::ofstream meta(meta_path, std::ios::binary);
    if (!csv || !meta) {
        std::cerr << "cannot write '" << out_path << "' or its metadata\n";
        return 2;
    }
    cli::write_csv(csv, meta_path, result.table);
    cli::write_meta(meta, result, RAMAN_VERSION);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}
