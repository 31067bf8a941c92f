// hybridsec: secure-throughput experiments for hybrid PLC/wireless OFDM links.
//
//   hybridsec --preset fig2 --out-dir results
//   hybridsec --config run.json --seed 7 --trials 20000
//   hybridsec --config results/fig2.manifest.json     # replay a run
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include "hybridsec/error.hpp"
#include "hybridsec/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::vector<std::string> split_list(const std::vector<std::string>& items)
{
    std::vector<std::string> out;
    for (const std::string& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) {
                out.push_back(part);
            }
        }
    }
    return out;
}

double parse_number(const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw hybridsec::ConfigError("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw hybridsec::ConfigError("not a number: '" + text + "'");
    }
    return v;
}

// Accepts LINK=PATH with LINK in {alice-bob, alice-eve, bob-eve}; a bare PATH
// replaces the Alice-Bob response.
void apply_plc_file(hybridsec::ScenarioConfig& cfg, const std::string& arg)
{
    std::string link = "alice-bob";
    std::string path = arg;
    if (const auto eq = arg.find('='); eq != std::string::npos) {
        link = arg.substr(0, eq);
        path = arg.substr(eq + 1);
    }
    for (std::size_t i = 0; i < hybridsec::kLinks.size(); ++i) {
        if (link == hybridsec::to_string(hybridsec::kLinks[i])) {
            cfg.plc_files[i] = std::filesystem::absolute(path);
            return;
        }
    }
    throw hybridsec::ConfigError("unknown PLC link '" + link + "' (expected alice-bob, alice-eve, bob-eve)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Secure throughput of hybrid parallel PLC/wireless OFDM links"};
    app.set_version_flag("--version", std::string(hybridsec::kToolVersion));

    std::optional<std::string> preset;
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<double> gamma_a_db;
    std::optional<double> gamma_b_db;
    std::optional<double> theta;
    std::optional<double> target_r;
    std::optional<std::string> eve_mode;
    std::vector<std::string> schemes;
    std::vector<std::string> plc_files;
    std::optional<std::string> sweep_param;
    std::vector<std::string> sweep_values;
    std::optional<unsigned> workers;
    std::optional<std::string> name;
    std::optional<std::string> export_plc;
    std::string out_dir = "results";

    app.add_option("--preset", preset, "fig2 | fig3 | fig4 | fig5");
    app.add_option("--config", config_path, "flat JSON config or a run manifest");
    app.add_option("--seed", seed, "base random seed");
    app.add_option("--trials", trials, "channel realizations per sweep point");
    app.add_option("--gamma-a-db", gamma_a_db, "Alice input SNR P_A/(N kappa) in dB");
    app.add_option("--gamma-b-db", gamma_b_db, "Bob input SNR P_B/(N kappa) in dB");
    app.add_option("--theta", theta, "fraction of Alice's power spent on data");
    app.add_option("--target-r", target_r, "target secrecy rate in bits/s/Hz");
    app.add_option("--eve-mode", eve_mode, "single-plc | single-wireless | two-link");
    app.add_option("--scheme", schemes, "tsc | an-sharing | plc-only | wireless-only (repeatable or comma list)");
    app.add_option("--plc-channel-file", plc_files, "[LINK=]PATH of a k,re,im PLC response (repeatable)");
    app.add_option("--sweep-param", sweep_param, "gamma_a_db | gamma_b_db | theta | target_r");
    app.add_option("--sweep-values", sweep_values, "swept values (repeatable or comma list)");
    app.add_option("--workers", workers, "worker threads (results do not depend on it)");
    app.add_option("--name", name, "output file stem");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--export-default-plc", export_plc, "write the bundled PLC responses to DIR and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (export_plc) {
            hybridsec::export_default_plc(*export_plc, 64);
            return 0;
        }

        hybridsec::ExperimentConfig cfg;
        if (config_path) {
            cfg = hybridsec::load_config_file(*config_path);
        }
        if (preset) {
            // Flags win over the file; a --preset flag resets the experiment shape.
            hybridsec::ExperimentConfig from_preset = hybridsec::make_preset(*preset);
            if (config_path) {
                from_preset.base = cfg.base;
            }
            cfg = std::move(from_preset);
        }
        if (!preset && !config_path) {
            throw hybridsec::ConfigError("one of --preset or --config is required (see --help)");
        }

        hybridsec::ScenarioConfig& b = cfg.base;
        if (seed) b.seed = *seed;
        if (trials) b.trials = *trials;
        if (gamma_a_db) b.gamma_a_db = *gamma_a_db;
        if (gamma_b_db) b.gamma_b_db = *gamma_b_db;
        if (theta) b.theta = *theta;
        if (target_r) b.target_r = *target_r;
        if (eve_mode) b.eve_mode = hybridsec::parse_eve_mode(*eve_mode);
        if (workers) b.workers = *workers;
        if (name) cfg.name = *name;
        for (const std::string& arg : plc_files) {
            apply_plc_file(b, arg);
        }
        if (!schemes.empty()) {
            cfg.schemes.clear();
            for (const std::string& s : split_list(schemes)) {
                cfg.schemes.push_back(hybridsec::parse_scheme(s));
            }
        }
        if (sweep_param) {
            cfg.sweep_param = hybridsec::parse_sweep_param(*sweep_param);
        }
        if (!sweep_values.empty()) {
            cfg.sweep_values.clear();
            for (const std::string& v : split_list(sweep_values)) {
                cfg.sweep_values.push_back(parse_number(v));
            }
        } else if (sweep_param && !preset && !config_path) {
            throw hybridsec::ConfigError("--sweep-param needs --sweep-values");
        }

        const hybridsec::RunOutputs out = hybridsec::run_and_write(cfg, out_dir);
        std::cout << "wrote " << out.csv.string() << "\n"
                  << "wrote " << out.json.string() << "\n"
                  << "wrote " << out.manifest.string() << "\n";
        return 0;
    } catch (const hybridsec::ConfigError& e) {
        std::cerr << "hybridsec: " << e.what() << "\n";
        return kExitValidation;
    } catch (const hybridsec::IoError& e) {
        std::cerr << "hybridsec: " << e.what() << "\n";
        return kExitIo;
    }
}
