#pragma once

#include "hybridsec/montecarlo.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hybridsec {

inline constexpr std::string_view kToolName = "hybridsec";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// A resolved batch run: base operating point, curves, and the swept axis.
struct ExperimentConfig {
    std::string name = "custom";
    std::string preset;  ///< empty for custom runs
    ScenarioConfig base;
    std::vector<Scheme> schemes{Scheme::AnSharing};
    SweepParam sweep_param = SweepParam::GammaADb;
    std::vector<double> sweep_values{20.0};
};

/// Names accepted by make_preset.
const std::vector<std::string>& preset_names();

/// Preset experiments: fig2 sweeps Gamma_A over all four schemes, fig3 sweeps
/// Gamma_B, fig4 sweeps the target rate and fig5 sweeps theta. All use N = 64,
/// N_cp = 16, theta = 1/2, R = 1, Gamma_A = Gamma_B = 20 dB and a two-link Eve
/// unless the swept axis says otherwise.
ExperimentConfig make_preset(std::string_view name);

/// Flat key-value config, JSON syntax. Unknown keys and out-of-range values throw
/// ConfigError. Keys:
///   preset, name, n, n_cp, gamma_a_db, gamma_b_db, kappa, theta, target_r,
///   eve_mode, scheme (string or list), wireless_taps, trials, seed,
///   block_efficiency, workers, sweep_param, sweep_values,
///   plc_alice_bob_file, plc_alice_eve_file, plc_bob_eve_file
/// `preset` (if present) is applied first, then the remaining keys on top.
/// A run manifest is also accepted; its embedded "config" object is used.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Overlays the keys of `doc` onto `cfg` with the same strict rules.
void apply_config(ExperimentConfig& cfg, const nlohmann::json& doc);

/// Inverse of parse_config: every key, fully resolved.
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Throws ConfigError on any invalid field or scheme/Eve pairing.
void validate(const ExperimentConfig& cfg);

std::vector<ThroughputRecord> run_experiment(const ExperimentConfig& cfg);

struct RunOutputs {
    std::filesystem::path csv;
    std::filesystem::path json;
    std::filesystem::path manifest;
};

/// Runs the experiment and writes <out_dir>/<name>.csv, the JSON mirror
/// <name>.json and the manifest <name>.manifest.json. I/O failures throw IoError.
RunOutputs run_and_write(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Writes the bundled PLC responses for N sub-channels as
/// plc_alice_bob.csv, plc_alice_eve.csv and plc_bob_eve.csv.
void export_default_plc(const std::filesystem::path& out_dir, std::size_t n);

} // namespace hybridsec
