#pragma once

#include "hybridsec/channel.hpp"
#include "hybridsec/secrecy.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hybridsec {

enum class Scheme { Tsc, AnSharing, PlcOnly, WirelessOnly };

std::string_view to_string(Scheme scheme) noexcept;
Scheme parse_scheme(std::string_view name);
EveMode parse_eve_mode(std::string_view name);

double db_to_linear(double db) noexcept;

/// One operating point. Powers are given as input SNRs in dB:
/// Gamma_A = P_A / (N kappa), Gamma_B = P_B / (N kappa).
struct ScenarioConfig {
    std::size_t n = 64;
    std::size_t n_cp = 16;
    double gamma_a_db = 20.0;
    double gamma_b_db = 20.0;
    double kappa = 1.0;
    double theta = 0.5;
    double target_r = 1.0;  ///< bits/s/Hz
    EveMode eve_mode = EveMode::TwoLink;
    Scheme scheme = Scheme::AnSharing;
    /// Wireless CIR length nu + 1; 0 means n_cp + 1. Taps share unit total energy.
    std::size_t wireless_taps = 0;
    /// Per-link PLC channel files (AliceBob, AliceEve, BobEve); empty uses the bundled model.
    std::array<std::optional<std::filesystem::path>, 3> plc_files{};
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    /// Multiplies mu; set to (T-1)/T to charge the AN-priming block of a T-block
    /// coherence interval.
    double block_efficiency = 1.0;
    /// Worker threads; 0 picks hardware concurrency. Never affects results.
    unsigned workers = 0;

    double p_a() const noexcept { return db_to_linear(gamma_a_db) * static_cast<double>(n) * kappa; }
    double p_b() const noexcept { return db_to_linear(gamma_b_db) * static_cast<double>(n) * kappa; }
    std::size_t effective_wireless_taps() const noexcept { return wireless_taps == 0 ? n_cp + 1 : wireless_taps; }
    /// Per-block bit count equivalent to target_r bits/s/Hz.
    double target_bits_per_block() const noexcept { return target_r * static_cast<double>(n + n_cp); }
};

/// Throws ConfigError on out-of-range values or an incompatible scheme/Eve pairing.
void validate(const ScenarioConfig& cfg);
void validate_scheme(Scheme scheme, EveMode mode);

PlcProfile plc_profile(const ScenarioConfig& cfg);
ChannelModel make_channel_model(const ScenarioConfig& cfg);
NoiseProfile make_noise_profile(const ScenarioConfig& cfg);

/// Draws the channels of one coherence interval.
ChannelRealization realize(const ScenarioConfig& cfg, RandomStream& rng);

/// ISR in bits per OFDM block of `scheme` on one realization, including medium
/// selection and water-filling.
double trial_isr(Scheme scheme, const ScenarioConfig& cfg, const ChannelRealization& chan,
                 const NoiseProfile& noise);

struct ThroughputRecord {
    Scheme scheme = Scheme::AnSharing;
    EveMode eve_mode = EveMode::TwoLink;
    std::string param;
    double value = 0.0;
    double mu = 0.0;           ///< secure throughput, bits/s/Hz
    double outage_prob = 0.0;  ///< Pr{ISR < R}
    std::size_t trials = 0;
    std::size_t successes = 0;
    double ci = 0.0;           ///< 95% normal half-width on the success probability

    friend bool operator==(const ThroughputRecord&, const ThroughputRecord&) = default;
};

/// Monte-Carlo secure throughput of cfg.scheme.
ThroughputRecord estimate_throughput(const ScenarioConfig& cfg);

/// Secure throughput of several schemes evaluated on the same realizations.
std::vector<ThroughputRecord> estimate_throughput(const ScenarioConfig& cfg,
                                                  std::span<const Scheme> schemes);

/// Exact success fraction over a fixed set of realizations.
ThroughputRecord evaluate_over(const ScenarioConfig& cfg,
                               std::span<const ChannelRealization> realizations);

enum class SweepParam { GammaADb, GammaBDb, Theta, TargetR };

std::string_view to_string(SweepParam p) noexcept;
SweepParam parse_sweep_param(std::string_view name);

/// Applies one swept value to a copy of `base`.
ScenarioConfig with_param(ScenarioConfig base, SweepParam param, double value);

/// Seed of sweep point `index`: seed XOR SplitMix64(index).
std::uint64_t point_seed(std::uint64_t seed, std::size_t index) noexcept;

/// One record per (value, scheme), value-major. Every scheme at one point shares
/// that point's realizations.
std::vector<ThroughputRecord> sweep(const ScenarioConfig& base, SweepParam param,
                                    std::span<const double> values, std::span<const Scheme> schemes);

/// Results table: header `scheme,eve_mode,param,value,mu,outage_prob,trials,ci`,
/// floats with 9 significant digits.
std::string format_results_csv(std::span<const ThroughputRecord> records);
void write_results_csv(const std::filesystem::path& path, std::span<const ThroughputRecord> records);

} // namespace hybridsec
