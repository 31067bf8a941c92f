#pragma once

#include "hybridsec/allocation.hpp"
#include "hybridsec/channel.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hybridsec {

/// Where the eavesdropper listens. TwoLink is one non-colluding Eve per medium.
enum class EveMode { SinglePlc, SingleWireless, TwoLink };

std::string_view to_string(EveMode mode) noexcept;

constexpr bool is_single_link(EveMode mode) noexcept
{
    return mode != EveMode::TwoLink;
}

/// Data/AN split of Alice's per-channel power. theta is the data fraction.
class PowerSplit {
public:
    /// Throws ConfigError unless theta is in [0, 1].
    explicit PowerSplit(double theta);

    double theta() const noexcept { return theta_; }
    double data_power(double per_channel) const noexcept { return theta_ * per_channel; }
    double an_power(double per_channel) const noexcept { return (1.0 - theta_) * per_channel; }
    /// (1 - theta) / theta; infinite at theta = 0.
    double theta_tilde() const noexcept { return (1.0 - theta_) / theta_; }

private:
    double theta_;
};

/// Per-sub-channel and total rates in bits per OFDM block.
struct RateBreakdown {
    std::vector<double> bob_rates;
    std::vector<double> eve_rates;
    double unclamped = 0.0;  ///< sum(bob) - sum(eve) before [.]^+
    double isr = 0.0;        ///< max(unclamped, 0)
};

struct AsymptoticIsr {
    double bits = 0.0;
    bool unbounded = false;  ///< some active sub-channel has a zero Eve gain
};

struct BobPowerRequirement {
    double watts = 0.0;
    bool unbounded = false;  ///< alpha_min = 0: no finite P_B suffices
};

/// 1 when the single-link Eve sits on the higher-CNR medium of sub-channel k.
/// TwoLink exposes both media, so it always yields 1.
int indicator_eve_on_higher(EveMode mode, const MediumSelection& sel, std::size_t k);

/// No-AN transmit-selection combining, single-link Eve.
RateBreakdown isr_tsc_single(const ChannelRealization& chan, const NoiseProfile& noise,
                             const MediumSelection& sel, const ActiveSet& active, EveMode mode);

/// No-AN transmit-selection combining, two-link Eve.
RateBreakdown isr_tsc_two(const ChannelRealization& chan, const NoiseProfile& noise,
                          const MediumSelection& sel, const ActiveSet& active);

/// Infinite-SNR limit of isr_tsc_two: sum log2(|H_AB|^2 kappa_E / (|H_AE|^2 kappa_B)), clamped.
AsymptoticIsr isr_tsc_two_asymptotic(const ChannelRealization& chan, const NoiseProfile& noise,
                                     const MediumSelection& sel, const ActiveSet& active);

/// Amplify-and-forward weight Alice applies to the AN she received on the lower
/// medium, normalized so the forwarded power is exactly (1 - theta) p_{A,k}:
///   omega = sqrt((1 - theta) p) / sqrt(kappa_A (|h|^2 Gamma_BA + 1)).
double an_weight(Complex h_ab_low, double gamma_ba_low, double p_a_k, double theta,
                 double kappa_a_low);

/// AN-sharing, single-link Eve. Sub-channels whose higher medium is not tapped
/// carry clean data at full power and Bob sends no AN there.
RateBreakdown isr_an_single(const ChannelRealization& chan, const NoiseProfile& noise,
                            const MediumSelection& sel, const ActiveSet& active,
                            PowerSplit split, double p_b, EveMode mode);

/// AN-sharing, two-link Eve. Eve's lower-medium reception carries only AN.
RateBreakdown isr_an_two(const ChannelRealization& chan, const NoiseProfile& noise,
                         const MediumSelection& sel, const ActiveSet& active, PowerSplit split,
                         double p_b);

/// Gain-to-noise ratio of Bob's AN path to Alice on each active sub-channel,
/// |H_AB^{lower}|^2 / kappa_A^{lower}, in active-set order. This is the quantity
/// that survives in the infinite-P_A limit of isr_an_two.
std::vector<double> an_alpha(const ChannelRealization& chan, const NoiseProfile& noise,
                             const MediumSelection& sel, const ActiveSet& active);

/// Infinite-P_A ISR of AN-sharing under two-link eavesdropping:
///   [ sum_k log2(1 + (alpha_k P_B/|A| + 1)/theta_tilde) - |A| log2(1/(1-theta)) ]^+
/// with |A| = alpha.size(). No Eve quantity enters. theta must be in (0, 1).
double isr_an_infinite_pa(std::span<const double> alpha, double p_b, double theta);

/// isr_an_infinite_pa with every alpha_k replaced by alpha_min.
double isr_lower_bound(double alpha_min, double p_b, std::size_t a_size, double theta);

/// Smallest P_B for which isr_lower_bound reaches target_r (bits per block).
BobPowerRequirement min_bob_power(double target_r, double theta, double alpha_min,
                                  std::size_t a_size);

/// Single-medium baseline: data on `medium` only, Eve on that medium intercepts.
/// A single-link Eve on the other medium is rejected as a configuration error.
RateBreakdown isr_single_medium(const ChannelRealization& chan, const NoiseProfile& noise,
                                Medium medium, const ActiveSet& active, EveMode mode);

} // namespace hybridsec
