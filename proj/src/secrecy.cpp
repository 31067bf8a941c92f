#include "hybridsec/secrecy.hpp"

#include "hybridsec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hybridsec {

namespace {

Medium single_link_medium(EveMode mode)
{
    if (mode == EveMode::SinglePlc) {
        return Medium::Plc;
    }
    if (mode == EveMode::SingleWireless) {
        return Medium::Wireless;
    }
    throw ConfigError("single-link formula requested with two-link eavesdropping");
}

RateBreakdown empty_breakdown(std::size_t n)
{
    RateBreakdown r;
    r.bob_rates.assign(n, 0.0);
    r.eve_rates.assign(n, 0.0);
    return r;
}

void finalize(RateBreakdown& r, const ActiveSet& active)
{
    double bob = 0.0;
    double eve = 0.0;
    for (std::size_t k : active.indices) {
        bob += r.bob_rates[k];
        eve += r.eve_rates[k];
    }
    r.unclamped = bob - eve;
    r.isr = std::max(r.unclamped, 0.0);
}

void check_inputs(const ChannelRealization& chan, const NoiseProfile& noise,
                  const MediumSelection& sel, const ActiveSet& active)
{
    const std::size_t n = chan.subchannels();
    if (noise.subchannels() != n || sel.size() != n || active.power.size() != n) {
        throw ConfigError("channel, noise, selection and active set disagree on N");
    }
}

// Receiver SINR of the data symbol when Alice forwards AN on top of it.
// `gain_snr` is |H|^2 Gamma at the receiver; `an_shield` is the factor that
// scales the forwarded-AN interference the receiver cannot cancel.
double an_sinr(double gain_snr, double theta, double an_shield)
{
    return gain_snr * theta / (gain_snr * (1.0 - theta) / an_shield + 1.0);
}

struct SubchannelView {
    Medium high;
    Medium low;
    double p;
    double gab_high;
    double gae_high;
    double gab_low;
    double gamma_ab;
    double gamma_ae;
};

SubchannelView view(const ChannelRealization& chan, const NoiseProfile& noise,
                    const MediumSelection& sel, const ActiveSet& active, std::size_t k)
{
    SubchannelView v{};
    v.high = sel.higher[k];
    v.low = sel.lower[k];
    v.p = active.power[k];
    v.gab_high = chan.power_gain(LinkId::AliceBob, v.high, k);
    v.gae_high = chan.power_gain(LinkId::AliceEve, v.high, k);
    v.gab_low = chan.power_gain(LinkId::AliceBob, v.low, k);
    v.gamma_ab = v.p / noise.kappa(Node::Bob, v.high, k);
    v.gamma_ae = v.p / noise.kappa(Node::Eve, v.high, k);
    return v;
}

void check_open_theta(double theta)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw ConfigError("infinite-power ISR needs theta strictly inside (0, 1)");
    }
}

} // namespace

std::string_view to_string(EveMode mode) noexcept
{
    switch (mode) {
    case EveMode::SinglePlc: return "single-plc";
    case EveMode::SingleWireless: return "single-wireless";
    case EveMode::TwoLink: return "two-link";
    }
    return "?";
}

PowerSplit::PowerSplit(double theta) : theta_(theta)
{
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw ConfigError("theta must lie in [0, 1]");
    }
}

int indicator_eve_on_higher(EveMode mode, const MediumSelection& sel, std::size_t k)
{
    if (mode == EveMode::TwoLink) {
        return 1;
    }
    return single_link_medium(mode) == sel.higher.at(k) ? 1 : 0;
}

RateBreakdown isr_tsc_single(const ChannelRealization& chan, const NoiseProfile& noise,
                             const MediumSelection& sel, const ActiveSet& active, EveMode mode)
{
    single_link_medium(mode);
    check_inputs(chan, noise, sel, active);
    RateBreakdown r = empty_breakdown(chan.subchannels());
    for (std::size_t k : active.indices) {
        const SubchannelView v = view(chan, noise, sel, active, k);
        r.bob_rates[k] = std::log2(1.0 + v.gab_high * v.gamma_ab);
        if (indicator_eve_on_higher(mode, sel, k) == 1) {
            r.eve_rates[k] = std::log2(1.0 + v.gae_high * v.gamma_ae);
        }
    }
    finalize(r, active);
    return r;
}

RateBreakdown isr_tsc_two(const ChannelRealization& chan, const NoiseProfile& noise,
                          const MediumSelection& sel, const ActiveSet& active)
{
    check_inputs(chan, noise, sel, active);
    RateBreakdown r = empty_breakdown(chan.subchannels());
    for (std::size_t k : active.indices) {
        const SubchannelView v = view(chan, noise, sel, active, k);
        r.bob_rates[k] = std::log2(1.0 + v.gab_high * v.gamma_ab);
        r.eve_rates[k] = std::log2(1.0 + v.gae_high * v.gamma_ae);
    }
    finalize(r, active);
    return r;
}

AsymptoticIsr isr_tsc_two_asymptotic(const ChannelRealization& chan, const NoiseProfile& noise,
                                     const MediumSelection& sel, const ActiveSet& active)
{
    check_inputs(chan, noise, sel, active);
    AsymptoticIsr out;
    double sum = 0.0;
    for (std::size_t k : active.indices) {
        const Medium high = sel.higher[k];
        const double gab = chan.power_gain(LinkId::AliceBob, high, k);
        const double gae = chan.power_gain(LinkId::AliceEve, high, k);
        if (gae == 0.0) {
            out.unbounded = true;
            continue;
        }
        sum += std::log2(gab * noise.kappa(Node::Eve, high, k) /
                         (gae * noise.kappa(Node::Bob, high, k)));
    }
    out.bits = out.unbounded ? std::numeric_limits<double>::infinity() : std::max(sum, 0.0);
    return out;
}

double an_weight(Complex h_ab_low, double gamma_ba_low, double p_a_k, double theta,
                 double kappa_a_low)
{
    const double received = kappa_a_low * (std::norm(h_ab_low) * gamma_ba_low + 1.0);
    return std::sqrt((1.0 - theta) * p_a_k) / std::sqrt(received);
}

RateBreakdown isr_an_single(const ChannelRealization& chan, const NoiseProfile& noise,
                            const MediumSelection& sel, const ActiveSet& active,
                            PowerSplit split, double p_b, EveMode mode)
{
    single_link_medium(mode);
    check_inputs(chan, noise, sel, active);
    const double theta = split.theta();
    const double p_b_k = active.share(p_b);
    RateBreakdown r = empty_breakdown(chan.subchannels());
    for (std::size_t k : active.indices) {
        const SubchannelView v = view(chan, noise, sel, active, k);
        if (indicator_eve_on_higher(mode, sel, k) == 0) {
            r.bob_rates[k] = std::log2(1.0 + v.gab_high * v.gamma_ab);
            continue;
        }
        const double gamma_ba = p_b_k / noise.kappa(Node::Alice, v.low, k);
        r.bob_rates[k] =
            std::log2(1.0 + an_sinr(v.gab_high * v.gamma_ab, theta, v.gab_low * gamma_ba + 1.0));
        r.eve_rates[k] = std::log2(1.0 + an_sinr(v.gae_high * v.gamma_ae, theta, 1.0));
    }
    finalize(r, active);
    return r;
}

RateBreakdown isr_an_two(const ChannelRealization& chan, const NoiseProfile& noise,
                         const MediumSelection& sel, const ActiveSet& active, PowerSplit split,
                         double p_b)
{
    check_inputs(chan, noise, sel, active);
    const double theta = split.theta();
    const double p_b_k = active.share(p_b);
    RateBreakdown r = empty_breakdown(chan.subchannels());
    for (std::size_t k : active.indices) {
        const SubchannelView v = view(chan, noise, sel, active, k);
        const double gamma_ba = p_b_k / noise.kappa(Node::Alice, v.low, k);
        r.bob_rates[k] =
            std::log2(1.0 + an_sinr(v.gab_high * v.gamma_ab, theta, v.gab_low * gamma_ba + 1.0));
        r.eve_rates[k] = std::log2(1.0 + an_sinr(v.gae_high * v.gamma_ae, theta, 1.0));
    }
    finalize(r, active);
    return r;
}

std::vector<double> an_alpha(const ChannelRealization& chan, const NoiseProfile& noise,
                             const MediumSelection& sel, const ActiveSet& active)
{
    check_inputs(chan, noise, sel, active);
    std::vector<double> alpha;
    alpha.reserve(active.size());
    for (std::size_t k : active.indices) {
        const Medium low = sel.lower[k];
        alpha.push_back(chan.power_gain(LinkId::AliceBob, low, k) / noise.kappa(Node::Alice, low, k));
    }
    return alpha;
}

double isr_an_infinite_pa(std::span<const double> alpha, double p_b, double theta)
{
    check_open_theta(theta);
    if (alpha.empty()) {
        return 0.0;
    }
    const double a_size = static_cast<double>(alpha.size());
    const double theta_tilde = (1.0 - theta) / theta;
    double sum = 0.0;
    for (double a : alpha) {
        sum += std::log2(1.0 + (a * p_b / a_size + 1.0) / theta_tilde);
    }
    sum -= a_size * std::log2(1.0 / (1.0 - theta));
    return std::max(sum, 0.0);
}

double isr_lower_bound(double alpha_min, double p_b, std::size_t a_size, double theta)
{
    check_open_theta(theta);
    if (a_size == 0) {
        return 0.0;
    }
    const double m = static_cast<double>(a_size);
    const double theta_tilde = (1.0 - theta) / theta;
    const double bound =
        m * (std::log2(1.0 + (alpha_min * p_b / m + 1.0) / theta_tilde) - std::log2(1.0 / (1.0 - theta)));
    return std::max(bound, 0.0);
}

BobPowerRequirement min_bob_power(double target_r, double theta, double alpha_min,
                                  std::size_t a_size)
{
    check_open_theta(theta);
    if (a_size == 0) {
        throw ConfigError("min_bob_power needs a non-empty active set");
    }
    if (target_r <= 0.0) {
        // Any positive P_B already gives a positive ISR at infinite P_A.
        return {0.0, false};
    }
    if (!(alpha_min > 0.0)) {
        return {std::numeric_limits<double>::infinity(), true};
    }
    const double m = static_cast<double>(a_size);
    const double theta_tilde = (1.0 - theta) / theta;
    const double needed =
        m * (theta_tilde * (std::exp2(target_r / m) / (1.0 - theta) - 1.0) - 1.0) / alpha_min;
    return {std::max(needed, 0.0), false};
}

RateBreakdown isr_single_medium(const ChannelRealization& chan, const NoiseProfile& noise,
                                Medium medium, const ActiveSet& active, EveMode mode)
{
    if (is_single_link(mode) && single_link_medium(mode) != medium) {
        throw ConfigError("single-medium baseline on " + std::string(to_string(medium)) +
                          " with Eve on the other medium");
    }
    const std::size_t n = chan.subchannels();
    if (noise.subchannels() != n || active.power.size() != n) {
        throw ConfigError("channel, noise and active set disagree on N");
    }
    RateBreakdown r = empty_breakdown(n);
    for (std::size_t k : active.indices) {
        const double p = active.power[k];
        const double gamma_ab = p / noise.kappa(Node::Bob, medium, k);
        const double gamma_ae = p / noise.kappa(Node::Eve, medium, k);
        r.bob_rates[k] = std::log2(1.0 + chan.power_gain(LinkId::AliceBob, medium, k) * gamma_ab);
        r.eve_rates[k] = std::log2(1.0 + chan.power_gain(LinkId::AliceEve, medium, k) * gamma_ae);
    }
    finalize(r, active);
    return r;
}

} // namespace hybridsec
