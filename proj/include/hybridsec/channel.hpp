#pragma once

#include "hybridsec/rng.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace hybridsec {

using Complex = std::complex<double>;

enum class Medium { Plc, Wireless };

inline constexpr std::array<Medium, 2> kMedia{Medium::Plc, Medium::Wireless};

constexpr Medium other(Medium m) noexcept
{
    return m == Medium::Plc ? Medium::Wireless : Medium::Plc;
}

std::string_view to_string(Medium m) noexcept;

/// Unordered node pair. AliceBob is reciprocal: Bob->Alice uses the same response.
enum class LinkId { AliceBob, AliceEve, BobEve };

inline constexpr std::array<LinkId, 3> kLinks{LinkId::AliceBob, LinkId::AliceEve, LinkId::BobEve};

std::string_view to_string(LinkId l) noexcept;

enum class Node { Alice, Bob, Eve };

inline constexpr std::array<Node, 3> kNodes{Node::Alice, Node::Bob, Node::Eve};

/// Wireless channel impulse response in one coherence interval.
struct Cir {
    std::vector<Complex> taps;
    std::vector<double> tap_variances;
};

/// Per-sub-channel complex gains after the receive FFT.
struct FreqResponse {
    std::vector<Complex> gains;

    std::size_t size() const noexcept { return gains.size(); }
    const Complex& operator[](std::size_t k) const { return gains[k]; }
};

/// Frequency responses of every (link, medium) pair for one coherence interval.
/// AliceBob and AliceEve are mandatory on both media; BobEve may be absent.
class ChannelRealization {
public:
    void set(LinkId link, Medium medium, FreqResponse response);
    bool has(LinkId link, Medium medium) const noexcept;
    /// Throws ConfigError when the pair has not been set.
    const FreqResponse& response(LinkId link, Medium medium) const;

    /// |H|^2 of one sub-channel.
    double power_gain(LinkId link, Medium medium, std::size_t k) const;

    std::size_t subchannels() const;

    /// Checks the mandatory entries exist, share one length, and are finite.
    void validate() const;

    friend bool operator==(const ChannelRealization&, const ChannelRealization&) = default;

private:
    static constexpr std::size_t slot(LinkId link, Medium medium) noexcept
    {
        return static_cast<std::size_t>(link) * 2 + static_cast<std::size_t>(medium);
    }

    std::array<std::optional<FreqResponse>, 6> responses_;
};

inline bool operator==(const FreqResponse& a, const FreqResponse& b)
{
    return a.gains == b.gains;
}

/// Additive noise power per (node, medium, sub-channel), in Watts.
class NoiseProfile {
public:
    NoiseProfile() = default;
    /// Flat profile: the same kappa everywhere.
    NoiseProfile(std::size_t subchannels, double kappa);

    /// Replaces one node/medium row; every value must be strictly positive and finite.
    void set(Node node, Medium medium, std::vector<double> kappa);

    double kappa(Node node, Medium medium, std::size_t k) const
    {
        return rows_[slot(node, medium)][k];
    }
    std::span<const double> row(Node node, Medium medium) const
    {
        return rows_[slot(node, medium)];
    }

    std::size_t subchannels() const noexcept { return rows_[0].size(); }

private:
    static constexpr std::size_t slot(Node node, Medium medium) noexcept
    {
        return static_cast<std::size_t>(node) * 2 + static_cast<std::size_t>(medium);
    }

    std::array<std::vector<double>, 6> rows_;
};

/// `taps` equal-variance taps summing to `total_gain`.
std::vector<double> uniform_tap_profile(std::size_t taps, double total_gain = 1.0);

/// Draws one i.i.d. circularly-symmetric complex Gaussian CIR.
/// Tap i has independent real and imaginary parts of variance tap_variances[i]/2.
Cir gen_wireless_cir(std::span<const double> tap_variances, RandomStream& rng);

/// N-point DFT of the CIR: gains[k] = sum_i taps[i] exp(-j 2 pi i k / n).
/// The CIR must fit inside the DFT window.
FreqResponse cir_to_freq(const Cir& cir, std::size_t n);

/// One propagation path of the multipath PLC transfer function.
struct PlcPath {
    double gain = 1.0;      ///< reflection/transmission product g_p
    double length_m = 0.0;  ///< d_p
    double delay_s = 0.0;   ///< tau_p
};

/// Multipath PLC model
///   H(f) = sum_p g_p exp(-(a0 + a1 f^K) d_p) exp(-j 2 pi f tau_p)
/// sampled at f_k = f_start + k (f_stop - f_start) / subchannels.
struct PlcMultipath {
    std::vector<PlcPath> paths;
    double a0 = 0.0;         ///< 1/m
    double a1 = 0.0;         ///< 1/(m Hz^K)
    double exponent = 1.0;   ///< K
    double f_start_hz = 2e6;
    double f_stop_hz = 30e6;
    std::size_t subchannels = 64;
};

/// CSV file of per-sub-channel gains, rows "k,re,im". Lines starting with '#' are comments.
struct PlcChannelFile {
    std::filesystem::path path;
    std::size_t subchannels = 64;
};

using PlcSource = std::variant<PlcMultipath, PlcChannelFile>;

/// Deterministic PLC response. Throws IoError for unreadable/malformed files and
/// ConfigError for a wrong sub-channel count or non-finite values.
FreqResponse plc_response(const PlcSource& source);

FreqResponse load_plc_channel_file(const std::filesystem::path& path, std::size_t subchannels);
void write_plc_channel_file(const std::filesystem::path& path, const FreqResponse& response);

/// PLC sources for each link.
struct PlcProfile {
    PlcSource alice_bob;
    PlcSource alice_eve;
    PlcSource bob_eve;

    const PlcSource& source(LinkId link) const;
};

/// Bundled indoor profile: one shared feeder with branch reflections, Eve tapped
/// at a different outlet on the same circuit.
PlcProfile default_plc_profile(std::size_t subchannels);

/// Holds the deterministic PLC responses and the wireless delay profile, and draws
/// fresh wireless responses per coherence interval.
class ChannelModel {
public:
    ChannelModel(std::size_t subchannels, const PlcProfile& plc,
                 std::vector<double> wireless_tap_variances);

    /// Each link's wireless CIR uses its own sub-stream seeded from `rng`.
    ChannelRealization realize(RandomStream& rng) const;

    std::size_t subchannels() const noexcept { return subchannels_; }
    const FreqResponse& plc(LinkId link) const { return plc_[static_cast<std::size_t>(link)]; }
    std::span<const double> wireless_tap_variances() const noexcept { return tap_variances_; }

private:
    std::size_t subchannels_;
    std::array<FreqResponse, 3> plc_;
    std::vector<double> tap_variances_;
    // Twiddle table exp(-j 2 pi m / n), m in [0, n).
    std::vector<Complex> twiddle_;
};

} // namespace hybridsec
