#include "hybridsec/channel.hpp"

#include "hybridsec/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace hybridsec {

namespace {

std::vector<Complex> make_twiddles(std::size_t n)
{
    std::vector<Complex> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        w[m] = {std::cos(angle), std::sin(angle)};
    }
    return w;
}

FreqResponse dft(std::span<const Complex> taps, std::span<const Complex> twiddle)
{
    const std::size_t n = twiddle.size();
    FreqResponse out;
    out.gains.assign(n, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        std::size_t idx = 0;
        for (const Complex& tap : taps) {
            acc += tap * twiddle[idx];
            idx += k;
            if (idx >= n) {
                idx -= n;
            }
        }
        out.gains[k] = acc;
    }
    return out;
}

void draw_cir_taps(std::span<const double> variances, RandomStream& rng, std::vector<Complex>& taps)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    taps.resize(variances.size());
    for (std::size_t i = 0; i < variances.size(); ++i) {
        const double scale = std::sqrt(variances[i] / 2.0);
        const double re = normal(rng);
        const double im = normal(rng);
        taps[i] = {scale * re, scale * im};
    }
}

void check_tap_variances(std::span<const double> variances)
{
    for (double v : variances) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ConfigError("wireless tap variance must be finite and non-negative");
        }
    }
}

bool all_finite(const FreqResponse& r)
{
    for (const Complex& g : r.gains) {
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) {
            return false;
        }
    }
    return true;
}

FreqResponse multipath_response(const PlcMultipath& model)
{
    if (model.subchannels == 0) {
        throw ConfigError("PLC model needs at least one sub-channel");
    }
    if (!(model.f_stop_hz >= model.f_start_hz) || model.f_start_hz < 0.0) {
        throw ConfigError("PLC band must satisfy 0 <= f_start <= f_stop");
    }
    if (model.paths.empty()) {
        throw ConfigError("PLC model has no paths");
    }
    const double step = (model.f_stop_hz - model.f_start_hz) / static_cast<double>(model.subchannels);
    FreqResponse out;
    out.gains.resize(model.subchannels);
    for (std::size_t k = 0; k < model.subchannels; ++k) {
        const double f = model.f_start_hz + step * static_cast<double>(k);
        const double alpha = model.a0 + model.a1 * std::pow(f, model.exponent);
        Complex acc{0.0, 0.0};
        for (const PlcPath& p : model.paths) {
            const double magnitude = p.gain * std::exp(-alpha * p.length_m);
            acc += std::polar(magnitude, -2.0 * std::numbers::pi * f * p.delay_s);
        }
        out.gains[k] = acc;
    }
    if (!all_finite(out)) {
        throw ConfigError("PLC model produced non-finite gains");
    }
    return out;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& field, const std::string& where)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(field, &used);
    } catch (const std::exception&) {
        throw IoError(where + ": cannot parse number '" + field + "'");
    }
    if (trim(field.substr(used)).size() != 0) {
        throw IoError(where + ": trailing characters in '" + field + "'");
    }
    return value;
}

} // namespace

std::string_view to_string(Medium m) noexcept
{
    return m == Medium::Plc ? "plc" : "wireless";
}

std::string_view to_string(LinkId l) noexcept
{
    switch (l) {
    case LinkId::AliceBob: return "alice-bob";
    case LinkId::AliceEve: return "alice-eve";
    case LinkId::BobEve: return "bob-eve";
    }
    return "?";
}

void ChannelRealization::set(LinkId link, Medium medium, FreqResponse response)
{
    responses_[slot(link, medium)] = std::move(response);
}

bool ChannelRealization::has(LinkId link, Medium medium) const noexcept
{
    return responses_[slot(link, medium)].has_value();
}

const FreqResponse& ChannelRealization::response(LinkId link, Medium medium) const
{
    const auto& r = responses_[slot(link, medium)];
    if (!r) {
        throw ConfigError(std::string("missing ") + std::string(to_string(link)) + " response on " +
                          std::string(to_string(medium)));
    }
    return *r;
}

double ChannelRealization::power_gain(LinkId link, Medium medium, std::size_t k) const
{
    return std::norm(response(link, medium).gains[k]);
}

std::size_t ChannelRealization::subchannels() const
{
    return response(LinkId::AliceBob, Medium::Plc).size();
}

void ChannelRealization::validate() const
{
    const std::size_t n = subchannels();
    for (LinkId link : kLinks) {
        for (Medium m : kMedia) {
            if (!has(link, m)) {
                if (link == LinkId::BobEve) {
                    continue;
                }
                response(link, m); // throws
            }
            const FreqResponse& r = response(link, m);
            if (r.size() != n) {
                throw ConfigError("channel realization responses differ in length");
            }
            if (!all_finite(r)) {
                throw ConfigError("channel realization contains non-finite gains");
            }
        }
    }
}

NoiseProfile::NoiseProfile(std::size_t subchannels, double kappa)
{
    for (Node node : kNodes) {
        for (Medium m : kMedia) {
            set(node, m, std::vector<double>(subchannels, kappa));
        }
    }
}

void NoiseProfile::set(Node node, Medium medium, std::vector<double> kappa)
{
    for (double v : kappa) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("noise power must be strictly positive and finite");
        }
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i != slot(node, medium) && !rows_[i].empty() && rows_[i].size() != kappa.size()) {
            throw ConfigError("noise profile rows must share one sub-channel count");
        }
    }
    rows_[slot(node, medium)] = std::move(kappa);
}

std::vector<double> uniform_tap_profile(std::size_t taps, double total_gain)
{
    if (taps == 0) {
        throw ConfigError("tap profile needs at least one tap");
    }
    return std::vector<double>(taps, total_gain / static_cast<double>(taps));
}

Cir gen_wireless_cir(std::span<const double> tap_variances, RandomStream& rng)
{
    check_tap_variances(tap_variances);
    Cir cir;
    cir.tap_variances.assign(tap_variances.begin(), tap_variances.end());
    draw_cir_taps(tap_variances, rng, cir.taps);
    return cir;
}

FreqResponse cir_to_freq(const Cir& cir, std::size_t n)
{
    if (n == 0) {
        throw ConfigError("DFT size must be positive");
    }
    if (cir.taps.size() > n) {
        throw ConfigError("CIR is longer than the DFT window");
    }
    return dft(cir.taps, make_twiddles(n));
}

FreqResponse load_plc_channel_file(const std::filesystem::path& path, std::size_t subchannels)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open PLC channel file " + path.string());
    }
    FreqResponse out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        const std::string where = path.string() + ":" + std::to_string(line_no);
        std::vector<std::string> fields;
        std::stringstream ss(body);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(trim(field));
        }
        if (fields.size() != 3) {
            throw IoError(where + ": expected 3 fields k,re,im");
        }
        const double k = parse_double(fields[0], where);
        if (k != static_cast<double>(out.gains.size())) {
            throw IoError(where + ": sub-channel index out of order");
        }
        out.gains.emplace_back(parse_double(fields[1], where), parse_double(fields[2], where));
    }
    if (out.size() != subchannels) {
        throw ConfigError(path.string() + ": expected " + std::to_string(subchannels) +
                          " sub-channels, found " + std::to_string(out.size()));
    }
    if (!all_finite(out)) {
        throw ConfigError(path.string() + ": non-finite gain");
    }
    return out;
}

void write_plc_channel_file(const std::filesystem::path& path, const FreqResponse& response)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write PLC channel file " + path.string());
    }
    out << "# k,re,im\n";
    char buf[96];
    for (std::size_t k = 0; k < response.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, response[k].real(), response[k].imag());
        out << buf;
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

FreqResponse plc_response(const PlcSource& source)
{
    if (const auto* file = std::get_if<PlcChannelFile>(&source)) {
        return load_plc_channel_file(file->path, file->subchannels);
    }
    return multipath_response(std::get<PlcMultipath>(source));
}

const PlcSource& PlcProfile::source(LinkId link) const
{
    switch (link) {
    case LinkId::AliceBob: return alice_bob;
    case LinkId::AliceEve: return alice_eve;
    case LinkId::BobEve: return bob_eve;
    }
    return alice_bob;
}

PlcProfile default_plc_profile(std::size_t subchannels)
{
    // Low-voltage indoor cable: v = c / sqrt(4), attenuation fitted to the
    // usual indoor range (a0 ~ 0, a1 ~ 1e-9 s/m, K ~ 1).
    constexpr double velocity = 1.5e8;
    auto path = [](double gain, double length) {
        return PlcPath{gain, length, length / velocity};
    };
    PlcMultipath base;
    base.a0 = 1e-3;
    base.a1 = 1.2e-9;
    base.exponent = 1.0;
    base.f_start_hz = 2e6;
    base.f_stop_hz = 30e6;
    base.subchannels = subchannels;

    PlcMultipath ab = base;
    ab.paths = {path(1.0, 11.0), path(0.55, 19.5), path(-0.42, 27.0), path(0.28, 38.0)};

    PlcMultipath ae = base;
    ae.paths = {path(0.95, 9.5), path(-0.5, 16.0), path(0.4, 24.5), path(-0.25, 35.0)};

    PlcMultipath be = base;
    be.paths = {path(0.9, 7.0), path(0.45, 14.5), path(-0.3, 22.0)};

    return PlcProfile{ab, ae, be};
}

ChannelModel::ChannelModel(std::size_t subchannels, const PlcProfile& plc,
                           std::vector<double> wireless_tap_variances)
    : subchannels_(subchannels),
      tap_variances_(std::move(wireless_tap_variances)),
      twiddle_(make_twiddles(subchannels))
{
    if (subchannels == 0) {
        throw ConfigError("sub-channel count must be positive");
    }
    check_tap_variances(tap_variances_);
    if (tap_variances_.size() > subchannels) {
        throw ConfigError("wireless delay spread exceeds the DFT window");
    }
    for (LinkId link : kLinks) {
        FreqResponse r = plc_response(plc.source(link));
        if (r.size() != subchannels) {
            throw ConfigError(std::string("PLC ") + std::string(to_string(link)) +
                              " response has the wrong sub-channel count");
        }
        plc_[static_cast<std::size_t>(link)] = std::move(r);
    }
}

ChannelRealization ChannelModel::realize(RandomStream& rng) const
{
    ChannelRealization out;
    std::vector<Complex> taps;
    for (LinkId link : kLinks) {
        RandomStream link_rng(splitmix64(rng()));
        draw_cir_taps(tap_variances_, link_rng, taps);
        out.set(link, Medium::Wireless, dft(taps, twiddle_));
        out.set(link, Medium::Plc, plc_[static_cast<std::size_t>(link)]);
    }
    return out;
}

} // namespace hybridsec
