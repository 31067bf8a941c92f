#include "hybridsec/montecarlo.hpp"

#include "hybridsec/allocation.hpp"
#include "hybridsec/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

namespace hybridsec {

namespace {

struct TrialInputs {
    CnrVector cnr_plc;
    CnrVector cnr_wireless;
    MediumSelection sel;
    ActiveSet hybrid;
    bool hybrid_ready = false;
};

double scheme_isr(Scheme scheme, const ScenarioConfig& cfg, const ChannelRealization& chan,
                  const NoiseProfile& noise, TrialInputs& in)
{
    switch (scheme) {
    case Scheme::PlcOnly: {
        const ActiveSet active = waterfill_active_set(in.cnr_plc, cfg.p_a());
        return isr_single_medium(chan, noise, Medium::Plc, active, cfg.eve_mode).isr;
    }
    case Scheme::WirelessOnly: {
        const ActiveSet active = waterfill_active_set(in.cnr_wireless, cfg.p_a());
        return isr_single_medium(chan, noise, Medium::Wireless, active, cfg.eve_mode).isr;
    }
    case Scheme::Tsc:
    case Scheme::AnSharing:
        break;
    }
    if (!in.hybrid_ready) {
        in.sel = select_medium(in.cnr_plc, in.cnr_wireless);
        in.hybrid = waterfill_active_set(best_cnr(in.cnr_plc, in.cnr_wireless), cfg.p_a());
        in.hybrid_ready = true;
    }
    if (scheme == Scheme::Tsc) {
        return is_single_link(cfg.eve_mode)
                   ? isr_tsc_single(chan, noise, in.sel, in.hybrid, cfg.eve_mode).isr
                   : isr_tsc_two(chan, noise, in.sel, in.hybrid).isr;
    }
    const PowerSplit split(cfg.theta);
    return is_single_link(cfg.eve_mode)
               ? isr_an_single(chan, noise, in.sel, in.hybrid, split, cfg.p_b(), cfg.eve_mode).isr
               : isr_an_two(chan, noise, in.sel, in.hybrid, split, cfg.p_b()).isr;
}

TrialInputs prepare(const ChannelRealization& chan, const NoiseProfile& noise)
{
    TrialInputs in;
    in.cnr_plc = compute_cnr(chan.response(LinkId::AliceBob, Medium::Plc), noise.row(Node::Bob, Medium::Plc));
    in.cnr_wireless = compute_cnr(chan.response(LinkId::AliceBob, Medium::Wireless),
                                  noise.row(Node::Bob, Medium::Wireless));
    return in;
}

ThroughputRecord make_record(const ScenarioConfig& cfg, Scheme scheme, std::size_t successes,
                             std::size_t trials)
{
    ThroughputRecord rec;
    rec.scheme = scheme;
    rec.eve_mode = cfg.eve_mode;
    rec.trials = trials;
    rec.successes = successes;
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    rec.mu = cfg.target_r * cfg.block_efficiency * p;
    rec.outage_prob = 1.0 - p;
    rec.ci = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return rec;
}

unsigned worker_count(const ScenarioConfig& cfg)
{
    unsigned w = cfg.workers != 0 ? cfg.workers : std::thread::hardware_concurrency();
    w = std::max(w, 1u);
    return static_cast<unsigned>(std::min<std::size_t>(w, cfg.trials));
}

} // namespace

std::string_view to_string(Scheme scheme) noexcept
{
    switch (scheme) {
    case Scheme::Tsc: return "tsc";
    case Scheme::AnSharing: return "an-sharing";
    case Scheme::PlcOnly: return "plc-only";
    case Scheme::WirelessOnly: return "wireless-only";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : {Scheme::Tsc, Scheme::AnSharing, Scheme::PlcOnly, Scheme::WirelessOnly}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw ConfigError("unknown scheme '" + std::string(name) +
                      "' (expected tsc, an-sharing, plc-only, wireless-only)");
}

EveMode parse_eve_mode(std::string_view name)
{
    for (EveMode m : {EveMode::SinglePlc, EveMode::SingleWireless, EveMode::TwoLink}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw ConfigError("unknown eve mode '" + std::string(name) +
                      "' (expected single-plc, single-wireless, two-link)");
}

double db_to_linear(double db) noexcept
{
    return std::pow(10.0, db / 10.0);
}

void validate_scheme(Scheme scheme, EveMode mode)
{
    if ((scheme == Scheme::WirelessOnly && mode == EveMode::SinglePlc) ||
        (scheme == Scheme::PlcOnly && mode == EveMode::SingleWireless)) {
        throw ConfigError(std::string(to_string(scheme)) + " cannot be combined with eve mode " +
                          std::string(to_string(mode)));
    }
}

void validate(const ScenarioConfig& cfg)
{
    auto finite = [](double v) { return std::isfinite(v); };
    if (cfg.n < 1) {
        throw ConfigError("n must be at least 1");
    }
    if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) {
        throw ConfigError("theta must lie in [0, 1]");
    }
    if (cfg.trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    if (!finite(cfg.gamma_a_db) || !finite(cfg.gamma_b_db)) {
        throw ConfigError("input SNRs must be finite");
    }
    if (!(cfg.kappa > 0.0) || !finite(cfg.kappa)) {
        throw ConfigError("kappa must be positive");
    }
    if (!(cfg.target_r >= 0.0) || !finite(cfg.target_r)) {
        throw ConfigError("target_r must be non-negative");
    }
    if (!(cfg.block_efficiency > 0.0 && cfg.block_efficiency <= 1.0)) {
        throw ConfigError("block_efficiency must lie in (0, 1]");
    }
    const std::size_t taps = cfg.effective_wireless_taps();
    if (taps > cfg.n_cp + 1) {
        throw ConfigError("wireless delay spread exceeds the cyclic prefix");
    }
    if (taps > cfg.n) {
        throw ConfigError("wireless delay spread exceeds the DFT window");
    }
    validate_scheme(cfg.scheme, cfg.eve_mode);
}

PlcProfile plc_profile(const ScenarioConfig& cfg)
{
    PlcProfile profile = default_plc_profile(cfg.n);
    PlcSource* slots[3] = {&profile.alice_bob, &profile.alice_eve, &profile.bob_eve};
    for (std::size_t i = 0; i < 3; ++i) {
        if (cfg.plc_files[i]) {
            *slots[i] = PlcChannelFile{*cfg.plc_files[i], cfg.n};
        }
    }
    return profile;
}

ChannelModel make_channel_model(const ScenarioConfig& cfg)
{
    validate(cfg);
    return ChannelModel(cfg.n, plc_profile(cfg), uniform_tap_profile(cfg.effective_wireless_taps()));
}

NoiseProfile make_noise_profile(const ScenarioConfig& cfg)
{
    return NoiseProfile(cfg.n, cfg.kappa);
}

ChannelRealization realize(const ScenarioConfig& cfg, RandomStream& rng)
{
    return make_channel_model(cfg).realize(rng);
}

double trial_isr(Scheme scheme, const ScenarioConfig& cfg, const ChannelRealization& chan,
                 const NoiseProfile& noise)
{
    validate_scheme(scheme, cfg.eve_mode);
    TrialInputs in = prepare(chan, noise);
    return scheme_isr(scheme, cfg, chan, noise, in);
}

ThroughputRecord estimate_throughput(const ScenarioConfig& cfg)
{
    const Scheme scheme = cfg.scheme;
    return estimate_throughput(cfg, std::span<const Scheme>(&scheme, 1)).front();
}

std::vector<ThroughputRecord> estimate_throughput(const ScenarioConfig& cfg,
                                                  std::span<const Scheme> schemes)
{
    validate(cfg);
    for (Scheme s : schemes) {
        validate_scheme(s, cfg.eve_mode);
    }
    const ChannelModel model = make_channel_model(cfg);
    const NoiseProfile noise = make_noise_profile(cfg);
    const double threshold = cfg.target_bits_per_block();
    const unsigned workers = worker_count(cfg);

    // Trials [begin, end) per worker; a trial's randomness depends only on (seed, index).
    std::vector<std::vector<std::size_t>> counts(workers, std::vector<std::size_t>(schemes.size(), 0));
    auto run = [&](unsigned w) {
        const std::size_t begin = cfg.trials * w / workers;
        const std::size_t end = cfg.trials * (w + 1) / workers;
        for (std::size_t t = begin; t < end; ++t) {
            RandomStream rng = make_stream(cfg.seed, {t});
            const ChannelRealization chan = model.realize(rng);
            TrialInputs in = prepare(chan, noise);
            for (std::size_t s = 0; s < schemes.size(); ++s) {
                if (scheme_isr(schemes[s], cfg, chan, noise, in) >= threshold) {
                    ++counts[w][s];
                }
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    std::vector<ThroughputRecord> out;
    out.reserve(schemes.size());
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        std::size_t total = 0;
        for (const auto& c : counts) {
            total += c[s];
        }
        out.push_back(make_record(cfg, schemes[s], total, cfg.trials));
    }
    return out;
}

ThroughputRecord evaluate_over(const ScenarioConfig& cfg,
                               std::span<const ChannelRealization> realizations)
{
    validate(cfg);
    if (realizations.empty()) {
        throw ConfigError("evaluate_over needs at least one realization");
    }
    const NoiseProfile noise = make_noise_profile(cfg);
    const double threshold = cfg.target_bits_per_block();
    std::size_t successes = 0;
    for (const ChannelRealization& chan : realizations) {
        if (trial_isr(cfg.scheme, cfg, chan, noise) >= threshold) {
            ++successes;
        }
    }
    return make_record(cfg, cfg.scheme, successes, realizations.size());
}

std::string_view to_string(SweepParam p) noexcept
{
    switch (p) {
    case SweepParam::GammaADb: return "gamma_a_db";
    case SweepParam::GammaBDb: return "gamma_b_db";
    case SweepParam::Theta: return "theta";
    case SweepParam::TargetR: return "target_r";
    }
    return "?";
}

SweepParam parse_sweep_param(std::string_view name)
{
    for (SweepParam p : {SweepParam::GammaADb, SweepParam::GammaBDb, SweepParam::Theta, SweepParam::TargetR}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw ConfigError("unknown sweep parameter '" + std::string(name) +
                      "' (expected gamma_a_db, gamma_b_db, theta, target_r)");
}

ScenarioConfig with_param(ScenarioConfig base, SweepParam param, double value)
{
    switch (param) {
    case SweepParam::GammaADb: base.gamma_a_db = value; break;
    case SweepParam::GammaBDb: base.gamma_b_db = value; break;
    case SweepParam::Theta: base.theta = value; break;
    case SweepParam::TargetR: base.target_r = value; break;
    }
    return base;
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) noexcept
{
    return seed ^ splitmix64(static_cast<std::uint64_t>(index));
}

std::vector<ThroughputRecord> sweep(const ScenarioConfig& base, SweepParam param,
                                    std::span<const double> values, std::span<const Scheme> schemes)
{
    if (schemes.empty()) {
        throw ConfigError("sweep needs at least one scheme");
    }
    std::vector<ThroughputRecord> out;
    out.reserve(values.size() * schemes.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ScenarioConfig cfg = with_param(base, param, values[i]);
        cfg.seed = point_seed(base.seed, i);
        for (ThroughputRecord& rec : estimate_throughput(cfg, schemes)) {
            rec.param = std::string(to_string(param));
            rec.value = values[i];
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::string format_results_csv(std::span<const ThroughputRecord> records)
{
    std::string out = "scheme,eve_mode,param,value,mu,outage_prob,trials,ci\n";
    char buf[256];
    for (const ThroughputRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.9g,%.9g,%.9g,%zu,%.9g\n",
                      std::string(to_string(r.scheme)).c_str(), std::string(to_string(r.eve_mode)).c_str(),
                      r.param.c_str(), r.value, r.mu, r.outage_prob, r.trials, r.ci);
        out += buf;
    }
    return out;
}

void write_results_csv(const std::filesystem::path& path, std::span<const ThroughputRecord> records)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << format_results_csv(records);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

} // namespace hybridsec
