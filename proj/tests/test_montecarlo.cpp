#include "hybridsec/error.hpp"
#include "hybridsec/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

using namespace hybridsec;

namespace {

ScenarioConfig small_config()
{
    ScenarioConfig cfg;
    cfg.trials = 400;
    cfg.seed = 11;
    cfg.workers = 1;
    return cfg;
}

} // namespace

TEST_CASE("names round-trip")
{
    for (Scheme s : {Scheme::Tsc, Scheme::AnSharing, Scheme::PlcOnly, Scheme::WirelessOnly}) {
        CHECK(parse_scheme(to_string(s)) == s);
    }
    for (EveMode m : {EveMode::SinglePlc, EveMode::SingleWireless, EveMode::TwoLink}) {
        CHECK(parse_eve_mode(to_string(m)) == m);
    }
    for (SweepParam p : {SweepParam::GammaADb, SweepParam::GammaBDb, SweepParam::Theta, SweepParam::TargetR}) {
        CHECK(parse_sweep_param(to_string(p)) == p);
    }
    CHECK_THROWS_AS(parse_scheme("mimo"), ConfigError);
    CHECK_THROWS_AS(parse_eve_mode("three-link"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_param("n"), ConfigError);
}

TEST_CASE("validation")
{
    ScenarioConfig cfg = small_config();
    CHECK_NOTHROW(validate(cfg));
    cfg.theta = 1.5;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_config();
    cfg.target_r = -1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = small_config();
    cfg.wireless_taps = cfg.n + 1;
    CHECK_THROWS_AS(validate(cfg), ConfigError);

    CHECK_THROWS_AS(validate_scheme(Scheme::WirelessOnly, EveMode::SinglePlc), ConfigError);
    CHECK_THROWS_AS(validate_scheme(Scheme::PlcOnly, EveMode::SingleWireless), ConfigError);
    CHECK_NOTHROW(validate_scheme(Scheme::PlcOnly, EveMode::SinglePlc));
    CHECK_NOTHROW(validate_scheme(Scheme::Tsc, EveMode::SingleWireless));
}

TEST_CASE("input SNRs map to total powers")
{
    ScenarioConfig cfg;
    cfg.gamma_a_db = 10.0;
    cfg.gamma_b_db = 0.0;
    cfg.kappa = 2.0;
    CHECK(cfg.p_a() == doctest::Approx(10.0 * 64 * 2.0).epsilon(1e-14));
    CHECK(cfg.p_b() == doctest::Approx(64 * 2.0).epsilon(1e-14));
    CHECK(cfg.target_bits_per_block() == 80.0);
    CHECK(cfg.effective_wireless_taps() == 17);
}

TEST_CASE("zero target rate gives zero throughput")
{
    ScenarioConfig cfg = small_config();
    cfg.target_r = 0.0;
    const ThroughputRecord r = estimate_throughput(cfg);
    CHECK(r.mu == 0.0);
    CHECK(r.outage_prob == 0.0);
}

TEST_CASE("dead channels never deliver")
{
    ScenarioConfig cfg = small_config();
    const FreqResponse dead{std::vector<Complex>(cfg.n, Complex(0.0, 0.0))};
    ChannelRealization chan;
    for (LinkId l : kLinks) {
        for (Medium m : kMedia) chan.set(l, m, dead);
    }
    const std::vector<ChannelRealization> set(5, chan);
    for (Scheme s : {Scheme::Tsc, Scheme::AnSharing, Scheme::PlcOnly, Scheme::WirelessOnly}) {
        cfg.scheme = s;
        const ThroughputRecord r = evaluate_over(cfg, set);
        CHECK(r.mu == 0.0);
        CHECK(r.outage_prob == 1.0);
    }
}

TEST_CASE("evaluate_over counts successes exactly")
{
    ScenarioConfig cfg = small_config();
    const NoiseProfile noise = make_noise_profile(cfg);
    std::vector<ChannelRealization> set;
    std::size_t expected = 0;
    for (std::uint64_t t = 0; t < 60; ++t) {
        RandomStream rng = make_stream(5, {t});
        set.push_back(realize(cfg, rng));
        if (trial_isr(cfg.scheme, cfg, set.back(), noise) >= cfg.target_bits_per_block()) ++expected;
    }
    const ThroughputRecord r = evaluate_over(cfg, set);
    CHECK(r.successes == expected);
    CHECK(r.trials == 60);
    CHECK(r.mu == cfg.target_r * static_cast<double>(expected) / 60.0);
    CHECK_THROWS_AS(evaluate_over(cfg, std::span<const ChannelRealization>{}), ConfigError);
}

TEST_CASE("AN-sharing with theta = 1 reproduces TSC at the same seed")
{
    ScenarioConfig cfg = small_config();
    cfg.theta = 1.0;
    for (EveMode mode : {EveMode::TwoLink, EveMode::SinglePlc, EveMode::SingleWireless}) {
        cfg.eve_mode = mode;
        const std::vector<Scheme> both{Scheme::Tsc, Scheme::AnSharing};
        const std::vector<ThroughputRecord> r = estimate_throughput(cfg, both);
        CHECK(r[0].successes == r[1].successes);
        CHECK(r[0].mu == r[1].mu);
    }
}

TEST_CASE("TSC does not depend on theta")
{
    ScenarioConfig cfg = small_config();
    cfg.scheme = Scheme::Tsc;
    cfg.theta = 0.2;
    const ThroughputRecord a = estimate_throughput(cfg);
    cfg.theta = 0.9;
    CHECK(estimate_throughput(cfg) == a);
}

TEST_CASE("results do not depend on the worker count")
{
    ScenarioConfig cfg = small_config();
    cfg.trials = 997;
    const std::vector<Scheme> all{Scheme::Tsc, Scheme::AnSharing, Scheme::PlcOnly, Scheme::WirelessOnly};
    cfg.workers = 1;
    const std::vector<ThroughputRecord> one = estimate_throughput(cfg, all);
    for (unsigned w : {2u, 3u, 8u}) {
        cfg.workers = w;
        CHECK(estimate_throughput(cfg, all) == one);
    }
}

TEST_CASE("record bookkeeping")
{
    ScenarioConfig cfg = small_config();
    cfg.gamma_a_db = 6.0;
    cfg.scheme = Scheme::Tsc;
    cfg.target_r = 0.5;
    const ThroughputRecord r = estimate_throughput(cfg);
    const double p = static_cast<double>(r.successes) / static_cast<double>(r.trials);
    CHECK(r.trials == cfg.trials);
    CHECK(r.outage_prob == doctest::Approx(1.0 - p).epsilon(1e-15));
    CHECK(r.mu == doctest::Approx(cfg.target_r * (1.0 - r.outage_prob)).epsilon(1e-12));
    CHECK(r.ci == doctest::Approx(1.96 * std::sqrt(p * (1.0 - p) / cfg.trials)).epsilon(1e-12));
    CHECK(r.ci <= 1.96 * 0.5 / std::sqrt(static_cast<double>(cfg.trials)));

    cfg.block_efficiency = 0.75;
    CHECK(estimate_throughput(cfg).mu == doctest::Approx(0.75 * r.mu).epsilon(1e-15));
}

TEST_CASE("sweep")
{
    ScenarioConfig cfg = small_config();
    const std::vector<Scheme> schemes{Scheme::Tsc, Scheme::AnSharing};
    const std::vector<double> one{14.0};
    const std::vector<ThroughputRecord> s = sweep(cfg, SweepParam::GammaADb, one, schemes);
    REQUIRE(s.size() == 2);
    CHECK(s[0].param == "gamma_a_db");
    CHECK(s[0].value == 14.0);

    ScenarioConfig direct = with_param(cfg, SweepParam::GammaADb, 14.0);
    direct.seed = point_seed(cfg.seed, 0);
    const std::vector<ThroughputRecord> d = estimate_throughput(direct, schemes);
    CHECK(s[0].successes == d[0].successes);
    CHECK(s[1].successes == d[1].successes);

    const std::vector<double> values{0.0, 0.6, 1.0};
    const std::vector<ThroughputRecord> t = sweep(cfg, SweepParam::Theta, values, schemes);
    REQUIRE(t.size() == 6);
    CHECK(t[0].scheme == Scheme::Tsc);
    CHECK(t[1].scheme == Scheme::AnSharing);
    CHECK(t[2].value == 0.6);
    CHECK(t[1].mu == 0.0);  // theta = 0 carries no data

    CHECK(with_param(cfg, SweepParam::TargetR, 2.5).target_r == 2.5);
    CHECK(with_param(cfg, SweepParam::GammaBDb, 3.0).gamma_b_db == 3.0);
    CHECK(point_seed(1, 0) != point_seed(1, 1));
}

TEST_CASE("CSV format")
{
    ThroughputRecord r;
    r.scheme = Scheme::AnSharing;
    r.eve_mode = EveMode::SinglePlc;
    r.param = "theta";
    r.value = 0.1;
    r.mu = 2.0 / 3.0;
    r.outage_prob = 1.0 / 3.0;
    r.trials = 300;
    r.ci = 0.05;
    const std::vector<ThroughputRecord> recs{r};
    const std::string csv = format_results_csv(recs);
    CHECK(csv ==
          "scheme,eve_mode,param,value,mu,outage_prob,trials,ci\n"
          "an-sharing,single-plc,theta,0.1,0.666666667,0.333333333,300,0.05\n");
}
