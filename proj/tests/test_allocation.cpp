#include "hybridsec/allocation.hpp"
#include "hybridsec/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace hybridsec;

namespace {

CnrVector random_cnr(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::exponential_distribution<double> e(1.0);
    CnrVector c;
    c.values.resize(n);
    for (double& v : c.values) {
        // Mixture of scales plus the occasional dead sub-channel.
        v = u(rng) < 0.05 ? 0.0 : e(rng) * std::pow(10.0, -3.0 + 5.0 * u(rng));
    }
    return c;
}

} // namespace

TEST_CASE("compute_cnr")
{
    const FreqResponse ones{std::vector<Complex>(3, Complex(1.0, 0.0))};
    const std::vector<double> unit(3, 1.0);
    for (double v : compute_cnr(ones, unit).values) {
        CHECK(v == 1.0);
    }

    const FreqResponse r{{Complex(2.0, 0.0), Complex(0.0, 0.0), Complex(3.0, 4.0)}};
    const std::vector<double> kappa{2.0, 1.0, 5.0};
    const CnrVector c = compute_cnr(r, kappa);
    CHECK(c[0] == 2.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == doctest::Approx(5.0));

    const std::vector<double> bad{1.0, 0.0, 1.0};
    CHECK_THROWS_AS(compute_cnr(r, bad), ConfigError);
}

TEST_CASE("select_medium picks the stronger medium, ties go to PLC")
{
    const MediumSelection sel = select_medium(CnrVector{{2.0, 1.0, 0.5}}, CnrVector{{1.0, 3.0, 0.5}});
    CHECK(sel.higher[0] == Medium::Plc);
    CHECK(sel.higher[1] == Medium::Wireless);
    CHECK(sel.higher[2] == Medium::Plc);
    for (std::size_t k = 0; k < sel.size(); ++k) {
        CHECK(sel.higher[k] != sel.lower[k]);
    }
    CHECK_THROWS_AS(select_medium(CnrVector{{1.0}}, CnrVector{{1.0, 2.0}}), ConfigError);
}

TEST_CASE("select_medium is invariant under a common positive scaling")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> scale(-6.0, 6.0);
    for (int t = 0; t < 200; ++t) {
        const CnrVector p = random_cnr(rng, 16);
        const CnrVector w = random_cnr(rng, 16);
        const double s = std::pow(2.0, std::round(scale(rng)));  // power of two keeps ties exact
        CnrVector ps = p;
        CnrVector ws = w;
        for (double& v : ps.values) v *= s;
        for (double& v : ws.values) v *= s;
        CHECK(select_medium(p, w).higher == select_medium(ps, ws).higher);
    }
}

TEST_CASE("waterfill with equal CNRs activates everything")
{
    const CnrVector c{std::vector<double>(8, 4.0)};
    const ActiveSet a = waterfill_active_set(c, 2.0);
    CHECK(a.size() == 8);
    for (double p : a.power) {
        CHECK(p == 0.25);
    }
    CHECK_FALSE(a.degenerate);
}

TEST_CASE("waterfill two-channel example")
{
    const CnrVector c{{10.0, 0.001}};
    const ActiveSet a = waterfill_active_set(c, 0.2);
    REQUIRE(a.size() == 1);
    CHECK(a.indices[0] == 0);
    CHECK(a.power[0] == 0.2);
    CHECK(a.power[1] == 0.0);
    // mu - 1/10 = 0.2 on the single active channel, far below 1/0.001.
    const double oracle_mu = oracle::bisect_water_level(c.values, 0.2);
    CHECK(oracle_mu == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(a.water_level == doctest::Approx(oracle_mu).epsilon(1e-12));
}

TEST_CASE("waterfill degenerate inputs")
{
    const ActiveSet a = waterfill_active_set(CnrVector{std::vector<double>(4, 0.0)}, 1.0);
    CHECK(a.empty());
    CHECK(a.degenerate);
    CHECK(std::accumulate(a.power.begin(), a.power.end(), 0.0) == 0.0);
    CHECK_THROWS_AS(waterfill_active_set(CnrVector{{1.0}}, 0.0), ConfigError);
    CHECK_THROWS_AS(waterfill_active_set(CnrVector{{1.0}}, -1.0), ConfigError);
}

TEST_CASE("waterfill KKT conditions, power identity and oracle agreement")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(u(rng) * 64);
        const CnrVector c = random_cnr(rng, n);
        const double power = std::pow(10.0, -2.0 + 5.0 * u(rng));
        const ActiveSet a = waterfill_active_set(c, power);
        if (a.empty()) {
            CHECK(std::all_of(c.values.begin(), c.values.end(), [](double v) { return v == 0.0; }));
            continue;
        }
        const double mu = a.water_level;
        for (std::size_t k = 0; k < n; ++k) {
            if (a.contains(k)) {
                CHECK(mu > 1.0 / c[k]);
            } else {
                CHECK((c[k] == 0.0 || mu <= 1.0 / c[k]));
            }
        }
        const double total = std::accumulate(a.power.begin(), a.power.end(), 0.0);
        CHECK(std::abs(total - power) <= 1e-12 * power);
        const double oracle_mu = oracle::bisect_water_level(c.values, power);
        CHECK(std::abs(mu - oracle_mu) <= 1e-12 * oracle_mu);
    }
}

TEST_CASE("waterfill active set equals the KKT subset found by enumeration")
{
    std::mt19937_64 rng(123);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 10);
        CnrVector c = random_cnr(rng, n);
        const double power = std::pow(10.0, -2.0 + 4.0 * std::uniform_real_distribution<double>(0, 1)(rng));
        CHECK(waterfill_active_set(c, power).indices == oracle::kkt_active_set(c.values, power));
    }
}

TEST_CASE("waterfill active set grows monotonically with power")
{
    std::mt19937_64 rng(321);
    for (int t = 0; t < 200; ++t) {
        const CnrVector c = random_cnr(rng, 32);
        std::vector<std::size_t> previous;
        for (double db = -20.0; db <= 40.0; db += 2.5) {
            const ActiveSet a = waterfill_active_set(c, std::pow(10.0, db / 10.0));
            CHECK(std::includes(a.indices.begin(), a.indices.end(), previous.begin(), previous.end()));
            previous = a.indices;
        }
    }
}
