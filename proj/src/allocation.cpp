#include "hybridsec/allocation.hpp"

#include "hybridsec/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hybridsec {

namespace {

struct WaterFill {
    double level = 0.0;
    std::vector<std::size_t> active;
};

WaterFill solve_water_filling(const CnrVector& cnr, double total_power)
{
    std::vector<std::size_t> order;
    order.reserve(cnr.size());
    for (std::size_t k = 0; k < cnr.size(); ++k) {
        if (cnr[k] > 0.0) {
            order.push_back(k);
        }
    }
    if (order.empty()) {
        return {};
    }
    // Strongest first; index breaks ties so the result is a pure function of the input.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cnr[a] != cnr[b] ? cnr[a] > cnr[b] : a < b;
    });

    // Largest m with mu_m > 1/cnr_(m). The condition fails monotonically once it
    // fails, and mu_m <= 1/cnr_(m+1) is equivalent to it failing at m+1.
    double inverse_sum = 0.0;
    double level = 0.0;
    std::size_t count = 0;
    for (std::size_t m = 0; m < order.size(); ++m) {
        const double inv = 1.0 / cnr[order[m]];
        const double candidate = (total_power + inverse_sum + inv) / static_cast<double>(m + 1);
        if (!(candidate > inv)) {
            break;
        }
        inverse_sum += inv;
        level = candidate;
        count = m + 1;
    }
    WaterFill out;
    out.level = level;
    out.active.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(out.active.begin(), out.active.end());
    return out;
}

void check_power(double total_power)
{
    if (!(total_power > 0.0) || !std::isfinite(total_power)) {
        throw ConfigError("total power must be positive and finite");
    }
}

} // namespace

CnrVector compute_cnr(const FreqResponse& response, std::span<const double> kappa)
{
    if (kappa.size() != response.size()) {
        throw ConfigError("noise row length does not match the response");
    }
    CnrVector out;
    out.values.resize(response.size());
    for (std::size_t k = 0; k < response.size(); ++k) {
        if (!(kappa[k] > 0.0)) {
            throw ConfigError("noise power must be strictly positive");
        }
        out.values[k] = std::norm(response[k]) / kappa[k];
    }
    return out;
}

MediumSelection select_medium(const CnrVector& cnr_plc, const CnrVector& cnr_wireless)
{
    if (cnr_plc.size() != cnr_wireless.size()) {
        throw ConfigError("CNR vectors differ in length");
    }
    MediumSelection sel;
    sel.higher.resize(cnr_plc.size());
    sel.lower.resize(cnr_plc.size());
    for (std::size_t k = 0; k < cnr_plc.size(); ++k) {
        const Medium best = cnr_plc[k] >= cnr_wireless[k] ? Medium::Plc : Medium::Wireless;
        sel.higher[k] = best;
        sel.lower[k] = other(best);
    }
    return sel;
}

CnrVector best_cnr(const CnrVector& cnr_plc, const CnrVector& cnr_wireless)
{
    if (cnr_plc.size() != cnr_wireless.size()) {
        throw ConfigError("CNR vectors differ in length");
    }
    CnrVector out;
    out.values.resize(cnr_plc.size());
    for (std::size_t k = 0; k < cnr_plc.size(); ++k) {
        out.values[k] = std::max(cnr_plc[k], cnr_wireless[k]);
    }
    return out;
}

double water_level(const CnrVector& cnr, double total_power)
{
    check_power(total_power);
    return solve_water_filling(cnr, total_power).level;
}

ActiveSet waterfill_active_set(const CnrVector& cnr, double total_power)
{
    check_power(total_power);
    WaterFill wf = solve_water_filling(cnr, total_power);
    ActiveSet set;
    set.power.assign(cnr.size(), 0.0);
    set.water_level = wf.level;
    set.indices = std::move(wf.active);
    set.degenerate = set.indices.empty();
    if (!set.indices.empty()) {
        const double p = total_power / static_cast<double>(set.indices.size());
        for (std::size_t k : set.indices) {
            set.power[k] = p;
        }
    }
    return set;
}

} // namespace hybridsec
