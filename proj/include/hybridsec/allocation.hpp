#pragma once

#include "hybridsec/channel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hybridsec {

/// Channel-to-noise ratio |H_k|^2 / kappa_k per sub-channel.
struct CnrVector {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }
};

/// Per-sub-channel media ranked by Alice-Bob CNR.
struct MediumSelection {
    std::vector<Medium> higher;
    std::vector<Medium> lower;

    std::size_t size() const noexcept { return higher.size(); }
};

/// Sub-channels switched on by water-filling, each given the same power.
struct ActiveSet {
    std::vector<std::size_t> indices;  ///< ascending
    std::vector<double> power;         ///< p_{A,k}, length N, zero off the set
    double water_level = 0.0;          ///< mu of the water-filling solution
    bool degenerate = false;           ///< no sub-channel had a positive CNR

    std::size_t size() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }
    bool contains(std::size_t k) const noexcept { return power[k] > 0.0; }
    /// Equal per-channel share of `total` over the set, e.g. P_B/|A|.
    double share(double total) const noexcept
    {
        return indices.empty() ? 0.0 : total / static_cast<double>(indices.size());
    }
};

CnrVector compute_cnr(const FreqResponse& response, std::span<const double> kappa);

/// higher[k] maximizes the CNR; equal CNRs select PLC.
MediumSelection select_medium(const CnrVector& cnr_plc, const CnrVector& cnr_wireless);

/// Element-wise CNR of the selected (higher) medium.
CnrVector best_cnr(const CnrVector& cnr_plc, const CnrVector& cnr_wireless);

/// Water level mu solving sum_{k active} (mu - 1/cnr_k) = total_power with the
/// sorted-threshold method. Returns 0 when no CNR is positive.
double water_level(const CnrVector& cnr, double total_power);

/// Active set {k : mu > 1/cnr_k} from water-filling, then equal power
/// total_power/|A| on that set. All-zero CNRs give an empty, degenerate set.
ActiveSet waterfill_active_set(const CnrVector& cnr, double total_power);

} // namespace hybridsec
