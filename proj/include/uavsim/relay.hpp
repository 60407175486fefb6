#ifndef UAVSIM_RELAY_HPP
#define UAVSIM_RELAY_HPP

#include <utility>
#include <vector>

#include "uavsim/radio.hpp"

namespace uavsim {

enum class IabMode { ObAf, IbDf };

struct AfConfig {
    double p_max_w = 5.0;
    double gamma_u_max_db = 50.0;  // normalization, in dB
};

struct DfConfig {
    double threshold_db = 15.0;
};

struct RelayConfig {
    IabMode mode = IabMode::ObAf;
    AfConfig af;
    DfConfig df;
    std::string donor_band = "f1";
    std::string access_band = "f2";  // used in ob-af; ib-df reuses donor_band
};

struct BackhaulReport {
    std::string uav_id;
    Vec3 position;
    double gamma_bh_db = kNoValue;  // NaN = gap
};

// Adaptive AF power: p_max * (gamma_bh / gamma_u_max) with both SINRs taken
// as dB values, clamped to [0, p_max]. Non-positive backhaul SINR idles the
// UAV.
double af_tx_power_w(double gamma_bh_db, const AfConfig& cfg);

// One (sinr_db, tx_power_dbm) row per distinct non-gap SINR value of the
// backhaul map, sorted ascending.
std::vector<std::pair<double, double>> build_power_table(
    const CoverageMap& backhaul_map, const std::string& band_id,
    const AfConfig& cfg);

// DF gate: forward at full power iff the backhaul SINR clears the threshold
// (inclusive); gap or below => idle.
bool df_active(double gamma_bh_db, const DfConfig& cfg);

struct RelayingResult {
    std::vector<Transmitter> txs;  // donor first, then UAVs, updated
    std::vector<BackhaulReport> backhaul;
};

// Computes each UAV's backhaul SINR at its position on the donor band, then
// sets its access band, transmit power and active flag per the mode. In ib-df
// the backhaul SINR sees other in-band UAVs (assumed transmitting at full
// power) as interference.
RelayingResult apply_relaying(const Transmitter& donor,
                              std::vector<Transmitter> uavs, IabMode mode,
                              const Scene& scene, const std::vector<Band>& bands,
                              const RelayConfig& relay_cfg,
                              const RadioConfig& radio_cfg);

}  // namespace uavsim

#endif
