#include "uavsim/relay.hpp"

#include <algorithm>
#include <cmath>

#include "uavsim/error.hpp"

namespace uavsim {

double af_tx_power_w(double gamma_bh_db, const AfConfig& cfg) {
    if (!(cfg.p_max_w > 0) || !(cfg.gamma_u_max_db > 0))
        throw InvalidParameterError("af config: p_max and gamma_u_max must be > 0");
    if (!(gamma_bh_db == gamma_bh_db) || gamma_bh_db <= 0) return 0.0;
    double p = cfg.p_max_w * (gamma_bh_db / cfg.gamma_u_max_db);
    return std::min(p, cfg.p_max_w);
}

std::vector<std::pair<double, double>> build_power_table(
    const CoverageMap& backhaul_map, const std::string& band_id,
    const AfConfig& cfg) {
    int b = backhaul_map.band_index(band_id);
    if (b < 0) throw InvalidParameterError("build_power_table: unknown band");
    std::vector<double> sinrs;
    for (const auto& c : backhaul_map.cells) {
        if (c.in_building) continue;
        double s = c.sinr_db[b];
        if (s == s) sinrs.push_back(s);
    }
    if (sinrs.empty())
        throw InvalidParameterError("build_power_table: backhaul map is all gap");
    std::sort(sinrs.begin(), sinrs.end());
    sinrs.erase(std::unique(sinrs.begin(), sinrs.end()), sinrs.end());
    std::vector<std::pair<double, double>> table;
    table.reserve(sinrs.size());
    for (double s : sinrs) {
        double w = af_tx_power_w(s, cfg);
        table.push_back({s, w > 0 ? watts_to_dbm(w) : kNegInf});
    }
    return table;
}

bool df_active(double gamma_bh_db, const DfConfig& cfg) {
    return gamma_bh_db == gamma_bh_db && gamma_bh_db >= cfg.threshold_db;
}

RelayingResult apply_relaying(const Transmitter& donor,
                              std::vector<Transmitter> uavs, IabMode mode,
                              const Scene& scene, const std::vector<Band>& bands,
                              const RelayConfig& relay_cfg,
                              const RadioConfig& radio_cfg) {
    auto find_band = [&](const std::string& id) -> const Band& {
        for (const auto& b : bands)
            if (b.id == id) return b;
        throw InvalidParameterError("apply_relaying: unknown band '" + id + "'");
    };
    const Band& bh_band = find_band(relay_cfg.donor_band);
    const Band& access_band = find_band(
        mode == IabMode::ObAf ? relay_cfg.access_band : relay_cfg.donor_band);

    RelayMode want = mode == IabMode::ObAf ? RelayMode::Af : RelayMode::Df;
    for (const auto& u : uavs) {
        if (u.relay_mode != want)
            throw InvalidParameterError("apply_relaying: UAV '" + u.id +
                                        "' relay mode does not match the run mode");
        if (scene.inside_building(u.position))
            throw InvalidPositionError("apply_relaying: UAV '" + u.id +
                                       "' is inside a building");
        if (!scene.world_bounds().contains(u.position))
            throw InvalidPositionError("apply_relaying: UAV '" + u.id +
                                       "' is outside the world bounds");
    }

    RelayingResult result;
    result.txs.push_back(donor);

    for (std::size_t i = 0; i < uavs.size(); ++i) {
        // Backhaul SINR at the UAV. In ib-df the other UAVs share the donor
        // band and are counted as interferers at full power.
        std::vector<Transmitter> bh_txs;
        bh_txs.push_back(donor);
        if (mode == IabMode::IbDf) {
            for (std::size_t j = 0; j < uavs.size(); ++j) {
                if (j == i) continue;
                Transmitter other = uavs[j];
                other.band_id = bh_band.id;
                other.tx_power_dbm = watts_to_dbm(other.max_power_w);
                other.active = true;
                bh_txs.push_back(other);
            }
        }
        auto bh = sinr_at(uavs[i].position, bh_txs, bh_band, scene, radio_cfg);

        BackhaulReport report;
        report.uav_id = uavs[i].id;
        report.position = uavs[i].position;
        report.gamma_bh_db = bh.sinr_db;
        result.backhaul.push_back(report);

        Transmitter& u = uavs[i];
        u.band_id = access_band.id;
        if (mode == IabMode::ObAf) {
            double p_w =
                std::min(af_tx_power_w(bh.sinr_db, relay_cfg.af), u.max_power_w);
            u.active = p_w > 0;
            u.tx_power_dbm = u.active ? watts_to_dbm(p_w) : kNegInf;
        } else {
            u.active = df_active(bh.sinr_db, relay_cfg.df);
            u.tx_power_dbm = u.active ? watts_to_dbm(u.max_power_w) : kNegInf;
        }
        result.txs.push_back(u);
    }
    return result;
}

}  // namespace uavsim
