#include "uavsim/placement.hpp"

#include <algorithm>
#include <cmath>

#include "uavsim/error.hpp"

namespace uavsim {

CandidateGrid backhaul_grid(const Scene& scene, const Transmitter& donor,
                            const std::vector<Band>& bands,
                            const PlacementConfig& cfg,
                            const RelayConfig& relay_cfg,
                            const RadioConfig& radio_cfg) {
    if (!(cfg.resolution > 0))
        throw InvalidParameterError("backhaul_grid: resolution must be > 0");
    auto band_it = std::find_if(bands.begin(), bands.end(), [&](const Band& b) {
        return b.id == relay_cfg.donor_band;
    });
    if (band_it == bands.end())
        throw InvalidParameterError("backhaul_grid: unknown donor band");

    const Box3& wb = scene.world_bounds();
    CandidateGrid grid;
    grid.resolution = cfg.resolution;
    grid.altitudes = cfg.altitudes;
    std::vector<Transmitter> donor_only = {donor};
    for (double alt : cfg.altitudes) {
        for (double y = wb.lo.y; y <= wb.hi.y + 1e-9; y += cfg.resolution) {
            for (double x = wb.lo.x; x <= wb.hi.x + 1e-9; x += cfg.resolution) {
                Vec3 p{x, y, alt};
                if (scene.inside_building(p)) continue;
                auto r = sinr_at(p, donor_only, *band_it, scene, radio_cfg);
                grid.candidates.push_back({p, r.sinr_db});
            }
        }
    }
    return grid;
}

namespace {

double score_placement(const Scene& scene, const Transmitter& donor,
                       const std::vector<Transmitter>& uavs, IabMode mode,
                       const std::vector<Band>& bands,
                       const PlacementConfig& cfg,
                       const RelayConfig& relay_cfg,
                       const RadioConfig& radio_cfg) {
    auto relayed = apply_relaying(donor, uavs, mode, scene, bands, relay_cfg,
                                  radio_cfg);
    auto map = coverage_map(scene, relayed.txs, bands, cfg.scoring_altitude,
                            cfg.scoring_resolution, radio_cfg);
    return coverage_fraction_union(map, radio_cfg.coverage_threshold_db);
}

Transmitter make_uav(const Transmitter& tmpl, const Vec3& pos, int index,
                     IabMode mode) {
    Transmitter u = tmpl;
    u.id = tmpl.id + std::to_string(index + 1);
    u.position = pos;
    u.role = TxRole::Uav;
    u.relay_mode = mode == IabMode::ObAf ? RelayMode::Af : RelayMode::Df;
    u.active = true;
    return u;
}

}  // namespace

PlacementResult greedy_place(const Scene& scene, const Transmitter& donor,
                             const Transmitter& uav_template, int n_uavs,
                             IabMode mode, const CandidateGrid& grid,
                             const std::vector<Band>& bands,
                             const PlacementConfig& cfg,
                             const RelayConfig& relay_cfg,
                             const RadioConfig& radio_cfg) {
    if (n_uavs < 0)
        throw InvalidParameterError("greedy_place: n_uavs must be >= 0");
    if (grid.candidates.empty())
        throw InvalidParameterError("greedy_place: empty candidate grid");

    PlacementResult result;
    result.baseline_coverage = score_placement(scene, donor, {}, mode, bands,
                                               cfg, relay_cfg, radio_cfg);

    std::vector<Transmitter> chosen;
    std::vector<std::size_t> chosen_idx;
    for (int round = 0; round < n_uavs; ++round) {
        int best = -1;
        double best_score = -1;
        for (std::size_t ci = 0; ci < grid.candidates.size(); ++ci) {
            const Candidate& cand = grid.candidates[ci];
            if (std::find(chosen_idx.begin(), chosen_idx.end(), ci) !=
                chosen_idx.end())
                continue;
            double g = cand.gamma_bh_db;
            if (!(g == g)) continue;  // gap: no backhaul at all
            if (mode == IabMode::IbDf && g < relay_cfg.df.threshold_db) continue;

            std::vector<Transmitter> trial = chosen;
            trial.push_back(make_uav(uav_template, cand.position,
                                     static_cast<int>(trial.size()), mode));
            double s = score_placement(scene, donor, trial, mode, bands, cfg,
                                       relay_cfg, radio_cfg);
            if (s > best_score) {
                best_score = s;
                best = static_cast<int>(ci);
            }
        }
        if (best < 0) {
            throw InfeasibleError(
                mode == IabMode::IbDf
                    ? "greedy_place: no candidate clears the backhaul SINR threshold"
                    : "greedy_place: no candidate has a backhaul path");
        }
        chosen_idx.push_back(static_cast<std::size_t>(best));
        chosen.push_back(make_uav(uav_template, grid.candidates[best].position,
                                  static_cast<int>(chosen.size()), mode));
        result.chosen_gamma_bh_db.push_back(grid.candidates[best].gamma_bh_db);
        result.objective_trace.push_back(best_score);
    }
    result.chosen = std::move(chosen);
    return result;
}

PlacementEvaluation evaluate_placement(const Scene& scene,
                                       const Transmitter& donor,
                                       std::vector<Transmitter> uavs,
                                       IabMode mode,
                                       const std::vector<Band>& bands,
                                       double user_altitude,
                                       double user_resolution,
                                       const RelayConfig& relay_cfg,
                                       const RadioConfig& radio_cfg) {
    auto relayed = apply_relaying(donor, std::move(uavs), mode, scene, bands,
                                  relay_cfg, radio_cfg);
    PlacementEvaluation ev;
    ev.ground_map = coverage_map(scene, relayed.txs, bands, user_altitude,
                                 user_resolution, radio_cfg);
    ev.coverage =
        coverage_fraction_union(ev.ground_map, radio_cfg.coverage_threshold_db);
    ev.backhaul = std::move(relayed.backhaul);
    ev.txs = std::move(relayed.txs);
    return ev;
}

}  // namespace uavsim
