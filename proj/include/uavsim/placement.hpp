#ifndef UAVSIM_PLACEMENT_HPP
#define UAVSIM_PLACEMENT_HPP

#include <string>
#include <vector>

#include "uavsim/relay.hpp"

namespace uavsim {

struct Candidate {
    Vec3 position;
    double gamma_bh_db = kNoValue;  // NaN = gap
};

// Regular grid of potential UAV positions at one or more altitudes, each with
// its backhaul SINR from the donor.
struct CandidateGrid {
    double resolution = 0;
    std::vector<double> altitudes;
    std::vector<Candidate> candidates;
};

struct PlacementConfig {
    std::vector<double> altitudes = {200.0};
    double resolution = 200.0;
    int n_uavs = 2;
    double uav_max_power_w = 5.0;
    // Ground grid used when scoring candidate coverage; usually the user
    // grid, coarser for large searches.
    double scoring_resolution = 10.0;
    double scoring_altitude = 1.5;
};

struct PlacementResult {
    std::vector<Transmitter> chosen;         // configured UAV transmitters
    std::vector<double> objective_trace;     // coverage after each placement
    double baseline_coverage = 0;
    std::vector<double> chosen_gamma_bh_db;
};

// Backhaul SINR per candidate position (donor band, single-transmitter link).
// Candidates inside buildings are dropped.
CandidateGrid backhaul_grid(const Scene& scene, const Transmitter& donor,
                            const std::vector<Band>& bands,
                            const PlacementConfig& cfg,
                            const RelayConfig& relay_cfg,
                            const RadioConfig& radio_cfg);

// Greedy sequential placement: each round provisionally activates every
// feasible candidate together with the UAVs already chosen, scores the
// resulting ground coverage fraction, and keeps the best (ties: lowest grid
// index). DF feasibility requires the backhaul SINR to clear the threshold;
// AF only requires a non-gap backhaul.
PlacementResult greedy_place(const Scene& scene, const Transmitter& donor,
                             const Transmitter& uav_template, int n_uavs,
                             IabMode mode, const CandidateGrid& grid,
                             const std::vector<Band>& bands,
                             const PlacementConfig& cfg,
                             const RelayConfig& relay_cfg,
                             const RadioConfig& radio_cfg);

struct PlacementEvaluation {
    CoverageMap ground_map;
    double coverage = 0;
    std::vector<BackhaulReport> backhaul;
    std::vector<Transmitter> txs;
};

// Full pipeline for a fixed placement: relaying, ground map at the user grid,
// coverage fraction (union of bands in ob-af, donor band in ib-df).
PlacementEvaluation evaluate_placement(const Scene& scene,
                                       const Transmitter& donor,
                                       std::vector<Transmitter> uavs,
                                       IabMode mode,
                                       const std::vector<Band>& bands,
                                       double user_altitude,
                                       double user_resolution,
                                       const RelayConfig& relay_cfg,
                                       const RadioConfig& radio_cfg);

}  // namespace uavsim

#endif
