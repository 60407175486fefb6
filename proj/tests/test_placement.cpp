#include <doctest.h>

#include <random>

#include "uavsim/error.hpp"
#include "uavsim/placement.hpp"

using namespace uavsim;

namespace {

std::vector<Band> bands() {
    return {{"f1", 30e9, 100e6}, {"f2", 60e9, 100e6}};
}

Transmitter make_donor(Vec3 pos) {
    Transmitter t;
    t.id = "donor";
    t.position = pos;
    t.role = TxRole::Donor;
    t.band_id = "f1";
    t.max_power_w = 10;
    t.tx_power_dbm = 40.0;
    t.pattern = isotropic_pattern();
    return t;
}

Transmitter uav_template() {
    Transmitter t;
    t.id = "uav";
    t.role = TxRole::Uav;
    t.band_id = "f2";
    t.max_power_w = 5;
    t.tx_power_dbm = watts_to_dbm(5);
    t.pattern = isotropic_pattern();
    return t;
}

Scene small_city(std::uint64_t seed) {
    ManhattanParams p{360, 360, 80, 80, 40, 60, 100, seed};
    return gen_manhattan(p, default_materials());
}

RadioConfig fast_radio() {
    RadioConfig cfg;
    cfg.max_order = 1;
    cfg.threads = 2;
    return cfg;
}

PlacementConfig small_placement() {
    PlacementConfig cfg;
    cfg.altitudes = {150.0};
    cfg.resolution = 120.0;
    cfg.scoring_resolution = 30.0;
    cfg.scoring_altitude = 1.5;
    return cfg;
}

// Independent exhaustive search for the best single UAV position.
std::size_t exhaustive_best(const Scene& scene, const Transmitter& donor,
                            const Transmitter& tmpl, IabMode mode,
                            const CandidateGrid& grid,
                            const PlacementConfig& pcfg,
                            const RelayConfig& rcfg, const RadioConfig& radio) {
    std::size_t best = grid.candidates.size();
    double best_score = -1;
    for (std::size_t i = 0; i < grid.candidates.size(); ++i) {
        double g = grid.candidates[i].gamma_bh_db;
        if (!(g == g)) continue;
        if (mode == IabMode::IbDf && g < rcfg.df.threshold_db) continue;
        Transmitter u = tmpl;
        u.id = "uav1";
        u.position = grid.candidates[i].position;
        u.relay_mode = mode == IabMode::ObAf ? RelayMode::Af : RelayMode::Df;
        auto res = apply_relaying(donor, {u}, mode, scene, bands(), rcfg, radio);
        auto map = coverage_map(scene, res.txs, bands(), pcfg.scoring_altitude,
                                pcfg.scoring_resolution, radio);
        double s = coverage_fraction_union(map, radio.coverage_threshold_db);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("backhaul grid values match pointwise sinr calls") {
    Scene s = small_city(4);
    auto donor = make_donor({0, 0, 25});
    RelayConfig rc;
    auto radio = fast_radio();
    auto pcfg = small_placement();
    auto grid = backhaul_grid(s, donor, bands(), pcfg, rc, radio);
    REQUIRE(!grid.candidates.empty());
    for (const auto& c : grid.candidates) {
        CHECK(!s.inside_building(c.position));
        auto r = sinr_at(c.position, {donor}, bands()[0], s, radio);
        if (r.gap()) {
            CHECK(!(c.gamma_bh_db == c.gamma_bh_db));
        } else {
            CHECK(c.gamma_bh_db == r.sinr_db);  // bitwise
        }
    }
}

TEST_CASE("empty-scene backhaul grid is pure link budget") {
    Scene s({}, default_materials(), {{-200, -200, 0}, {200, 200, 300}});
    auto donor = make_donor({0, 0, 25});
    RelayConfig rc;
    auto radio = fast_radio();
    PlacementConfig pcfg = small_placement();
    pcfg.resolution = 100.0;
    auto grid = backhaul_grid(s, donor, bands(), pcfg, rc, radio);
    double noise = noise_power_dbm(bands()[0], radio.noise_figure_db);
    for (const auto& c : grid.candidates) {
        double d = distance(c.position, donor.position);
        // LOS + single ground bounce exist; the direct ray dominates, so the
        // value is within a fraction of a dB of the pure Friis budget
        double friis = 40.0 - fspl(d, 30e9) - noise;
        CHECK(c.gamma_bh_db >= friis - 1e-9);
        CHECK(c.gamma_bh_db <= friis + 3.2);
    }
}

TEST_CASE("greedy with zero uavs returns the baseline") {
    Scene s = small_city(4);
    auto donor = make_donor({0, 0, 25});
    RelayConfig rc;
    auto radio = fast_radio();
    auto pcfg = small_placement();
    auto grid = backhaul_grid(s, donor, bands(), pcfg, rc, radio);
    auto res = greedy_place(s, donor, uav_template(), 0, IabMode::ObAf, grid,
                            bands(), pcfg, rc, radio);
    CHECK(res.chosen.empty());
    CHECK(res.objective_trace.empty());
    CHECK(res.baseline_coverage > 0.0);
}

TEST_CASE("greedy single uav equals exhaustive search on random scenarios") {
    RelayConfig rc;
    auto radio = fast_radio();
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dx(-120, 120);
    // a handful here; the acceptance suite runs the full 20-scenario sweep
    int runs = 0;
    for (std::uint64_t seed = 1; runs < 5; ++seed) {
        Scene s = small_city(seed);
        Vec3 dpos{dx(rng), dx(rng), 25};
        if (s.inside_building(dpos)) continue;
        auto donor = make_donor(dpos);
        auto pcfg = small_placement();
        auto grid = backhaul_grid(s, donor, bands(), pcfg, rc, radio);
        REQUIRE(grid.candidates.size() <= 40);
        IabMode mode = (seed % 2) ? IabMode::ObAf : IabMode::IbDf;
        std::size_t want = exhaustive_best(s, donor, uav_template(), mode, grid,
                                           pcfg, rc, radio);
        if (want == grid.candidates.size()) continue;  // infeasible draw
        auto res = greedy_place(s, donor, uav_template(), 1, mode, grid,
                                bands(), pcfg, rc, radio);
        REQUIRE(res.chosen.size() == 1);
        CHECK(res.chosen[0].position == grid.candidates[want].position);
        ++runs;
    }
    CHECK(runs == 5);
}

TEST_CASE("greedy trace is non-decreasing and beats the baseline") {
    Scene s = small_city(12);
    auto donor = make_donor({0, 0, 25});
    RelayConfig rc;
    auto radio = fast_radio();
    auto pcfg = small_placement();
    auto grid = backhaul_grid(s, donor, bands(), pcfg, rc, radio);
    auto res = greedy_place(s, donor, uav_template(), 2, IabMode::ObAf, grid,
                            bands(), pcfg, rc, radio);
    REQUIRE(res.objective_trace.size() == 2);
    CHECK(res.objective_trace[0] >= res.baseline_coverage);
    CHECK(res.objective_trace[1] >= res.objective_trace[0]);
    CHECK(res.chosen[0].id != res.chosen[1].id);

    // determinism: identical inputs, identical choices
    auto res2 = greedy_place(s, donor, uav_template(), 2, IabMode::ObAf, grid,
                             bands(), pcfg, rc, radio);
    CHECK(res.chosen[0].position == res2.chosen[0].position);
    CHECK(res.chosen[1].position == res2.chosen[1].position);
}

TEST_CASE("df feasibility respected; infeasible when nothing clears the gate") {
    Scene s = small_city(4);
    auto donor = make_donor({0, 0, 25});
    RelayConfig rc;
    rc.mode = IabMode::IbDf;
    rc.df.threshold_db = 10.0;
    auto radio = fast_radio();
    auto pcfg = small_placement();
    auto grid = backhaul_grid(s, donor, bands(), pcfg, rc, radio);
    auto res = greedy_place(s, donor, uav_template(), 1, IabMode::IbDf, grid,
                            bands(), pcfg, rc, radio);
    REQUIRE(res.chosen_gamma_bh_db.size() == 1);
    CHECK(res.chosen_gamma_bh_db[0] >= rc.df.threshold_db);

    rc.df.threshold_db = 1000.0;  // impossible
    CHECK_THROWS_AS(greedy_place(s, donor, uav_template(), 1, IabMode::IbDf,
                                 grid, bands(), pcfg, rc, radio),
                    InfeasibleError);
}

TEST_CASE("evaluate_placement rejects uavs inside buildings") {
    Scene s = small_city(4);
    auto donor = make_donor({0, 0, 25});
    Vec3 inside;
    bool found = false;
    for (const auto& b : s.buildings()) {
        inside = {(b.x_min + b.x_max) / 2, (b.y_min + b.y_max) / 2,
                  b.height / 2};
        found = true;
        break;
    }
    REQUIRE(found);
    Transmitter u = uav_template();
    u.id = "uav1";
    u.position = inside;
    u.relay_mode = RelayMode::Af;
    RelayConfig rc;
    CHECK_THROWS_AS(evaluate_placement(s, donor, {u}, IabMode::ObAf, bands(),
                                       1.5, 30.0, rc, fast_radio()),
                    InvalidPositionError);
}
