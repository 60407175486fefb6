#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "uavsim/analysis.hpp"
#include "uavsim/error.hpp"
#include "uavsim/io.hpp"
#include "uavsim/placement.hpp"
#include "uavsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace uavsim;

namespace {

void write_manifest(const Scenario& s, const fs::path& out) {
    std::ofstream f(out / "manifest.json");
    f << s.resolved().dump(2) << '\n';
}

void write_map_outputs(const Scenario& s, const CoverageMap& map,
                       const fs::path& out) {
    write_map_csv(map, (out / "ground_map.csv").string());
    if (s.output().pgm) {
        for (const auto& b : map.bands) {
            write_map_pgm(map, b.id, (out / ("ground_map_" + b.id + ".pgm")).string(),
                          s.output().pgm_min_db, s.output().pgm_max_db);
        }
    }
}

void write_summary(const Scenario& s, const PlacementEvaluation& ev,
                   const fs::path& out) {
    std::ofstream f(out / "summary.txt");
    double thr = s.radio().coverage_threshold_db;
    f << "coverage_threshold_db " << format_db(thr) << '\n';
    for (const auto& b : s.bands()) {
        f << "coverage_" << b.id << " "
          << format_db(coverage_fraction(ev.ground_map, b.id, thr)) << '\n';
    }
    f << "coverage_union " << format_db(ev.coverage) << '\n';
    auto cdf = cdf_from_map(ev.ground_map, "union");
    f << "gap_percentile " << format_db(gap_percentile(cdf, thr)) << '\n';
    for (const auto& bh : ev.backhaul) {
        f << "backhaul " << bh.uav_id << " gamma_bh_db "
          << (bh.gamma_bh_db == bh.gamma_bh_db ? format_db(bh.gamma_bh_db)
                                               : std::string("gap"))
          << '\n';
    }
    for (const auto& tx : ev.txs) {
        f << "tx " << tx.id << " band " << tx.band_id << " power_dbm "
          << format_db(tx.tx_power_dbm) << " active " << (tx.active ? 1 : 0)
          << '\n';
    }
}

PlacementEvaluation run_pipeline(const Scenario& s) {
    return evaluate_placement(s.scene(), s.donor(), s.uavs(), s.mode(),
                              s.bands(), s.user_altitude(), s.user_resolution(),
                              s.relay(), s.radio());
}

int cmd_trace(const Scenario& s, const fs::path& out) {
    auto ev = run_pipeline(s);
    write_map_outputs(s, ev.ground_map, out);
    write_summary(s, ev, out);
    write_manifest(s, out);
    return 0;
}

int cmd_cdf(const Scenario& s, const fs::path& out) {
    auto ev = run_pipeline(s);
    for (const auto& b : s.bands())
        write_cdf_csv(cdf_from_map(ev.ground_map, b.id),
                      (out / ("cdf_" + b.id + ".csv")).string());
    write_cdf_csv(cdf_from_map(ev.ground_map, "union"),
                  (out / "cdf_union.csv").string());
    write_manifest(s, out);
    return 0;
}

int cmd_power_table(const Scenario& s, const fs::path& out) {
    std::vector<Transmitter> donor_only = {s.donor()};
    std::vector<Band> bh_band;
    for (const auto& b : s.bands())
        if (b.id == s.relay().donor_band) bh_band.push_back(b);
    auto bh_map = coverage_map(s.scene(), donor_only, bh_band,
                               s.placement().altitudes.front(),
                               s.placement().resolution, s.radio());
    auto table = build_power_table(bh_map, s.relay().donor_band, s.relay().af);
    write_power_table_csv(table, (out / "power_table.csv").string());
    write_map_csv(bh_map, (out / "backhaul_map.csv").string());
    write_manifest(s, out);
    return 0;
}

int cmd_place(const Scenario& s, const fs::path& out) {
    auto grid = backhaul_grid(s.scene(), s.donor(), s.bands(), s.placement(),
                              s.relay(), s.radio());
    auto result = greedy_place(s.scene(), s.donor(), s.uav_template(),
                               s.placement().n_uavs, s.mode(), grid, s.bands(),
                               s.placement(), s.relay(), s.radio());
    auto ev = evaluate_placement(s.scene(), s.donor(), result.chosen, s.mode(),
                                 s.bands(), s.user_altitude(),
                                 s.user_resolution(), s.relay(), s.radio());
    std::ofstream rep(out / "placement.txt");
    rep << "baseline_coverage " << format_db(result.baseline_coverage) << '\n';
    for (std::size_t i = 0; i < result.chosen.size(); ++i) {
        const auto& u = result.chosen[i];
        rep << "uav " << u.id << " position_m " << format_db(u.position.x) << ' '
            << format_db(u.position.y) << ' ' << format_db(u.position.z)
            << " gamma_bh_db " << format_db(result.chosen_gamma_bh_db[i])
            << " power_dbm " << format_db(ev.txs[i + 1].tx_power_dbm)
            << " objective " << format_db(result.objective_trace[i]) << '\n';
    }
    rep << "final_coverage " << format_db(ev.coverage) << '\n';
    rep.close();
    write_map_outputs(s, ev.ground_map, out);
    write_summary(s, ev, out);
    write_manifest(s, out);
    return 0;
}

int cmd_compare(const Scenario& s, const fs::path& before_dir,
                const fs::path& after_dir, const fs::path& out) {
    auto before = read_map_csv((before_dir / "ground_map.csv").string());
    auto after = read_map_csv((after_dir / "ground_map.csv").string());
    double thr = s.radio().coverage_threshold_db;
    auto cdf_b = cdf_from_map(before, "union");
    auto cdf_a = cdf_from_map(after, "union");
    double gain = coverage_gain(cdf_b, cdf_a, thr);

    std::ofstream rep(out / "compare.txt");
    rep << "coverage_threshold_db " << format_db(thr) << '\n';
    rep << "coverage_before " << format_db(1.0 - cdf_b.below(thr)) << '\n';
    rep << "coverage_after " << format_db(1.0 - cdf_a.below(thr)) << '\n';
    rep << "gap_percentile_before " << format_db(gap_percentile(cdf_b, thr)) << '\n';
    rep << "gap_percentile_after " << format_db(gap_percentile(cdf_a, thr)) << '\n';
    rep << "coverage_gain " << format_db(gain) << '\n';
    if (s.report().reference_gain)
        rep << "reference_gain " << format_db(*s.report().reference_gain) << '\n';
    try {
        double delta = cell_center_delta(before, after, s.relay().donor_band,
                                         s.donor().id);
        rep << "cell_center_delta_db " << format_db(delta) << '\n';
    } catch (const InvalidParameterError&) {
        rep << "cell_center_delta_db n/a\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mmWave ray-tracing coverage simulator and UAV relay planner"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    std::string before_dir, after_dir;

    auto add_common = [&](CLI::App* cmd, bool need_scenario = true) {
        cmd->add_option("--scenario", scenario_path, "Scenario config file")
            ->required(need_scenario);
        cmd->add_option("--set", overrides,
                        "Override a config value (dotted.path=value)");
        cmd->add_option("--out", out_dir, "Output directory");
    };

    auto* trace = app.add_subcommand("trace", "Coverage maps for the scenario");
    auto* place = app.add_subcommand("place", "Greedy UAV placement");
    auto* ptab = app.add_subcommand("power-table", "AF power mapping table");
    auto* cdf = app.add_subcommand("cdf", "SINR CDF exports");
    auto* cmp = app.add_subcommand("compare", "Gain/delta between two runs");
    for (auto* c : {trace, place, ptab, cdf, cmp}) add_common(c);
    cmp->add_option("--before", before_dir, "Baseline run directory")->required();
    cmp->add_option("--after", after_dir, "Assisted run directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        Scenario s = Scenario::load(scenario_path, overrides);
        fs::create_directories(out_dir);
        if (trace->parsed()) return cmd_trace(s, out_dir);
        if (place->parsed()) return cmd_place(s, out_dir);
        if (ptab->parsed()) return cmd_power_table(s, out_dir);
        if (cdf->parsed()) return cmd_cdf(s, out_dir);
        if (cmp->parsed()) return cmd_compare(s, before_dir, after_dir, out_dir);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const InvalidParameterError& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
