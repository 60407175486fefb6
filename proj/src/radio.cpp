#include "uavsim/radio.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "uavsim/error.hpp"

namespace uavsim {

double noise_power_dbm(const Band& band, double noise_figure_db) {
    if (!(band.bandwidth_hz > 0))
        throw InvalidParameterError("noise_power: bandwidth must be > 0");
    return -174.0 + 10.0 * std::log10(band.bandwidth_hz) + noise_figure_db;
}

namespace {

// Per-transmitter received power at one point; NaN when no path or inactive.
std::vector<double> rx_powers(const Vec3& point,
                              const std::vector<Transmitter>& txs,
                              const Scene& scene,
                              const std::vector<Band>& bands,
                              const RadioConfig& cfg) {
    std::vector<double> out(txs.size(), kNoValue);
    for (std::size_t i = 0; i < txs.size(); ++i) {
        const auto& tx = txs[i];
        if (!tx.active) continue;
        auto band_it = std::find_if(bands.begin(), bands.end(), [&](const Band& b) {
            return b.id == tx.band_id;
        });
        if (band_it == bands.end()) continue;  // band not under evaluation
        if (tx.position == point) continue;    // grid point on the antenna
        auto p = received_power_dbm(tx, point, cfg.rx_pattern,
                                    cfg.rx_orientation, scene, *band_it,
                                    cfg.max_order);
        if (p) out[i] = *p;
    }
    return out;
}

SinrResult sinr_from_powers(const std::vector<double>& powers,
                            const std::vector<Transmitter>& txs,
                            const Band& band, double noise_dbm) {
    int serving = -1;
    for (std::size_t i = 0; i < txs.size(); ++i) {
        if (txs[i].band_id != band.id) continue;
        double p = powers[i];
        if (!(p == p)) continue;  // no path
        if (serving < 0 || p > powers[serving] ||
            (p == powers[serving] && txs[i].id < txs[serving].id))
            serving = static_cast<int>(i);
    }
    SinrResult r;
    if (serving < 0) return r;
    double noise_mw = std::pow(10.0, noise_dbm / 10.0);
    double interf_mw = 0;
    for (std::size_t i = 0; i < txs.size(); ++i) {
        if (static_cast<int>(i) == serving || txs[i].band_id != band.id) continue;
        double p = powers[i];
        if (p == p) interf_mw += std::pow(10.0, p / 10.0);
    }
    double signal_mw = std::pow(10.0, powers[serving] / 10.0);
    r.sinr_db = 10.0 * std::log10(signal_mw / (noise_mw + interf_mw));
    r.serving = serving;
    return r;
}

}  // namespace

SinrResult sinr_at(const Vec3& point, const std::vector<Transmitter>& txs,
                   const Band& band, const Scene& scene,
                   const RadioConfig& cfg) {
    auto powers = rx_powers(point, txs, scene, {band}, cfg);
    return sinr_from_powers(powers, txs, band,
                            noise_power_dbm(band, cfg.noise_figure_db));
}

int CoverageMap::band_index(const std::string& band_id) const {
    for (std::size_t i = 0; i < bands.size(); ++i)
        if (bands[i].id == band_id) return static_cast<int>(i);
    return -1;
}

int CoverageMap::tx_index(const std::string& tx_id) const {
    for (std::size_t i = 0; i < tx_ids.size(); ++i)
        if (tx_ids[i] == tx_id) return static_cast<int>(i);
    return -1;
}

CoverageMap coverage_map(const Scene& scene, const std::vector<Transmitter>& txs,
                         const std::vector<Band>& bands, double altitude,
                         double resolution, const RadioConfig& cfg) {
    if (!(resolution > 0))
        throw InvalidParameterError("coverage_map: resolution must be > 0");

    CoverageMap map;
    map.x0 = scene.world_bounds().lo.x;
    map.y0 = scene.world_bounds().lo.y;
    map.altitude = altitude;
    map.resolution = resolution;
    double ext_x = scene.world_bounds().hi.x - map.x0;
    double ext_y = scene.world_bounds().hi.y - map.y0;
    map.nx = static_cast<int>(std::floor(ext_x / resolution + 1e-9)) + 1;
    map.ny = static_cast<int>(std::floor(ext_y / resolution + 1e-9)) + 1;
    if (static_cast<std::size_t>(map.nx) * map.ny > cfg.max_cells)
        throw ResourceLimitError("coverage_map: grid exceeds cell budget");

    for (const auto& tx : txs) map.tx_ids.push_back(tx.id);
    map.bands = bands;
    map.cells.resize(static_cast<std::size_t>(map.nx) * map.ny);

    std::vector<double> noise(bands.size());
    for (std::size_t b = 0; b < bands.size(); ++b)
        noise[b] = noise_power_dbm(bands[b], cfg.noise_figure_db);

    auto eval_cell = [&](int ix, int iy) {
        CoverageCell& cell = map.cells[static_cast<std::size_t>(iy) * map.nx + ix];
        cell.sinr_db.assign(bands.size(), kNoValue);
        cell.serving.assign(bands.size(), -1);
        Vec3 p = map.point(ix, iy);
        if (scene.inside_building(p)) {
            cell.in_building = true;
            cell.rx_dbm.assign(txs.size(), kNoValue);
            return;
        }
        cell.rx_dbm = rx_powers(p, txs, scene, bands, cfg);
        for (std::size_t b = 0; b < bands.size(); ++b) {
            auto r = sinr_from_powers(cell.rx_dbm, txs, bands[b], noise[b]);
            cell.sinr_db[b] = r.sinr_db;
            cell.serving[b] = r.serving;
        }
    };

    int n_threads = cfg.threads > 0
                        ? cfg.threads
                        : std::max(1u, std::thread::hardware_concurrency());
    if (n_threads <= 1 || map.ny == 1) {
        for (int iy = 0; iy < map.ny; ++iy)
            for (int ix = 0; ix < map.nx; ++ix) eval_cell(ix, iy);
    } else {
        // Each row is computed independently into its own cells, so the
        // result is identical for any worker count.
        std::vector<std::thread> workers;
        std::atomic<int> next_row{0};
        for (int w = 0; w < n_threads; ++w) {
            workers.emplace_back([&]() {
                for (;;) {
                    int iy = next_row.fetch_add(1);
                    if (iy >= map.ny) return;
                    for (int ix = 0; ix < map.nx; ++ix) eval_cell(ix, iy);
                }
            });
        }
        for (auto& w : workers) w.join();
    }
    return map;
}

double coverage_fraction(const CoverageMap& map, const std::string& band_id,
                         double threshold_db) {
    int b = map.band_index(band_id);
    if (b < 0) throw InvalidParameterError("coverage_fraction: unknown band");
    std::size_t outdoor = 0, covered = 0;
    for (const auto& c : map.cells) {
        if (c.in_building) continue;
        ++outdoor;
        double s = c.sinr_db[b];
        if (s == s && s >= threshold_db) ++covered;
    }
    if (outdoor == 0)
        throw InvalidParameterError("coverage_fraction: no outdoor cells");
    return static_cast<double>(covered) / static_cast<double>(outdoor);
}

double coverage_fraction_union(const CoverageMap& map, double threshold_db) {
    std::size_t outdoor = 0, covered = 0;
    for (const auto& c : map.cells) {
        if (c.in_building) continue;
        ++outdoor;
        for (double s : c.sinr_db) {
            if (s == s && s >= threshold_db) {
                ++covered;
                break;
            }
        }
    }
    if (outdoor == 0)
        throw InvalidParameterError("coverage_fraction: no outdoor cells");
    return static_cast<double>(covered) / static_cast<double>(outdoor);
}

}  // namespace uavsim
