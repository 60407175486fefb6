#ifndef UAVSIM_RADIO_HPP
#define UAVSIM_RADIO_HPP

#include <string>
#include <vector>

#include "uavsim/raytrace.hpp"
#include "uavsim/scene.hpp"
#include "uavsim/transmitter.hpp"

namespace uavsim {

struct RadioConfig {
    double noise_figure_db = 7.0;
    double coverage_threshold_db = 0.0;  // SINR below => gap
    int max_order = 2;
    Pattern3D rx_pattern = isotropic_pattern();
    Orientation rx_orientation;
    std::size_t max_cells = 4'000'000;
    int threads = 0;  // 0 = hardware concurrency
};

// Thermal noise floor, -174 dBm/Hz plus bandwidth and noise figure.
double noise_power_dbm(const Band& band, double noise_figure_db);

struct SinrResult {
    double sinr_db = kNoValue;  // NaN = gap
    int serving = -1;           // index into the transmitter list

    bool gap() const { return !(sinr_db == sinr_db); }
};

// Serving = strongest active same-band transmitter with a path (ties by id);
// interference = every other active same-band transmitter. Other bands
// contribute nothing.
SinrResult sinr_at(const Vec3& point, const std::vector<Transmitter>& txs,
                   const Band& band, const Scene& scene,
                   const RadioConfig& cfg);

struct CoverageCell {
    bool in_building = false;
    std::vector<double> rx_dbm;   // per transmitter, NaN = no path
    std::vector<double> sinr_db;  // per band, NaN = gap
    std::vector<int> serving;     // per band, -1 = none
};

struct CoverageMap {
    double x0 = 0, y0 = 0;
    double altitude = 0;
    double resolution = 0;
    int nx = 0, ny = 0;
    std::vector<std::string> tx_ids;
    std::vector<Band> bands;
    std::vector<CoverageCell> cells;  // row-major, index = iy * nx + ix

    const CoverageCell& at(int ix, int iy) const { return cells[iy * nx + ix]; }
    Vec3 point(int ix, int iy) const {
        return {x0 + ix * resolution, y0 + iy * resolution, altitude};
    }
    int band_index(const std::string& band_id) const;
    int tx_index(const std::string& tx_id) const;
};

// Regular grid over the scene's world bounds at the given altitude, one
// SINR/serving record per band per cell. Cells inside buildings are gaps and
// excluded from all statistics.
CoverageMap coverage_map(const Scene& scene, const std::vector<Transmitter>& txs,
                         const std::vector<Band>& bands, double altitude,
                         double resolution, const RadioConfig& cfg);

// Fraction of outdoor cells with SINR >= threshold on the given band.
double coverage_fraction(const CoverageMap& map, const std::string& band_id,
                         double threshold_db);

// Covered if any band clears the threshold (OB access + donor union).
double coverage_fraction_union(const CoverageMap& map, double threshold_db);

}  // namespace uavsim

#endif
