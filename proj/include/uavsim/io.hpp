#ifndef UAVSIM_IO_HPP
#define UAVSIM_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "uavsim/analysis.hpp"
#include "uavsim/radio.hpp"

namespace uavsim {

// CSV with header x_m,y_m,z_m, rx_<txid>_dbm..., sinr_<band>_db...,
// serving_<band>..., in_building; gaps are empty fields.
void write_map_csv(const CoverageMap& map, const std::string& path);
CoverageMap read_map_csv(const std::string& path);

// Grayscale render of one band's SINR scaled over [min_db, max_db]; the range
// is recorded in the PGM comment line. Gap cells are black, buildings mid-grey.
void write_map_pgm(const CoverageMap& map, const std::string& band_id,
                   const std::string& path, double min_db, double max_db);

// Two-column CSV (sinr_db, tx_power_dbm).
void write_power_table_csv(
    const std::vector<std::pair<double, double>>& table,
    const std::string& path);

// Two-column CSV (sinr_db, cumulative_fraction) with a leading "gap" row
// carrying the gap fraction.
void write_cdf_csv(const SinrCdf& cdf, const std::string& path);

std::string format_db(double v);  // fixed 6-decimal, empty for NaN

}  // namespace uavsim

#endif
