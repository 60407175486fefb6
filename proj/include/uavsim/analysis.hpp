#ifndef UAVSIM_ANALYSIS_HPP
#define UAVSIM_ANALYSIS_HPP

#include <string>
#include <vector>

#include "uavsim/radio.hpp"

namespace uavsim {

// Empirical SINR distribution over outdoor cells; gap cells enter as -inf so
// the gap population shows up as left-edge mass.
struct SinrCdf {
    std::vector<double> samples;  // sorted ascending, -inf = gap

    // Fraction of samples <= x.
    double eval(double x) const;
    // Fraction of samples strictly below x (gaps always count).
    double below(double x) const;
    double gap_fraction() const;
};

// One sample per outdoor cell on the given band ("union" takes the per-cell
// best SINR across bands).
SinrCdf cdf_from_map(const CoverageMap& map, const std::string& band_or_union);

// Percentage of users at or below the coverage threshold, gaps included.
double gap_percentile(const SinrCdf& cdf, double threshold_db);

// Ratio of covered fractions, after / before, at the same threshold.
double coverage_gain(const SinrCdf& before, const SinrCdf& after,
                     double threshold_db);

// Median SINR change over cells served by the donor in both maps (same grid).
double cell_center_delta(const CoverageMap& before, const CoverageMap& after,
                         const std::string& band_id, const std::string& donor_id);

}  // namespace uavsim

#endif
