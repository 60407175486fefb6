#include "uavsim/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "uavsim/error.hpp"

namespace uavsim {

double SinrCdf::eval(double x) const {
    if (samples.empty()) throw InvalidParameterError("cdf: no samples");
    auto it = std::upper_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / samples.size();
}

double SinrCdf::below(double x) const {
    if (samples.empty()) throw InvalidParameterError("cdf: no samples");
    auto it = std::lower_bound(samples.begin(), samples.end(), x);
    return static_cast<double>(it - samples.begin()) / samples.size();
}

double SinrCdf::gap_fraction() const { return below(-std::numeric_limits<double>::max()); }

SinrCdf cdf_from_map(const CoverageMap& map, const std::string& band_or_union) {
    bool take_union = band_or_union == "union";
    int b = -1;
    if (!take_union) {
        b = map.band_index(band_or_union);
        if (b < 0) throw InvalidParameterError("cdf_from_map: unknown band");
    }
    SinrCdf cdf;
    for (const auto& c : map.cells) {
        if (c.in_building) continue;
        double s = kNegInf;
        if (take_union) {
            for (double v : c.sinr_db)
                if (v == v) s = std::max(s, v);
        } else {
            if (c.sinr_db[b] == c.sinr_db[b]) s = c.sinr_db[b];
        }
        cdf.samples.push_back(s);
    }
    if (cdf.samples.empty())
        throw InvalidParameterError("cdf_from_map: map has no outdoor cells");
    std::sort(cdf.samples.begin(), cdf.samples.end());
    return cdf;
}

double gap_percentile(const SinrCdf& cdf, double threshold_db) {
    return 100.0 * cdf.below(threshold_db);
}

double coverage_gain(const SinrCdf& before, const SinrCdf& after,
                     double threshold_db) {
    double cov_before = 1.0 - before.below(threshold_db);
    double cov_after = 1.0 - after.below(threshold_db);
    if (cov_before <= 0)
        throw InvalidParameterError("coverage_gain: zero coverage before");
    return cov_after / cov_before;
}

double cell_center_delta(const CoverageMap& before, const CoverageMap& after,
                         const std::string& band_id,
                         const std::string& donor_id) {
    if (before.nx != after.nx || before.ny != after.ny ||
        before.resolution != after.resolution)
        throw InvalidParameterError("cell_center_delta: grid geometry differs");
    int bb = before.band_index(band_id);
    int ba = after.band_index(band_id);
    int db = before.tx_index(donor_id);
    int da = after.tx_index(donor_id);
    if (bb < 0 || ba < 0 || db < 0 || da < 0)
        throw InvalidParameterError("cell_center_delta: unknown band or donor id");

    std::vector<double> deltas;
    for (std::size_t i = 0; i < before.cells.size(); ++i) {
        const auto& cb = before.cells[i];
        const auto& ca = after.cells[i];
        if (cb.in_building || ca.in_building) continue;
        if (cb.serving[bb] != db || ca.serving[ba] != da) continue;
        double sb = cb.sinr_db[bb], sa = ca.sinr_db[ba];
        if (sb == sb && sa == sa) deltas.push_back(sa - sb);
    }
    if (deltas.empty())
        throw InvalidParameterError("cell_center_delta: no donor-served cells in both maps");
    std::sort(deltas.begin(), deltas.end());
    std::size_t n = deltas.size();
    return n % 2 ? deltas[n / 2] : 0.5 * (deltas[n / 2 - 1] + deltas[n / 2]);
}

}  // namespace uavsim
