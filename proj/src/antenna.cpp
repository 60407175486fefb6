#include "uavsim/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uavsim/error.hpp"

namespace uavsim {

namespace {
double wrap360(double a) {
    a = std::fmod(a, 360.0);
    if (a < 0) a += 360.0;
    return a;
}
}  // namespace

double PatternCut::eval(double angle_deg) const {
    if (samples.empty())
        throw InvalidParameterError("pattern cut has no samples");
    if (samples.size() == 1) return samples.front().second;
    double a = wrap360(angle_deg);

    // Find the first sample with angle > a; wrap between last and first.
    auto it = std::upper_bound(
        samples.begin(), samples.end(), a,
        [](double v, const auto& s) { return v < s.first; });
    double a0, g0, a1, g1;
    if (it == samples.begin() || it == samples.end()) {
        a0 = samples.back().first;
        g0 = samples.back().second;
        a1 = samples.front().first + 360.0;
        g1 = samples.front().second;
        if (a < a0) a += 360.0;
    } else {
        a0 = (it - 1)->first;
        g0 = (it - 1)->second;
        a1 = it->first;
        g1 = it->second;
    }
    if (a1 == a0) return g0;
    double f = (a - a0) / (a1 - a0);
    return g0 + f * (g1 - g0);
}

void PatternCut::validate() const {
    if (samples.empty())
        throw InvalidParameterError("pattern cut has no samples");
    double peak = -1e30;
    double prev = -1.0;
    for (const auto& [a, g] : samples) {
        if (a < 0 || a >= 360.0)
            throw InvalidParameterError("cut angle outside [0, 360)");
        if (a <= prev)
            throw InvalidParameterError("cut angles must be strictly increasing");
        prev = a;
        peak = std::max(peak, g);
    }
    if (std::abs(peak) > 1e-9)
        throw InvalidParameterError("cut is not peak-normalized to 0 dB");
}

double Pattern3D::gain_dbi(double az_deg, double el_deg) const {
    double rel = cut_az.eval(az_deg) + cut_el.eval(el_deg);
    return peak_gain_dbi + std::max(rel, floor_db);
}

std::pair<PatternCut, PatternCut> horn_cuts(double beamwidth_deg,
                                            double sidelobe_floor_db) {
    if (!(beamwidth_deg > 0 && beamwidth_deg < 180))
        throw InvalidParameterError("horn beamwidth must be in (0, 180)");
    if (!(sidelobe_floor_db < -3))
        throw InvalidParameterError("sidelobe floor must be below -3 dB");

    PatternCut cut;
    cut.samples.reserve(360);
    for (int deg = 0; deg < 360; ++deg) {
        double off = deg > 180 ? deg - 360 : deg;
        double g = -12.0 * (off / beamwidth_deg) * (off / beamwidth_deg);
        cut.samples.push_back({static_cast<double>(deg),
                               std::max(g, sidelobe_floor_db)});
    }
    PatternCut az = cut, el = cut;
    az.plane = CutPlane::Azimuth;
    el.plane = CutPlane::Elevation;
    return {az, el};
}

double peak_gain_from_beamwidths(double bw_az_deg, double bw_el_deg) {
    if (!(bw_az_deg > 0 && bw_az_deg <= 360 && bw_el_deg > 0 && bw_el_deg <= 360))
        throw InvalidParameterError("beamwidths must be in (0, 360]");
    return 10.0 * std::log10(41253.0 / (bw_az_deg * bw_el_deg));
}

Pattern3D synthesize_3d(PatternCut cut_az, PatternCut cut_el,
                        double peak_gain_dbi, double floor_db) {
    cut_az.validate();
    cut_el.validate();
    Pattern3D p;
    p.peak_gain_dbi = peak_gain_dbi;
    p.cut_az = std::move(cut_az);
    p.cut_el = std::move(cut_el);
    p.floor_db = floor_db;
    return p;
}

double gain(const Pattern3D& p, const Orientation& o, const Vec3& direction) {
    double a = deg2rad(o.boresight_azimuth_deg);
    double t = deg2rad(o.boresight_tilt_deg);
    // Yaw into the boresight azimuth, then pitch by the downtilt so the
    // boresight lands on +x of the antenna frame.
    Vec3 d1{direction.x * std::cos(a) + direction.y * std::sin(a),
            -direction.x * std::sin(a) + direction.y * std::cos(a),
            direction.z};
    Vec3 d2{d1.x * std::cos(t) - d1.z * std::sin(t), d1.y,
            d1.x * std::sin(t) + d1.z * std::cos(t)};
    double az = rad2deg(std::atan2(d2.y, d2.x));
    double el = rad2deg(std::asin(std::clamp(d2.z, -1.0, 1.0)));
    return p.gain_dbi(az, el);
}

Pattern3D isotropic_pattern(double gain_dbi) {
    PatternCut flat;
    flat.samples = {{0.0, 0.0}};
    Pattern3D p;
    p.peak_gain_dbi = gain_dbi;
    p.cut_az = flat;
    p.cut_el = flat;
    p.cut_el.plane = CutPlane::Elevation;
    p.floor_db = 0.0;
    return p;
}

PatternCut load_cut_file(const std::string& path, CutPlane plane) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open pattern file: " + path);
    PatternCut cut;
    cut.plane = plane;
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        std::istringstream ss(line);
        double a, g;
        if (ss >> a >> g) cut.samples.push_back({a, g});
    }
    cut.validate();
    return cut;
}

}  // namespace uavsim
