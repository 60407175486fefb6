#ifndef UAVSIM_ANTENNA_HPP
#define UAVSIM_ANTENNA_HPP

#include <string>
#include <utility>
#include <vector>

#include "uavsim/geometry.hpp"

namespace uavsim {

enum class CutPlane { Azimuth, Elevation };

// Peak-normalized 2D gain cut: samples over [0, 360) degrees, gain in dB
// relative to the 0 dB peak, wrap-around interpolation.
struct PatternCut {
    std::vector<std::pair<double, double>> samples;  // (angle_deg, gain_db)
    CutPlane plane = CutPlane::Azimuth;

    // Linear interpolation between neighbouring samples; the input angle is
    // reduced into [0, 360) first.
    double eval(double angle_deg) const;

    void validate() const;  // strictly increasing angles, peak at 0 dB
};

struct Pattern3D {
    double peak_gain_dbi = 0;
    PatternCut cut_az;
    PatternCut cut_el;
    double floor_db = -20.0;  // relative clamp for the synthesized sphere
    std::string synthesis = "cross-cut-sum";

    // Absolute gain toward (azimuth, elevation) in the antenna frame,
    // elevation measured from the azimuth plane (+90 = straight up).
    double gain_dbi(double az_deg, double el_deg) const;
};

// Mounting: boresight azimuth in [0, 360) degrees (0 = +x, CCW), tilt in
// [-90, 90] with positive meaning downtilt.
struct Orientation {
    double boresight_azimuth_deg = 0;
    double boresight_tilt_deg = 0;
};

// Gaussian main lobe with G(+-beamwidth/2) = -3 dB, clamped below at
// sidelobe_floor_db; identical azimuth and elevation cuts.
std::pair<PatternCut, PatternCut> horn_cuts(double beamwidth_deg,
                                            double sidelobe_floor_db);

// 10*log10(41253 / (bw_az * bw_el)) directivity approximation.
double peak_gain_from_beamwidths(double bw_az_deg, double bw_el_deg);

// Additive-in-dB cross-cut synthesis; both cuts must be peak-normalized.
Pattern3D synthesize_3d(PatternCut cut_az, PatternCut cut_el,
                        double peak_gain_dbi, double floor_db = -20.0);

// Evaluate the pattern toward a world-frame unit direction, given the mount.
double gain(const Pattern3D& p, const Orientation& o, const Vec3& direction);

Pattern3D isotropic_pattern(double gain_dbi = 0.0);

// Two-column text file (angle_deg gain_db), one cut per file.
PatternCut load_cut_file(const std::string& path, CutPlane plane);

}  // namespace uavsim

#endif
