#ifndef UAVSIM_RAYTRACE_HPP
#define UAVSIM_RAYTRACE_HPP

#include <optional>
#include <vector>

#include "uavsim/scene.hpp"
#include "uavsim/transmitter.hpp"

namespace uavsim {

struct PropagationPath {
    std::vector<Vec3> vertices;        // tx, reflection points..., rx
    std::vector<int> reflection_faces; // indices into Scene::faces()
    double total_length = 0;
    double gain_db = 0;                // path gain for the band it was priced at

    int order() const { return static_cast<int>(reflection_faces.size()); }
};

// Friis free-space loss, 20*log10(4*pi*d*f/c).
double fspl(double distance_m, double frequency_hz);

constexpr double kSpeedOfLight = 299792458.0;

// LOS plus every valid specular path up to max_order reflections, found by
// recursively mirroring tx across candidate faces and back-tracing from rx.
// Paths are geometric only; gain_db is left at 0 (price with path_gain).
std::vector<PropagationPath> enumerate_paths(const Scene& scene, const Vec3& tx,
                                             const Vec3& rx, int max_order);

// -fspl(length) minus the per-bounce reflection losses; antenna gains excluded.
double path_gain(const Scene& scene, const PropagationPath& path,
                 const Band& band);

// Non-coherent power sum over all paths, including antenna gains at both ends.
// nullopt when no path exists.
std::optional<double> received_power_dbm(const Transmitter& tx, const Vec3& rx,
                                         const Pattern3D& rx_pattern,
                                         const Orientation& rx_orientation,
                                         const Scene& scene, const Band& band,
                                         int max_order);

}  // namespace uavsim

#endif
