#include "uavsim/raytrace.hpp"

#include <cmath>

#include "uavsim/error.hpp"

namespace uavsim {

double fspl(double distance_m, double frequency_hz) {
    if (!(distance_m > 0))
        throw InvalidParameterError("fspl: distance must be > 0");
    if (!(frequency_hz > 0))
        throw InvalidParameterError("fspl: frequency must be > 0");
    return 20.0 *
           std::log10(4.0 * M_PI * distance_m * frequency_hz / kSpeedOfLight);
}

namespace {

constexpr double kFrontEps = 1e-9;
constexpr double kRectTol = 1e-9;

bool segment_clear(const Scene& scene, const Vec3& a, const Vec3& b) {
    Vec3 d = b - a;
    double len = d.norm();
    if (len <= Scene::kRayEps) return true;
    return !scene.ray_hit(a, d / len, len - Scene::kRayEps).has_value();
}

// Back-trace a candidate reflection sequence from rx toward the image chain.
// images[j] is the tx image after j+1 mirrors. Returns the validated path or
// nullopt.
std::optional<PropagationPath> validate_sequence(
    const Scene& scene, const Vec3& tx, const Vec3& rx,
    const std::vector<int>& seq, const std::vector<Vec3>& images) {
    const auto& faces = scene.faces();
    int k = static_cast<int>(seq.size());
    std::vector<Vec3> pts(k + 2);
    pts[k + 1] = rx;
    for (int j = k - 1; j >= 0; --j) {
        const Face& f = faces[seq[j]];
        const Vec3& from = pts[j + 2];
        const Vec3& img = images[j];
        if (f.side(from) <= kFrontEps) return std::nullopt;
        double denom = img[f.axis] - from[f.axis];
        if (std::abs(denom) < 1e-15) return std::nullopt;
        double t = (f.plane - from[f.axis]) / denom;
        if (t <= 0.0 || t >= 1.0) return std::nullopt;
        Vec3 p = from + (img - from) * t;
        if (!f.in_rect(p, kRectTol)) return std::nullopt;
        pts[j + 1] = p;
    }
    pts[0] = tx;
    for (int j = 0; j <= k; ++j) {
        if (!segment_clear(scene, pts[j], pts[j + 1])) return std::nullopt;
    }
    PropagationPath path;
    path.vertices = std::move(pts);
    path.reflection_faces = seq;
    double len = 0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
        len += distance(path.vertices[i], path.vertices[i + 1]);
    path.total_length = len;
    return path;
}

void expand(const Scene& scene, const Vec3& tx, const Vec3& rx, int max_order,
            std::vector<int>& seq, std::vector<Vec3>& images,
            std::vector<PropagationPath>& out) {
    const auto& faces = scene.faces();
    // copy: push_back below may reallocate images
    const Vec3 src = seq.empty() ? tx : images.back();
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        if (!seq.empty() && seq.back() == fi) continue;
        const Face& f = faces[fi];
        // A valid specular bounce needs the virtual source on the outward side.
        if (f.side(src) <= kFrontEps) continue;
        seq.push_back(fi);
        images.push_back(f.mirror(src));
        if (f.side(rx) > kFrontEps) {
            if (auto p = validate_sequence(scene, tx, rx, seq, images))
                out.push_back(std::move(*p));
        }
        if (static_cast<int>(seq.size()) < max_order)
            expand(scene, tx, rx, max_order, seq, images, out);
        seq.pop_back();
        images.pop_back();
    }
}

}  // namespace

std::vector<PropagationPath> enumerate_paths(const Scene& scene, const Vec3& tx,
                                             const Vec3& rx, int max_order) {
    if (max_order < 0 || max_order > 3)
        throw InvalidParameterError("enumerate_paths: max_order must be in [0, 3]");
    if (tx == rx)
        throw InvalidParameterError("enumerate_paths: tx and rx coincide");

    std::vector<PropagationPath> out;
    if (scene.los(tx, rx)) {
        PropagationPath los;
        los.vertices = {tx, rx};
        los.total_length = distance(tx, rx);
        out.push_back(std::move(los));
    }
    if (max_order > 0) {
        std::vector<int> seq;
        std::vector<Vec3> images;
        expand(scene, tx, rx, max_order, seq, images, out);
    }
    return out;
}

double path_gain(const Scene& scene, const PropagationPath& path,
                 const Band& band) {
    double g = -fspl(path.total_length, band.frequency_hz);
    for (int fi : path.reflection_faces)
        g -= scene.material(scene.faces()[fi].material).loss_db(band.id);
    return g;
}

std::optional<double> received_power_dbm(const Transmitter& tx, const Vec3& rx,
                                         const Pattern3D& rx_pattern,
                                         const Orientation& rx_orientation,
                                         const Scene& scene, const Band& band,
                                         int max_order) {
    auto paths = enumerate_paths(scene, tx.position, rx, max_order);
    if (paths.empty()) return std::nullopt;
    double sum_mw = 0;
    for (const auto& p : paths) {
        const auto& v = p.vertices;
        Vec3 depart = (v[1] - v[0]).normalized();
        Vec3 arrive = (v[v.size() - 2] - v.back()).normalized();
        double g_tx = gain(tx.pattern, tx.orientation, depart);
        double g_rx = gain(rx_pattern, rx_orientation, arrive);
        double pg = path_gain(scene, p, band);
        sum_mw += std::pow(10.0, (tx.tx_power_dbm + g_tx + g_rx + pg) / 10.0);
    }
    return 10.0 * std::log10(sum_mw);
}

}  // namespace uavsim
