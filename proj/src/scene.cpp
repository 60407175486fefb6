#include "uavsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "uavsim/error.hpp"

namespace uavsim {

double Material::loss_db(const std::string& band_id) const {
    auto it = reflection_loss_db.find(band_id);
    if (it == reflection_loss_db.end()) {
        throw InvalidParameterError("material '" + name +
                                    "' has no reflection loss for band '" +
                                    band_id + "'");
    }
    return it->second;
}

bool Face::in_rect(const Vec3& p, double tol) const {
    double u, v;
    if (axis == 0) { u = p.y; v = p.z; }
    else if (axis == 1) { u = p.x; v = p.z; }
    else { u = p.x; v = p.y; }
    return u >= u_min - tol && u <= u_max + tol && v >= v_min - tol &&
           v <= v_max + tol;
}

namespace {

void add_building_faces(const Building& b, double ground_z,
                        std::vector<Face>& out) {
    double z_lo = ground_z, z_hi = ground_z + b.height;
    out.push_back({0, b.x_min, -1, b.y_min, b.y_max, z_lo, z_hi, b.material});
    out.push_back({0, b.x_max, +1, b.y_min, b.y_max, z_lo, z_hi, b.material});
    out.push_back({1, b.y_min, -1, b.x_min, b.x_max, z_lo, z_hi, b.material});
    out.push_back({1, b.y_max, +1, b.x_min, b.x_max, z_lo, z_hi, b.material});
    out.push_back({2, z_hi, +1, b.x_min, b.x_max, b.y_min, b.y_max, b.material});
}

// Slab test against the building's box (ground_z .. ground_z + height).
bool hit_aabb(const Building& b, double ground_z, const Vec3& o, const Vec3& d,
              double& t_near, int& near_axis, double& near_side) {
    double lo[3] = {b.x_min, b.y_min, ground_z};
    double hi[3] = {b.x_max, b.y_max, ground_z + b.height};
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    int axis0 = -1;
    double side0 = 0;
    for (int i = 0; i < 3; ++i) {
        double oi = o[i], di = d[i];
        if (std::abs(di) < 1e-15) {
            if (oi < lo[i] || oi > hi[i]) return false;
            continue;
        }
        double inv = 1.0 / di;
        double ta = (lo[i] - oi) * inv;
        double tb = (hi[i] - oi) * inv;
        double sgn = -1;
        if (ta > tb) { std::swap(ta, tb); sgn = +1; }
        if (ta > t0) { t0 = ta; axis0 = i; side0 = sgn; }
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    if (axis0 < 0) return false;
    t_near = t0;
    near_axis = axis0;
    near_side = side0;
    return true;
}

}  // namespace

Scene::Scene(std::vector<Building> buildings, std::vector<Material> materials,
             Box3 world_bounds, double ground_z, int ground_material)
    : buildings_(std::move(buildings)),
      materials_(std::move(materials)),
      world_bounds_(world_bounds),
      ground_z_(ground_z),
      ground_material_(ground_material) {
    if (materials_.empty())
        throw InvalidParameterError("scene needs at least one material");
    for (const auto& b : buildings_) {
        if (!(b.height > 0))
            throw InvalidParameterError("building height must be > 0");
        if (!(b.x_max > b.x_min) || !(b.y_max > b.y_min))
            throw InvalidParameterError("building footprint is degenerate");
        if (b.material < 0 || b.material >= static_cast<int>(materials_.size()))
            throw InvalidParameterError("building references unknown material");
        add_building_faces(b, ground_z_, faces_);
    }
    // Ground reflector spans the world bounds.
    faces_.push_back({2, ground_z_, +1, world_bounds_.lo.x, world_bounds_.hi.x,
                      world_bounds_.lo.y, world_bounds_.hi.y, ground_material_});
}

std::optional<Hit> Scene::ray_hit(const Vec3& origin, const Vec3& dir,
                                  double max_t) const {
    if (!origin.finite() || !dir.finite() || !std::isfinite(max_t))
        throw InvalidParameterError("ray_hit: non-finite input");
    if (!(max_t > 0)) throw InvalidParameterError("ray_hit: max_t must be > 0");

    double best_t = max_t;
    bool found = false;
    Hit best;

    for (const auto& b : buildings_) {
        double t;
        int axis;
        double side;
        if (!hit_aabb(b, ground_z_, origin, dir, t, axis, side)) continue;
        if (t <= kRayEps || t > best_t) continue;
        best_t = t;
        found = true;
        best.t = t;
        best.normal = Vec3{0, 0, 0};
        if (axis == 0) best.normal.x = side;
        else if (axis == 1) best.normal.y = side;
        else best.normal.z = side;
        best.material = b.material;
    }

    if (dir.z < 0) {
        double t = (ground_z_ - origin.z) / dir.z;
        if (t > kRayEps && t <= best_t) {
            best.t = t;
            best.normal = {0, 0, 1};
            best.material = ground_material_;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return best;
}

bool Scene::los(const Vec3& a, const Vec3& b) const {
    Vec3 d = b - a;
    double len = d.norm();
    if (len == 0) throw InvalidParameterError("los: identical endpoints");
    auto hit = ray_hit(a, d / len, len - kRayEps);
    return !hit.has_value();
}

bool Scene::inside_building(const Vec3& p) const {
    for (const auto& b : buildings_) {
        if (b.contains(p, ground_z_)) return true;
    }
    return false;
}

Scene gen_manhattan(const ManhattanParams& p, std::vector<Material> materials) {
    if (!(p.area_x > 0 && p.area_y > 0 && p.block_x > 0 && p.block_y > 0 &&
          p.street_w > 0))
        throw InvalidParameterError("gen_manhattan: dimensions must be > 0");
    if (p.h_min > p.h_max || !(p.h_min > 0))
        throw InvalidParameterError("gen_manhattan: need 0 < h_min <= h_max");
    if (p.street_w / 2 + p.block_x > p.area_x / 2 ||
        p.street_w / 2 + p.block_y > p.area_y / 2)
        throw InvalidParameterError(
            "gen_manhattan: block + street do not fit in the area");

    // Streets centered on both axes so the origin is a four-way crossing.
    // Block spans tile outward from the central street; only full blocks kept.
    auto spans = [](double area, double block, double street) {
        std::vector<std::pair<double, double>> out;
        double period = block + street;
        for (int k = 0;; ++k) {
            double lo = street / 2 + k * period;
            double hi = lo + block;
            if (hi > area / 2 + 1e-9) break;
            out.push_back({lo, hi});
        }
        std::vector<std::pair<double, double>> both;
        for (auto it = out.rbegin(); it != out.rend(); ++it)
            both.push_back({-it->second, -it->first});
        for (const auto& s : out) both.push_back(s);
        return both;
    };
    auto xs = spans(p.area_x, p.block_x, p.street_w);
    auto ys = spans(p.area_y, p.block_y, p.street_w);

    std::mt19937_64 rng(p.seed);
    auto uniform01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

    int n_mat = std::min<int>(2, static_cast<int>(materials.size()));
    std::vector<Building> buildings;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        for (std::size_t iy = 0; iy < ys.size(); ++iy) {
            Building b;
            b.x_min = xs[ix].first;
            b.x_max = xs[ix].second;
            b.y_min = ys[iy].first;
            b.y_max = ys[iy].second;
            b.height = p.h_min + (p.h_max - p.h_min) * uniform01();
            b.material = static_cast<int>((ix + iy) % n_mat);
            buildings.push_back(b);
        }
    }

    Box3 bounds{{-p.area_x / 2, -p.area_y / 2, 0},
                {p.area_x / 2, p.area_y / 2, p.world_z_max}};
    return Scene(std::move(buildings), std::move(materials), bounds);
}

std::vector<Material> default_materials() {
    return {
        {"concrete", {{"f1", 10.0}, {"f2", 13.0}}},
        {"glass", {{"f1", 7.0}, {"f2", 9.0}}},
    };
}

}  // namespace uavsim
