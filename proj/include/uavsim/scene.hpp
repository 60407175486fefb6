#ifndef UAVSIM_SCENE_HPP
#define UAVSIM_SCENE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uavsim/geometry.hpp"

namespace uavsim {

// Per-band reflection loss, keyed by band id ("f1", "f2").
struct Material {
    std::string name;
    std::map<std::string, double> reflection_loss_db;

    double loss_db(const std::string& band_id) const;
};

// Extruded axis-aligned rectangle standing on the ground plane.
struct Building {
    double x_min = 0, x_max = 0;
    double y_min = 0, y_max = 0;
    double height = 0;
    int material = 0;  // index into Scene::materials

    bool contains(const Vec3& p, double ground_z) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max &&
               p.z >= ground_z && p.z <= ground_z + height;
    }
};

// Axis-aligned planar rectangle used as a reflector. axis is the normal axis
// (0=x, 1=y, 2=z); plane is the coordinate along that axis; normal_sign gives
// the outward direction. u/v bounds cover the two in-plane axes in x<y<z order.
struct Face {
    int axis = 0;
    double plane = 0;
    double normal_sign = 1;
    double u_min = 0, u_max = 0;
    double v_min = 0, v_max = 0;
    int material = 0;

    Vec3 normal() const {
        Vec3 n{0, 0, 0};
        if (axis == 0) n.x = normal_sign;
        else if (axis == 1) n.y = normal_sign;
        else n.z = normal_sign;
        return n;
    }

    // Signed distance of p from the plane, positive on the outward side.
    double side(const Vec3& p) const { return (p[axis] - plane) * normal_sign; }

    Vec3 mirror(const Vec3& p) const {
        Vec3 m = p;
        if (axis == 0) m.x = 2 * plane - p.x;
        else if (axis == 1) m.y = 2 * plane - p.y;
        else m.z = 2 * plane - p.z;
        return m;
    }

    bool in_rect(const Vec3& p, double tol) const;
};

struct Hit {
    double t = 0;
    Vec3 normal;
    int material = 0;
};

class Scene {
public:
    Scene(std::vector<Building> buildings, std::vector<Material> materials,
          Box3 world_bounds, double ground_z = 0.0, int ground_material = 0);

    const std::vector<Building>& buildings() const { return buildings_; }
    const std::vector<Material>& materials() const { return materials_; }
    const Material& material(int idx) const { return materials_.at(idx); }
    const Box3& world_bounds() const { return world_bounds_; }
    double ground_z() const { return ground_z_; }
    int ground_material() const { return ground_material_; }

    // All building faces (4 walls + roof per building) plus the ground plane,
    // the ground last. Used by the image-method tracer.
    const std::vector<Face>& faces() const { return faces_; }

    // Nearest intersection with any building face or the ground in (eps, max_t].
    std::optional<Hit> ray_hit(const Vec3& origin, const Vec3& dir,
                               double max_t) const;

    // True iff the open segment (a, b) crosses no building and stays at or
    // above the ground plane.
    bool los(const Vec3& a, const Vec3& b) const;

    bool inside_building(const Vec3& p) const;

    // Self-intersection offset for reflected rays.
    static constexpr double kRayEps = 1e-4;

private:
    std::vector<Building> buildings_;
    std::vector<Material> materials_;
    std::vector<Face> faces_;
    Box3 world_bounds_;
    double ground_z_;
    int ground_material_;
};

struct ManhattanParams {
    double area_x = 0;
    double area_y = 0;
    double block_x = 0;
    double block_y = 0;
    double street_w = 0;
    double h_min = 0;
    double h_max = 0;
    std::uint64_t seed = 0;
    double world_z_max = 500.0;
};

// Grid of rectangular blocks separated by streets, symmetric about the
// origin so a four-way street crossing sits at (0, 0). Heights are drawn
// uniformly in [h_min, h_max] from a seeded generator; the same seed
// always yields a bit-identical building list. Materials alternate between
// the first two entries of the supplied table.
Scene gen_manhattan(const ManhattanParams& p, std::vector<Material> materials);

// Concrete 10/13 dB and glass 7/9 dB at f1/f2. Configuration defaults only.
std::vector<Material> default_materials();

}  // namespace uavsim

#endif
