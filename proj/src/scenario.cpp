#include "uavsim/scenario.hpp"

#include <fstream>
#include <sstream>

#include "uavsim/error.hpp"

namespace uavsim {

using nlohmann::json;

namespace {

// Reads j[key] if present, otherwise writes the default back so the resolved
// config is fully explicit.
template <typename T>
T resolve(json& j, const std::string& key, T def) {
    if (!j.contains(key)) j[key] = def;
    return j.at(key).get<T>();
}

template <typename T>
T require(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key))
        throw ValidationError("missing required field '" + ctx + "." + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError("bad value for '" + ctx + "." + key + "': " +
                              e.what());
    }
}

Vec3 parse_vec3(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 3)
        throw ValidationError("'" + ctx + "' must be a [x, y, z] array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::vector<Material> parse_materials(json& scene_j) {
    if (!scene_j.contains("materials")) {
        json mats = json::array();
        for (const auto& m : default_materials()) {
            json losses;
            for (const auto& [band, db] : m.reflection_loss_db) losses[band] = db;
            mats.push_back({{"name", m.name}, {"reflection_loss_db", losses}});
        }
        scene_j["materials"] = mats;
    }
    std::vector<Material> out;
    for (const auto& mj : scene_j.at("materials")) {
        Material m;
        m.name = require<std::string>(mj, "name", "scene.materials[]");
        json losses = require<json>(mj, "reflection_loss_db", "scene.materials[]");
        for (const auto& [band, db] : losses.items()) {
            double v = db.get<double>();
            if (v < 0)
                throw ValidationError("reflection loss must be >= 0 (material '" +
                                      m.name + "')");
            m.reflection_loss_db[band] = v;
        }
        out.push_back(std::move(m));
    }
    if (out.empty()) throw ValidationError("scene.materials must be non-empty");
    return out;
}

std::shared_ptr<Scene> parse_scene(json& scene_j) {
    auto materials = parse_materials(scene_j);
    if (scene_j.contains("generator")) {
        json& g = scene_j["generator"];
        ManhattanParams p;
        p.area_x = require<double>(g, "area_x_m", "scene.generator");
        p.area_y = require<double>(g, "area_y_m", "scene.generator");
        p.block_x = require<double>(g, "block_x_m", "scene.generator");
        p.block_y = require<double>(g, "block_y_m", "scene.generator");
        p.street_w = require<double>(g, "street_w_m", "scene.generator");
        p.h_min = require<double>(g, "h_min_m", "scene.generator");
        p.h_max = require<double>(g, "h_max_m", "scene.generator");
        p.seed = resolve<std::uint64_t>(g, "seed", 1);
        p.world_z_max = resolve<double>(g, "world_z_max_m", 500.0);
        return std::make_shared<Scene>(gen_manhattan(p, std::move(materials)));
    }
    if (scene_j.contains("buildings")) {
        const json& wb = require<json>(scene_j, "world_bounds_m", "scene");
        Box3 bounds{{require<double>(wb, "x_min", "scene.world_bounds_m"),
                     require<double>(wb, "y_min", "scene.world_bounds_m"), 0.0},
                    {require<double>(wb, "x_max", "scene.world_bounds_m"),
                     require<double>(wb, "y_max", "scene.world_bounds_m"),
                     require<double>(wb, "z_max", "scene.world_bounds_m")}};
        std::vector<Building> buildings;
        for (const auto& bj : scene_j.at("buildings")) {
            Building b;
            b.x_min = require<double>(bj, "x_min_m", "scene.buildings[]");
            b.x_max = require<double>(bj, "x_max_m", "scene.buildings[]");
            b.y_min = require<double>(bj, "y_min_m", "scene.buildings[]");
            b.y_max = require<double>(bj, "y_max_m", "scene.buildings[]");
            b.height = require<double>(bj, "height_m", "scene.buildings[]");
            std::string mat = bj.value("material", materials.front().name);
            b.material = -1;
            for (std::size_t i = 0; i < materials.size(); ++i)
                if (materials[i].name == mat) b.material = static_cast<int>(i);
            if (b.material < 0)
                throw ValidationError("building references unknown material '" +
                                      mat + "'");
            buildings.push_back(b);
        }
        return std::make_shared<Scene>(std::move(buildings), std::move(materials),
                                       bounds);
    }
    throw ValidationError("scene needs either 'generator' or 'buildings'");
}

Pattern3D parse_antenna(json& a, Orientation& orient, const std::string& role) {
    double bw_az = resolve<double>(a, "beamwidth_az_deg", 30.0);
    double bw_el = resolve<double>(a, "beamwidth_el_deg", 30.0);
    double floor = resolve<double>(a, "sidelobe_floor_db", -20.0);
    PatternCut az, el;
    if (a.contains("pattern_file_az") || a.contains("pattern_file_el")) {
        az = load_cut_file(require<std::string>(a, "pattern_file_az", "antenna"),
                           CutPlane::Azimuth);
        el = load_cut_file(require<std::string>(a, "pattern_file_el", "antenna"),
                           CutPlane::Elevation);
    } else {
        std::tie(az, std::ignore) = horn_cuts(bw_az, floor);
        std::tie(std::ignore, el) = horn_cuts(bw_el, floor);
    }
    double peak = resolve<double>(a, "peak_gain_dbi",
                                  peak_gain_from_beamwidths(bw_az, bw_el));
    if (!a.contains("orientation")) a["orientation"] = json::object();
    json& oj = a["orientation"];
    orient.boresight_azimuth_deg = resolve<double>(oj, "azimuth_deg", 0.0);
    orient.boresight_tilt_deg =
        resolve<double>(oj, "downtilt_deg", role == "uav" ? 90.0 : 2.0);
    return synthesize_3d(std::move(az), std::move(el), peak, floor);
}

}  // namespace

void apply_override(json& j, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override must look like path.to.key=value: " +
                              assignment);
    std::string path = assignment.substr(0, eq);
    std::string value = assignment.substr(eq + 1);

    json* node = &j;
    std::istringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ValidationError("empty override path");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        // Numeric components index into arrays.
        if (node->is_array()) {
            std::size_t idx = std::stoul(parts[i]);
            if (idx >= node->size())
                throw ValidationError("override index out of range: " + path);
            node = &(*node)[idx];
        } else {
            node = &(*node)[parts[i]];
        }
    }
    json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded()) parsed = value;  // bare strings stay strings
    if (node->is_array()) {
        std::size_t idx = std::stoul(parts.back());
        if (idx >= node->size())
            throw ValidationError("override index out of range: " + path);
        (*node)[idx] = parsed;
    } else {
        (*node)[parts.back()] = parsed;
    }
}

Scenario Scenario::load(const std::string& path,
                        const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("scenario parse error in " + path + ": " + e.what());
    }
    return from_json(std::move(j), overrides);
}

Scenario Scenario::from_json(json j, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) apply_override(j, o);

    Scenario s;
    try {
        if (!j.contains("scene"))
            throw ValidationError("missing required section 'scene'");
        s.scene_ = parse_scene(j["scene"]);

        if (!j.contains("bands"))
            throw ValidationError("missing required section 'bands'");
        for (auto& bj : j["bands"]) {
            Band b;
            b.id = require<std::string>(bj, "id", "bands[]");
            b.frequency_hz = require<double>(bj, "frequency_ghz", "bands[]") * 1e9;
            b.bandwidth_hz =
                resolve<double>(bj, "bandwidth_mhz", 100.0) * 1e6;
            if (!(b.frequency_hz > 0) || !(b.bandwidth_hz > 0))
                throw ValidationError("band '" + b.id +
                                      "': frequency and bandwidth must be > 0");
            s.bands_.push_back(b);
        }
        if (s.bands_.empty()) throw ValidationError("bands must be non-empty");

        if (!j.contains("relay")) j["relay"] = json::object();
        json& rj = j["relay"];
        std::string mode = resolve<std::string>(rj, "mode", "ob-af");
        if (mode == "ob-af") s.relay_.mode = IabMode::ObAf;
        else if (mode == "ib-df") s.relay_.mode = IabMode::IbDf;
        else throw ValidationError("relay.mode must be 'ob-af' or 'ib-df'");
        s.relay_.donor_band = resolve<std::string>(rj, "donor_band", "f1");
        s.relay_.access_band = resolve<std::string>(rj, "access_band", "f2");
        if (!rj.contains("af")) rj["af"] = json::object();
        s.relay_.af.p_max_w = resolve<double>(rj["af"], "p_max_w", 5.0);
        s.relay_.af.gamma_u_max_db =
            resolve<double>(rj["af"], "gamma_u_max_db", 50.0);
        if (!rj.contains("df")) rj["df"] = json::object();
        s.relay_.df.threshold_db = resolve<double>(rj["df"], "threshold_db", 15.0);

        auto band_exists = [&](const std::string& id) {
            for (const auto& b : s.bands_)
                if (b.id == id) return true;
            return false;
        };
        if (!band_exists(s.relay_.donor_band))
            throw ValidationError("relay.donor_band references unknown band");
        if (s.relay_.mode == IabMode::ObAf && !band_exists(s.relay_.access_band))
            throw ValidationError("relay.access_band references unknown band");

        if (!j.contains("transmitters") || j["transmitters"].empty())
            throw ValidationError("at least one transmitter is required");
        bool donor_seen = false;
        for (auto& tj : j["transmitters"]) {
            Transmitter t;
            t.id = require<std::string>(tj, "id", "transmitters[]");
            t.position = parse_vec3(require<json>(tj, "position_m", "transmitters[]"),
                                    "transmitters[].position_m");
            std::string role = require<std::string>(tj, "role", "transmitters[]");
            t.max_power_w = require<double>(tj, "max_power_w", "transmitters[]");
            if (!(t.max_power_w > 0))
                throw ValidationError("transmitter '" + t.id +
                                      "': max_power_w must be > 0");
            t.tx_power_dbm = watts_to_dbm(t.max_power_w);
            if (!tj.contains("antenna")) tj["antenna"] = json::object();
            t.pattern = parse_antenna(tj["antenna"], t.orientation, role);
            if (!s.scene_->world_bounds().contains(t.position))
                throw ValidationError("transmitter '" + t.id +
                                      "' is outside the world bounds");
            if (s.scene_->inside_building(t.position))
                throw ValidationError("transmitter '" + t.id +
                                      "' is inside a building");
            if (role == "donor") {
                if (donor_seen)
                    throw ValidationError("exactly one donor transmitter expected");
                donor_seen = true;
                t.role = TxRole::Donor;
                t.relay_mode = RelayMode::None;
                t.band_id = resolve<std::string>(tj, "band", s.relay_.donor_band);
                s.donor_ = t;
            } else if (role == "uav") {
                t.role = TxRole::Uav;
                t.relay_mode = s.relay_.mode == IabMode::ObAf ? RelayMode::Af
                                                              : RelayMode::Df;
                t.band_id = resolve<std::string>(
                    tj, "band",
                    s.relay_.mode == IabMode::ObAf ? s.relay_.access_band
                                                   : s.relay_.donor_band);
                s.uavs_.push_back(t);
            } else {
                throw ValidationError("transmitter role must be 'donor' or 'uav'");
            }
            if (!band_exists(t.band_id))
                throw ValidationError("transmitter '" + t.id +
                                      "' references unknown band '" + t.band_id +
                                      "'");
        }
        if (!donor_seen) throw ValidationError("a donor transmitter is required");

        if (!j.contains("radio")) j["radio"] = json::object();
        json& radj = j["radio"];
        s.radio_.noise_figure_db = resolve<double>(radj, "noise_figure_db", 7.0);
        if (s.radio_.noise_figure_db < 0)
            throw ValidationError("radio.noise_figure_db must be >= 0");
        s.radio_.coverage_threshold_db =
            resolve<double>(radj, "coverage_threshold_db", 0.0);
        s.radio_.max_order = resolve<int>(radj, "max_order", 2);
        s.radio_.max_cells =
            resolve<std::size_t>(radj, "max_cells", s.radio_.max_cells);
        s.radio_.threads = resolve<int>(radj, "threads", 0);
        s.user_altitude_ = resolve<double>(radj, "user_altitude_m", 1.5);
        s.user_resolution_ = resolve<double>(radj, "user_resolution_m", 10.0);

        if (!j.contains("placement")) j["placement"] = json::object();
        json& pj = j["placement"];
        s.placement_.altitudes =
            resolve<std::vector<double>>(pj, "altitudes_m", {200.0});
        s.placement_.resolution = resolve<double>(pj, "resolution_m", 200.0);
        s.placement_.n_uavs = resolve<int>(pj, "n_uavs", 2);
        s.placement_.uav_max_power_w = resolve<double>(pj, "uav_max_power_w", 5.0);
        s.placement_.scoring_resolution =
            resolve<double>(pj, "scoring_resolution_m", s.user_resolution_);
        s.placement_.scoring_altitude =
            resolve<double>(pj, "scoring_altitude_m", s.user_altitude_);

        if (!j.contains("output")) j["output"] = json::object();
        json& oj = j["output"];
        s.output_.pgm = resolve<bool>(oj, "pgm", true);
        s.output_.pgm_min_db = resolve<double>(oj, "pgm_min_db", -20.0);
        s.output_.pgm_max_db = resolve<double>(oj, "pgm_max_db", 60.0);

        if (j.contains("report") && j["report"].contains("reference_gain"))
            s.report_.reference_gain = j["report"]["reference_gain"].get<double>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("scenario validation error: ") +
                              e.what());
    }

    s.resolved_ = std::move(j);
    return s;
}

Transmitter Scenario::uav_template() const {
    if (!uavs_.empty()) {
        Transmitter t = uavs_.front();
        t.id = "uav";
        return t;
    }
    Transmitter t = donor_;
    t.id = "uav";
    t.role = TxRole::Uav;
    t.max_power_w = placement_.uav_max_power_w;
    t.tx_power_dbm = watts_to_dbm(t.max_power_w);
    t.orientation = {0.0, 90.0};
    t.relay_mode = relay_.mode == IabMode::ObAf ? RelayMode::Af : RelayMode::Df;
    t.band_id = relay_.mode == IabMode::ObAf ? relay_.access_band
                                             : relay_.donor_band;
    return t;
}

}  // namespace uavsim
