#ifndef UAVSIM_SCENARIO_HPP
#define UAVSIM_SCENARIO_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavsim/placement.hpp"
#include "uavsim/relay.hpp"

namespace uavsim {

struct OutputConfig {
    bool pgm = true;
    double pgm_min_db = -20.0;
    double pgm_max_db = 60.0;
};

struct ReportConfig {
    std::optional<double> reference_gain;  // published figure to print alongside
};

// Fully resolved experiment description: scene, bands, transmitters, and all
// knobs, with every default made explicit in resolved().
class Scenario {
public:
    static Scenario load(const std::string& path,
                         const std::vector<std::string>& overrides = {});
    static Scenario from_json(nlohmann::json j,
                              const std::vector<std::string>& overrides = {});

    const Scene& scene() const { return *scene_; }
    const std::vector<Band>& bands() const { return bands_; }
    const Transmitter& donor() const { return donor_; }
    const std::vector<Transmitter>& uavs() const { return uavs_; }
    const RadioConfig& radio() const { return radio_; }
    const RelayConfig& relay() const { return relay_; }
    const PlacementConfig& placement() const { return placement_; }
    const OutputConfig& output() const { return output_; }
    const ReportConfig& report() const { return report_; }
    double user_altitude() const { return user_altitude_; }
    double user_resolution() const { return user_resolution_; }
    IabMode mode() const { return relay_.mode; }

    // UAV prototype used by greedy placement (first configured UAV, or a
    // default built from the donor's antenna when none are listed).
    Transmitter uav_template() const;

    // The input config with every default filled in; writing this back and
    // reloading reproduces the run exactly.
    const nlohmann::json& resolved() const { return resolved_; }

private:
    std::shared_ptr<Scene> scene_;
    std::vector<Band> bands_;
    Transmitter donor_;
    std::vector<Transmitter> uavs_;
    RadioConfig radio_;
    RelayConfig relay_;
    PlacementConfig placement_;
    OutputConfig output_;
    ReportConfig report_;
    double user_altitude_ = 1.5;
    double user_resolution_ = 10.0;
    nlohmann::json resolved_;
};

// Apply one "dotted.path=value" override onto a config tree.
void apply_override(nlohmann::json& j, const std::string& assignment);

}  // namespace uavsim

#endif
