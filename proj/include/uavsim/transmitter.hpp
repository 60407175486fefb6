#ifndef UAVSIM_TRANSMITTER_HPP
#define UAVSIM_TRANSMITTER_HPP

#include <string>

#include "uavsim/antenna.hpp"
#include "uavsim/geometry.hpp"

namespace uavsim {

struct Band {
    std::string id;  // "f1" or "f2"
    double frequency_hz = 0;
    double bandwidth_hz = 0;
};

enum class TxRole { Donor, Uav };
enum class RelayMode { None, Af, Df };

struct Transmitter {
    std::string id;
    Vec3 position;
    TxRole role = TxRole::Donor;
    std::string band_id;
    double tx_power_dbm = 0;
    double max_power_w = 0;
    Pattern3D pattern;
    Orientation orientation;
    RelayMode relay_mode = RelayMode::None;
    bool active = true;
};

}  // namespace uavsim

#endif
