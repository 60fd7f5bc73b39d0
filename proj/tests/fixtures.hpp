#pragma once

#include <string>

#include "shiftlab/io.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(SHIFTLAB_DATA_DIR) + "/" + name; }

inline shiftlab::RuleSet rules(const std::string& name) { return shiftlab::load_rules(data(name + ".rules")); }

inline shiftlab::PeriodicConfig checkerboard() {
    return shiftlab::PeriodicConfig::periodic({2, 0}, {1, 1}, [](shiftlab::Vec2 z) {
        return static_cast<shiftlab::Symbol>(shiftlab::floor_mod(z.x + z.y, 2));
    });
}

inline shiftlab::PeriodicConfig spot() { return shiftlab::PeriodicConfig::perturbed(0, {{{0, 0}, 1}}); }

}  // namespace fixtures
