#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "orbitsum/harness/config.hpp"

namespace orbitsum::harness {

struct Fixture {
    std::string name;
    std::string summary;
    std::string text;  ///< JSON config
};

/// Built-in fixtures, in registry order.
const std::vector<Fixture>& fixtures();

/// Parsed fixtures.
std::vector<ProblemConfig> registry();

/// nullptr when no fixture has that name.
const Fixture* find_fixture(std::string_view name);

}  // namespace orbitsum::harness
