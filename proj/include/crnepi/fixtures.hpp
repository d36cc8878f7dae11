#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnepi/network.hpp"

namespace crnepi {

// Fixture corpus compiled into the library. Names are file names ("sair.crn");
// lookups also accept the stem, trying .crn, .sirph, .ph in that order.
std::optional<std::string_view> fixture_text(std::string_view name);
std::vector<std::string> fixture_names();

// A readable file path wins; otherwise the argument is looked up as a fixture.
std::string resolve_text(const std::string& path_or_fixture);
ReactionNetwork resolve_network(const std::string& path_or_fixture);

}  // namespace crnepi
