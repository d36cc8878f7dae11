#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "crnepi/errors.hpp"
#include "crnepi/fixtures.hpp"
#include "crnepi/network.hpp"

namespace testing {

inline crnepi::ReactionNetwork fx(const std::string& name) { return crnepi::resolve_network(name); }

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// code of the crnepi::Error thrown by f, empty when nothing is thrown
template <class F>
std::optional<crnepi::ErrorCode> code_of(F&& f) {
    try {
        f();
    } catch (const crnepi::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

struct Draws {
    std::mt19937_64 eng;
    explicit Draws(std::uint64_t seed) : eng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
};

inline const char* kAllNetworks[] = {"birth_death", "four_species_zd", "envz_ompr", "sair", "sir", "sirs_closed",
                                     "sirs_demography", "sirs_mono", "sirs_mono_closed", "sis",
                                     "sliar", "tonello", "wegscheider"};

}  // namespace testing
