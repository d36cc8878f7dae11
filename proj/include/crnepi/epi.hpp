#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crnepi/network.hpp"

namespace crnepi {

struct EpiDesignation {
    std::vector<std::size_t> infected;
    std::size_t susceptible = 0;
    std::vector<std::size_t> resident;  // everything else, ascending
};

// From the network's epi section; PreconditionViolated when absent.
EpiDesignation designation(const ReactionNetwork& net);
EpiDesignation make_designation(const ReactionNetwork& net, const std::vector<std::string>& infected,
                                const std::string& susceptible);

// Conservation totals used to pin the DFE and endemic solves: taken from init
// when the network has one, otherwise unit mass in the susceptible.
Vec reference_state(const ReactionNetwork& net, const EpiDesignation& d);

Vec find_dfe(const ReactionNetwork& net, const EpiDesignation& d);

// Newton from 16 Halton interior starts on rhs = 0 plus the conservation laws evaluated at
// ref; the first converged strictly positive root passing `accept` is returned.
std::optional<Vec> positive_equilibrium(const ReactionNetwork& net, const Vec& ref,
                                        const std::function<bool(const Vec&)>& accept = {});

struct NgmResult {
    Vec dfe;
    Mat F;  // column convention: i' = (F - V) i near the DFE
    Mat V;
    Mat K;  // F * V^-1
    double R0 = 0.0;
    std::vector<double> charpoly_K;
    bool v_is_m_matrix = false;
};

NgmResult ngm_decompose(const ReactionNetwork& net, const EpiDesignation& d);
double spectral_radius_r0(const NgmResult& ngm);

// Routh-Hurwitz on p(x) = ch(x + 1); true iff every root of ch has real part < 1,
// roots exactly at 1 being accepted (R0 <= 1).
bool routh_hurwitz_shifted(const std::vector<double>& charpoly);
// Taylor shift p(x) -> p(x + c), highest degree first.
std::vector<double> shift_polynomial(const std::vector<double>& p, double c);

enum class FixedPointKind { Dfe, Endemic, Other };
const char* to_string(FixedPointKind k);

inline constexpr double kStabilityMargin = 1e-9;

struct FixedPointReport {
    Vec state;
    FixedPointKind kind = FixedPointKind::Other;
    std::vector<Complexd> eigenvalues;  // Jacobian restricted to the stoichiometric subspace
    bool stable = false;
    bool marginal = false;
};

FixedPointReport classify_fixed_point(const ReactionNetwork& net, const EpiDesignation& d,
                                      const Vec& x);
std::optional<FixedPointReport> endemic_point(const ReactionNetwork& net, const EpiDesignation& d);

}  // namespace crnepi
