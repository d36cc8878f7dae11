#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crnepi/epi.hpp"
#include "crnepi/hamiltonian.hpp"
#include "crnepi/sirph.hpp"
#include "crnepi/stochastic.hpp"
#include "crnepi/structure.hpp"
#include "crnepi/translate.hpp"

namespace crnepi {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const std::vector<Complexd>& ev);
Json to_json(const IntRow& row);

Json network_json(const ReactionNetwork& net);
Json structure_json(const StructureReport& s, const std::vector<std::string>& species);
Json fixed_point_json(const FixedPointReport& fp);
Json ngm_json(const NgmResult& ngm);
Json sir_ph_json(const SirPhModel& m);
Json realization_json(const ReactionNetwork& net, const GmakRealization& g);
Json escape_json(const EscapePath& path);

struct EpiSummary {
    EpiDesignation designation;
    NgmResult ngm;
    bool routh_hurwitz_pass = false;
    FixedPointReport dfe;
    bool infected_block_stable = false;
    std::optional<FixedPointReport> endemic;
    std::optional<R0Identities> identities;  // absent when F has rank > 1
    std::optional<AcrR0Check> acr;
    std::optional<double> replacement_number;
    std::optional<SirPhModel> model;
    bool model_matches_network = false;
};

EpiSummary epi_summary(const ReactionNetwork& net, const SirPhModel* model = nullptr);
Json epi_json(const ReactionNetwork& net, const EpiSummary& s);

// Full `analyze` report: network, structure, and the epidemic block when declared.
Json analysis_report(const ReactionNetwork& net);
// `ngm` report: {dfe, F, V, K, R0, replacement_number, endemic, identities, ...}.
Json ngm_report(const ReactionNetwork& net, const SirPhModel* model = nullptr);

std::string format_matrix(const Mat& m, int precision = 6);

}  // namespace crnepi
