#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "crnepi/exact.hpp"
#include "crnepi/network.hpp"

namespace crnepi {

struct Edge {
    std::size_t source;
    std::size_t product;
    std::size_t reaction;
};

struct FhjGraph {
    std::vector<std::size_t> vertices;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> linkage_classes;  // ordered by smallest vertex
};

// Graph-level kernels, shared with the translation module.
std::vector<std::vector<std::size_t>> connected_components(std::size_t n_vertices,
                                                           const std::vector<Edge>& edges);
std::vector<std::size_t> strong_components(std::size_t n_vertices, const std::vector<Edge>& edges);
bool graph_weakly_reversible(std::size_t n_vertices, const std::vector<Edge>& edges);

FhjGraph fhj_graph(const ReactionNetwork& net);
bool is_weakly_reversible(const ReactionNetwork& net);
std::size_t stoich_rank(const ReactionNetwork& net);
long deficiency(const ReactionNetwork& net);
std::vector<IntRow> conservation_laws(const ReactionNetwork& net);

inline constexpr std::size_t kMaxFluxReactions = 20;
std::vector<IntRow> flux_cone_rays(const ReactionNetwork& net);
std::size_t flux_cone_dimension(const ReactionNetwork& net);

Vec complex_balance_residual(const ReactionNetwork& net, const Vec& x);
bool is_complex_balanced(const ReactionNetwork& net, const Vec& x);

// (complex index, K(y)) for every vertex of the linkage class.
std::vector<std::pair<std::size_t, double>> tree_constants(const ReactionNetwork& net,
                                                           std::size_t linkage_class);
std::vector<bool> robust_ratio_check(const ReactionNetwork& net, const Vec& x);

std::string to_dot(const ReactionNetwork& net);

struct StructureReport {
    std::size_t n_species = 0;
    std::size_t n_reactions = 0;
    std::size_t n_complexes = 0;
    std::size_t n_linkage = 0;
    std::size_t stoich_rank = 0;
    long deficiency = 0;
    bool weakly_reversible = false;
    std::vector<IntRow> conservation_laws;
    std::optional<std::size_t> flux_cone_dim;  // absent beyond kMaxFluxReactions
};

StructureReport structure_report(const ReactionNetwork& net);

}  // namespace crnepi
