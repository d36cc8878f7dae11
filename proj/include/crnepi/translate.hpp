#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crnepi/network.hpp"

namespace crnepi {

struct TranslatedReaction {
    std::size_t base = 0;  // index of the reaction in the base network
    IVec source;           // y_r + t_r
    IVec product;          // y'_r + t_r
    IVec kinetic;          // y_r
};

struct GmakRealization {
    std::vector<IVec> shifts;
    std::vector<TranslatedReaction> reactions;
    std::vector<IVec> complexes;  // translated complexes, first-appearance order
    std::size_t n_linkage = 0;
    std::size_t stoich_rank = 0;
    long structural_deficiency = 0;
    long kinetic_deficiency = 0;
    bool weakly_reversible = false;
    bool nonphysical = false;             // some translated complex has a negative coefficient
    bool per_class_uniform = false;       // one shift per linkage class
    bool kinetic_map_consistent = false;  // reactions sharing a source share a kinetic complex
};

inline constexpr const char* kKineticDeficiencyDefinition = "translation-span";

GmakRealization apply_translation(const ReactionNetwork& net, const std::vector<IVec>& shifts);

// |C'| - l' - rank{kappa(w) - kappa(v) : v -> w}, kappa(v) being the kinetic complex of
// the lowest-index reaction leaving v (or, for pure products, the untranslated product).
long kinetic_deficiency(const GmakRealization& g);

// GMAK right-hand side: sum_r kappa_r x^{kinetic_r} (product' - source').
Vec realization_rhs(const ReactionNetwork& net, const GmakRealization& g, const Vec& x);

struct TranslationSearchOptions {
    int bound = 1;
    std::size_t node_cap = 50000000;
};

inline constexpr std::size_t kMaxTranslationReactions = 16;

// Weakly reversible, structurally zero-deficiency translations; DFS order over the
// candidate pool, duplicates (same multiset of translated reactions) dropped.
std::vector<GmakRealization> search_wr_zd(const ReactionNetwork& net,
                                          const TranslationSearchOptions& opts = {});

// Translated reactions as text, one "source -> product (kinetic)" entry per reaction.
std::vector<std::string> describe_reactions(const GmakRealization& g,
                                            const std::vector<std::string>& species);

}  // namespace crnepi
