#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnepi/linalg.hpp"

namespace crnepi {

struct Complex {
    std::map<std::size_t, int> coeffs;  // species index -> coefficient > 0

    Complex() = default;
    explicit Complex(std::map<std::size_t, int> c);

    bool is_zero() const { return coeffs.empty(); }
    int at(std::size_t species) const;
    int order() const;
    IVec dense(std::size_t n_species) const;
    static Complex from_dense(const IVec& v);  // requires v >= 0

    friend bool operator==(const Complex& a, const Complex& b) { return a.coeffs == b.coeffs; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
    friend bool operator<(const Complex& a, const Complex& b) { return a.coeffs < b.coeffs; }
};

std::string format_complex(const Complex& c, const std::vector<std::string>& species);
// Formats a possibly negative integer vector the same way ("0" when zero).
std::string format_vector_complex(const IVec& v, const std::vector<std::string>& species);

struct Reaction {
    Complex source;
    Complex product;
    std::string rate_name;
    std::optional<Complex> kinetic;

    const Complex& rate_complex() const { return kinetic ? *kinetic : source; }
};

struct EpiDecl {
    std::vector<std::string> infected;
    std::string susceptible;
};

class ReactionNetwork {
public:
    ReactionNetwork() = default;
    // Validates: declared species, no self loops, no duplicates, positive parameters.
    ReactionNetwork(std::vector<std::string> species, std::vector<Reaction> reactions,
                    std::map<std::string, double> params = {},
                    std::map<std::string, double> init = {}, std::optional<EpiDecl> epi = {});

    const std::vector<std::string>& species() const { return species_; }
    std::size_t n_species() const { return species_.size(); }
    const std::vector<Reaction>& reactions() const { return reactions_; }
    std::size_t n_reactions() const { return reactions_.size(); }
    const std::vector<Complex>& complexes() const { return complexes_; }
    std::size_t n_complexes() const { return complexes_.size(); }
    std::size_t source_index(std::size_t r) const { return source_idx_[r]; }
    std::size_t product_index(std::size_t r) const { return product_idx_[r]; }

    const std::map<std::string, double>& params() const { return params_; }
    const std::map<std::string, double>& init() const { return init_; }
    const std::optional<EpiDecl>& epi() const { return epi_; }

    std::optional<std::size_t> species_index(std::string_view name) const;
    std::size_t require_species(std::string_view name) const;  // throws UndeclaredSpecies

    bool is_mass_action() const;
    // Throws UnboundParameter when a rate name has no value.
    double param(const std::string& name) const;
    Vec rate_constants() const;
    bool params_bound() const;
    Vec init_vector() const;  // zeros for species without an init entry

    ReactionNetwork with_params(const std::map<std::string, double>& overrides) const;
    ReactionNetwork with_init(const std::map<std::string, double>& init) const;
    ReactionNetwork with_epi(std::optional<EpiDecl> epi) const;

private:
    std::vector<std::string> species_;
    std::vector<Reaction> reactions_;
    std::vector<Complex> complexes_;
    std::vector<std::size_t> source_idx_;
    std::vector<std::size_t> product_idx_;
    std::map<std::string, double> params_;
    std::map<std::string, double> init_;
    std::optional<EpiDecl> epi_;
};

// Network DSL text (see README for the grammar).
ReactionNetwork parse_network(std::string_view text);
ReactionNetwork load_network(const std::string& path);
std::string to_dsl(const ReactionNetwork& net);

}  // namespace crnepi
