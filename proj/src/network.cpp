#include "crnepi/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "crnepi/errors.hpp"

namespace crnepi {

Complex::Complex(std::map<std::size_t, int> c) {
    for (const auto& [k, v] : c) {
        if (v < 0) fail(ErrorCode::NegativeEntry, "complex with negative coefficient");
        if (v != 0) coeffs.emplace(k, v);
    }
}

int Complex::at(std::size_t species) const {
    auto it = coeffs.find(species);
    return it == coeffs.end() ? 0 : it->second;
}

int Complex::order() const {
    int s = 0;
    for (const auto& kv : coeffs) s += kv.second;
    return s;
}

IVec Complex::dense(std::size_t n_species) const {
    IVec v = IVec::Zero(static_cast<Eigen::Index>(n_species));
    for (const auto& [k, c] : coeffs) v[static_cast<Eigen::Index>(k)] = c;
    return v;
}

Complex Complex::from_dense(const IVec& v) {
    std::map<std::size_t, int> m;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] != 0) m[static_cast<std::size_t>(i)] = static_cast<int>(v[i]);
    return Complex(std::move(m));
}

std::string format_vector_complex(const IVec& v, const std::vector<std::string>& species) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        long long c = v[i];
        if (c == 0) continue;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        long long a = c < 0 ? -c : c;
        if (a != 1) out += std::to_string(a);
        out += species[static_cast<std::size_t>(i)];
    }
    return out.empty() ? "0" : out;
}

std::string format_complex(const Complex& c, const std::vector<std::string>& species) {
    return format_vector_complex(c.dense(species.size()), species);
}

ReactionNetwork::ReactionNetwork(std::vector<std::string> species, std::vector<Reaction> reactions,
                                 std::map<std::string, double> params,
                                 std::map<std::string, double> init, std::optional<EpiDecl> epi)
    : species_(std::move(species)), reactions_(std::move(reactions)), params_(std::move(params)),
      init_(std::move(init)), epi_(std::move(epi)) {
    {
        std::set<std::string> seen;
        for (const auto& s : species_)
            if (!seen.insert(s).second) fail(ErrorCode::InputError, "species '" + s + "' declared twice");
    }
    auto check_complex = [&](const Complex& c) {
        for (const auto& kv : c.coeffs)
            if (kv.first >= species_.size())
                fail(ErrorCode::UndeclaredSpecies, "species index " + std::to_string(kv.first));
    };
    for (std::size_t r = 0; r < reactions_.size(); ++r) {
        const auto& rx = reactions_[r];
        check_complex(rx.source);
        check_complex(rx.product);
        if (rx.kinetic) check_complex(*rx.kinetic);
        if (rx.source == rx.product)
            fail(ErrorCode::SelfLoopReaction,
                 "reaction " + std::to_string(r + 1) + ": " + format_complex(rx.source, species_) +
                     " -> " + format_complex(rx.product, species_));
        for (std::size_t q = 0; q < r; ++q) {
            const auto& o = reactions_[q];
            if (o.source == rx.source && o.product == rx.product && o.kinetic == rx.kinetic)
                fail(ErrorCode::DuplicateReaction,
                     "reactions " + std::to_string(q + 1) + " and " + std::to_string(r + 1) + ": " +
                         format_complex(rx.source, species_) + " -> " +
                         format_complex(rx.product, species_));
        }
    }
    for (const auto& [k, v] : params_)
        if (!(v > 0.0) || !std::isfinite(v))
            fail(ErrorCode::NonPositiveParameter, k + " = " + std::to_string(v));
    for (const auto& [k, v] : init_) {
        if (!species_index(k)) fail(ErrorCode::UndeclaredSpecies, "init: " + k);
        if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorCode::NegativeState, "init: " + k);
    }
    if (epi_) {
        if (epi_->infected.empty()) fail(ErrorCode::InputError, "epi: infected set is empty");
        std::set<std::string> inf;
        for (const auto& s : epi_->infected) {
            require_species(s);
            if (!inf.insert(s).second) fail(ErrorCode::InputError, "epi: '" + s + "' listed twice");
        }
        require_species(epi_->susceptible);
        if (inf.count(epi_->susceptible))
            fail(ErrorCode::InputError, "epi: susceptible species is also infected");
    }

    auto index_of = [&](const Complex& c) {
        auto it = std::find(complexes_.begin(), complexes_.end(), c);
        if (it != complexes_.end()) return static_cast<std::size_t>(it - complexes_.begin());
        complexes_.push_back(c);
        return complexes_.size() - 1;
    };
    for (const auto& rx : reactions_) {
        source_idx_.push_back(index_of(rx.source));
        product_idx_.push_back(index_of(rx.product));
    }
}

std::optional<std::size_t> ReactionNetwork::species_index(std::string_view name) const {
    for (std::size_t i = 0; i < species_.size(); ++i)
        if (species_[i] == name) return i;
    return std::nullopt;
}

std::size_t ReactionNetwork::require_species(std::string_view name) const {
    auto i = species_index(name);
    if (!i) fail(ErrorCode::UndeclaredSpecies, std::string(name));
    return *i;
}

bool ReactionNetwork::is_mass_action() const {
    for (const auto& rx : reactions_)
        if (rx.kinetic && *rx.kinetic != rx.source) return false;
    return true;
}

double ReactionNetwork::param(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) fail(ErrorCode::UnboundParameter, name);
    return it->second;
}

Vec ReactionNetwork::rate_constants() const {
    Vec k(static_cast<Eigen::Index>(reactions_.size()));
    for (std::size_t r = 0; r < reactions_.size(); ++r)
        k[static_cast<Eigen::Index>(r)] = param(reactions_[r].rate_name);
    return k;
}

bool ReactionNetwork::params_bound() const {
    for (const auto& rx : reactions_)
        if (!params_.count(rx.rate_name)) return false;
    return true;
}

Vec ReactionNetwork::init_vector() const {
    Vec x = Vec::Zero(static_cast<Eigen::Index>(species_.size()));
    for (const auto& [k, v] : init_) x[static_cast<Eigen::Index>(*species_index(k))] = v;
    return x;
}

ReactionNetwork ReactionNetwork::with_params(const std::map<std::string, double>& overrides) const {
    auto p = params_;
    for (const auto& [k, v] : overrides) p[k] = v;
    return ReactionNetwork(species_, reactions_, std::move(p), init_, epi_);
}

ReactionNetwork ReactionNetwork::with_init(const std::map<std::string, double>& init) const {
    return ReactionNetwork(species_, reactions_, params_, init, epi_);
}

ReactionNetwork ReactionNetwork::with_epi(std::optional<EpiDecl> epi) const {
    return ReactionNetwork(species_, reactions_, params_, init_, std::move(epi));
}

std::string to_dsl(const ReactionNetwork& net) {
    std::ostringstream os;
    os.precision(17);
    os << "species";
    for (const auto& s : net.species()) os << ' ' << s;
    os << '\n';
    if (!net.params().empty()) {
        os << "params\n";
        for (const auto& [k, v] : net.params()) os << "  " << k << " = " << v << '\n';
    }
    os << "reactions\n";
    for (const auto& rx : net.reactions()) {
        os << "  " << format_complex(rx.source, net.species()) << " -> "
           << format_complex(rx.product, net.species()) << " : " << rx.rate_name;
        if (rx.kinetic) os << " ! kinetic = " << format_complex(*rx.kinetic, net.species());
        os << '\n';
    }
    if (net.epi()) {
        os << "epi\n  infected =";
        for (const auto& s : net.epi()->infected) os << ' ' << s;
        os << " ; susceptible = " << net.epi()->susceptible << '\n';
    }
    if (!net.init().empty()) {
        os << "init\n";
        for (const auto& [k, v] : net.init()) os << "  " << k << " = " << v << '\n';
    }
    return os.str();
}

}  // namespace crnepi
