#include "crnepi/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "crnepi/errors.hpp"
#include "crnepi/kinetics.hpp"

namespace crnepi {

PolynomialSystem::PolynomialSystem(std::vector<std::string> variables,
                                   std::vector<std::vector<Term>> equations)
    : vars_(std::move(variables)) {
    if (equations.size() != vars_.size())
        fail(ErrorCode::DimensionMismatch, "one equation per variable required");
    for (auto& eq : equations) {
        std::map<Exponents, double> merged;
        for (const auto& t : eq) {
            Exponents e;
            for (const auto& [k, v] : t.exps) {
                if (k >= vars_.size()) fail(ErrorCode::UndeclaredSpecies, "variable index " + std::to_string(k));
                if (v < 0) fail(ErrorCode::NegativeEntry, "negative exponent");
                if (v > 0) e[k] = v;
            }
            merged[e] += t.coeff;
        }
        std::vector<Term> out;
        for (const auto& [e, c] : merged)
            if (c != 0.0) out.push_back({c, e});
        eqs_.push_back(std::move(out));
    }
}

Vec PolynomialSystem::evaluate(const Vec& x) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(vars_.size()));
    for (std::size_t i = 0; i < eqs_.size(); ++i)
        for (const auto& t : eqs_[i]) {
            double v = t.coeff;
            for (const auto& [k, e] : t.exps) v *= ipow(x[static_cast<Eigen::Index>(k)], e);
            out[static_cast<Eigen::Index>(i)] += v;
        }
    return out;
}

std::string format_term(const Term& t, const std::vector<std::string>& vars) {
    std::ostringstream os;
    os << t.coeff;
    for (const auto& [k, e] : t.exps) {
        os << '*' << vars[k];
        if (e != 1) os << '^' << e;
    }
    return os.str();
}

std::string describe(const CrossEffect& v, const std::vector<std::string>& vars) {
    return "term " + format_term(v.term, vars) + " in the " + vars[v.species] + " equation";
}

std::vector<CrossEffect> detect_negative_cross_effects(const PolynomialSystem& sys) {
    std::vector<CrossEffect> out;
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (const auto& t : sys.equations()[i])
            if (t.coeff < 0.0 && !t.exps.count(i)) out.push_back({i, t});
    return out;
}

ReactionNetwork mak_realization(const PolynomialSystem& sys) {
    auto viol = detect_negative_cross_effects(sys);
    if (!viol.empty()) {
        std::vector<std::string> d;
        for (const auto& v : viol) d.push_back(describe(v, sys.variables()));
        throw CrossEffectError(std::move(d));
    }
    std::vector<Reaction> rx;
    std::map<std::string, double> params;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        for (const auto& t : sys.equations()[i]) {
            Exponents prod = t.exps;
            if (t.coeff > 0) {
                prod[i] += 1;
            } else if (--prod[i] == 0) {
                prod.erase(i);
            }
            std::string name = "k" + std::to_string(rx.size() + 1);
            params[name] = std::abs(t.coeff);
            rx.push_back({Complex(t.exps), Complex(prod), name, std::nullopt});
        }
    }
    return ReactionNetwork(sys.variables(), std::move(rx), std::move(params));
}

PolynomialSystem polynomials_of(const ReactionNetwork& net) {
    const Vec kappa = net.rate_constants();
    const IMat g = stoichiometric_matrix(net);
    std::vector<std::vector<Term>> eqs(net.n_species());
    for (std::size_t r = 0; r < net.n_reactions(); ++r) {
        const auto& exps = net.reactions()[r].rate_complex().coeffs;
        for (std::size_t i = 0; i < net.n_species(); ++i) {
            const long long gi = g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r));
            if (gi != 0)
                eqs[i].push_back({static_cast<double>(gi) * kappa[static_cast<Eigen::Index>(r)], exps});
        }
    }
    return PolynomialSystem(net.species(), std::move(eqs));
}

}  // namespace crnepi
