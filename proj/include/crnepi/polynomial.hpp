#pragma once

#include <map>
#include <string>
#include <vector>

#include "crnepi/network.hpp"

namespace crnepi {

using Exponents = std::map<std::size_t, int>;

struct Term {
    double coeff = 0.0;
    Exponents exps;
};

class PolynomialSystem {
public:
    PolynomialSystem() = default;
    // Like terms are merged; zero coefficients and zero exponents dropped.
    PolynomialSystem(std::vector<std::string> variables, std::vector<std::vector<Term>> equations);

    const std::vector<std::string>& variables() const { return vars_; }
    const std::vector<std::vector<Term>>& equations() const { return eqs_; }
    std::size_t size() const { return vars_.size(); }
    Vec evaluate(const Vec& x) const;

private:
    std::vector<std::string> vars_;
    std::vector<std::vector<Term>> eqs_;
};

struct CrossEffect {
    std::size_t species;
    Term term;
};

std::string describe(const CrossEffect& v, const std::vector<std::string>& vars);
std::string format_term(const Term& t, const std::vector<std::string>& vars);

std::vector<CrossEffect> detect_negative_cross_effects(const PolynomialSystem& sys);
// Throws CrossEffectError listing the violations.
ReactionNetwork mak_realization(const PolynomialSystem& sys);
PolynomialSystem polynomials_of(const ReactionNetwork& net);

}  // namespace crnepi
