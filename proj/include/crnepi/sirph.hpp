#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "crnepi/epi.hpp"

namespace crnepi {

// SIR-PH-FA model in the row-vector convention: i' = s i B - i V.
struct SirPhModel {
    Vec alpha;
    Mat A;
    Mat B;
    Vec delta;
    double Lambda = 0.0;
    double gamma_s = 0.0;
    double gamma_r = 0.0;

    std::size_t phases() const { return static_cast<std::size_t>(alpha.size()); }
    Vec beta() const { return B.rowwise().sum(); }
    Vec exit_rates() const { return -A.rowwise().sum(); }
    Mat V() const;
    bool rank_one(double tol = 1e-12) const;
};

// Throws DimensionMismatch, NotSubgenerator, NegativeEntry, NonPositiveParameter.
void validate(const SirPhModel& m);
SirPhModel build_sir_ph(Vec alpha, Mat A, Mat B, Vec delta, double Lambda, double gamma_s,
                        double gamma_r);
SirPhModel parse_sir_ph(std::string_view text);
SirPhModel load_sir_ph(const std::string& path);

// Right-hand side of the model on (s, i, r).
void sir_ph_rhs(const SirPhModel& m, double s, const Vec& i, double r, double& ds, Vec& di,
                double& dr);

bool validate_sir_ph_against_network(const SirPhModel& m, const ReactionNetwork& net,
                                     const EpiDesignation& d);

double replacement_number(const SirPhModel& m);
double renewal_kernel(const SirPhModel& m, double tau);
double kernel_laplace(const SirPhModel& m, double s);

struct R0Identities {
    double R0 = 0.0;
    double s_dfe = 0.0;
    double replacement = 0.0;          // alpha V^-1 beta, or R0 / s_dfe without a model
    std::optional<double> s_endemic;
    double err_r0_sdfe_R = 0.0;        // |R0 - s_dfe R| / R0
    std::optional<double> err_r0_ratio;  // |R0 - s_dfe / s_E| / R0
    bool holds = false;
};

// Requires a rank-one NGM (and a rank-one B when a model is given); RankNotOne otherwise.
R0Identities check_r0_identities(const ReactionNetwork& net, const EpiDesignation& d,
                                 const SirPhModel* model = nullptr);

// ACR analogue for networks whose susceptible species is absolutely robust:
// ratio = (conserved total through the susceptible) / s_E, compared with R0^2.
struct AcrR0Check {
    double R0 = 0.0;
    double total = 0.0;
    double s_endemic = 0.0;
    double ratio = 0.0;
    double err = 0.0;  // |R0^2 - ratio| / ratio
};
std::optional<AcrR0Check> acr_r0_check(const ReactionNetwork& net, const EpiDesignation& d);

}  // namespace crnepi
