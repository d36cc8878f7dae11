#pragma once

#include <vector>

#include "crnepi/network.hpp"
#include "crnepi/ode.hpp"

namespace crnepi {

IMat stoichiometric_matrix(const ReactionNetwork& net);

struct LaplacianDecomposition {
    IMat Y;   // n x n_C, columns are complexes
    IMat IE;  // n_C x n_R incidence
    Mat Ik;   // n_R x n_C, kappa at the source column
    Mat L;    // IE * Ik
};

LaplacianDecomposition laplacian_decomposition(const ReactionNetwork& net);

// x^y for every complex (columns of Y).
Vec complex_monomials(const ReactionNetwork& net, const Vec& x);
Vec mass_action_rates(const ReactionNetwork& net, const Vec& x);
Vec ode_rhs(const ReactionNetwork& net, const Vec& x);
Mat ode_jacobian(const ReactionNetwork& net, const Vec& x);

// Precomputed evaluator for inner loops (integration, Newton, SSA).
class MassAction {
public:
    explicit MassAction(const ReactionNetwork& net);
    MassAction(const ReactionNetwork& net, const Vec& kappa);

    std::size_t n_species() const { return n_; }
    std::size_t n_reactions() const { return kappa_.size(); }
    const Vec& kappa() const { return kappa_; }
    const Mat& gamma() const { return gamma_; }
    // sparse rate exponents of reaction r
    const std::vector<std::pair<int, int>>& exponents(std::size_t r) const { return exps_[r]; }

    void rates(const Vec& x, Vec& out) const;
    void rhs(const Vec& x, Vec& out) const;
    void jacobian(const Vec& x, Mat& out) const;
    OdeRhs as_ode() const;

private:
    std::size_t n_ = 0;
    Vec kappa_;
    Mat gamma_;
    std::vector<std::vector<std::pair<int, int>>> exps_;
    std::vector<std::vector<std::pair<int, double>>> deltas_;
};

double ipow(double x, int k);

void check_nonnegative(const Vec& x);

}  // namespace crnepi
