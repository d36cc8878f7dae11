#include "crnepi/kinetics.hpp"

#include "crnepi/errors.hpp"

namespace crnepi {

double ipow(double x, int k) {
    double r = 1.0;
    while (k > 0) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

void check_nonnegative(const Vec& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] < 0.0 || std::isnan(x[i]))
            fail(ErrorCode::NegativeState, "component " + std::to_string(i) + " = " + std::to_string(x[i]));
}

IMat stoichiometric_matrix(const ReactionNetwork& net) {
    const auto n = static_cast<Eigen::Index>(net.n_species());
    IMat g = IMat::Zero(n, static_cast<Eigen::Index>(net.n_reactions()));
    for (std::size_t r = 0; r < net.n_reactions(); ++r) {
        const auto& rx = net.reactions()[r];
        g.col(static_cast<Eigen::Index>(r)) = rx.product.dense(net.n_species()) - rx.source.dense(net.n_species());
    }
    return g;
}

LaplacianDecomposition laplacian_decomposition(const ReactionNetwork& net) {
    const Vec kappa = net.rate_constants();
    const auto n = static_cast<Eigen::Index>(net.n_species());
    const auto nc = static_cast<Eigen::Index>(net.n_complexes());
    const auto nr = static_cast<Eigen::Index>(net.n_reactions());
    LaplacianDecomposition d;
    d.Y = IMat::Zero(n, nc);
    for (Eigen::Index c = 0; c < nc; ++c)
        d.Y.col(c) = net.complexes()[static_cast<std::size_t>(c)].dense(net.n_species());
    d.IE = IMat::Zero(nc, nr);
    d.Ik = Mat::Zero(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r) {
        auto s = static_cast<Eigen::Index>(net.source_index(static_cast<std::size_t>(r)));
        auto p = static_cast<Eigen::Index>(net.product_index(static_cast<std::size_t>(r)));
        d.IE(s, r) -= 1;
        d.IE(p, r) += 1;
        d.Ik(r, s) = kappa[r];
    }
    d.L = d.IE.cast<double>() * d.Ik;
    return d;
}

Vec complex_monomials(const ReactionNetwork& net, const Vec& x) {
    check_nonnegative(x);
    Vec m(static_cast<Eigen::Index>(net.n_complexes()));
    for (std::size_t c = 0; c < net.n_complexes(); ++c) {
        double v = 1.0;
        for (const auto& [i, e] : net.complexes()[c].coeffs) v *= ipow(x[static_cast<Eigen::Index>(i)], e);
        m[static_cast<Eigen::Index>(c)] = v;
    }
    return m;
}

MassAction::MassAction(const ReactionNetwork& net) : MassAction(net, net.rate_constants()) {}

MassAction::MassAction(const ReactionNetwork& net, const Vec& kappa)
    : n_(net.n_species()), kappa_(kappa), gamma_(stoichiometric_matrix(net).cast<double>()) {
    for (std::size_t r = 0; r < net.n_reactions(); ++r) {
        std::vector<std::pair<int, int>> e;
        for (const auto& [i, c] : net.reactions()[r].rate_complex().coeffs)
            e.emplace_back(static_cast<int>(i), c);
        exps_.push_back(std::move(e));
        std::vector<std::pair<int, double>> d;
        for (Eigen::Index i = 0; i < gamma_.rows(); ++i)
            if (gamma_(i, static_cast<Eigen::Index>(r)) != 0.0)
                d.emplace_back(static_cast<int>(i), gamma_(i, static_cast<Eigen::Index>(r)));
        deltas_.push_back(std::move(d));
    }
}

void MassAction::rates(const Vec& x, Vec& out) const {
    out.resize(kappa_.size());
    for (std::size_t r = 0; r < exps_.size(); ++r) {
        double v = kappa_[static_cast<Eigen::Index>(r)];
        for (const auto& [i, e] : exps_[r]) v *= ipow(x[i], e);
        out[static_cast<Eigen::Index>(r)] = v;
    }
}

void MassAction::rhs(const Vec& x, Vec& out) const {
    out = Vec::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t r = 0; r < exps_.size(); ++r) {
        double v = kappa_[static_cast<Eigen::Index>(r)];
        for (const auto& [i, e] : exps_[r]) v *= ipow(x[i], e);
        for (const auto& [i, g] : deltas_[r]) out[i] += g * v;
    }
}

void MassAction::jacobian(const Vec& x, Mat& out) const {
    const auto n = static_cast<Eigen::Index>(n_);
    out = Mat::Zero(n, n);
    for (std::size_t r = 0; r < exps_.size(); ++r) {
        const auto& ex = exps_[r];
        for (std::size_t jj = 0; jj < ex.size(); ++jj) {
            // d/dx_j of kappa * prod x^e
            double v = kappa_[static_cast<Eigen::Index>(r)] * ex[jj].second;
            for (std::size_t kk = 0; kk < ex.size(); ++kk) {
                const int e = kk == jj ? ex[kk].second - 1 : ex[kk].second;
                v *= ipow(x[ex[kk].first], e);
            }
            for (const auto& [i, g] : deltas_[r]) out(i, ex[jj].first) += g * v;
        }
    }
}

OdeRhs MassAction::as_ode() const {
    return [self = *this](double, const Vec& x, Vec& dx) { self.rhs(x, dx); };
}

Vec mass_action_rates(const ReactionNetwork& net, const Vec& x) {
    check_nonnegative(x);
    Vec out;
    MassAction(net).rates(x, out);
    return out;
}

Vec ode_rhs(const ReactionNetwork& net, const Vec& x) {
    check_nonnegative(x);
    Vec out;
    MassAction(net).rhs(x, out);
    return out;
}

Mat ode_jacobian(const ReactionNetwork& net, const Vec& x) {
    check_nonnegative(x);
    Mat out;
    MassAction(net).jacobian(x, out);
    return out;
}

}  // namespace crnepi
