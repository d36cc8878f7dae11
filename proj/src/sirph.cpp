#include "crnepi/sirph.hpp"

#include <cmath>

#include "crnepi/errors.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/kvtext.hpp"
#include "crnepi/rng.hpp"
#include "crnepi/structure.hpp"

namespace crnepi {

namespace {

using Index = Eigen::Index;

constexpr double kTol = 1e-12;

}  // namespace

Mat SirPhModel::V() const {
    Vec diag = delta.array() + Lambda;
    Mat v = -A;
    v.diagonal() += diag;
    return v;
}

bool SirPhModel::rank_one(double tol) const {
    const Mat outer = beta() * alpha.transpose();
    return (B - outer).cwiseAbs().maxCoeff() <= tol * std::max(1.0, B.cwiseAbs().maxCoeff());
}

void validate(const SirPhModel& m) {
    const Index n = m.alpha.size();
    if (n == 0) fail(ErrorCode::DimensionMismatch, "model has no infected phases");
    if (m.A.rows() != n || m.A.cols() != n)
        fail(ErrorCode::DimensionMismatch, "A must be " + std::to_string(n) + "x" + std::to_string(n));
    if (m.B.rows() != n || m.B.cols() != n)
        fail(ErrorCode::DimensionMismatch, "B must be " + std::to_string(n) + "x" + std::to_string(n));
    if (m.delta.size() != n) fail(ErrorCode::DimensionMismatch, "delta must have length " + std::to_string(n));

    bool strict = false;
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j)
            if (i != j && m.A(i, j) < 0.0)
                fail(ErrorCode::NotSubgenerator, "A has a negative off-diagonal entry");
        const double rs = m.A.row(i).sum();
        if (rs > kTol) fail(ErrorCode::NotSubgenerator, "A has a positive row sum");
        strict = strict || rs < -kTol;
    }
    if (!strict) fail(ErrorCode::NotSubgenerator, "A has no strictly negative row sum");
    if (m.alpha.minCoeff() < 0.0) fail(ErrorCode::NegativeEntry, "alpha has a negative entry");
    if (m.B.minCoeff() < 0.0) fail(ErrorCode::NegativeEntry, "B has a negative entry");
    if (m.delta.minCoeff() < 0.0) fail(ErrorCode::NegativeEntry, "delta has a negative entry");
    if (m.gamma_s < 0.0 || m.gamma_r < 0.0) fail(ErrorCode::NegativeEntry, "negative gamma_s or gamma_r");
    if (!(m.Lambda > 0.0)) fail(ErrorCode::NonPositiveParameter, "Lambda must be positive");
    if (m.alpha.sum() > 1.0 + kTol) fail(ErrorCode::InputError, "alpha sums to more than 1");
}

SirPhModel build_sir_ph(Vec alpha, Mat A, Mat B, Vec delta, double Lambda, double gamma_s,
                        double gamma_r) {
    SirPhModel m{std::move(alpha), std::move(A), std::move(B), std::move(delta), Lambda, gamma_s, gamma_r};
    validate(m);
    return m;
}

SirPhModel parse_sir_ph(std::string_view text) {
    const KeyValueText kv(text);
    kv.restrict_keys({"alpha", "A", "B", "delta", "Lambda", "gamma_s", "gamma_r"});
    Vec alpha = kv.vector("alpha");
    Vec delta = kv.has("delta") ? kv.vector("delta") : Vec::Zero(alpha.size());
    return build_sir_ph(alpha, kv.matrix("A"), kv.matrix("B"), delta, kv.scalar("Lambda"),
                        kv.scalar("gamma_s", 0.0), kv.scalar("gamma_r", 0.0));
}

SirPhModel load_sir_ph(const std::string& path) { return parse_sir_ph(read_text_file(path)); }

void sir_ph_rhs(const SirPhModel& m, double s, const Vec& i, double r, double& ds, Vec& di,
                double& dr) {
    const Vec beta = m.beta();
    ds = m.Lambda - (m.Lambda + m.gamma_s) * s - s * i.dot(beta) + m.gamma_r * r;
    di = s * (m.B.transpose() * i) - m.V().transpose() * i;
    dr = i.dot(m.exit_rates()) + m.gamma_s * s - (m.Lambda + m.gamma_r) * r;
}

bool validate_sir_ph_against_network(const SirPhModel& m, const ReactionNetwork& net,
                                     const EpiDesignation& d) {
    if (d.infected.size() != m.phases() || d.resident.size() != 1) return false;
    if (!net.params_bound()) return false;
    const MassAction ma(net);
    Rng rng(0x5eed5);
    Vec x(static_cast<Index>(net.n_species()));
    Vec rhs(x.size());
    Vec inf(static_cast<Index>(m.phases()));
    Vec di;
    for (int k = 0; k < 50; ++k) {
        for (Index j = 0; j < x.size(); ++j) x[j] = 0.05 + rng.uniform();
        ma.rhs(x, rhs);
        for (std::size_t a = 0; a < m.phases(); ++a) inf[static_cast<Index>(a)] = x[static_cast<Index>(d.infected[a])];
        double ds = 0.0, dr = 0.0;
        const Index s_ix = static_cast<Index>(d.susceptible);
        const Index r_ix = static_cast<Index>(d.resident[0]);
        sir_ph_rhs(m, x[s_ix], inf, x[r_ix], ds, di, dr);
        const double tol = 1e-10 * (1.0 + rhs.cwiseAbs().maxCoeff());
        if (std::abs(ds - rhs[s_ix]) > tol || std::abs(dr - rhs[r_ix]) > tol) return false;
        for (std::size_t a = 0; a < m.phases(); ++a)
            if (std::abs(di[static_cast<Index>(a)] - rhs[static_cast<Index>(d.infected[a])]) > tol) return false;
    }
    return true;
}

double replacement_number(const SirPhModel& m) {
    Eigen::FullPivLU<Mat> lu(m.V());
    if (!lu.isInvertible()) fail(ErrorCode::SingularV, "V is singular");
    return m.alpha.dot(lu.solve(m.beta()));
}

double renewal_kernel(const SirPhModel& m, double tau) {
    if (tau < 0.0) fail(ErrorCode::PreconditionViolated, "kernel age must be non-negative");
    return m.alpha.dot(expm(-m.V(), tau) * m.beta());
}

double kernel_laplace(const SirPhModel& m, double s) {
    Mat shifted = m.V();
    shifted.diagonal().array() += s;
    Eigen::FullPivLU<Mat> lu(shifted);
    if (!lu.isInvertible()) fail(ErrorCode::SingularShift, "sI + V is singular");
    return m.alpha.dot(lu.solve(m.beta()));
}

R0Identities check_r0_identities(const ReactionNetwork& net, const EpiDesignation& d,
                                 const SirPhModel* model) {
    const NgmResult ngm = ngm_decompose(net, d);
    if (numeric_rank(ngm.F) > 1) fail(ErrorCode::RankNotOne, "F has rank greater than one");
    if (model && !model->rank_one()) fail(ErrorCode::RankNotOne, "B is not of the form beta * alpha");
    R0Identities out;
    out.R0 = ngm.R0;
    out.s_dfe = ngm.dfe[static_cast<Index>(d.susceptible)];
    out.replacement = model ? replacement_number(*model) : (out.s_dfe > 0.0 ? out.R0 / out.s_dfe : 0.0);
    const double denom = std::max(out.R0, 1e-300);
    out.err_r0_sdfe_R = std::abs(out.R0 - out.s_dfe * out.replacement) / denom;
    if (auto ee = endemic_point(net, d)) {
        out.s_endemic = ee->state[static_cast<Index>(d.susceptible)];
        out.err_r0_ratio = std::abs(out.R0 - out.s_dfe / *out.s_endemic) / denom;
    }
    out.holds = out.err_r0_sdfe_R < 1e-9 && (!out.err_r0_ratio || *out.err_r0_ratio < 1e-8);
    return out;
}

std::optional<AcrR0Check> acr_r0_check(const ReactionNetwork& net, const EpiDesignation& d) {
    const NgmResult ngm = ngm_decompose(net, d);
    const auto ee = endemic_point(net, d);
    if (!ee) return std::nullopt;
    const Vec ref = reference_state(net, d);
    for (const auto& law : conservation_laws(net)) {
        const long long ws = law[d.susceptible];
        if (ws == 0) continue;
        double total = 0.0;
        for (std::size_t i = 0; i < law.size(); ++i) total += static_cast<double>(law[i]) * ref[static_cast<Index>(i)];
        AcrR0Check c;
        c.R0 = ngm.R0;
        c.total = total / static_cast<double>(ws);
        c.s_endemic = ee->state[static_cast<Index>(d.susceptible)];
        c.ratio = c.total / c.s_endemic;
        c.err = std::abs(c.R0 * c.R0 - c.ratio) / c.ratio;
        return c;
    }
    return std::nullopt;
}

}  // namespace crnepi
