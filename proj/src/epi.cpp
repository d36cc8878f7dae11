#include "crnepi/epi.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crnepi/errors.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/newton.hpp"
#include "crnepi/rng.hpp"
#include "crnepi/structure.hpp"

namespace crnepi {

namespace {

using Index = Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

struct Constraint {
    Vec row;  // conservation law over all species
    double total = 0.0;
};

std::vector<Constraint> conservation_constraints(const ReactionNetwork& net, const Vec& ref) {
    std::vector<Constraint> out;
    for (const auto& law : conservation_laws(net)) {
        Constraint c;
        c.row = Vec(ix(law.size()));
        for (std::size_t i = 0; i < law.size(); ++i) c.row[ix(i)] = static_cast<double>(law[i]);
        c.total = c.row.dot(ref);
        out.push_back(std::move(c));
    }
    return out;
}

double mass_scale(const Vec& ref) { return std::max(1.0, ref.cwiseAbs().sum()); }

}  // namespace

EpiDesignation make_designation(const ReactionNetwork& net, const std::vector<std::string>& infected,
                                const std::string& susceptible) {
    EpiDesignation d;
    if (infected.empty()) fail(ErrorCode::PreconditionViolated, "no infected species declared");
    std::set<std::size_t> seen;
    for (const auto& name : infected) {
        const std::size_t i = net.require_species(name);
        if (!seen.insert(i).second)
            fail(ErrorCode::PreconditionViolated, "species " + name + " listed twice as infected");
        d.infected.push_back(i);
    }
    d.susceptible = net.require_species(susceptible);
    if (seen.count(d.susceptible))
        fail(ErrorCode::PreconditionViolated, "susceptible species " + susceptible + " is also infected");
    for (std::size_t i = 0; i < net.n_species(); ++i)
        if (!seen.count(i) && i != d.susceptible) d.resident.push_back(i);
    return d;
}

EpiDesignation designation(const ReactionNetwork& net) {
    if (!net.epi())
        fail(ErrorCode::PreconditionViolated, "network has no epi section (infected/susceptible)");
    return make_designation(net, net.epi()->infected, net.epi()->susceptible);
}

Vec reference_state(const ReactionNetwork& net, const EpiDesignation& d) {
    if (!net.init().empty()) return net.init_vector();
    Vec ref = Vec::Zero(ix(net.n_species()));
    ref[ix(d.susceptible)] = 1.0;
    return ref;
}

Vec find_dfe(const ReactionNetwork& net, const EpiDesignation& d) {
    const MassAction ma(net);
    const std::size_t n = net.n_species();
    std::vector<std::size_t> free{d.susceptible};
    free.insert(free.end(), d.resident.begin(), d.resident.end());
    std::sort(free.begin(), free.end());
    const Index m = ix(free.size());

    const Vec ref = reference_state(net, d);
    std::vector<Constraint> cons;
    for (auto& c : conservation_constraints(net, ref)) {
        bool touches = false;
        for (std::size_t k : free) touches = touches || c.row[ix(k)] != 0.0;
        if (touches) cons.push_back(std::move(c));
    }

    auto embed = [&](const Vec& y) {
        Vec x = Vec::Zero(ix(n));
        for (Index k = 0; k < m; ++k) x[ix(free[static_cast<std::size_t>(k)])] = y[k];
        return x;
    };
    const Index rows = m + ix(cons.size());
    VecFn f = [&](const Vec& y) {
        const Vec x = embed(y);
        Vec full(ix(n));
        ma.rhs(x, full);
        Vec out(rows);
        for (Index k = 0; k < m; ++k) out[k] = full[ix(free[static_cast<std::size_t>(k)])];
        for (std::size_t c = 0; c < cons.size(); ++c) out[m + ix(c)] = cons[c].row.dot(x) - cons[c].total;
        return out;
    };
    MatFn jac = [&](const Vec& y) {
        const Vec x = embed(y);
        Mat full(ix(n), ix(n));
        ma.jacobian(x, full);
        Mat out(rows, m);
        for (Index a = 0; a < m; ++a)
            for (Index b = 0; b < m; ++b)
                out(a, b) = full(ix(free[static_cast<std::size_t>(a)]), ix(free[static_cast<std::size_t>(b)]));
        for (std::size_t c = 0; c < cons.size(); ++c)
            for (Index b = 0; b < m; ++b) out(m + ix(c), b) = cons[c].row[ix(free[static_cast<std::size_t>(b)])];
        return out;
    };

    const double scale = mass_scale(ref);
    NewtonOptions opts;
    opts.tol = 1e-13 * scale;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Vec y0 = Vec::Zero(m);
        if (attempt == 0) {
            const auto pos = std::find(free.begin(), free.end(), d.susceptible) - free.begin();
            y0[pos] = scale;
        } else {
            const auto h = halton(static_cast<std::uint64_t>(attempt), free.size());
            for (Index k = 0; k < m; ++k) y0[k] = h[static_cast<std::size_t>(k)] * scale;
        }
        const NewtonResult res = newton_solve(f, jac, y0, opts);
        if (res.residual > 1e-10 * scale) continue;
        if (res.x.minCoeff() < -1e-10 * scale) continue;
        Vec x = embed(res.x.cwiseMax(0.0));
        Vec full(ix(n));
        ma.rhs(x, full);
        if (full.cwiseAbs().maxCoeff() > 1e-10 * scale) continue;  // infected inflow at the boundary
        return x;
    }
    fail(ErrorCode::NoConvergence, "disease-free equilibrium not found after 8 Newton restarts");
}

NgmResult ngm_decompose(const ReactionNetwork& net, const EpiDesignation& d) {
    NgmResult out;
    try {
        out.dfe = find_dfe(net, d);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConvergence) throw;
        fail(ErrorCode::DfeNotFound, e.what());
    }
    const MassAction ma(net);
    const std::size_t k = d.infected.size();
    std::vector<int> pos(net.n_species(), -1);
    for (std::size_t a = 0; a < k; ++a) pos[d.infected[a]] = static_cast<int>(a);

    out.F = Mat::Zero(ix(k), ix(k));
    Mat J = Mat::Zero(ix(k), ix(k));
    const Mat& g = ma.gamma();
    for (std::size_t r = 0; r < ma.n_reactions(); ++r) {
        const auto& ex = ma.exponents(r);
        for (const auto& [j, yj] : ex) {
            if (pos[static_cast<std::size_t>(j)] < 0) continue;
            // d/dx_j of kappa x^y = kappa y_j x^(y - e_j)
            double mono = ma.kappa()[ix(r)] * yj;
            bool non_infected_factor = false;
            for (const auto& [s, ys] : ex) {
                const int e = (s == j) ? ys - 1 : ys;
                if (e <= 0) continue;
                mono *= ipow(out.dfe[s], e);
                if (pos[static_cast<std::size_t>(s)] < 0) non_infected_factor = true;
            }
            for (std::size_t a = 0; a < k; ++a) {
                const double gi = g(ix(d.infected[a]), ix(r));
                if (gi == 0.0) continue;
                const double c = gi * mono;
                const Index jj = pos[static_cast<std::size_t>(j)];
                J(ix(a), jj) += c;
                if (gi > 0.0 && non_infected_factor) out.F(ix(a), jj) += c;
            }
        }
    }
    out.V = out.F - J;

    Eigen::FullPivLU<Mat> lu(out.V);
    if (k > 0 && !lu.isInvertible()) fail(ErrorCode::SingularV, "V is singular at the DFE");
    out.K = (out.V.transpose().fullPivLu().solve(out.F.transpose())).transpose();
    out.R0 = spectral_radius_r0(out);
    out.charpoly_K = charpoly(out.K);

    const double tol = 1e-12 * std::max(1.0, out.V.cwiseAbs().maxCoeff());
    bool m_matrix = true;
    for (Index a = 0; a < out.V.rows(); ++a)
        for (Index b = 0; b < out.V.cols(); ++b)
            if (a != b && out.V(a, b) > tol) m_matrix = false;
    if (m_matrix && k > 0) {
        const Mat vinv = lu.inverse();
        m_matrix = vinv.minCoeff() >= -1e-12 * std::max(1.0, vinv.cwiseAbs().maxCoeff());
    }
    out.v_is_m_matrix = m_matrix;
    return out;
}

double spectral_radius_r0(const NgmResult& ngm) {
    if (ngm.K.size() == 0) return 0.0;
    if (!ngm.K.allFinite()) fail(ErrorCode::NoConvergence, "next-generation matrix is not finite");
    return spectral_radius(ngm.K);
}

std::vector<double> shift_polynomial(const std::vector<double>& p, double c) {
    // repeated synthetic division (Horner/Taylor shift), lowest degree first internally
    std::vector<double> a(p.rbegin(), p.rend());
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) a[j - 1] += c * a[j];
    return {a.rbegin(), a.rend()};
}

bool routh_hurwitz_shifted(const std::vector<double>& charpoly) {
    std::vector<double> p = shift_polynomial(charpoly, 1.0);
    while (!p.empty() && p.front() == 0.0) p.erase(p.begin());
    if (p.empty()) fail(ErrorCode::DegenerateArray, "zero polynomial");
    if (p.front() < 0.0)
        for (double& c : p) c = -c;
    const double scale = std::max(1.0, *std::max_element(p.begin(), p.end(),
                                                         [](double a, double b) { return std::abs(a) < std::abs(b); }));
    const double zero_tol = 1e-12 * scale;
    // roots of ch exactly at 1 are x = 0 here; they satisfy R0 <= 1
    while (p.size() > 1 && std::abs(p.back()) <= zero_tol) p.pop_back();
    const std::size_t deg = p.size() - 1;
    if (deg == 0) return true;

    const std::size_t width = deg / 2 + 1;
    std::vector<std::vector<double>> rows(deg + 1, std::vector<double>(width + 1, 0.0));
    for (std::size_t i = 0; i <= deg; ++i) rows[i % 2][i / 2] = p[i];
    const double eps = 1e-9 * scale;
    bool perturbed = false;
    for (std::size_t r = 2; r <= deg; ++r) {
        auto& prev = rows[r - 1];
        const auto& pprev = rows[r - 2];
        bool all_zero = true;
        for (double v : prev) all_zero = all_zero && std::abs(v) <= zero_tol;
        if (all_zero) fail(ErrorCode::DegenerateArray, "Routh array row " + std::to_string(r - 1) + " vanishes");
        if (std::abs(prev[0]) <= zero_tol) {
            prev[0] = eps;
            perturbed = true;
        }
        for (std::size_t c = 0; c < width; ++c)
            rows[r][c] = (prev[0] * pprev[c + 1] - pprev[0] * prev[c + 1]) / prev[0];
    }
    if (std::abs(rows[deg][0]) <= zero_tol) {
        bool all_zero = true;
        for (double v : rows[deg]) all_zero = all_zero && std::abs(v) <= zero_tol;
        if (all_zero) fail(ErrorCode::DegenerateArray, "last Routh array row vanishes");
        return false;
    }
    if (perturbed) return false;
    for (std::size_t r = 0; r <= deg; ++r)
        if (rows[r][0] <= 0.0) return false;
    return true;
}

const char* to_string(FixedPointKind k) {
    switch (k) {
    case FixedPointKind::Dfe: return "dfe";
    case FixedPointKind::Endemic: return "endemic";
    case FixedPointKind::Other: return "other";
    }
    return "other";
}

FixedPointReport classify_fixed_point(const ReactionNetwork& net, const EpiDesignation& d,
                                      const Vec& x) {
    FixedPointReport rep;
    rep.state = x;
    const double scale = 1.0 + x.cwiseAbs().maxCoeff();
    bool infected_zero = true;
    for (std::size_t i : d.infected) infected_zero = infected_zero && std::abs(x[ix(i)]) <= 1e-12 * scale;
    if (infected_zero)
        rep.kind = FixedPointKind::Dfe;
    else if (x.minCoeff() > 0.0)
        rep.kind = FixedPointKind::Endemic;

    const Mat gamma = stoichiometric_matrix(net).cast<double>();
    const Mat q = orthonormal_column_basis(gamma);
    const Mat j = ode_jacobian(net, x);
    const Mat restricted = q.transpose() * j * q;
    rep.eigenvalues = restricted.size() ? eigenvalues(restricted) : std::vector<Complexd>{};
    const double top = rep.eigenvalues.empty() ? -INFINITY : max_real_part(rep.eigenvalues);
    rep.stable = top < -kStabilityMargin;
    rep.marginal = std::abs(top) <= kStabilityMargin;
    return rep;
}

std::optional<Vec> positive_equilibrium(const ReactionNetwork& net, const Vec& ref,
                                        const std::function<bool(const Vec&)>& accept) {
    const MassAction ma(net);
    const std::size_t n = net.n_species();
    const auto cons = conservation_constraints(net, ref);
    const Index rows = ix(n + cons.size());
    VecFn f = [&](const Vec& x) {
        Vec full(ix(n));
        ma.rhs(x, full);
        Vec out(rows);
        out.head(ix(n)) = full;
        for (std::size_t c = 0; c < cons.size(); ++c) out[ix(n + c)] = cons[c].row.dot(x) - cons[c].total;
        return out;
    };
    MatFn jac = [&](const Vec& x) {
        Mat full(ix(n), ix(n));
        ma.jacobian(x, full);
        Mat out(rows, ix(n));
        out.topRows(ix(n)) = full;
        for (std::size_t c = 0; c < cons.size(); ++c) out.row(ix(n + c)) = cons[c].row.transpose();
        return out;
    };

    const double scale = mass_scale(ref);
    auto ok = [&](const Vec& x) {
        return x.allFinite() && x.minCoeff() > 1e-12 * scale && (!accept || accept(x));
    };
    NewtonOptions opts;
    opts.keep_positive = true;
    opts.tol = 1e-13 * scale;
    opts.max_iter = 200;
    for (std::uint64_t start = 1; start <= 16; ++start) {
        const auto h = halton(start, n);
        Vec x0(ix(n));
        for (std::size_t i = 0; i < n; ++i) x0[ix(i)] = h[i] * scale;
        const NewtonResult res = newton_solve(f, jac, x0, opts);
        if (res.residual > 1e-10 * scale || !ok(res.x)) continue;
        Vec x = res.x;
        NewtonOptions polish;
        polish.max_iter = 5;
        polish.tol = 0.0;
        const NewtonResult pol = newton_solve(f, jac, x, polish);
        if (ok(pol.x) && pol.residual <= res.residual) x = pol.x;
        return x;
    }
    return std::nullopt;
}

std::optional<FixedPointReport> endemic_point(const ReactionNetwork& net, const EpiDesignation& d) {
    const Vec ref = reference_state(net, d);
    const double scale = mass_scale(ref);
    auto infected_present = [&](const Vec& x) {
        double inf_max = 0.0;
        for (std::size_t i : d.infected) inf_max = std::max(inf_max, x[ix(i)]);
        return inf_max > 1e-9 * scale;
    };
    const auto x = positive_equilibrium(net, ref, infected_present);
    if (!x) return std::nullopt;
    FixedPointReport rep = classify_fixed_point(net, d, *x);
    rep.kind = FixedPointKind::Endemic;
    return rep;
}

}  // namespace crnepi
