#include "crnepi/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "crnepi/errors.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/ode.hpp"

namespace crnepi {

namespace {

using Index = Eigen::Index;

struct Terms {
    Mat zeta;  // n x R
    Vec kappa;
    std::vector<std::vector<std::pair<Index, int>>> exps;

    explicit Terms(const ReactionNetwork& net)
        : zeta(stoichiometric_matrix(net).cast<double>()), kappa(net.rate_constants()) {
        for (const auto& rx : net.reactions()) {
            std::vector<std::pair<Index, int>> e;
            for (const auto& [s, c] : rx.rate_complex().coeffs) e.emplace_back(static_cast<Index>(s), c);
            exps.push_back(std::move(e));
        }
    }

    double monomial(std::size_t r, const Vec& x) const {
        double m = kappa[static_cast<Index>(r)];
        for (const auto& [s, c] : exps[r]) m *= ipow(x[s], c);
        return m;
    }
    // d/dx_i of kappa x^y
    double monomial_dx(std::size_t r, const Vec& x, Index i) const {
        double m = kappa[static_cast<Index>(r)];
        bool has = false;
        for (const auto& [s, c] : exps[r]) {
            if (s == i) {
                has = true;
                m *= c * ipow(x[s], c - 1);
            } else {
                m *= ipow(x[s], c);
            }
        }
        return has ? m : 0.0;
    }
};

void check_dims(const ReactionNetwork& net, const Vec& x, const Vec& theta) {
    if (static_cast<std::size_t>(x.size()) != net.n_species() || x.size() != theta.size())
        fail(ErrorCode::DimensionMismatch, "phase point has the wrong dimension");
}

double eval_h(const Terms& tm, const Vec& x, const Vec& theta) {
    double h = 0.0;
    for (std::size_t r = 0; r < tm.exps.size(); ++r)
        h += std::expm1(tm.zeta.col(static_cast<Index>(r)).dot(theta)) * tm.monomial(r, x);
    return h;
}

void eval_rhs(const Terms& tm, const Vec& x, const Vec& theta, Vec& dx, Vec& dth) {
    const Index n = x.size();
    dx = Vec::Zero(n);
    dth = Vec::Zero(n);
    for (std::size_t r = 0; r < tm.exps.size(); ++r) {
        const double arg = tm.zeta.col(static_cast<Index>(r)).dot(theta);
        dx += std::exp(arg) * tm.monomial(r, x) * tm.zeta.col(static_cast<Index>(r));
        const double em1 = std::expm1(arg);
        if (em1 == 0.0) continue;
        for (Index i = 0; i < n; ++i) dth[i] -= em1 * tm.monomial_dx(r, x, i);
    }
}

struct Shot {
    std::vector<double> t;
    std::vector<PhasePoint> points;
    double miss = INFINITY;
    double max_drift = 0.0;
};

}  // namespace

double hamiltonian(const ReactionNetwork& net, const Vec& x, const Vec& theta) {
    check_dims(net, x, theta);
    check_nonnegative(x);
    return eval_h(Terms(net), x, theta);
}

Vec hamiltonian_dtheta(const ReactionNetwork& net, const Vec& x, const Vec& theta) {
    check_dims(net, x, theta);
    check_nonnegative(x);
    Vec dx, dth;
    eval_rhs(Terms(net), x, theta, dx, dth);
    return dx;
}

Vec hamiltonian_dx(const ReactionNetwork& net, const Vec& x, const Vec& theta) {
    check_dims(net, x, theta);
    check_nonnegative(x);
    Vec dx, dth;
    eval_rhs(Terms(net), x, theta, dx, dth);
    return -dth;
}

void hamilton_rhs(const ReactionNetwork& net, const PhasePoint& p, Vec& dx, Vec& dtheta) {
    check_dims(net, p.x, p.theta);
    check_nonnegative(p.x);
    eval_rhs(Terms(net), p.x, p.theta, dx, dtheta);
}

Mat hamiltonian_linearization(const ReactionNetwork& net, const Vec& x) {
    const Terms tm(net);
    const Index n = x.size();
    Mat d = Mat::Zero(n, n);
    for (std::size_t r = 0; r < tm.exps.size(); ++r) {
        const Vec z = tm.zeta.col(static_cast<Index>(r));
        d += tm.monomial(r, x) * z * z.transpose();
    }
    const Mat j = ode_jacobian(net, x);
    Mat m = Mat::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = j;
    m.topRightCorner(n, n) = d;
    m.bottomRightCorner(n, n) = -j.transpose();
    return m;
}

double action(const EscapePath& path) {
    double a = 0.0;
    for (std::size_t k = 1; k < path.points.size(); ++k) {
        const auto& p = path.points[k - 1];
        const auto& q = path.points[k];
        a += 0.5 * (p.theta + q.theta).dot(q.x - p.x);
    }
    return a;
}

EscapePath integrate_escape(const ReactionNetwork& net, const Vec& from, const Vec& to,
                            const EscapeOptions& opts) {
    const Index n = static_cast<Index>(net.n_species());
    if (n > 2) fail(ErrorCode::Unsupported, "escape paths are supported for 1-D and 2-D networks only");
    if (from.size() != n || to.size() != n) fail(ErrorCode::DimensionMismatch, "endpoint has the wrong dimension");
    check_nonnegative(from);
    check_nonnegative(to);
    const double scale = 1.0 + std::max(from.cwiseAbs().maxCoeff(), to.cwiseAbs().maxCoeff());
    if (ode_rhs(net, from).cwiseAbs().maxCoeff() > 1e-9 * scale)
        fail(ErrorCode::PreconditionViolated, "start point is not a fixed point");
    // boundary targets are allowed: extinction states need not be deterministic fixed points
    if (ode_rhs(net, to).cwiseAbs().maxCoeff() > 1e-9 * scale && to.minCoeff() > 0.0)
        fail(ErrorCode::PreconditionViolated, "target point is neither a fixed point nor on the boundary");

    EscapePath out;
    if ((from - to).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        out.t = {0.0};
        out.points = {{from, Vec::Zero(n)}};
        return out;
    }
    if (max_real_part(eigenvalues(ode_jacobian(net, from))) >= 0.0)
        fail(ErrorCode::PreconditionViolated, "start point is not a stable fixed point");

    const Terms tm(net);
    Eigen::EigenSolver<Mat> es(hamiltonian_linearization(net, from));
    std::vector<Vec> dirs;
    for (Index k = 0; k < es.eigenvalues().size() && static_cast<Index>(dirs.size()) < n; ++k) {
        const Complexd ev = es.eigenvalues()[k];
        if (ev.real() <= 1e-12) continue;
        const Eigen::VectorXcd v = es.eigenvectors().col(k);
        Vec re = v.real();
        if (re.norm() < 1e-12) re = v.imag();
        dirs.push_back(re / re.norm());
        if (std::abs(ev.imag()) > 1e-12 && static_cast<Index>(dirs.size()) < n) {
            Vec im = v.imag();
            dirs.push_back(im / im.norm());
            ++k;  // conjugate partner
        }
    }
    if (static_cast<Index>(dirs.size()) != n)
        fail(ErrorCode::NoHeteroclinicFound, "unstable manifold of the start point has the wrong dimension");

    const double h0 = 0.0;
    auto shoot = [&](const Vec& offset) {
        Shot s;
        Vec y0(2 * n);
        y0.head(n) = from + opts.epsilon * scale * offset.head(n);
        y0.tail(n) = opts.epsilon * scale * offset.tail(n);
        if (y0.head(n).minCoeff() < 0.0) return s;
        OdeRhs f = [&](double, const Vec& y, Vec& dy) {
            Vec dx, dth;
            eval_rhs(tm, y.head(n).cwiseMax(0.0), y.tail(n), dx, dth);
            dy.resize(2 * n);
            dy.head(n) = dx;
            dy.tail(n) = dth;
        };
        const double box = 10.0 * scale;
        double best = INFINITY;
        OdeOptions o;
        o.rtol = opts.rtol;
        o.atol = opts.atol;
        o.nonnegative_components = static_cast<std::size_t>(n);
        o.substeps = opts.substeps;
        o.max_steps = 2000000;
        o.stop = [&](double, const Vec& y) {
            const double dist = (y.head(n) - to).cwiseAbs().maxCoeff();
            best = std::min(best, dist);
            if (dist <= opts.stop_distance * scale) return true;
            if (y.head(n).cwiseAbs().maxCoeff() > box || !y.allFinite()) return true;
            // moving away after a close pass
            return best < opts.approach_tol * scale && dist > 10.0 * best + opts.approach_tol * scale;
        };
        const OdeSolution sol = integrate_ode(f, y0, 0.0, opts.t_max, o);
        std::size_t closest = 0;
        for (std::size_t k = 0; k < sol.x.size(); ++k) {
            const double dist = (sol.x[k].head(n) - to).cwiseAbs().maxCoeff();
            if (dist < s.miss) {
                s.miss = dist;
                closest = k;
            }
        }
        for (std::size_t k = 0; k <= closest && k < sol.x.size(); ++k) {
            s.t.push_back(sol.t[k]);
            s.points.push_back({sol.x[k].head(n), sol.x[k].tail(n)});
            const double h = eval_h(tm, sol.x[k].head(n).cwiseMax(0.0), sol.x[k].tail(n));
            s.max_drift = std::max(s.max_drift, std::abs(h - h0));
        }
        return s;
    };

    Shot best;
    if (n == 1) {
        Vec d = dirs[0];
        if ((to[0] - from[0]) * d[0] < 0.0) d = -d;
        best = shoot(d);
    } else {
        auto offset = [&](double phi) { return Vec(std::cos(phi) * dirs[0] + std::sin(phi) * dirs[1]); };
        const int m = std::max(8, opts.phase_samples);
        const double step = 2.0 * std::numbers::pi / m;
        double best_phi = 0.0;
        for (int k = 0; k < m; ++k) {
            Shot s = shoot(offset(k * step));
            if (s.miss < best.miss) {
                best = std::move(s);
                best_phi = k * step;
            }
        }
        // golden-section refinement of the phase around the best scan sample
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = best_phi - step, b = best_phi + step;
        double c = b - g * (b - a), d = a + g * (b - a);
        Shot sc = shoot(offset(c)), sd = shoot(offset(d));
        for (int it = 0; it < opts.max_bisections; ++it) {
            if (std::min(sc.miss, sd.miss) < best.miss) best = sc.miss < sd.miss ? sc : sd;
            if (best.miss <= opts.stop_distance * scale) break;
            if (sc.miss < sd.miss) {
                b = d;
                d = c;
                sd = std::move(sc);
                c = b - g * (b - a);
                sc = shoot(offset(c));
            } else {
                a = c;
                c = d;
                sc = std::move(sd);
                d = a + g * (b - a);
                sd = shoot(offset(d));
            }
        }
    }

    if (best.points.empty() || !(best.miss <= opts.approach_tol * scale))
        fail(ErrorCode::NoHeteroclinicFound,
             "no trajectory from the start point reached the target (closest miss " + std::to_string(best.miss) + ")");
    if (best.max_drift > opts.drift_tol)
        fail(ErrorCode::HDrift, "Hamiltonian drift " + std::to_string(best.max_drift) + " exceeds tolerance");
    out.t = std::move(best.t);
    out.points = std::move(best.points);
    out.miss = best.miss;
    out.max_drift = best.max_drift;
    out.action = action(out);
    return out;
}

}  // namespace crnepi
