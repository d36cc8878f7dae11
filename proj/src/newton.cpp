#include "crnepi/newton.hpp"

#include <algorithm>
#include <cmath>

namespace crnepi {

const char* to_string(NewtonStatus s) {
    switch (s) {
    case NewtonStatus::Converged: return "converged";
    case NewtonStatus::MaxIterations: return "max-iterations";
    case NewtonStatus::Diverged: return "diverged";
    case NewtonStatus::NonFinite: return "non-finite";
    case NewtonStatus::Stalled: return "stalled";
    }
    return "unknown";
}

NewtonResult newton_solve(const VecFn& f, const MatFn& jac, const Vec& x0,
                          const NewtonOptions& opts) {
    NewtonResult res;
    res.x = x0;
    Vec r = f(res.x);
    if (!r.allFinite()) {
        res.status = NewtonStatus::NonFinite;
        res.residual = INFINITY;
        return res;
    }
    res.residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    int stalls = 0;

    for (int it = 0; it < opts.max_iter; ++it) {
        if (res.residual <= opts.tol) {
            res.status = NewtonStatus::Converged;
            return res;
        }
        Mat j = jac(res.x);
        Vec dx = j.colPivHouseholderQr().solve(-r);
        if (!dx.allFinite()) {
            res.status = NewtonStatus::NonFinite;
            return res;
        }
        double step = 1.0;
        if (opts.keep_positive) {
            for (Eigen::Index i = 0; i < dx.size(); ++i)
                if (dx[i] < 0.0 && res.x[i] > 0.0)
                    step = std::min(step, -opts.boundary_fraction * res.x[i] / dx[i]);
        }
        const double r2 = r.squaredNorm();
        Vec xt = res.x + step * dx;
        Vec rt = f(xt);
        int back = 0;
        while ((!rt.allFinite() || rt.squaredNorm() > (1.0 - 1e-4 * step) * r2) && back < 30) {
            step *= 0.5;
            xt = res.x + step * dx;
            rt = f(xt);
            ++back;
        }
        if (!rt.allFinite()) {
            res.status = NewtonStatus::NonFinite;
            return res;
        }
        stalls = (back == 30) ? stalls + 1 : 0;
        res.x = xt;
        r = rt;
        res.residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
        res.iterations = it + 1;
        if (res.x.size() && res.x.cwiseAbs().maxCoeff() > opts.divergence_bound) {
            res.status = NewtonStatus::Diverged;
            return res;
        }
        if (stalls >= 3) {
            res.status = res.residual <= opts.tol ? NewtonStatus::Converged : NewtonStatus::Stalled;
            return res;
        }
    }
    res.status = res.residual <= opts.tol ? NewtonStatus::Converged : NewtonStatus::MaxIterations;
    return res;
}

}  // namespace crnepi
