#pragma once

#include <functional>

#include "crnepi/linalg.hpp"

namespace crnepi {

using VecFn = std::function<Vec(const Vec&)>;
using MatFn = std::function<Mat(const Vec&)>;

struct NewtonOptions {
    int max_iter = 100;
    double tol = 1e-12;        // max-norm of the residual
    bool keep_positive = false; // fraction-to-boundary damping keeps x > 0
    double boundary_fraction = 0.995;
    double divergence_bound = 1e12;
};

enum class NewtonStatus { Converged, MaxIterations, Diverged, NonFinite, Stalled };

const char* to_string(NewtonStatus s);

struct NewtonResult {
    Vec x;  // root, or the last iterate on failure
    NewtonStatus status = NewtonStatus::MaxIterations;
    int iterations = 0;
    double residual = 0.0;
    bool converged() const { return status == NewtonStatus::Converged; }
};

// Damped Gauss-Newton; f may have more components than x (least-squares step).
NewtonResult newton_solve(const VecFn& f, const MatFn& jac, const Vec& x0,
                          const NewtonOptions& opts = {});

}  // namespace crnepi
