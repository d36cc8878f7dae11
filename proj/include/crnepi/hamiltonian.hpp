#pragma once

#include <vector>

#include "crnepi/network.hpp"

namespace crnepi {

struct PhasePoint {
    Vec x;
    Vec theta;
};

// H = sum_r (exp(zeta_r . theta) - 1) kappa_r x^y_r
double hamiltonian(const ReactionNetwork& net, const Vec& x, const Vec& theta);
Vec hamiltonian_dtheta(const ReactionNetwork& net, const Vec& x, const Vec& theta);
Vec hamiltonian_dx(const ReactionNetwork& net, const Vec& x, const Vec& theta);

// (dx/dt, dtheta/dt) = (dH/dtheta, -dH/dx)
void hamilton_rhs(const ReactionNetwork& net, const PhasePoint& p, Vec& dx, Vec& dtheta);

// Linearization of the Hamiltonian flow at (x, 0): [[J, D], [0, -J^T]].
Mat hamiltonian_linearization(const ReactionNetwork& net, const Vec& x);

struct EscapeOptions {
    double epsilon = 1e-6;       // initial offset along the unstable manifold
    int max_bisections = 64;     // phase refinements (2-D)
    int phase_samples = 64;      // initial phase scan (2-D)
    double approach_tol = 1e-4;  // accepted miss distance, relative to the state scale
    double stop_distance = 1e-9; // integration ends this close to the target
    double drift_tol = 1e-5;
    double t_max = 1e4;
    double rtol = 1e-11;
    double atol = 1e-14;
    int substeps = 16;
};

struct EscapePath {
    std::vector<double> t;
    std::vector<PhasePoint> points;
    double action = 0.0;
    double miss = 0.0;       // closest distance to the target state
    double max_drift = 0.0;  // max |H - H(start)|
};

// Shooting from the stable point `from` toward `to` (1-D and 2-D networks only).
EscapePath integrate_escape(const ReactionNetwork& net, const Vec& from, const Vec& to,
                            const EscapeOptions& opts = {});

// Trapezoidal sum of theta . dx along the path.
double action(const EscapePath& path);

}  // namespace crnepi
