#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "crnepi/linalg.hpp"

namespace crnepi {

using OdeRhs = std::function<void(double t, const Vec& x, Vec& dxdt)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h0 = 0.0;               // 0 = automatic
    double h_max = 0.0;            // 0 = unbounded
    std::size_t max_steps = 2000000;
    // Components in [-clamp, 0) after a step are set to 0; lower values reject the step.
    bool nonnegative = true;
    double clamp = 1e-12;
    std::size_t nonnegative_components = static_cast<std::size_t>(-1);  // leading components only
    // With empty t_out: interpolated points recorded per accepted step (1 = step ends only).
    int substeps = 1;
    // Checked after every accepted step; returning true ends the integration.
    std::function<bool(double t, const Vec& x)> stop;
};

enum class OdeStatus { Success, Stopped, StepSizeUnderflow, MaxSteps, NonFinite };

const char* to_string(OdeStatus s);

struct OdeSolution {
    std::vector<double> t;
    std::vector<Vec> x;
    OdeStatus status = OdeStatus::Success;
    std::size_t accepted = 0;
    std::size_t rejected = 0;           // error-control rejections
    std::size_t rejected_negative = 0;  // rejections from the non-negativity clamp
    bool stiffness_detected = false;

    double t_final() const { return t.back(); }
    const Vec& x_final() const { return x.back(); }
    bool ok() const { return status == OdeStatus::Success || status == OdeStatus::Stopped; }
};

// Dormand-Prince 5(4) with dense output. With empty t_out every accepted step is
// recorded; otherwise the solution is sampled at t_out (ascending, inside [t0, t1]).
OdeSolution integrate_ode(const OdeRhs& rhs, const Vec& x0, double t0, double t1,
                          const OdeOptions& opts = {}, const std::vector<double>& t_out = {});

}  // namespace crnepi
