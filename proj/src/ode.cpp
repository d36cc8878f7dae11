#include "crnepi/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crnepi {

const char* to_string(OdeStatus s) {
    switch (s) {
    case OdeStatus::Success: return "success";
    case OdeStatus::Stopped: return "stopped";
    case OdeStatus::StepSizeUnderflow: return "step-size-underflow";
    case OdeStatus::MaxSteps: return "max-steps";
    case OdeStatus::NonFinite: return "non-finite";
    }
    return "unknown";
}

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense output
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

double err_norm(const Vec& err, const Vec& y0, const Vec& y1, double atol, double rtol) {
    if (err.size() == 0) return 0.0;
    double s = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        double q = err[i] / sc;
        s += q * q;
    }
    return std::sqrt(s / static_cast<double>(err.size()));
}

}  // namespace

OdeSolution integrate_ode(const OdeRhs& rhs, const Vec& x0, double t0, double t1,
                          const OdeOptions& opts, const std::vector<double>& t_out) {
    OdeSolution sol;
    const Eigen::Index n = x0.size();
    const Eigen::Index nn = static_cast<Eigen::Index>(
        std::min<std::size_t>(static_cast<std::size_t>(n), opts.nonnegative_components));
    const bool dense = !t_out.empty();
    std::size_t next_out = 0;

    auto record = [&](double t, const Vec& x) {
        sol.t.push_back(t);
        sol.x.push_back(x);
    };

    Vec y = x0;
    double t = t0;
    if (!dense) record(t, y);
    while (dense && next_out < t_out.size() && t_out[next_out] <= t0) {
        record(t_out[next_out], y);
        ++next_out;
    }
    if (t1 <= t0 || n == 0) {
        if (n == 0)
            for (; next_out < t_out.size(); ++next_out) record(t_out[next_out], y);
        if (sol.t.empty()) record(t, y);
        return sol;
    }

    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y1(n), ysti(n), err(n);
    rhs(t, y, k1);

    double h = opts.h0;
    const double span = t1 - t0;
    if (h <= 0.0) {
        // Hairer's initial step heuristic
        double d0 = err_norm(y, y, y, opts.atol, opts.rtol);
        double dd1 = err_norm(k1, y, y, opts.atol, opts.rtol);
        double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
        h0 = std::min(h0, span);
        ytmp = y + h0 * k1;
        rhs(t + h0, ytmp, k2);
        double dd2 = err_norm(k2 - k1, y, y, opts.atol, opts.rtol) / h0;
        double mx = std::max(dd1, dd2);
        double h1 = mx <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / mx, 1.0 / 5.0);
        h = std::min(100 * h0, h1);
    }
    const double h_max = opts.h_max > 0 ? opts.h_max : span;
    h = std::min(h, h_max);

    int stiff_count = 0, nonstiff_count = 0;
    bool last_rejected = false;

    while (t < t1) {
        if (sol.accepted + sol.rejected + sol.rejected_negative >= opts.max_steps) {
            sol.status = OdeStatus::MaxSteps;
            break;
        }
        const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        if (h < h_min) {
            sol.status = OdeStatus::StepSizeUnderflow;
            break;
        }
        if (t + h > t1) h = t1 - t;

        ytmp = y + h * a21 * k1;
        rhs(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, ytmp, k5);
        ysti = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        const double tph = t + h;
        rhs(tph, ysti, k6);
        y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        rhs(tph, y1, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        if (!y1.allFinite() || !k7.allFinite()) {
            // treat as a failed step; shrink hard
            h *= 0.25;
            ++sol.rejected;
            last_rejected = true;
            if (h < h_min) {
                sol.status = OdeStatus::NonFinite;
                break;
            }
            continue;
        }

        double en = err_norm(err, y, y1, opts.atol, opts.rtol);
        if (en > 1.0) {
            ++sol.rejected;
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            last_rejected = true;
            continue;
        }

        if (opts.nonnegative) {
            bool bad = false;
            for (Eigen::Index i = 0; i < nn; ++i)
                if (y1[i] < -opts.clamp) bad = true;
            if (bad) {
                ++sol.rejected_negative;
                h *= 0.5;
                last_rejected = true;
                continue;
            }
        }

        // stiffness detection
        {
            double stnum = (k7 - k6).squaredNorm();
            double stden = (y1 - ysti).squaredNorm();
            if (stden > 0.0 && h * std::sqrt(stnum / stden) > 3.25) {
                nonstiff_count = 0;
                if (++stiff_count >= 15) sol.stiffness_detected = true;
            } else if (++nonstiff_count >= 6) {
                stiff_count = 0;
            }
        }

        if (dense || opts.substeps > 1) {
            const Vec ydiff = y1 - y;
            const Vec bspl = h * k1 - ydiff;
            const Vec r4 = ydiff - h * k7 - bspl;
            const Vec r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            auto interp = [&](double th) {
                const double th1 = 1.0 - th;
                Vec yo = y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)));
                if (opts.nonnegative)
                    for (Eigen::Index i = 0; i < nn; ++i)
                        if (yo[i] < 0.0) yo[i] = 0.0;
                return yo;
            };
            if (dense) {
                while (next_out < t_out.size() && t_out[next_out] <= tph) {
                    record(t_out[next_out], interp((t_out[next_out] - t) / h));
                    ++next_out;
                }
            } else {
                for (int k = 1; k < opts.substeps; ++k) {
                    const double th = static_cast<double>(k) / opts.substeps;
                    record(t + th * h, interp(th));
                }
            }
        }

        bool clamped = false;
        if (opts.nonnegative)
            for (Eigen::Index i = 0; i < nn; ++i)
                if (y1[i] < 0.0) {
                    y1[i] = 0.0;
                    clamped = true;
                }

        t = tph;
        y = y1;
        if (clamped) rhs(t, y, k1);
        else k1 = k7;
        ++sol.accepted;
        if (!dense) record(t, y);

        double fac = en == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));
        if (last_rejected) fac = std::min(fac, 1.0);
        last_rejected = false;
        h = std::min(h * fac, h_max);

        if (opts.stop && opts.stop(t, y)) {
            sol.status = OdeStatus::Stopped;
            break;
        }
    }
    if (dense) {
        // remaining requested times beyond a premature stop are not fabricated
        if (sol.t.empty()) record(t, y);
    }
    return sol;
}

}  // namespace crnepi
