#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crnepi/exact.hpp"
#include "crnepi/linalg.hpp"
#include "crnepi/newton.hpp"
#include "crnepi/ode.hpp"
#include "crnepi/rng.hpp"
#include "support.hpp"

using namespace crnepi;

TEST_CASE("ode: exponential decay matches e^-t on the requested grid") {
    OdeRhs f = [](double, const Vec& x, Vec& dx) { dx = -x; };
    Vec x0(1);
    x0 << 1.0;
    std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 5.0};
    auto sol = integrate_ode(f, x0, 0.0, 5.0, {}, grid);
    REQUIRE(sol.ok());
    REQUIRE(sol.t.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(sol.x[k][0] - std::exp(-grid[k])) < 1e-9);
}

TEST_CASE("ode: harmonic oscillator keeps its phase over ten periods") {
    OdeRhs f = [](double, const Vec& x, Vec& dx) {
        dx.resize(2);
        dx << x[1], -x[0];
    };
    Vec x0(2);
    x0 << 1.0, 0.0;
    OdeOptions o;
    o.nonnegative = false;
    const double T = 20.0 * std::numbers::pi;
    auto sol = integrate_ode(f, x0, 0.0, T, o, {T});
    REQUIRE(sol.ok());
    CHECK(std::abs(sol.x_final()[0] - 1.0) < 1e-7);
    CHECK(std::abs(sol.x_final()[1]) < 1e-7);
}

TEST_CASE("ode: stop predicate ends the run early") {
    OdeRhs f = [](double, const Vec&, Vec& dx) { dx = Vec::Ones(1); };
    OdeOptions o;
    o.stop = [](double, const Vec& x) { return x[0] > 3.0; };
    auto sol = integrate_ode(f, Vec::Zero(1), 0.0, 100.0, o);
    CHECK(sol.status == OdeStatus::Stopped);
    CHECK(sol.t_final() < 100.0);
}

TEST_CASE("newton: solves a 2x2 polynomial system from a distant start") {
    VecFn f = [](const Vec& x) {
        Vec r(2);
        r << x[0] * x[0] + x[1] * x[1] - 4.0, x[0] - x[1];
        return r;
    };
    MatFn j = [](const Vec& x) {
        Mat m(2, 2);
        m << 2 * x[0], 2 * x[1], 1, -1;
        return m;
    };
    Vec x0(2);
    x0 << 5.0, 0.3;
    auto res = newton_solve(f, j, x0);
    REQUIRE(res.converged());
    CHECK(std::abs(res.x[0] - std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(res.x[1] - std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("linalg: expm of a rotation generator") {
    Mat m(2, 2);
    m << 0, -1, 1, 0;
    Mat e = expm(m, 0.7);
    CHECK(std::abs(e(0, 0) - std::cos(0.7)) < 1e-13);
    CHECK(std::abs(e(1, 0) - std::sin(0.7)) < 1e-13);
    CHECK(std::abs(e(0, 1) + std::sin(0.7)) < 1e-13);
}

TEST_CASE("linalg: charpoly coefficients are trace and determinant in 2-D") {
    testing::Draws d(3);
    for (int k = 0; k < 10; ++k) {
        Mat m(2, 2);
        m << d.uniform(-2, 2), d.uniform(-2, 2), d.uniform(-2, 2), d.uniform(-2, 2);
        auto p = charpoly(m);
        REQUIRE(p.size() == 3);
        CHECK(p[0] == 1.0);
        CHECK(std::abs(p[1] + m.trace()) < 1e-13);
        CHECK(std::abs(p[2] - m.determinant()) < 1e-13);
    }
}

TEST_CASE("linalg: charpoly roots reproduce the eigenvalues of a triangular matrix") {
    Mat m(3, 3);
    m << 1, 5, 7, 0, -2, 3, 0, 0, 4;
    auto roots = poly_roots(charpoly(m));
    std::vector<double> re;
    for (auto z : roots) re.push_back(z.real());
    std::sort(re.begin(), re.end());
    CHECK(std::abs(re[0] + 2) < 1e-10);
    CHECK(std::abs(re[1] - 1) < 1e-10);
    CHECK(std::abs(re[2] - 4) < 1e-10);
}

TEST_CASE("exact: rank and nullspaces of a small integer matrix") {
    IMat m(3, 4);
    m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 1;
    CHECK(exact_rank(m) == 2);
    auto right = integer_right_nullspace(m);
    CHECK(right.size() == 2);
    for (const auto& v : right)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            long long s = 0;
            for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j) * v[static_cast<std::size_t>(j)];
            CHECK(s == 0);
        }
    auto left = integer_left_nullspace(m);
    REQUIRE(left.size() == 1);
    CHECK(left[0] == IntRow{2, -1, 0});
}

TEST_CASE("exact: rank survives entries that overflow doubles' integer range") {
    IMat m(2, 2);
    const long long big = 3037000499LL;  // big^2 just below 2^63
    m << big, big - 1, big + 1, big;
    CHECK(exact_rank(m) == 2);  // det = 1
}

TEST_CASE("rng: halton radical inverse and seed derivation") {
    auto h1 = halton(1, 2);
    CHECK(h1[0] == 0.5);
    CHECK(std::abs(h1[1] - 1.0 / 3.0) < 1e-16);
    auto h2 = halton(2, 2);
    CHECK(h2[0] == 0.25);
    CHECK(std::abs(h2[1] - 2.0 / 3.0) < 1e-16);
    CHECK(derive_seed(7, 0) == derive_seed(7, 0));
    CHECK(derive_seed(7, 0) != derive_seed(7, 1));
    Rng a(9), b(9);
    for (int k = 0; k < 100; ++k) {
        double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
