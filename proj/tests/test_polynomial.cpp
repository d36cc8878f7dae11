#include <doctest.h>

#include "crnepi/kinetics.hpp"
#include "crnepi/polynomial.hpp"
#include "support.hpp"

using namespace crnepi;

namespace {

PolynomialSystem lorenz(double sigma, double rho, double beta) {
    // x y z = 0 1 2
    return PolynomialSystem({"x", "y", "z"},
                            {{{sigma, {{1, 1}}}, {-sigma, {{0, 1}}}},
                             {{rho, {{0, 1}}}, {-1.0, {{0, 1}, {2, 1}}}, {-1.0, {{1, 1}}}},
                             {{1.0, {{0, 1}, {1, 1}}}, {-beta, {{2, 1}}}}});
}

}  // namespace

TEST_CASE("polynomial: Lorenz has exactly one negative cross effect, -xz in y'") {
    auto sys = lorenz(10.0, 28.0, 8.0 / 3.0);
    auto v = detect_negative_cross_effects(sys);
    REQUIRE(v.size() == 1);
    CHECK(v[0].species == 1);
    CHECK(v[0].term.coeff == -1.0);
    CHECK(v[0].term.exps == Exponents{{0, 1}, {2, 1}});
    try {
        mak_realization(sys);
        FAIL("expected CrossEffectError");
    } catch (const CrossEffectError& e) {
        CHECK(e.code() == ErrorCode::CrossEffectPresent);
        REQUIRE(e.violations().size() == 1);
        CHECK(e.violations()[0].find("x*z") != std::string::npos);
    }
}

TEST_CASE("polynomial: evaluation of the Lorenz field") {
    auto sys = lorenz(10.0, 28.0, 8.0 / 3.0);
    Vec x(3);
    x << 1.0, 2.0, 3.0;
    Vec f = sys.evaluate(x);
    CHECK(f[0] == doctest::Approx(10.0));
    CHECK(f[1] == doctest::Approx(28.0 - 3.0 - 2.0));
    CHECK(f[2] == doctest::Approx(2.0 - 8.0));
}

TEST_CASE("polynomial: mass-action realization reproduces each fixture's right-hand side") {
    testing::Draws d(41);
    for (const char* name : testing::kAllNetworks) {
        CAPTURE(name);
        auto net = testing::fx(name);
        auto sys = polynomials_of(net);
        auto real = mak_realization(sys);
        CHECK(real.species() == net.species());
        for (int k = 0; k < 10; ++k) {
            Vec x(static_cast<Eigen::Index>(net.n_species()));
            for (auto& v : x) v = d.uniform(0.0, 4.0);
            Vec want = ode_rhs(net, x);
            CHECK((sys.evaluate(x) - want).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, want.cwiseAbs().maxCoeff()));
            CHECK((ode_rhs(real, x) - want).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, want.cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("polynomial: like terms merge and cancelled terms vanish") {
    PolynomialSystem sys({"a"}, {{{2.0, {{0, 1}}}, {-2.0, {{0, 1}}}, {1.0, {}}}});
    REQUIRE(sys.equations()[0].size() == 1);
    CHECK(sys.equations()[0][0].coeff == 1.0);
    auto net = mak_realization(sys);
    REQUIRE(net.n_reactions() == 1);
    CHECK(net.reactions()[0].source.is_zero());
}
