#include <doctest.h>

#include "crnepi/epi.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/linalg.hpp"
#include "support.hpp"

using namespace crnepi;
using testing::fx;
using testing::rel_err;

namespace {

double poly_at(const std::vector<double>& p, double x) {
    double v = 0.0;
    for (double c : p) v = v * x + c;
    return v;
}

}  // namespace

TEST_CASE("epi: SIR with demography, closed forms") {
    testing::Draws d(101);
    auto base = fx("sir");
    for (int k = 0; k < 25; ++k) {
        const double L = d.uniform(0.05, 0.5), b = d.uniform(0.2, 4.0), g = d.uniform(0.1, 2.0);
        auto net = base.with_params({{"Lambda", L}, {"beta", b}, {"gamma", g}});
        auto des = designation(net);
        auto ngm = ngm_decompose(net, des);
        const double r0 = b / (g + L);
        CHECK(ngm.dfe[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rel_err(ngm.R0, r0) < 1e-12);
        CHECK(rel_err(ngm.F(0, 0), b) < 1e-12);
        CHECK(rel_err(ngm.V(0, 0), g + L) < 1e-12);
        if (std::abs(r0 - 1.0) < 1e-3) continue;
        auto dfe = classify_fixed_point(net, des, ngm.dfe);
        CHECK(dfe.kind == FixedPointKind::Dfe);
        CHECK(dfe.stable == (r0 < 1.0));
        CHECK(routh_hurwitz_shifted(ngm.charpoly_K) == (r0 < 1.0));
        auto end = endemic_point(net, des);
        CHECK(end.has_value() == (r0 > 1.0));
        if (end) {
            const double s = 1.0 / r0, i = L * (1.0 - s) / (g + L);
            CHECK(rel_err(end->state[0], s) < 1e-9);
            CHECK(rel_err(end->state[1], i) < 1e-9);
            CHECK(end->stable);
        }
    }
}

TEST_CASE("epi: SIRS with demography, DFE from the linear disease-free system") {
    auto net = fx("sirs_demography");
    const double lam = net.param("lambda"), mu = net.param("mu"), gs = net.param("gamma_s"),
                 gr = net.param("gamma_r"), gi = net.param("gamma_i"), mi = net.param("mu_i"),
                 b = net.param("beta");
    // S' = lam - (mu+gs) S + gr R, R' = gs S - (gr+mu) R
    const double s = lam / (mu + gs - gr * gs / (gr + mu));
    const double r = gs * s / (gr + mu);
    auto ngm = ngm_decompose(net, designation(net));
    CHECK(rel_err(ngm.dfe[0], s) < 1e-12);
    CHECK(ngm.dfe[1] == 0.0);
    CHECK(rel_err(ngm.dfe[2], r) < 1e-12);
    CHECK(rel_err(ngm.R0, b * s / (gi + mi)) < 1e-12);
    CHECK(ngm.v_is_m_matrix);
}

TEST_CASE("epi: SAIR next-generation matrix") {
    auto net = fx("sair");
    auto p = [&](const char* k) { return net.param(k); };
    const double L = p("Lambda"), gs = p("gamma_s"), gr = p("gamma_r");
    const double s = L / (L + gs - gr * gs / (gr + L));
    const double ga = p("a_i") + p("a_r") + L, gi = p("gamma_i") + p("mu_i");
    auto ngm = ngm_decompose(net, designation(net));
    // infected order A, I
    CHECK(rel_err(ngm.F(0, 0), p("beta_a") * s) < 1e-12);
    CHECK(rel_err(ngm.F(0, 1), p("beta_i") * s) < 1e-12);
    CHECK(ngm.F(1, 0) == 0.0);
    CHECK(ngm.F(1, 1) == 0.0);
    CHECK(rel_err(ngm.V(0, 0), ga) < 1e-12);
    CHECK(rel_err(ngm.V(1, 0), -p("a_i")) < 1e-12);
    CHECK(rel_err(ngm.V(1, 1), gi) < 1e-12);
    CHECK(ngm.V(0, 1) == 0.0);
    const double r0 = s * (p("beta_a") * gi + p("a_i") * p("beta_i")) / (gi * ga);
    CHECK(rel_err(ngm.R0, r0) < 1e-12);
    CHECK(rel_err(spectral_radius_r0(ngm), r0) < 1e-12);
    Mat k = ngm.F * ngm.V.inverse();
    CHECK((k - ngm.K).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("epi: EnvZ-OmpR NGM and R0") {
    testing::Draws d(103);
    auto base = fx("envz_ompr");
    for (int trial = 0; trial < 20; ++trial) {
        const double k1 = d.log_uniform(0.2, 5), k2 = d.log_uniform(0.2, 5), k3 = d.log_uniform(0.2, 5),
                     k4 = d.log_uniform(0.2, 5);
        auto net = base.with_params({{"k1", k1}, {"k2", k2}, {"k3", k3}, {"k4", k4}});
        auto des = designation(net);
        auto ngm = ngm_decompose(net, des);
        const Vec init = net.init_vector();
        const double ytot = init[3] + init[4], xtot = init[0] + init[1] + init[2];
        // DFE: all of X in Xp, all of Y in Yp
        CHECK(rel_err(ngm.dfe[2], xtot) < 1e-12);
        CHECK(rel_err(ngm.dfe[4], ytot) < 1e-12);
        Mat want = Mat::Zero(3, 3);
        want(0, 2) = 1.0;
        want(2, 0) = want(2, 1) = k4 * ytot / k2;
        CHECK((ngm.K - want).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, want.cwiseAbs().maxCoeff()));
        CHECK(rel_err(ngm.R0, std::sqrt(k4 * ytot / k2)) < 1e-12);
        // u^3 - (k4 y / k2) u
        REQUIRE(ngm.charpoly_K.size() == 4);
        CHECK(std::abs(ngm.charpoly_K[1]) < 1e-12);
        CHECK(rel_err(-ngm.charpoly_K[2], k4 * ytot / k2) < 1e-12);
        CHECK(std::abs(ngm.charpoly_K[3]) < 1e-12);
    }
}

TEST_CASE("epi: Tonello network R0 is (k1 + k2) B / k5") {
    auto net = fx("tonello");
    auto ngm = ngm_decompose(net, designation(net));
    const double btot = net.init_vector().sum();
    CHECK(rel_err(ngm.dfe[1], btot) < 1e-12);
    CHECK(rel_err(ngm.R0, (net.param("k1") + net.param("k2")) * btot / net.param("k5")) < 1e-12);
    CHECK(numeric_rank(ngm.F) == 1);
}

TEST_CASE("epi: Taylor shift matches direct evaluation") {
    testing::Draws d(107);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> p(5);
        for (double& c : p) c = d.uniform(-3, 3);
        const double c = d.uniform(-2, 2);
        auto q = shift_polynomial(p, c);
        for (double x : {-1.5, 0.0, 0.3, 2.0}) CHECK(std::abs(poly_at(q, x) - poly_at(p, x + c)) < 1e-10);
    }
}

TEST_CASE("epi: Routh-Hurwitz on ch(x+1) agrees with the spectral criterion") {
    testing::Draws d(109);
    int checked = 0;
    for (int k = 0; k < 200; ++k) {
        const int n = 1 + k % 4;
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = d.uniform(0.0, 1.0) / n;
        auto ev = eigenvalues(m);
        const double top = max_real_part(ev);
        if (std::abs(top - 1.0) < 1e-6) continue;
        CHECK(routh_hurwitz_shifted(charpoly(m)) == (top < 1.0));
        ++checked;
    }
    CHECK(checked > 150);
    // an eigenvalue exactly at 1 counts as R0 <= 1
    CHECK(routh_hurwitz_shifted({1.0, -1.0}));
    CHECK(!routh_hurwitz_shifted({1.0, -2.0}));
    CHECK(testing::code_of([] { routh_hurwitz_shifted({0.0, 0.0}); }) == ErrorCode::DegenerateArray);
}

TEST_CASE("epi: designation errors") {
    CHECK(testing::code_of([] { designation(fx("four_species_zd")); }) == ErrorCode::PreconditionViolated);
    auto net = fx("sir");
    CHECK(testing::code_of([&] { make_designation(net, {"I"}, "I"); }) == ErrorCode::PreconditionViolated);
    CHECK(testing::code_of([&] { make_designation(net, {"Q"}, "S"); }) == ErrorCode::UndeclaredSpecies);
    auto d = make_designation(net, {"I"}, "S");
    CHECK(d.resident == std::vector<std::size_t>{2});
}

TEST_CASE("epi: stability is judged on the stoichiometric subspace") {
    // closed SIRS: the conserved total gives a zero eigenvalue that must not count
    auto net = fx("sirs_closed");
    auto des = designation(net);
    auto ngm = ngm_decompose(net, des);
    auto end = endemic_point(net, des);
    REQUIRE(ngm.R0 > 1.0);
    REQUIRE(end.has_value());
    CHECK(end->eigenvalues.size() == 2);
    CHECK(end->stable);
    CHECK(ode_rhs(net, end->state).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(end->state.sum() - net.init_vector().sum()) < 1e-10);
}
