#include <doctest.h>

#include <boost/math/distributions/poisson.hpp>

#include <map>

#include "crnepi/stochastic.hpp"
#include "crnepi/structure.hpp"
#include "support.hpp"

using namespace crnepi;
using testing::fx;

namespace {

const char* kOrders = R"(species A B
params
  k1 = 0.5, k2 = 2, k3 = 3, k4 = 1.5
reactions
  2A -> B : k1
  A + B -> 0 : k2
  3A -> A : k3
  0 -> A : k4
)";

double ks(const PhaseTypeModel& m, std::vector<double> s) {
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double cdf = 1.0 - phase_type_survival(m, s[k]);
        d = std::max({d, std::abs((k + 1) / n - cdf), std::abs(k / n - cdf)});
    }
    return d;
}

}  // namespace

TEST_CASE("stochastic: propensities use falling factorials") {
    auto net = parse_network(kOrders);
    for (long long a = 0; a <= 6; ++a)
        for (long long b = 0; b <= 3; ++b) {
            Vec p = propensity(net, {a, b});
            CHECK(p[0] == 0.5 * a * (a - 1));
            CHECK(p[1] == 2.0 * a * b);
            CHECK(p[2] == 3.0 * a * (a - 1) * (a - 2));
            CHECK(p[3] == 1.5);
        }
    CHECK(testing::code_of([&] { propensity(net, {-1, 0}); }) == ErrorCode::NegativeState);
}

TEST_CASE("stochastic: identical seeds give identical trajectories") {
    auto net = fx("sirs_demography").with_params({{"lambda", 20.0}});
    Counts init{20, 5, 0};
    auto a = ssa_simulate(net, init, 5.0, 7);
    auto b = ssa_simulate(net, init, 5.0, 7);
    CHECK(a.times == b.times);
    CHECK(a.states == b.states);
    auto c = ssa_simulate(net, init, 5.0, 8);
    CHECK(c.times != a.times);
    auto r1 = ssa_replicas(net, init, 2.0, 6, 11, 1);
    auto r3 = ssa_replicas(net, init, 2.0, 6, 11, 3);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(r1[k].times == r3[k].times);
        CHECK(r1[k].states == r3[k].states);
        CHECK(r1[k].seed == derive_seed(11, k));
    }
}

TEST_CASE("stochastic: conservation and non-negativity along SSA paths") {
    for (const char* name : {"sirs_mono_closed", "tonello", "sirs_closed", "four_species_zd"}) {
        CAPTURE(name);
        auto net = fx(name);
        Counts init(net.n_species(), 10);
        auto laws = conservation_laws(net);
        auto tr = ssa_simulate(net, init, 20.0, 3);
        for (const auto& x : tr.states) {
            for (long long v : x) CHECK(v >= 0);
            for (const auto& law : laws) {
                long long s0 = 0, s = 0;
                for (std::size_t i = 0; i < law.size(); ++i) {
                    s0 += law[i] * init[i];
                    s += law[i] * x[i];
                }
                CHECK(s == s0);
            }
        }
    }
}

TEST_CASE("stochastic: immigration-death occupancy is Poisson") {
    auto net = fx("birth_death");
    ProductFormOptions o;
    o.samples = 200000;
    o.seed = 5;
    auto rep = product_form_check(net, {2}, o);
    const double mean = net.param("lambda") / net.param("mu");
    CHECK(testing::rel_err(rep.equilibrium[0], mean) < 1e-10);
    // class enumeration reproduces Poisson weights; TV bounded by sampling noise
    CHECK(rep.tv_distance < 0.03);
    CHECK(rep.class_states > 20);
    // independent occupancy from a plain SSA run against the Poisson pmf
    auto tr = ssa_simulate(net, {2}, 50000.0, 19);
    std::map<long long, double> occ;
    for (std::size_t k = 0; k + 1 < tr.times.size(); ++k) occ[tr.states[k][0]] += tr.times[k + 1] - tr.times[k];
    const double total = tr.times.back();
    boost::math::poisson_distribution<double> pois(mean);
    double tv = 0.0, covered = 0.0;
    for (long long n = 0; n < 40; ++n) {
        const double pn = boost::math::pdf(pois, static_cast<double>(n));
        tv += std::abs((occ.count(n) ? occ[n] : 0.0) / total - pn);
        covered += pn;
    }
    tv = 0.5 * (tv + (1.0 - covered));
    CHECK(tv < 0.03);
}

TEST_CASE("stochastic: product form needs a weakly reversible deficiency-zero network") {
    CHECK(testing::code_of([] { product_form_check(fx("sirs_closed"), {10, 2, 0}); }) ==
          ErrorCode::NotComplexBalanced);
}

TEST_CASE("stochastic: linear birth-death extinction frequency") {
    // I -> 2I at rate b, I -> 0 at rate mu; from one individual, extinction w.p. mu / b
    auto net = parse_network("species I\nparams\n  b = 2, mu = 1\nreactions\n  I -> 2I : b\n  I -> 0 : mu\n");
    const std::size_t runs = 20000;
    std::size_t extinct = 0;
    SsaOptions o;
    o.record = false;
    o.stop = [](double, const Counts& x) { return x[0] >= 60; };
    for (std::size_t k = 0; k < runs; ++k) {
        auto tr = ssa_simulate(net, {1}, 1e9, derive_seed(77, k), o);
        if (tr.states.back()[0] == 0) ++extinct;
    }
    const double q = extinction_probability_linear(2.0, 1.0, 1);
    CHECK(q == 0.5);
    const double freq = static_cast<double>(extinct) / runs;
    const double se = std::sqrt(q * (1 - q) / runs);
    CHECK(std::abs(freq - q) < 3.5 * se);
    CHECK(extinction_probability_linear(0.5, 1.0, 3) == 1.0);
    CHECK(extinction_probability_linear(4.0, 1.0, 2) == 0.0625);
}

TEST_CASE("stochastic: phase-type survival, density and mean") {
    auto m = parse_phase_type(resolve_text("sair_progression.ph"));
    CHECK(phase_type_survival(m, 0.0) == doctest::Approx(1.0));
    // time in A is Exp(0.5); with probability 0.6 a further Exp(0.25) in I
    CHECK(testing::rel_err(phase_type_mean(m), 1 / 0.5 + 0.6 / 0.25) < 1e-13);
    for (double t : {0.3, 1.0, 4.0, 12.0}) {
        // hypoexponential closed form
        const double l1 = 0.5, l2 = 0.25, p = 0.6;
        const double s_direct = (1 - p) * std::exp(-l1 * t);
        const double s_via = p * (std::exp(-l1 * t) + l1 * (std::exp(-l2 * t) - std::exp(-l1 * t)) / (l1 - l2));
        CHECK(testing::rel_err(phase_type_survival(m, t), s_direct + s_via) < 1e-12);
        const double h = 1e-5;
        const double fd = -(phase_type_survival(m, t + h) - phase_type_survival(m, t - h)) / (2 * h);
        CHECK(std::abs(phase_type_density(m, t) - fd) < 1e-8);
    }
    auto draws = sample_absorption_times(m, 20000, 9);
    CHECK(ks(m, draws) < 0.015);
    double mean = 0.0;
    for (double x : draws) mean += x;
    mean /= draws.size();
    CHECK(std::abs(mean - phase_type_mean(m)) < 0.1);
}

TEST_CASE("stochastic: phase-type validation") {
    CHECK(testing::code_of([] { parse_phase_type("alpha = [1, 0]\nA = [[-1, 2], [0, -1]]\n"); }) ==
          ErrorCode::NotSubgenerator);
    CHECK(testing::code_of([] { parse_phase_type("alpha = [1]\nA = [[-1, 0], [0, -1]]\n"); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(testing::code_of([] { parse_phase_type("alpha = [-1]\nA = [[-1]]\n"); }) == ErrorCode::NegativeEntry);
    PhaseTypeModel closed{Vec::Ones(1), Mat::Zero(1, 1)};
    CHECK(testing::code_of([&] { phase_type_dwell_times(closed); }) == ErrorCode::SingularA);
}
