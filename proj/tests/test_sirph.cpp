#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "crnepi/epi.hpp"
#include "crnepi/kvtext.hpp"
#include "crnepi/sirph.hpp"
#include "support.hpp"

using namespace crnepi;
using testing::code_of;
using testing::fx;
using testing::rel_err;

namespace {

SirPhModel model(const char* name) { return parse_sir_ph(resolve_text(name)); }

}  // namespace

TEST_CASE("sirph: SAIR replacement number, closed form") {
    auto m = model("sair.sirph");
    const double L = m.Lambda, ai = m.A(0, 1), ga = -m.A(0, 0), gi = -m.A(1, 1), dl = m.delta[1];
    const double ba = m.B(0, 0), bi = m.B(1, 0);
    const double want = (ba * (L + gi + dl) + ai * bi) / ((L + gi + dl) * (L + ga));
    CHECK(rel_err(replacement_number(m), want) < 1e-14);
    CHECK(m.rank_one());
}

TEST_CASE("sirph: SLIAR replacement number by path probabilities") {
    auto m = model("sliar.sirph");
    const double L = m.Lambda;
    // phases L, I, A with total exit rates (progression + Lambda)
    const double out_l = -m.A(0, 0) + L, out_i = -m.A(1, 1) + L, out_a = -m.A(2, 2) + L;
    const double p_i = m.A(0, 1) / out_l;
    const double p_a = m.A(0, 2) / out_l + p_i * m.A(1, 2) / out_i;
    const double want = p_i * m.B(1, 0) / out_i + p_a * m.B(2, 0) / out_a;
    CHECK(rel_err(replacement_number(m), want) < 1e-14);
}

TEST_CASE("sirph: renewal kernel integrates to the replacement number") {
    boost::math::quadrature::exp_sinh<double> integrator;
    for (const char* name : {"sair.sirph", "sliar.sirph", "sir.sirph"}) {
        CAPTURE(name);
        auto m = model(name);
        const double r = replacement_number(m);
        double err = 0.0;
        const double total = integrator.integrate([&](double t) { return renewal_kernel(m, t); }, 0.0,
                                                  std::numeric_limits<double>::infinity(), 1e-13, &err);
        CHECK(rel_err(total, r) < 1e-9);
        CHECK(rel_err(kernel_laplace(m, 0.0), r) < 1e-14);
        const double s = 0.37;
        const double lap = integrator.integrate([&](double t) { return std::exp(-s * t) * renewal_kernel(m, t); },
                                                0.0, std::numeric_limits<double>::infinity(), 1e-13, &err);
        CHECK(rel_err(kernel_laplace(m, s), lap) < 1e-9);
    }
}

TEST_CASE("sirph: single phase kernel is beta e^{-(gamma+Lambda) t}") {
    auto m = model("sir.sirph");
    const double rate = -m.A(0, 0) + m.Lambda;
    for (double t : {0.0, 0.5, 3.0, 10.0}) CHECK(rel_err(renewal_kernel(m, t), m.B(0, 0) * std::exp(-rate * t)) < 1e-12);
}

TEST_CASE("sirph: models agree with their networks") {
    CHECK(validate_sir_ph_against_network(model("sair.sirph"), fx("sair"), designation(fx("sair"))));
    CHECK(validate_sir_ph_against_network(model("sliar.sirph"), fx("sliar"), designation(fx("sliar"))));
    CHECK(validate_sir_ph_against_network(model("sir.sirph"), fx("sir"), designation(fx("sir"))));
    auto changed = fx("sair").with_params({{"beta_a", 0.9}});
    CHECK(!validate_sir_ph_against_network(model("sair.sirph"), changed, designation(changed)));
}

TEST_CASE("sirph: right-hand side in the row convention") {
    auto m = model("sair.sirph");
    Vec i(2);
    i << 0.1, 0.2;
    double ds = 0, dr = 0;
    Vec di;
    sir_ph_rhs(m, 0.6, i, 0.1, ds, di, dr);
    const double s = 0.6, r = 0.1;
    // ds = L - (L + gs) s - s i.beta + gr r
    CHECK(ds == doctest::Approx(m.Lambda - (m.Lambda + m.gamma_s) * s - s * (0.1 * 0.6 + 0.2 * 0.4) + m.gamma_r * r));
    // di = s i B - i V
    Eigen::RowVectorXd want = s * i.transpose() * m.B - i.transpose() * m.V();
    CHECK(di[0] == doctest::Approx(want[0]));
    CHECK(di[1] == doctest::Approx(want[1]));
}

TEST_CASE("sirph: R0 identities on SAIR and SLIAR") {
    for (const char* name : {"sair", "sliar"}) {
        CAPTURE(name);
        auto net = fx(name);
        auto m = model((std::string(name) + ".sirph").c_str());
        auto id = check_r0_identities(net, designation(net), &m);
        CHECK(id.holds);
        CHECK(rel_err(id.R0, id.s_dfe * id.replacement) < 1e-10);
        REQUIRE(id.s_endemic.has_value());
        CHECK(rel_err(*id.s_endemic, 1.0 / id.replacement) < 1e-8);
    }
}

TEST_CASE("sirph: rank conditions") {
    auto envz = fx("envz_ompr");
    CHECK(code_of([&] { check_r0_identities(envz, designation(envz)); }) == ErrorCode::RankNotOne);
    auto acr = acr_r0_check(envz, designation(envz));
    REQUIRE(acr.has_value());
    // Yp is absolutely robust at k2/k4
    CHECK(rel_err(acr->s_endemic, envz.param("k2") / envz.param("k4")) < 1e-8);
    CHECK(acr->err < 1e-8);
}

TEST_CASE("sirph: validation errors") {
    auto m = model("sair.sirph");
    auto bad = m;
    bad.A(0, 1) = -0.1;
    CHECK(code_of([&] { validate(bad); }) == ErrorCode::NotSubgenerator);
    bad = m;
    bad.A(1, 1) = 0.0;
    bad.A(0, 0) = -0.3;  // zero exit everywhere
    CHECK(code_of([&] { validate(bad); }) == ErrorCode::NotSubgenerator);
    bad = m;
    bad.B(0, 0) = -1;
    CHECK(code_of([&] { validate(bad); }) == ErrorCode::NegativeEntry);
    bad = m;
    bad.Lambda = 0.0;
    CHECK(code_of([&] { validate(bad); }) == ErrorCode::NonPositiveParameter);
    bad = m;
    bad.delta = Vec::Zero(3);
    CHECK(code_of([&] { validate(bad); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { parse_sir_ph("alpha = [1]\nA = [[-1]]\nB = [[1]]\nLambda = 1\nfoo = 2\n"); }) ==
          ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_sir_ph("alpha = [1\n"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("kvtext: bracket values may span lines") {
    KeyValueText kv("# c\nA = [[1, 2],\n     [3, 4]]\nx = 2.5 # trailing\n");
    CHECK(kv.scalar("x") == 2.5);
    Mat a = kv.matrix("A");
    CHECK(a(1, 0) == 3.0);
    CHECK(kv.scalar("missing", 7.0) == 7.0);
    CHECK(!kv.has("missing"));
}
