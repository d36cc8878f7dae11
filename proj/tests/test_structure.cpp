#include <doctest.h>

#include <functional>
#include <numeric>

#include "crnepi/kinetics.hpp"
#include "crnepi/ode.hpp"
#include "crnepi/structure.hpp"
#include "support.hpp"

using namespace crnepi;
using testing::fx;

namespace {

// spanning in-trees rooted at `root`, by brute force over edge subsets
double enumerate_tree_constant(const std::vector<Edge>& edges, const Vec& kappa,
                               const std::vector<std::size_t>& verts, std::size_t root) {
    const std::size_t m = verts.size();
    double total = 0.0;
    // each non-root vertex picks exactly one outgoing edge; accept if all paths reach root
    std::vector<std::vector<const Edge*>> out(m);
    auto local = [&](std::size_t v) {
        return static_cast<std::size_t>(std::find(verts.begin(), verts.end(), v) - verts.begin());
    };
    for (const auto& e : edges)
        if (local(e.source) < m) out[local(e.source)].push_back(&e);
    std::vector<const Edge*> pick(m, nullptr);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == m) {
            for (std::size_t v = 0; v < m; ++v) {
                std::size_t cur = v, steps = 0;
                while (verts[cur] != root && steps <= m) {
                    cur = local(pick[cur]->product);
                    ++steps;
                }
                if (verts[cur] != root) return;
            }
            double w = 1.0;
            for (std::size_t v = 0; v < m; ++v)
                if (verts[v] != root) w *= kappa[static_cast<Eigen::Index>(pick[v]->reaction)];
            total += w;
            return;
        }
        if (verts[i] == root) {
            rec(i + 1);
            return;
        }
        for (const Edge* e : out[i]) {
            pick[i] = e;
            rec(i + 1);
        }
    };
    rec(0);
    return total;
}

ReactionNetwork permuted(const ReactionNetwork& net, const std::vector<std::size_t>& sp_perm,
                         bool reverse_reactions) {
    // new species k is old species sp_perm[k]
    std::vector<std::size_t> inv(sp_perm.size());
    for (std::size_t k = 0; k < sp_perm.size(); ++k) inv[sp_perm[k]] = k;
    auto remap = [&](const Complex& c) {
        std::map<std::size_t, int> m;
        for (const auto& [s, v] : c.coeffs) m[inv[s]] = v;
        return Complex(m);
    };
    std::vector<std::string> species;
    for (auto s : sp_perm) species.push_back(net.species()[s]);
    std::vector<Reaction> rx;
    for (const auto& r : net.reactions())
        rx.push_back({remap(r.source), remap(r.product), r.rate_name,
                      r.kinetic ? std::optional<Complex>(remap(*r.kinetic)) : std::nullopt});
    if (reverse_reactions) std::reverse(rx.begin(), rx.end());
    return ReactionNetwork(species, rx, net.params(), net.init(), net.epi());
}

std::size_t complex_index(const ReactionNetwork& net, std::map<std::size_t, int> c) {
    for (std::size_t k = 0; k < net.n_complexes(); ++k)
        if (net.complexes()[k] == Complex(c)) return k;
    FAIL("complex not found");
    return 0;
}

}  // namespace

TEST_CASE("structure: fixture invariants") {
    struct Row {
        const char* name;
        long delta;
        bool wr;
        std::size_t linkage;
        std::size_t rank;
    };
    // hand counts: complexes - linkage classes - rank
    const Row rows[] = {
        {"sirs_demography", 1, false, 2, 3}, {"sirs_mono", 0, true, 1, 3},
        {"sair", 2, false, 3, 4},            {"sliar", 2, false, 3, 5},
        {"envz_ompr", 1, false, 3, 3},       {"tonello", 2, false, 2, 3},
        {"wegscheider", 1, true, 1, 1},      {"four_species_zd", 0, true, 1, 2},
        {"birth_death", 0, true, 1, 1},      {"sirs_closed", 1, false, 2, 2},
    };
    for (const auto& row : rows) {
        CAPTURE(row.name);
        auto s = structure_report(fx(row.name));
        CHECK(s.deficiency == row.delta);
        CHECK(s.weakly_reversible == row.wr);
        CHECK(s.n_linkage == row.linkage);
        CHECK(s.stoich_rank == row.rank);
        CHECK(static_cast<long>(s.n_complexes) - static_cast<long>(s.n_linkage) - static_cast<long>(s.stoich_rank) ==
              s.deficiency);
    }
}

TEST_CASE("structure: conservation laws") {
    CHECK(conservation_laws(fx("sirs_closed")) == std::vector<IntRow>{{1, 1, 1}});
    CHECK(conservation_laws(fx("tonello")) == std::vector<IntRow>{{1, 1, 1, 1}});
    CHECK(conservation_laws(fx("sair")).empty());
    auto envz = conservation_laws(fx("envz_ompr"));  // X Xt Xp Y Yp
    REQUIRE(envz.size() == 2);
    std::sort(envz.begin(), envz.end());
    CHECK(envz[0] == IntRow{0, 0, 0, 1, 1});
    CHECK(envz[1] == IntRow{1, 1, 1, 0, 0});
    for (const char* name : testing::kAllNetworks) {
        CAPTURE(name);
        auto net = fx(name);
        IMat gamma = stoichiometric_matrix(net);
        for (const auto& law : conservation_laws(net))
            for (Eigen::Index r = 0; r < gamma.cols(); ++r) {
                long long dot = 0;
                for (Eigen::Index i = 0; i < gamma.rows(); ++i) dot += law[static_cast<std::size_t>(i)] * gamma(i, r);
                CHECK(dot == 0);
            }
    }
}

TEST_CASE("structure: flux cone dimension") {
    CHECK(flux_cone_dimension(fx("tonello")) == 2);
    CHECK(flux_cone_dimension(fx("birth_death")) == 1);
    // rays are non-negative kernel vectors of the stoichiometric matrix
    auto net = fx("sirs_demography");
    IMat gamma = stoichiometric_matrix(net);
    for (const auto& ray : flux_cone_rays(net)) {
        for (auto v : ray) CHECK(v >= 0);
        for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
            long long s = 0;
            for (Eigen::Index r = 0; r < gamma.cols(); ++r) s += gamma(i, r) * ray[static_cast<std::size_t>(r)];
            CHECK(s == 0);
        }
    }
}

TEST_CASE("structure: invariants do not depend on species or reaction order") {
    for (const char* name : {"sair", "sliar", "tonello", "sirs_mono", "envz_ompr"}) {
        CAPTURE(name);
        auto net = fx(name);
        std::vector<std::size_t> perm(net.n_species());
        std::iota(perm.begin(), perm.end(), 0);
        std::reverse(perm.begin(), perm.end());
        auto p = permuted(net, perm, true);
        auto a = structure_report(net), b = structure_report(p);
        CHECK(a.deficiency == b.deficiency);
        CHECK(a.weakly_reversible == b.weakly_reversible);
        CHECK(a.n_linkage == b.n_linkage);
        CHECK(a.stoich_rank == b.stoich_rank);
        CHECK(a.conservation_laws.size() == b.conservation_laws.size());
    }
}

TEST_CASE("structure: tree constants agree with spanning-tree enumeration") {
    testing::Draws d(11);
    for (const char* name : {"wegscheider", "four_species_zd", "sirs_mono", "birth_death"}) {
        CAPTURE(name);
        auto base = fx(name);
        for (int trial = 0; trial < 5; ++trial) {
            std::map<std::string, double> p;
            for (const auto& [k, v] : base.params()) p[k] = d.log_uniform(0.1, 10.0);
            auto net = base.with_params(p);
            auto g = fhj_graph(net);
            Vec kappa = net.rate_constants();
            for (std::size_t c = 0; c < g.linkage_classes.size(); ++c) {
                const auto& verts = g.linkage_classes[c];
                auto k = tree_constants(net, c);
                REQUIRE(k.size() == verts.size());
                for (const auto& [v, value] : k) {
                    double want = enumerate_tree_constant(g.edges, kappa, verts, v);
                    CHECK(testing::rel_err(value, want) < 1e-12);
                }
                // kernel of the class Laplacian
                Vec lk = Vec::Zero(static_cast<Eigen::Index>(net.n_complexes()));
                for (const auto& e : g.edges) {
                    auto it = std::find_if(k.begin(), k.end(), [&](auto& q) { return q.first == e.source; });
                    if (it == k.end()) continue;
                    const double flow = kappa[static_cast<Eigen::Index>(e.reaction)] * it->second;
                    lk[static_cast<Eigen::Index>(e.source)] -= flow;
                    lk[static_cast<Eigen::Index>(e.product)] += flow;
                }
                double scale = 0.0;
                for (auto& q : k) scale = std::max(scale, std::abs(q.second) * kappa.maxCoeff());
                CHECK(lk.cwiseAbs().maxCoeff() < 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("structure: non-weakly-reversible classes have no tree constants") {
    CHECK(testing::code_of([] { tree_constants(fx("sirs_demography"), 0); }) ==
          ErrorCode::NotStronglyConnected);
}

TEST_CASE("structure: a weakly reversible deficiency-zero network relaxes to a complex-balanced point") {
    auto net = fx("four_species_zd");
    OdeRhs f = [&](double, const Vec& x, Vec& dx) { dx = ode_rhs(net, x); };
    auto sol = integrate_ode(f, net.init_vector(), 0.0, 200.0);
    REQUIRE(sol.ok());
    Vec x = sol.x_final();
    CHECK(is_complex_balanced(net, x));
    auto ratios = robust_ratio_check(net, x);
    for (bool b : ratios) CHECK(b);
    // SIRS with demography is not complex balanced at its positive equilibrium
    auto sirs = fx("sirs_demography");
    OdeRhs g = [&](double, const Vec& x, Vec& dx) { dx = ode_rhs(sirs, x); };
    Vec x0(3);
    x0 << 0.5, 0.2, 0.3;
    auto s2 = integrate_ode(g, x0, 0.0, 400.0);
    REQUIRE(s2.ok());
    CHECK(ode_rhs(sirs, s2.x_final()).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(!is_complex_balanced(sirs, s2.x_final()));
}

TEST_CASE("structure: wegscheider tree constants are the displayed polynomials") {
    auto net = fx("wegscheider");
    const double k12 = net.param("kappa12"), k21 = net.param("kappa21"), k23 = net.param("kappa23"),
                 k32 = net.param("kappa32"), k13 = net.param("kappa13"), k31 = net.param("kappa31");
    auto k = tree_constants(net, 0);
    std::map<std::size_t, double> by;
    for (auto& [v, val] : k) by[v] = val;
    CHECK(testing::rel_err(by[complex_index(net, {{0, 2}})], k21 * k31 + k23 * k31 + k21 * k32) < 1e-12);
    CHECK(testing::rel_err(by[complex_index(net, {{0, 1}, {1, 1}})], k12 * k32 + k13 * k32 + k31 * k12) < 1e-12);
    CHECK(testing::rel_err(by[complex_index(net, {{1, 2}})], k13 * k21 + k12 * k23 + k13 * k23) < 1e-12);
}

TEST_CASE("structure: DOT output has one cluster per linkage class and labelled edges") {
    auto net = fx("sirs_demography");
    std::string dot = to_dot(net);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("subgraph cluster_0") != std::string::npos);
    CHECK(dot.find("subgraph cluster_1") != std::string::npos);
    CHECK(dot.find("subgraph cluster_2") == std::string::npos);
    std::size_t arrows = 0;
    for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++arrows;
    CHECK(arrows == net.n_reactions());
    CHECK(dot.find("label=\"beta\"") != std::string::npos);
    CHECK(dot.find("label=\"S + I\"") != std::string::npos);
}
