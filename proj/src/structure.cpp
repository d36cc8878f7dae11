#include "crnepi/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>

#include "crnepi/errors.hpp"
#include "crnepi/kinetics.hpp"

namespace crnepi {

std::vector<std::vector<std::size_t>> connected_components(std::size_t n_vertices,
                                                           const std::vector<Edge>& edges) {
    std::vector<std::size_t> parent(n_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : edges) {
        auto a = find(e.source), b = find(e.product);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<long> slot(n_vertices, -1);
    for (std::size_t v = 0; v < n_vertices; ++v) {
        auto root = find(v);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[root])].push_back(v);
    }
    return out;
}

std::vector<std::size_t> strong_components(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) adj[e.source].push_back(e.product);
    const std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset), stack;
    std::vector<bool> on_stack(n, false);
    std::size_t counter = 0, ncomp = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : adj[v]) {
            if (index[w] == unset) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = ncomp;
            } while (w != v);
            ++ncomp;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == unset) visit(v);
    return comp;
}

bool graph_weakly_reversible(std::size_t n_vertices, const std::vector<Edge>& edges) {
    auto comp = strong_components(n_vertices, edges);
    for (const auto& e : edges)
        if (comp[e.source] != comp[e.product]) return false;
    return true;
}

FhjGraph fhj_graph(const ReactionNetwork& net) {
    FhjGraph g;
    g.vertices.resize(net.n_complexes());
    std::iota(g.vertices.begin(), g.vertices.end(), 0);
    for (std::size_t r = 0; r < net.n_reactions(); ++r)
        g.edges.push_back({net.source_index(r), net.product_index(r), r});
    g.linkage_classes = connected_components(net.n_complexes(), g.edges);
    return g;
}

bool is_weakly_reversible(const ReactionNetwork& net) {
    auto g = fhj_graph(net);
    return graph_weakly_reversible(net.n_complexes(), g.edges);
}

std::size_t stoich_rank(const ReactionNetwork& net) { return exact_rank(stoichiometric_matrix(net)); }

long deficiency(const ReactionNetwork& net) {
    auto g = fhj_graph(net);
    return static_cast<long>(net.n_complexes()) - static_cast<long>(g.linkage_classes.size()) -
           static_cast<long>(stoich_rank(net));
}

std::vector<IntRow> conservation_laws(const ReactionNetwork& net) {
    return integer_left_nullspace(stoichiometric_matrix(net));
}

namespace {

using Ray = std::vector<long long>;

void normalize_ray(Ray& r) {
    long long g = 0;
    for (auto v : r) g = std::gcd(g, v < 0 ? -v : v);
    if (g > 1)
        for (auto& v : r) v /= g;
}

}  // namespace

std::vector<IntRow> flux_cone_rays(const ReactionNetwork& net) {
    const std::size_t nr = net.n_reactions();
    if (nr > kMaxFluxReactions)
        fail(ErrorCode::DimensionTooLarge, std::to_string(nr) + " reactions (limit 20)");
    auto basis = integer_right_nullspace(stoichiometric_matrix(net));
    if (basis.empty()) return {};

    // pivot coordinates of the echelon basis start out as the processed constraints
    std::vector<bool> processed(nr, false);
    for (const auto& b : basis)
        for (std::size_t j = 0; j < nr; ++j)
            if (b[j] != 0) {
                processed[j] = true;
                break;
            }
    std::vector<Ray> rays(basis.begin(), basis.end());

    auto zero_set = [&](const Ray& r) {
        std::uint32_t z = 0;
        for (std::size_t j = 0; j < nr; ++j)
            if (processed[j] && r[j] == 0) z |= (1u << j);
        return z;
    };

    for (std::size_t j = 0; j < nr; ++j) {
        if (processed[j]) continue;
        std::vector<Ray> pos, neg, zero;
        for (auto& r : rays) {
            if (r[j] > 0) pos.push_back(r);
            else if (r[j] < 0) neg.push_back(r);
            else zero.push_back(r);
        }
        std::vector<Ray> next = zero;
        next.insert(next.end(), pos.begin(), pos.end());
        if (!neg.empty() && !pos.empty()) {
            std::vector<std::uint32_t> zall;
            for (const auto& r : rays) zall.push_back(zero_set(r));
            std::vector<std::uint32_t> zp, zn;
            for (const auto& r : pos) zp.push_back(zero_set(r));
            for (const auto& r : neg) zn.push_back(zero_set(r));
            for (std::size_t a = 0; a < pos.size(); ++a) {
                for (std::size_t b = 0; b < neg.size(); ++b) {
                    const std::uint32_t common = zp[a] & zn[b];
                    bool adjacent = true;
                    for (std::size_t c = 0; c < rays.size() && adjacent; ++c) {
                        if (rays[c] == pos[a] || rays[c] == neg[b]) continue;
                        if ((zall[c] & common) == common) adjacent = false;
                    }
                    if (!adjacent) continue;
                    Ray w(nr);
                    const __int128 cp = -neg[b][j], cn = pos[a][j];
                    for (std::size_t k = 0; k < nr; ++k) {
                        __int128 v = cp * pos[a][k] + cn * neg[b][k];
                        if (v > INT64_MAX || v < INT64_MIN)
                            fail(ErrorCode::DimensionTooLarge, "flux-cone ray entries overflow");
                        w[k] = static_cast<long long>(v);
                    }
                    normalize_ray(w);
                    next.push_back(std::move(w));
                }
            }
        }
        processed[j] = true;
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        rays = std::move(next);
    }
    return rays;
}

std::size_t flux_cone_dimension(const ReactionNetwork& net) {
    auto rays = flux_cone_rays(net);
    if (rays.empty()) return 0;
    IMat m(static_cast<Eigen::Index>(rays.size()), static_cast<Eigen::Index>(net.n_reactions()));
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = 0; j < net.n_reactions(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rays[i][j];
    return exact_rank(m);
}

Vec complex_balance_residual(const ReactionNetwork& net, const Vec& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!(x[i] > 0.0)) fail(ErrorCode::NonPositiveState, "component " + std::to_string(i));
    Vec rates = mass_action_rates(net, x);
    Vec res = Vec::Zero(static_cast<Eigen::Index>(net.n_complexes()));
    for (std::size_t r = 0; r < net.n_reactions(); ++r) {
        res[static_cast<Eigen::Index>(net.source_index(r))] -= rates[static_cast<Eigen::Index>(r)];
        res[static_cast<Eigen::Index>(net.product_index(r))] += rates[static_cast<Eigen::Index>(r)];
    }
    return res;
}

bool is_complex_balanced(const ReactionNetwork& net, const Vec& x) {
    Vec res = complex_balance_residual(net, x);
    Vec rates = mass_action_rates(net, x);
    const double scale = rates.size() ? rates.cwiseAbs().maxCoeff() : 0.0;
    return res.size() == 0 || res.cwiseAbs().maxCoeff() < 1e-9 * scale;
}

std::vector<std::pair<std::size_t, double>> tree_constants(const ReactionNetwork& net,
                                                           std::size_t linkage_class) {
    auto g = fhj_graph(net);
    if (linkage_class >= g.linkage_classes.size())
        fail(ErrorCode::InputError, "linkage class index out of range");
    const auto& verts = g.linkage_classes[linkage_class];
    const auto m = static_cast<Eigen::Index>(verts.size());
    std::vector<long> local(net.n_complexes(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<long>(i);

    std::vector<Edge> class_edges;
    for (const auto& e : g.edges)
        if (local[e.source] >= 0)
            class_edges.push_back({static_cast<std::size_t>(local[e.source]),
                                   static_cast<std::size_t>(local[e.product]), e.reaction});
    auto comp = strong_components(verts.size(), class_edges);
    for (auto c : comp)
        if (c != comp[0])
            fail(ErrorCode::NotStronglyConnected, "linkage class " + std::to_string(linkage_class));

    const Vec kappa = net.rate_constants();
    Mat minus_l = Mat::Zero(m, m);
    for (const auto& e : class_edges) {
        const double k = kappa[static_cast<Eigen::Index>(e.reaction)];
        const auto s = static_cast<Eigen::Index>(e.source), p = static_cast<Eigen::Index>(e.product);
        minus_l(s, s) += k;
        minus_l(p, s) -= k;
    }
    std::vector<std::pair<std::size_t, double>> out;
    for (Eigen::Index i = 0; i < m; ++i) {
        double k = 1.0;
        if (m > 1) {
            Mat minor(m - 1, m - 1);
            for (Eigen::Index a = 0, ra = 0; a < m; ++a) {
                if (a == i) continue;
                for (Eigen::Index b = 0, cb = 0; b < m; ++b) {
                    if (b == i) continue;
                    minor(ra, cb++) = minus_l(a, b);
                }
                ++ra;
            }
            k = minor.partialPivLu().determinant();
        }
        out.emplace_back(verts[static_cast<std::size_t>(i)], k);
    }
    return out;
}

std::vector<bool> robust_ratio_check(const ReactionNetwork& net, const Vec& x) {
    if (!net.is_mass_action()) fail(ErrorCode::PreconditionViolated, "network is not mass-action");
    if (!is_weakly_reversible(net)) fail(ErrorCode::PreconditionViolated, "network is not weakly reversible");
    if (deficiency(net) != 0) fail(ErrorCode::PreconditionViolated, "deficiency is not zero");
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!(x[i] > 0.0)) fail(ErrorCode::PreconditionViolated, "state is not positive");
    Vec rates = mass_action_rates(net, x);
    Vec f = ode_rhs(net, x);
    if (f.size() && f.cwiseAbs().maxCoeff() > 1e-9 * (1.0 + rates.cwiseAbs().maxCoeff()))
        fail(ErrorCode::PreconditionViolated, "state is not an equilibrium");

    Vec mono = complex_monomials(net, x);
    auto g = fhj_graph(net);
    std::vector<bool> out;
    for (std::size_t c = 0; c < g.linkage_classes.size(); ++c) {
        auto k = tree_constants(net, c);
        bool ok = true;
        for (std::size_t a = 0; a < k.size(); ++a)
            for (std::size_t b = 0; b < k.size(); ++b) {
                if (a == b) continue;
                const double want = k[a].second / k[b].second;
                const double got = mono[static_cast<Eigen::Index>(k[a].first)] /
                                   mono[static_cast<Eigen::Index>(k[b].first)];
                if (std::abs(got - want) / want >= 1e-8) ok = false;
            }
        out.push_back(ok);
    }
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_dot(const ReactionNetwork& net) {
    auto g = fhj_graph(net);
    std::ostringstream os;
    os << "digraph FHJ {\n  rankdir=LR;\n";
    for (std::size_t c = 0; c < g.linkage_classes.size(); ++c) {
        os << "  subgraph cluster_" << c << " {\n    label=\"linkage class " << c + 1 << "\";\n";
        for (auto v : g.linkage_classes[c])
            os << "    c" << v << " [label=\"" << dot_escape(format_complex(net.complexes()[v], net.species()))
               << "\"];\n";
        os << "  }\n";
    }
    for (const auto& e : g.edges)
        os << "  c" << e.source << " -> c" << e.product << " [label=\""
           << dot_escape(net.reactions()[e.reaction].rate_name) << "\"];\n";
    os << "}\n";
    return os.str();
}

StructureReport structure_report(const ReactionNetwork& net) {
    StructureReport rep;
    auto g = fhj_graph(net);
    rep.n_species = net.n_species();
    rep.n_reactions = net.n_reactions();
    rep.n_complexes = net.n_complexes();
    rep.n_linkage = g.linkage_classes.size();
    rep.stoich_rank = stoich_rank(net);
    rep.deficiency = static_cast<long>(rep.n_complexes) - static_cast<long>(rep.n_linkage) -
                     static_cast<long>(rep.stoich_rank);
    rep.weakly_reversible = graph_weakly_reversible(net.n_complexes(), g.edges);
    rep.conservation_laws = conservation_laws(net);
    if (net.n_reactions() <= kMaxFluxReactions) rep.flux_cone_dim = flux_cone_dimension(net);
    return rep;
}

}  // namespace crnepi
