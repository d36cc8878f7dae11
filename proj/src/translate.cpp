#include "crnepi/translate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "crnepi/errors.hpp"
#include "crnepi/exact.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/structure.hpp"

namespace crnepi {

namespace {

using Index = Eigen::Index;
using Key = std::vector<long long>;

Key key_of(const IVec& v) { return Key(v.data(), v.data() + v.size()); }

IVec ivec_of(const Key& k) {
    IVec v(static_cast<Index>(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i) v[static_cast<Index>(i)] = k[i];
    return v;
}

std::size_t vertex_id(std::vector<Key>& verts, const Key& k) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (verts[i] == k) return i;
    verts.push_back(k);
    return verts.size() - 1;
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

GmakRealization apply_translation(const ReactionNetwork& net, const std::vector<IVec>& shifts) {
    const std::size_t n = net.n_species();
    if (shifts.size() != net.n_reactions())
        fail(ErrorCode::DimensionMismatch, "one shift per reaction required");
    GmakRealization g;
    g.shifts = shifts;
    std::vector<Key> verts;
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < net.n_reactions(); ++r) {
        if (static_cast<std::size_t>(shifts[r].size()) != n)
            fail(ErrorCode::DimensionMismatch, "shift of reaction " + std::to_string(r + 1) + " has wrong length");
        const Reaction& rx = net.reactions()[r];
        TranslatedReaction t;
        t.base = r;
        t.source = rx.source.dense(n) + shifts[r];
        t.product = rx.product.dense(n) + shifts[r];
        t.kinetic = rx.rate_complex().dense(n);
        const std::size_t s = vertex_id(verts, key_of(t.source));
        const std::size_t p = vertex_id(verts, key_of(t.product));
        edges.push_back({s, p, r});
        g.reactions.push_back(std::move(t));
    }
    for (const auto& k : verts) {
        g.complexes.push_back(ivec_of(k));
        g.nonphysical = g.nonphysical || *std::min_element(k.begin(), k.end()) < 0;
    }
    const auto classes = connected_components(verts.size(), edges);
    g.n_linkage = classes.size();
    g.weakly_reversible = graph_weakly_reversible(verts.size(), edges);
    g.stoich_rank = stoich_rank(net);
    g.structural_deficiency = static_cast<long>(verts.size()) - static_cast<long>(g.n_linkage) -
                              static_cast<long>(g.stoich_rank);

    std::vector<std::size_t> class_of(verts.size());
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t v : classes[c]) class_of[v] = c;
    g.per_class_uniform = true;
    std::map<std::size_t, Key> class_shift;
    std::map<std::size_t, Key> source_kinetic;
    g.kinetic_map_consistent = true;
    for (const Edge& e : edges) {
        const Key sh = key_of(shifts[e.reaction]);
        auto [it, fresh] = class_shift.emplace(class_of[e.source], sh);
        if (!fresh && it->second != sh) g.per_class_uniform = false;
        const Key kin = key_of(g.reactions[e.reaction].kinetic);
        auto [jt, fresh2] = source_kinetic.emplace(e.source, kin);
        if (!fresh2 && jt->second != kin) g.kinetic_map_consistent = false;
    }
    g.kinetic_deficiency = kinetic_deficiency(g);
    return g;
}

long kinetic_deficiency(const GmakRealization& g) {
    std::vector<Key> verts;
    for (const auto& c : g.complexes) verts.push_back(key_of(c));
    auto find = [&](const IVec& v) {
        return static_cast<std::size_t>(std::find(verts.begin(), verts.end(), key_of(v)) - verts.begin());
    };
    const std::size_t nv = verts.size();
    std::vector<std::optional<IVec>> kappa(nv);
    for (const auto& t : g.reactions) {
        auto& k = kappa[find(t.source)];
        if (!k) k = t.kinetic;
    }
    for (const auto& t : g.reactions) {
        auto& k = kappa[find(t.product)];
        if (!k) k = IVec(t.product - g.shifts[t.base]);
    }
    std::vector<Edge> edges;
    for (const auto& t : g.reactions) edges.push_back({find(t.source), find(t.product), t.base});
    const std::size_t n = g.complexes.empty() ? 0 : static_cast<std::size_t>(g.complexes[0].size());
    IMat diffs(static_cast<Index>(n), static_cast<Index>(edges.size()));
    for (std::size_t e = 0; e < edges.size(); ++e)
        diffs.col(static_cast<Index>(e)) = *kappa[edges[e].product] - *kappa[edges[e].source];
    const std::size_t lc = connected_components(nv, edges).size();
    return static_cast<long>(nv) - static_cast<long>(lc) - static_cast<long>(exact_rank(diffs));
}

Vec realization_rhs(const ReactionNetwork& net, const GmakRealization& g, const Vec& x) {
    check_nonnegative(x);
    const Vec kappa = net.rate_constants();
    Vec out = Vec::Zero(x.size());
    for (const auto& t : g.reactions) {
        double rate = kappa[static_cast<Index>(t.base)];
        for (Index i = 0; i < x.size(); ++i)
            if (t.kinetic[i] > 0) rate *= ipow(x[i], static_cast<int>(t.kinetic[i]));
        out += rate * (t.product - t.source).cast<double>();
    }
    return out;
}

std::vector<GmakRealization> search_wr_zd(const ReactionNetwork& net,
                                          const TranslationSearchOptions& opts) {
    const std::size_t n = net.n_species();
    const std::size_t nr = net.n_reactions();
    if (nr > kMaxTranslationReactions)
        fail(ErrorCode::SearchSpaceExceeded,
             std::to_string(nr) + " reactions exceed the search limit of " + std::to_string(kMaxTranslationReactions));
    if (opts.bound < 0 || opts.bound > 2) fail(ErrorCode::PreconditionViolated, "translation bound must be 0, 1 or 2");
    if (nr == 0) return {};

    std::set<Key> pool_set;
    pool_set.insert(Key(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 1; k <= opts.bound; ++k) {
            Key v(n, 0);
            v[i] = k;
            pool_set.insert(v);
            v[i] = -k;
            pool_set.insert(v);
        }
    for (const auto& a : net.complexes())
        for (const auto& b : net.complexes())
            if (a != b) pool_set.insert(key_of(IVec(a.dense(n) - b.dense(n))));
    std::vector<Key> pool(pool_set.begin(), pool_set.end());
    auto l1 = [](const Key& k) {
        long long s = 0;
        for (long long v : k) s += v < 0 ? -v : v;
        return s;
    };
    std::stable_sort(pool.begin(), pool.end(), [&](const Key& a, const Key& b) {
        const long long la = l1(a), lb = l1(b);
        return la != lb ? la < lb : a < b;
    });

    const IMat gamma = stoichiometric_matrix(net);
    std::vector<std::size_t> prefix_rank(nr + 1, 0);
    for (std::size_t p = 1; p <= nr; ++p) prefix_rank[p] = exact_rank(IMat(gamma.leftCols(static_cast<Index>(p))));
    const std::size_t rank = prefix_rank[nr];

    std::vector<Key> src0(nr), prd0(nr);
    for (std::size_t r = 0; r < nr; ++r) {
        src0[r] = key_of(net.reactions()[r].source.dense(n));
        prd0[r] = key_of(net.reactions()[r].product.dense(n));
    }

    std::vector<std::size_t> choice(nr, 0);
    std::vector<Key> src(nr), prd(nr);
    std::vector<GmakRealization> out;
    std::set<std::vector<std::pair<Key, Key>>> seen;
    std::size_t nodes = 0;

    auto shifted = [&](const Key& base, const Key& t) {
        Key k(n);
        for (std::size_t i = 0; i < n; ++i) k[i] = base[i] + t[i];
        return k;
    };
    // deficiency of the first p translated reactions and their vertex count
    auto partial_ok = [&](std::size_t p) {
        std::vector<Key> verts;
        std::vector<std::pair<std::size_t, std::size_t>> es;
        for (std::size_t r = 0; r < p; ++r) es.emplace_back(vertex_id(verts, src[r]), vertex_id(verts, prd[r]));
        if (verts.size() > 2 * rank) return false;
        DisjointSets ds(verts.size());
        std::size_t classes = verts.size();
        for (const auto& [a, b] : es)
            if (ds.unite(a, b)) --classes;
        return verts.size() == classes + prefix_rank[p];
    };

    std::size_t depth = 0;
    bool descending = true;
    while (true) {
        if (descending) {
            choice[depth] = 0;
        } else if (++choice[depth] >= pool.size()) {
            if (depth == 0) break;
            --depth;
            continue;
        }
        if (++nodes > opts.node_cap)
            fail(ErrorCode::SearchSpaceExceeded, "translation search exceeded " + std::to_string(opts.node_cap) + " nodes");
        src[depth] = shifted(src0[depth], pool[choice[depth]]);
        prd[depth] = shifted(prd0[depth], pool[choice[depth]]);
        if (!partial_ok(depth + 1)) {
            descending = false;
            continue;
        }
        if (depth + 1 < nr) {
            ++depth;
            descending = true;
            continue;
        }
        descending = false;
        std::vector<std::pair<Key, Key>> sig;
        for (std::size_t r = 0; r < nr; ++r) sig.emplace_back(src[r], prd[r]);
        std::sort(sig.begin(), sig.end());
        if (seen.count(sig)) continue;
        std::vector<IVec> shifts;
        for (std::size_t r = 0; r < nr; ++r) shifts.push_back(ivec_of(pool[choice[r]]));
        GmakRealization g = apply_translation(net, shifts);
        if (!g.weakly_reversible || g.structural_deficiency != 0) continue;
        seen.insert(std::move(sig));
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<std::string> describe_reactions(const GmakRealization& g,
                                            const std::vector<std::string>& species) {
    std::vector<std::string> out;
    for (const auto& t : g.reactions)
        out.push_back(format_vector_complex(t.source, species) + " -> " +
                      format_vector_complex(t.product, species) + " (" +
                      format_vector_complex(t.kinetic, species) + ")");
    return out;
}

}  // namespace crnepi
