#include "crnepi/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <thread>
#include <unordered_map>

#include "crnepi/epi.hpp"
#include "crnepi/errors.hpp"
#include "crnepi/kinetics.hpp"
#include "crnepi/kvtext.hpp"
#include "crnepi/structure.hpp"

namespace crnepi {

namespace {

using Index = Eigen::Index;

struct CountsHash {
    std::size_t operator()(const Counts& c) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (long long v : c) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

double falling(long long n, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= static_cast<double>(n - i);
    return out;
}

}  // namespace

SsaEngine::SsaEngine(const ReactionNetwork& net) : n_(net.n_species()), kappa_(net.rate_constants()) {
    if (!net.is_mass_action())
        fail(ErrorCode::Unsupported, "stochastic simulation needs mass-action kinetics");
    const IMat g = stoichiometric_matrix(net);
    for (std::size_t r = 0; r < net.n_reactions(); ++r) {
        std::vector<std::pair<std::size_t, int>> e;
        for (const auto& [s, c] : net.reactions()[r].source.coeffs) e.emplace_back(s, c);
        exps_.push_back(std::move(e));
        std::vector<std::pair<std::size_t, long long>> j;
        for (std::size_t i = 0; i < n_; ++i)
            if (g(static_cast<Index>(i), static_cast<Index>(r)) != 0)
                j.emplace_back(i, g(static_cast<Index>(i), static_cast<Index>(r)));
        jumps_.push_back(std::move(j));
    }
    scratch_ = Vec::Zero(kappa_.size());
}

void SsaEngine::propensities(const Counts& x, Vec& out) const {
    out.resize(kappa_.size());
    for (std::size_t r = 0; r < exps_.size(); ++r) {
        double a = kappa_[static_cast<Index>(r)];
        for (const auto& [s, c] : exps_[r]) {
            if (x[s] < c) {
                a = 0.0;
                break;
            }
            a *= falling(x[s], c);
        }
        out[static_cast<Index>(r)] = a;
    }
}

bool SsaEngine::step(Counts& x, Rng& rng, double& dt, std::size_t& reaction) const {
    propensities(x, scratch_);
    const double total = scratch_.sum();
    if (!(total > 0.0)) return false;
    dt = rng.exponential(total);
    const double target = rng.uniform() * total;
    double acc = 0.0;
    reaction = exps_.size() - 1;
    for (std::size_t r = 0; r < exps_.size(); ++r) {
        acc += scratch_[static_cast<Index>(r)];
        if (target < acc) {
            reaction = r;
            break;
        }
    }
    // guard against rounding landing on a zero-propensity tail
    while (scratch_[static_cast<Index>(reaction)] == 0.0) --reaction;
    for (const auto& [i, d] : jumps_[reaction]) x[i] += d;
    return true;
}

Vec propensity(const ReactionNetwork& net, const Counts& n) {
    if (n.size() != net.n_species()) fail(ErrorCode::DimensionMismatch, "count vector has the wrong length");
    for (long long v : n)
        if (v < 0) fail(ErrorCode::NegativeState, "negative count");
    Vec out;
    SsaEngine(net).propensities(n, out);
    return out;
}

Trajectory ssa_simulate(const ReactionNetwork& net, const Counts& init, double t_max,
                        std::uint64_t seed, const SsaOptions& opts) {
    if (init.size() != net.n_species()) fail(ErrorCode::DimensionMismatch, "initial counts have the wrong length");
    for (long long v : init)
        if (v < 0) fail(ErrorCode::NegativeState, "negative initial count");
    const SsaEngine eng(net);
    Rng rng(seed);
    Trajectory tr;
    tr.seed = seed;
    Counts x = init;
    double t = 0.0;
    tr.times.push_back(t);
    tr.states.push_back(x);
    double dt = 0.0;
    std::size_t r = 0;
    for (std::size_t ev = 0; ev < opts.max_events; ++ev) {
        Counts next = x;
        if (!eng.step(next, rng, dt, r)) {
            tr.absorbed = true;
            break;
        }
        if (t + dt > t_max) break;
        t += dt;
        x = std::move(next);
        if (opts.record) {
            tr.times.push_back(t);
            tr.states.push_back(x);
        }
        if (opts.stop && opts.stop(t, x)) break;
    }
    if (!opts.record && (tr.states.back() != x)) {
        tr.times.push_back(t);
        tr.states.push_back(x);
    }
    return tr;
}

int thread_count_from_env() {
    if (const char* v = std::getenv("CRNEPI_THREADS")) {
        const int n = std::atoi(v);
        if (n > 0) return n;
    }
    return 1;
}

std::vector<Trajectory> ssa_replicas(const ReactionNetwork& net, const Counts& init, double t_max,
                                     std::size_t runs, std::uint64_t seed, int threads) {
    if (threads <= 0) threads = thread_count_from_env();
    std::vector<Trajectory> out(runs);
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < runs; i += stride)
            out[i] = ssa_simulate(net, init, t_max, derive_seed(seed, i));
    };
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(runs, 1));
    if (nt <= 1) {
        work(0, 1);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    for (std::size_t k = 0; k < nt; ++k)
        pool.emplace_back([&, k] {
            try {
                work(k, nt);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

Counts counts_from(const ReactionNetwork& net, const Vec& x) {
    if (static_cast<std::size_t>(x.size()) != net.n_species())
        fail(ErrorCode::DimensionMismatch, "state has the wrong length");
    Counts c(net.n_species());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double v = std::round(x[static_cast<Index>(i)]);
        if (v < 0.0) fail(ErrorCode::NegativeState, "negative count for " + net.species()[i]);
        c[i] = static_cast<long long>(v);
    }
    return c;
}

ProductFormReport product_form_check(const ReactionNetwork& net, const Counts& init,
                                     const ProductFormOptions& opts) {
    if (init.size() != net.n_species()) fail(ErrorCode::DimensionMismatch, "initial counts have the wrong length");
    if (!is_weakly_reversible(net) || deficiency(net) != 0)
        fail(ErrorCode::NotComplexBalanced, "network is not weakly reversible with zero deficiency");
    Vec ref(static_cast<Index>(init.size()));
    for (std::size_t i = 0; i < init.size(); ++i) ref[static_cast<Index>(i)] = static_cast<double>(init[i]);
    const auto c = positive_equilibrium(net, ref);
    if (!c || !is_complex_balanced(net, *c))
        fail(ErrorCode::NotComplexBalanced, "no complex-balanced equilibrium found");

    ProductFormReport rep;
    rep.equilibrium = *c;
    rep.seed = opts.seed;
    const std::size_t n = net.n_species();
    std::vector<double> logc(n);
    for (std::size_t i = 0; i < n; ++i) logc[i] = std::log((*c)[static_cast<Index>(i)]);
    auto logw = [&](const Counts& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += static_cast<double>(x[i]) * logc[i] - std::lgamma(static_cast<double>(x[i]) + 1.0);
        return s;
    };

    // enumerate the compatibility class reachable from init
    const SsaEngine eng(net);
    const IMat g = stoichiometric_matrix(net);
    std::unordered_map<Counts, double, CountsHash> cls;
    std::deque<Counts> frontier{init};
    cls.emplace(init, logw(init));
    double best = cls.begin()->second;
    Vec a;
    while (!frontier.empty()) {
        Counts x = std::move(frontier.front());
        frontier.pop_front();
        const double lw = cls.at(x);
        if (lw < best - opts.log_window) continue;
        eng.propensities(x, a);
        for (Index r = 0; r < a.size(); ++r) {
            if (a[r] <= 0.0) continue;
            Counts y = x;
            for (std::size_t i = 0; i < n; ++i) y[i] += g(static_cast<Index>(i), r);
            if (cls.count(y)) continue;
            const double ly = logw(y);
            cls.emplace(y, ly);
            best = std::max(best, ly);
            frontier.push_back(std::move(y));
            if (cls.size() > opts.max_states)
                fail(ErrorCode::SearchSpaceExceeded, "compatibility class exceeds " + std::to_string(opts.max_states) + " states");
        }
    }
    double z = 0.0;
    for (const auto& [x, lw] : cls) z += std::exp(lw - best);
    rep.class_states = cls.size();

    // occupancy from one long run
    Rng rng(opts.seed);
    Counts x = init;
    std::unordered_map<Counts, double, CountsHash> occ;
    double dt = 0.0;
    std::size_t r = 0;
    for (std::size_t ev = 0; ev < 2 * opts.samples; ++ev) {
        Counts prev = x;
        if (!eng.step(x, rng, dt, r)) {
            if (ev >= opts.samples) occ[prev] += 1.0;  // absorbed: all remaining mass here
            break;
        }
        if (ev >= opts.samples) {
            occ[prev] += dt;
            rep.total_time += dt;
        }
    }
    if (rep.total_time <= 0.0) fail(ErrorCode::NoConvergence, "no post-burn-in occupancy recorded");
    double seen_pi = 0.0, dist = 0.0;
    for (const auto& [state, time] : occ) {
        auto it = cls.find(state);
        const double pi = it == cls.end() ? 0.0 : std::exp(it->second - best) / z;
        seen_pi += pi;
        dist += std::abs(time / rep.total_time - pi);
    }
    rep.observed_states = occ.size();
    rep.tv_distance = 0.5 * (dist + std::max(0.0, 1.0 - seen_pi));
    return rep;
}

void validate(const PhaseTypeModel& m) {
    const Index n = m.alpha.size();
    if (n == 0 || m.A.rows() != n || m.A.cols() != n)
        fail(ErrorCode::DimensionMismatch, "alpha and A dimensions disagree");
    if (m.alpha.minCoeff() < 0.0) fail(ErrorCode::NegativeEntry, "alpha has a negative entry");
    if (m.alpha.sum() > 1.0 + 1e-12) fail(ErrorCode::InputError, "alpha sums to more than 1");
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j)
            if (i != j && m.A(i, j) < 0.0) fail(ErrorCode::NotSubgenerator, "A has a negative off-diagonal entry");
        if (m.A.row(i).sum() > 1e-12) fail(ErrorCode::NotSubgenerator, "A has a positive row sum");
    }
}

PhaseTypeModel parse_phase_type(std::string_view text) {
    const KeyValueText kv(text);
    kv.restrict_keys({"alpha", "A"});
    PhaseTypeModel m{kv.vector("alpha"), kv.matrix("A")};
    validate(m);
    return m;
}

PhaseTypeModel load_phase_type(const std::string& path) { return parse_phase_type(read_text_file(path)); }

double phase_type_survival(const PhaseTypeModel& m, double t) {
    return m.alpha.dot(expm(m.A, t) * Vec::Ones(m.alpha.size()));
}

double phase_type_density(const PhaseTypeModel& m, double t) {
    return m.alpha.dot(expm(m.A, t) * m.exit_rates());
}

Mat phase_type_dwell_times(const PhaseTypeModel& m) {
    Eigen::FullPivLU<Mat> lu(-m.A);
    if (!lu.isInvertible()) fail(ErrorCode::SingularA, "A is singular");
    return lu.inverse();
}

double phase_type_mean(const PhaseTypeModel& m) {
    return m.alpha.dot(phase_type_dwell_times(m) * Vec::Ones(m.alpha.size()));
}

std::vector<double> sample_absorption_times(const PhaseTypeModel& m, std::size_t count,
                                            std::uint64_t seed) {
    validate(m);
    const Index n = m.alpha.size();
    Rng rng(seed);
    const Vec exits = m.exit_rates();
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        double u = rng.uniform();
        Index state = -1;
        for (Index i = 0; i < n; ++i) {
            if (u < m.alpha[i]) {
                state = i;
                break;
            }
            u -= m.alpha[i];
        }
        double t = 0.0;
        std::size_t jumps = 0;
        while (state >= 0) {
            const double rate = -m.A(state, state);
            if (!(rate > 0.0)) {
                t = std::numeric_limits<double>::infinity();
                break;
            }
            t += rng.exponential(rate);
            double v = rng.uniform() * rate;
            Index next = -1;
            for (Index j = 0; j < n; ++j) {
                if (j == state) continue;
                if (v < m.A(state, j)) {
                    next = j;
                    break;
                }
                v -= m.A(state, j);
            }
            state = next;  // -1: exit to absorption
            if (++jumps > 100000000) fail(ErrorCode::NoConvergence, "absorption not reached");
        }
        out.push_back(t);
    }
    return out;
}

double extinction_probability_linear(double beta_s, double mu, long long j) {
    if (!(beta_s > 0.0) || !(mu > 0.0)) fail(ErrorCode::NonPositiveParameter, "rates must be positive");
    if (j < 0) fail(ErrorCode::NegativeState, "negative initial count");
    const double q = std::min(1.0, mu / beta_s);
    return std::pow(q, static_cast<double>(j));
}

}  // namespace crnepi
