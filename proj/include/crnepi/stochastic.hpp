#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "crnepi/network.hpp"
#include "crnepi/rng.hpp"

namespace crnepi {

using Counts = std::vector<long long>;

// kappa_r * n!/(n - y_r)!, zero when some count is below its source coefficient.
Vec propensity(const ReactionNetwork& net, const Counts& n);

class SsaEngine {
public:
    explicit SsaEngine(const ReactionNetwork& net);

    std::size_t n_species() const { return n_; }
    void propensities(const Counts& x, Vec& out) const;
    // One direct-method event. Returns false (x untouched) when every propensity is zero.
    bool step(Counts& x, Rng& rng, double& dt, std::size_t& reaction) const;

private:
    std::size_t n_;
    Vec kappa_;
    std::vector<std::vector<std::pair<std::size_t, int>>> exps_;
    std::vector<std::vector<std::pair<std::size_t, long long>>> jumps_;
    mutable Vec scratch_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Counts> states;
    std::uint64_t seed = 0;
    std::string rng_algorithm = Rng::algorithm;
    bool absorbed = false;
};

struct SsaOptions {
    std::size_t max_events = 100000000;
    bool record = true;
    // checked after every event; returning true ends the run
    std::function<bool(double t, const Counts& x)> stop;
};

Trajectory ssa_simulate(const ReactionNetwork& net, const Counts& init, double t_max,
                        std::uint64_t seed, const SsaOptions& opts = {});

// Replica i uses derive_seed(seed, i); threads <= 0 reads CRNEPI_THREADS (default 1).
std::vector<Trajectory> ssa_replicas(const ReactionNetwork& net, const Counts& init, double t_max,
                                     std::size_t runs, std::uint64_t seed, int threads = 0);
int thread_count_from_env();

Counts counts_from(const ReactionNetwork& net, const Vec& x);  // rounds, NegativeState if < 0

struct ProductFormOptions {
    std::size_t samples = 1000000;  // post-burn-in events
    std::uint64_t seed = 1;
    std::size_t max_states = 5000000;
    double log_window = 40.0;  // states this far below the mode are not enumerated
};

struct ProductFormReport {
    Vec equilibrium;  // complex-balanced c
    std::size_t class_states = 0;
    std::size_t observed_states = 0;
    double total_time = 0.0;
    double tv_distance = 0.0;
    std::uint64_t seed = 0;
};

// Long-run occupancy from one SSA run (first half of the events discarded, holding-time
// weights) against pi(n) ~ prod c_i^n_i / n_i! on the compatibility class of init.
ProductFormReport product_form_check(const ReactionNetwork& net, const Counts& init,
                                     const ProductFormOptions& opts = {});

struct PhaseTypeModel {
    Vec alpha;
    Mat A;
    Vec exit_rates() const { return -A.rowwise().sum(); }
};

void validate(const PhaseTypeModel& m);
PhaseTypeModel parse_phase_type(std::string_view text);
PhaseTypeModel load_phase_type(const std::string& path);

double phase_type_survival(const PhaseTypeModel& m, double t);
double phase_type_density(const PhaseTypeModel& m, double t);
Mat phase_type_dwell_times(const PhaseTypeModel& m);  // (-A)^-1, SingularA when singular
double phase_type_mean(const PhaseTypeModel& m);

// Absorption times of the underlying chain; 0 when the chain starts absorbed.
std::vector<double> sample_absorption_times(const PhaseTypeModel& m, std::size_t n,
                                            std::uint64_t seed);

// q^j with q = min(1, mu / beta_s).
double extinction_probability_linear(double beta_s, double mu, long long j);

}  // namespace crnepi
