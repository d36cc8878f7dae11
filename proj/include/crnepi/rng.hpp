#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace crnepi {

// SplitMix64 finalizer over (seed, index): per-replica child seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
public:
    static constexpr const char* algorithm = "mt19937_64";

    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }
    // uniform on [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double exponential(double rate);
    Rng child(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

// Radical-inverse Halton point (bases 2, 3, 5, ...), index >= 1, coordinates in (0, 1).
std::vector<double> halton(std::uint64_t index, std::size_t dim);

}  // namespace crnepi
