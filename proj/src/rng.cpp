#include "crnepi/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace crnepi {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

std::vector<double> halton(std::uint64_t index, std::size_t dim) {
    static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                      41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    if (dim > sizeof(primes) / sizeof(primes[0])) throw std::invalid_argument("halton: dim too large");
    std::vector<double> out(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        const unsigned b = primes[d];
        double f = 1.0, r = 0.0;
        std::uint64_t i = index;
        while (i > 0) {
            f /= b;
            r += f * static_cast<double>(i % b);
            i /= b;
        }
        out[d] = r;
    }
    return out;
}

}  // namespace crnepi
