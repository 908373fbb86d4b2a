#ifndef SPANNERFORGE_RANDOM_HPP
#define SPANNERFORGE_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace spannerforge {

// SplitMix64 finalizer; used to derive independent streams from one seed.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub);

// Thin wrapper over mt19937_64. The distributions are implemented here rather
// than taken from <random> so results are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    std::uint64_t next() { return engine_(); }
    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    // Uniform in [0, 1) with 53 random bits.
    double uniform();
    bool bernoulli(double p);
    // k distinct values from [0, n), sorted ascending.
    std::vector<int> sample(int n, int k);
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace spannerforge

#endif
