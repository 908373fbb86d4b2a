#include "spannerforge/random.hpp"

#include <algorithm>
#include <unordered_set>

#include "spannerforge/errors.hpp"

namespace spannerforge {

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(mix_seed(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub) {
    return derive_seed(derive_seed(seed, stream), sub);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw ContractError("Rng::below: bound must be positive");
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

bool Rng::bernoulli(double p) {
    // Always consume one draw so stream positions do not depend on p.
    const double u = uniform();
    return u < p;
}

std::vector<int> Rng::sample(int n, int k) {
    if (k < 0 || k > n) throw ContractError("Rng::sample: need 0 <= k <= n");
    // Floyd's algorithm.
    std::unordered_set<int> chosen;
    std::vector<int> out;
    out.reserve(k);
    for (int j = n - k; j < n; ++j) {
        int t = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
        if (chosen.count(t)) t = j;
        chosen.insert(t);
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace spannerforge
