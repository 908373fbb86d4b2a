#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spannerforge/errors.hpp"
#include "spannerforge/rounding.hpp"

namespace spannerforge {

double RoundingConstants::polylog(int n) const {
    return std::pow(1.0 + std::log(std::max(1, n)), polylog_exponent);
}

DerivedParams derive_params(int n, const ParamTuple& tau, int q) {
    if (q < 2) throw ParameterError("q must be at least 2");
    if (tau.k1 < 1 || tau.k1 > tau.k0 || tau.k0 > n)
        throw ParameterError("need 1 <= k1 <= k0 <= n, got " + tau.str() + " with n=" + std::to_string(n));
    if (tau.d0 < 1 || tau.d1 < 1 || tau.d0 > tau.k1)
        throw ParameterError("need 1 <= d0 <= k1 and d1 >= 1, got " + tau.str());

    DerivedParams p;
    p.n = n;
    p.q = q;
    p.tau = tau;
    p.gamma = n > 1 ? std::log(static_cast<double>(tau.k1) / tau.d0) / std::log(static_cast<double>(n)) : 0.0;
    const double g = p.gamma;
    const double x = 1.0 + g / 2.0 - std::sqrt(2.0 * g + g * g / 4.0);
    // The small shift keeps exact multiples of 1/q from rounding up a notch.
    const int num = static_cast<int>(std::ceil(q * x - 1e-9));
    if (num <= 0)
        throw DegenerateParameters("alpha rounds to 0 for gamma=" + std::to_string(g) + ", q=" + std::to_string(q));
    const int den = q;
    const int gcd = std::gcd(num, den);
    p.r = num / gcd;
    p.s = den / gcd;
    p.alpha = static_cast<double>(num) / den;

    if (num >= den) {
        p.f = tau.k1 == tau.d0 ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
        p.f = std::pow(static_cast<double>(tau.k1) / tau.d0, p.alpha / (1.0 - p.alpha));
    }
    p.D = std::isfinite(p.f) ? static_cast<double>(n) * tau.d0 / (tau.k1 * p.f * p.f) : 0.0;
    p.small_degree_mode = p.f > tau.d0;
    return p;
}

bool is_hair_step(int r, int s, int t) {
    // An integer lies strictly inside ((t-1) r / s, t r / s).
    return (t * r - 1) / s > ((t - 1) * r) / s;
}

CaterpillarTemplate build_caterpillar(int r, int s) {
    if (r < 1 || s < 1 || r > s) throw ParameterError("caterpillar needs 1 <= r <= s");
    if (std::gcd(r, s) != 1)
        throw ParameterError("caterpillar (" + std::to_string(r) + "," + std::to_string(s) + ") is not coprime");
    CaterpillarTemplate k;
    k.r = r;
    k.s = s;
    k.parent.assign(1, -1);
    k.side.assign(1, 0);
    k.rightmost.assign(1, 0);
    for (int t = 1; t <= s; ++t) {
        const StepKind kind = is_hair_step(r, s, t) ? StepKind::Hair : StepKind::Backbone;
        const int p = k.rightmost.back();
        k.steps.push_back(kind);
        k.parent.push_back(p);
        k.side.push_back(1 - k.side[p]);
        k.rightmost.push_back(kind == StepKind::Hair ? p : t);
    }
    return k;
}

int CaterpillarTemplate::hairs() const {
    int h = 0;
    for (StepKind k : steps) h += k == StepKind::Hair;
    return h;
}

int CaterpillarTemplate::edges_from_side(int t, int b) const {
    int c = 0;
    for (int i = 1; i <= t; ++i) c += side[parent[i]] == b;
    return c;
}

}  // namespace spannerforge
