// Closed-form bounds on path complexity and intersection counts.

#pragma once

#include "dotgraph/core.hpp"
#include "dotgraph/patterns.hpp"
#include "dotgraph/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace dotgraph {

/// i(v_0, v_k) and i(v_k, v_n) for k = 1..n-1.
struct PathIntersections {
    int n = 3;
    std::vector<std::int64_t> from_start;
    std::vector<std::int64_t> to_end;
};

struct GenusParams {
    int genus = 2;

    int base() const { return genus_base(genus); }
};

/// Sum over interior vertices of i(v_0, v_k) + i(v_k, v_n).
inline std::int64_t path_complexity(const PathIntersections& p) {
    check_path_length(p.n);
    const auto expected = static_cast<std::size_t>(p.n - 1);
    if (p.from_start.size() != expected || p.to_end.size() != expected)
        throw InvariantError("expected " + std::to_string(expected) + " intersection numbers per side");
    std::int64_t total = 0;
    for (std::size_t k = 0; k < expected; ++k) {
        if (p.from_start[k] < 0 || p.to_end[k] < 0) throw RangeError("intersection numbers must be non-negative");
        total += p.from_start[k] + p.to_end[k];
    }
    return total;
}

/// 2 log2(i) + 2. Exact when i is a power of two; otherwise an upper bound
/// with denominator 2^20.
inline Rational hempel_bound(std::int64_t i) {
    if (i < 1) throw RangeError("intersection number must be at least 1");
    if ((i & (i - 1)) == 0) {
        int log = 0;
        while ((std::int64_t{1} << log) < i) ++log;
        return Rational(2 * log + 2);
    }
    constexpr std::int64_t scale = std::int64_t{1} << 20;
    const long double scaled = std::log2(static_cast<long double>(i)) * scale;
    const auto numerator = static_cast<std::int64_t>(std::ceil(scaled)) + 1;
    return Rational(2 * numerator + 2 * scale, scale);
}

/// 2 * sum_{k=2}^{n-1} 2^{(k-2)/2}.
inline double min_complexity_lower_bound(int n) {
    check_path_length(n);
    double sum = 0.0;
    for (int k = 2; k <= n - 1; ++k) sum += std::pow(2.0, (k - 2) / 2.0);
    return 2.0 * sum;
}

inline std::int64_t max_total_intersections(int n) {
    check_path_length(n);
    return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

inline std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
    constexpr auto cap = std::numeric_limits<std::int64_t>::max();
    if (a != 0 && b > cap / a) return cap;
    return a * b;
}

/// base^i, saturating at INT64_MAX.
inline std::int64_t exponent_growth_cap(int i, const GenusParams& gp) {
    if (i < 1) throw RangeError("exponent must be at least 1");
    std::int64_t out = 1;
    for (int k = 0; k < i; ++k) out = saturating_mul(out, gp.base());
    return out;
}

/// sum_{i=1}^{n} min(base^i, n - i). The power is only grown while it is
/// still below n - i.
inline std::int64_t comb_bound(int n, const GenusParams& gp) {
    if (n < 1) throw RangeError("n must be at least 1");
    const std::int64_t base = gp.base();
    std::int64_t total = 0;
    std::int64_t power = 1;
    for (int i = 1; i <= n; ++i) {
        const std::int64_t remaining = n - i;
        if (power <= remaining) power = saturating_mul(power, base);
        total += std::min(power, remaining);
    }
    return total;
}

}  // namespace dotgraph
