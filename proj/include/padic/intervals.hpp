#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "padic/arith.hpp"
#include "padic/errors.hpp"
#include "padic/psi.hpp"
#include "padic/rational.hpp"

namespace padic {

// Finite union of closed intervals inside [0,1] with rational endpoints.
// Normalized: sorted, interiors pairwise disjoint, touching endpoints merged,
// zero-length pieces dropped (they carry no measure).
class IntervalUnion {
public:
    using Interval = std::pair<Rational, Rational>;

    IntervalUnion() = default;

    static IntervalUnion of(std::vector<Interval> raw) {
        for (const auto& [lo, hi] : raw) {
            if (lo < 0 || hi > 1 || lo > hi)
                throw domain_error("IntervalUnion: intervals must satisfy 0 <= lo <= hi <= 1");
        }
        std::sort(raw.begin(), raw.end());
        IntervalUnion u;
        for (auto& iv : raw) {
            if (!u.intervals_.empty() && iv.first <= u.intervals_.back().second) {
                if (iv.second > u.intervals_.back().second) u.intervals_.back().second = std::move(iv.second);
            } else {
                u.intervals_.push_back(std::move(iv));
            }
        }
        std::erase_if(u.intervals_, [](const Interval& iv) { return iv.first == iv.second; });
        return u;
    }

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }

    Rational length() const {
        Rational total(0);
        for (const auto& [lo, hi] : intervals_) total += hi - lo;
        return total;
    }

private:
    std::vector<Interval> intervals_;
};

inline Rational lambda(const IntervalUnion& u) { return u.length(); }

// The real-line analogue of the p-adic target set: intervals of radius
// psi(n)/n around the reduced fractions a/n in [0,1], clipped to the unit
// interval. Stated only for psi(n) <= 1/2, where consecutive centers are far
// enough apart that the total length has a closed form.
inline IntervalUnion build_A_inf(std::int64_t n, const PsiSpec& psi) {
    if (n < 1) throw domain_error("build_A_inf: n must be positive");
    const Rational value = psi(n);
    if (value > make_rational(Int(1), Int(2))) throw domain_error("build_A_inf: psi(n) must be <= 1/2");
    if (value == 0) return IntervalUnion();
    const Rational radius = value / n;
    std::vector<IntervalUnion::Interval> raw;
    for (std::int64_t a = 1; a <= n; ++a) {
        if (std::gcd(a, n) != 1) continue;
        const Rational center = make_rational(Int(a), Int(n));
        raw.emplace_back(std::max(Rational(0), center - radius), std::min(Rational(1), center + radius));
    }
    return IntervalUnion::of(std::move(raw));
}

// Length of the overlap of two normalized unions, by a single merge sweep.
inline Rational intersection_length(const IntervalUnion& a, const IntervalUnion& b) {
    Rational total(0);
    std::size_t i = 0, j = 0;
    const auto& u = a.intervals();
    const auto& v = b.intervals();
    while (i < u.size() && j < v.size()) {
        const Rational lo = std::max(u[i].first, v[j].first);
        const Rational hi = std::min(u[i].second, v[j].second);
        if (hi > lo) total += hi - lo;
        if (u[i].second < v[j].second)
            ++i;
        else
            ++j;
    }
    return total;
}

inline Rational intersect_measure(std::int64_t n, std::int64_t m, const PsiSpec& psi) {
    return intersection_length(build_A_inf(n, psi), build_A_inf(m, psi));
}

// (sum of lengths)^2 over the full double sum of pairwise overlap lengths,
// diagonal included. Large values mean the family behaves as if independent.
inline Rational qia_statistic(const PsiSpec& psi, std::int64_t N) {
    if (N < 1) throw domain_error("qia_statistic: N must be positive");
    std::vector<IntervalUnion> sets;
    sets.reserve(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) sets.push_back(build_A_inf(n, psi));
    Rational total_length(0);
    for (const auto& s : sets) total_length += s.length();
    Rational denominator(0);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        denominator += sets[i].length();
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            denominator += 2 * intersection_length(sets[i], sets[j]);
    }
    if (denominator == 0) throw computation_error("qia_statistic: every set up to N is empty");
    return total_length * total_length / denominator;
}

// Least N with sum_{n<=N} phi(n) psi(n) / n >= K. Each step is at most 1/2
// when psi <= 1/2, so the partial sum at the answer lies in [K, K+1).
inline std::int64_t find_NK(const PsiSpec& psi, std::int64_t K, std::int64_t cap) {
    if (K < 0) throw domain_error("find_NK: K must be non-negative");
    if (cap < 1) throw domain_error("find_NK: cap must be positive");
    Rational sum(0);
    const Rational half(Int(1), Int(2));
    for (std::int64_t n = 1; n <= cap; ++n) {
        const Rational value = psi(n);
        if (value > half) throw domain_error("find_NK: psi(n) must be <= 1/2");
        sum += make_rational(Int(euler_phi(n)), Int(n)) * value;
        if (sum >= K) return n;
    }
    throw not_found_error("find_NK: partial sums did not reach K by the cap");
}

}  // namespace padic
