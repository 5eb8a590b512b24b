#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "padic/approx_sets.hpp"
#include "padic/ball.hpp"
#include "padic/errors.hpp"
#include "padic/rational.hpp"

namespace padic {

namespace detail {

// splitmix64 output function.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// k-th word of the splitmix64 stream seeded by `seed`.
inline std::uint64_t stream_word(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed + (k + 1) * 0x9E3779B97F4A7C15ull);
}

}  // namespace detail

// Deterministic stand-in for a Haar-random element of Z_p at finite
// precision: the draw at counter value i is a uniform residue mod p^P and is
// a pure function of (p, P, seed, i).
//
// Construction: draw i owns the splitmix64 substream seeded by
// stream_word(seed, i); its words are rejection-sampled into P uniform
// base-p digits, least significant first. Disjoint counter ranges therefore
// give independent, mergeable sample batches.
class SampleStream {
public:
    SampleStream(std::int64_t p, int precision, std::uint64_t seed, std::uint64_t counter = 0)
        : p_(p), precision_(precision), seed_(seed), counter_(counter) {
        detail::require_prime(p, "SampleStream");
        if (precision < 1) throw domain_error("SampleStream: precision must be positive");
    }

    std::int64_t prime() const { return p_; }
    int precision() const { return precision_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    // The residue drawn at an absolute counter position, without advancing.
    Int draw_at(std::uint64_t index) const {
        const std::uint64_t sub_seed = detail::stream_word(seed_, index);
        const std::uint64_t p = static_cast<std::uint64_t>(p_);
        const std::uint64_t rem = (UINT64_MAX % p + 1) % p;
        std::uint64_t word_index = 0;
        Int residue(0);
        Int scale(1);
        for (int d = 0; d < precision_; ++d) {
            std::uint64_t w;
            do {
                w = detail::stream_word(sub_seed, word_index++);
            } while (rem != 0 && w > UINT64_MAX - rem);
            residue += scale * (w % p);
            scale *= p_;
        }
        return residue;
    }

    std::vector<Int> sample(std::int64_t count) {
        if (count < 0) throw domain_error("SampleStream::sample: count must be non-negative");
        std::vector<Int> out;
        out.reserve(static_cast<std::size_t>(count));
        for (std::int64_t i = 0; i < count; ++i) out.push_back(draw_at(counter_ + static_cast<std::uint64_t>(i)));
        counter_ += static_cast<std::uint64_t>(count);
        return out;
    }

private:
    std::int64_t p_;
    int precision_;
    std::uint64_t seed_;
    std::uint64_t counter_;
};

// True iff the class of `residue` mod p^precision lies inside the union.
inline bool member(const Int& residue, int precision, const BallUnion& u) {
    if (precision < u.max_depth())
        throw precision_error("member: precision below the union's deepest ball");
    return u.contains_residue(residue, precision);
}

struct Estimate {
    std::int64_t hits = 0;
    std::int64_t trials = 0;
    Rational point;       // hits / trials
    double std_error = 0;  // sqrt(q (1-q) / trials) at q = point
};

// Monte Carlo frequency estimate of the window union's Haar measure. The
// sampling precision is always derived from the set itself, so membership is
// decidable by construction.
inline Estimate estimate_measure(std::int64_t p, const PsiSpec& psi, SetKind kind, std::int64_t m,
                                 std::int64_t N, std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) throw domain_error("estimate_measure: trials must be positive");
    const BallUnion u = window_union(p, psi, kind, m, N);
    const int precision = std::max(1, u.max_depth());
    SampleStream stream(p, precision, seed);
    Estimate est;
    est.trials = trials;
    for (std::int64_t i = 0; i < trials; ++i) {
        if (member(stream.draw_at(static_cast<std::uint64_t>(i)), precision, u)) ++est.hits;
    }
    est.point = make_rational(Int(est.hits), Int(est.trials));
    const double q = to_double(est.point);
    est.std_error = std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
    return est;
}

}  // namespace padic
