#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "padic/errors.hpp"
#include "padic/psi.hpp"
#include "padic/rational.hpp"

namespace padic {

// Deterministic sieve of Eratosthenes, built once and shared read-only.
// Requests past the configured limit are an explicit error, never a silent
// truncation.
class Sieve {
public:
    explicit Sieve(std::int64_t limit) : limit_(limit) {
        if (limit < 2) throw domain_error("Sieve: limit must be >= 2");
        std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
        for (std::int64_t i = 2; i <= limit; ++i) {
            if (composite[static_cast<std::size_t>(i)]) continue;
            primes_.push_back(i);
            for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
        }
    }

    std::int64_t limit() const { return limit_; }
    const std::vector<std::int64_t>& primes() const { return primes_; }

    bool is_prime(std::int64_t n) const {
        if (n > limit_) throw domain_error("Sieve: query exceeds sieve limit");
        if (n < 2) return false;
        return std::binary_search(primes_.begin(), primes_.end(), n);
    }

private:
    std::int64_t limit_;
    std::vector<std::int64_t> primes_;
};

inline const Sieve& default_sieve() {
    static const Sieve sieve(1'000'000);
    return sieve;
}

// Trial-division primality for parameter validation; independent of the sieve
// bound.
inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// (prime, exponent) pairs in increasing prime order. Valid for n up to the
// square of the sieve limit.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw domain_error("factorize: n must be positive");
    const Sieve& sieve = default_sieve();
    if (n > sieve.limit() * sieve.limit())
        throw domain_error("factorize: n exceeds the sieve's factoring range");
    std::vector<std::pair<std::int64_t, int>> factors;
    for (std::int64_t p : sieve.primes()) {
        if (p * p > n) break;
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        factors.emplace_back(p, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

inline std::int64_t euler_phi(std::int64_t n) {
    if (n < 1) throw domain_error("euler_phi: n must be positive");
    std::int64_t phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

// Exact sum of 1/p over primes p <= x. Accumulated without per-step
// normalization; the numerator and denominator are coprime by construction.
inline Rational mertens_sum(std::int64_t x) {
    if (x < 2) throw domain_error("mertens_sum: x must be >= 2");
    const Sieve& sieve = default_sieve();
    if (x > sieve.limit()) throw domain_error("mertens_sum: x exceeds sieve limit");
    Int num(0), den(1);
    for (std::int64_t p : sieve.primes()) {
        if (p > x) break;
        num = num * p + den;
        den *= p;
    }
    return make_rational(num, den);
}

// Regression constant: mertens_sum(10^6) - ln ln 10^6, frozen from a
// high-precision evaluation. Deviations from it are what the estimate's
// O(1/ln x) term measures at desk scale.
inline constexpr double mertens_b = 0.261536185091662;

// M(m, n) = max{m psi(n), n psi(m)}.
inline Rational big_m(std::int64_t m, std::int64_t n, const PsiSpec& psi) {
    if (m < 1 || n < 1) throw domain_error("big_m: arguments must be positive");
    return std::max(Rational(m) * psi(n), Rational(n) * psi(m));
}

// L_t(a, b) = sum of 1/p over primes p | ab/gcd(a,b)^2 with p >= t.
inline Rational l_t(std::int64_t a, std::int64_t b, const Rational& t) {
    if (a < 1 || b < 1) throw domain_error("l_t: arguments must be positive");
    if (t < 1) throw domain_error("l_t: t must be >= 1");
    const std::int64_t g = std::gcd(a, b);
    const std::int64_t s = (a / g) * (b / g);
    Rational sum(0);
    for (const auto& [p, e] : factorize(s)) {
        if (Rational(p) >= t) sum += make_rational(Int(1), Int(p));
    }
    return sum;
}

// Everything the pairwise-overlap bound consumes for one pair (m, n): the
// maximum M(m,n), the gcd, whether the bound is live at all, and the product
// over large primes of mn/gcd^2. A false indicator forces the bound to 0.
struct PairStatistics {
    std::int64_t m = 0;
    std::int64_t n = 0;
    Rational big_m;
    std::int64_t gcd = 1;
    bool indicator = false;  // big_m >= gcd
    Rational pv_product{1};  // product of (1 + 1/p); empty product is 1

    Rational rhs() const { return indicator ? pv_product : Rational(0); }
};

inline PairStatistics pv_rhs(std::int64_t m, std::int64_t n, const PsiSpec& psi) {
    if (m == n) throw domain_error("pv_rhs: m and n must differ");
    if (m < 1 || n < 1) throw domain_error("pv_rhs: arguments must be positive");
    PairStatistics st;
    st.m = m;
    st.n = n;
    st.big_m = big_m(m, n, psi);
    st.gcd = std::gcd(m, n);
    st.indicator = st.big_m >= st.gcd;
    const std::int64_t s = (m / st.gcd) * (n / st.gcd);
    const Rational cutoff = st.big_m / st.gcd;
    for (const auto& [p, e] : factorize(s)) {
        if (Rational(p) > cutoff) st.pv_product *= make_rational(Int(p + 1), Int(p));
    }
    return st;
}

struct EtResult {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // ordered pairs (v, w)
    Rational weighted_sum{0};
};

// E_t over the grid [X, Y]^2: ordered pairs with gcd(v,w) >= M(v,w)/t and
// L_t(v,w) >= threshold, together with the exact sum of
// (phi(v) psi(v) / v) (phi(w) psi(w) / w) over the set.
inline EtResult et_enumerate(std::int64_t X, std::int64_t Y, const Rational& t, const PsiSpec& psi,
                             const Rational& threshold) {
    if (X < 1 || X > Y) throw domain_error("et_enumerate: need 1 <= X <= Y");
    if (t < 1) throw domain_error("et_enumerate: t must be >= 1");
    const std::size_t count = static_cast<std::size_t>(Y - X + 1);
    std::vector<Rational> weight(count);
    for (std::int64_t v = X; v <= Y; ++v)
        weight[static_cast<std::size_t>(v - X)] = make_rational(Int(euler_phi(v)), Int(v)) * psi(v);
    EtResult result;
    for (std::int64_t v = X; v <= Y; ++v) {
        for (std::int64_t w = X; w <= Y; ++w) {
            const std::int64_t g = std::gcd(v, w);
            if (Rational(g) * t < big_m(v, w, psi)) continue;
            if (l_t(v, w, t) < threshold) continue;
            result.pairs.emplace_back(v, w);
            result.weighted_sum +=
                weight[static_cast<std::size_t>(v - X)] * weight[static_cast<std::size_t>(w - X)];
        }
    }
    return result;
}

// Checks that the grid set built from psi with the plain gcd >= M/t condition
// is contained in the set built from psi/K; scaling M by 1/K only relaxes the
// gcd condition, so containment must hold on every grid.
inline bool rescale_containment_check(std::int64_t X, std::int64_t Y, const Rational& t, const PsiSpec& psi,
                                      std::int64_t K, const Rational& threshold = Rational(10)) {
    if (K < 1) throw domain_error("rescale_containment_check: K must be positive");
    const EtResult base = et_enumerate(X, Y, t, psi, threshold);
    const EtResult scaled = et_enumerate(X, Y, t, PsiSpec::scaled(psi, make_rational(Int(1), Int(K))), threshold);
    return std::includes(scaled.pairs.begin(), scaled.pairs.end(), base.pairs.begin(), base.pairs.end());
}

}  // namespace padic
