#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "padic/arith.hpp"
#include "../testutil.hpp"

using namespace padic;
using testutil::frac;

namespace {

// Independent oracle: count 1 <= a <= n with gcd(a, n) = 1.
std::int64_t phi_oracle(std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++count;
    return count;
}

// Independent prime-set oracle for l_t via plain trial division.
std::set<std::int64_t> prime_divisors(std::int64_t n) {
    std::set<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            out.insert(d);
            n /= d;
        }
    }
    if (n > 1) out.insert(n);
    return out;
}

}  // namespace

TEST_CASE("euler_phi examples and oracle") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(97) == 96);
    CHECK_THROWS_AS(euler_phi(0), domain_error);
    for (std::int64_t n = 1; n <= 10000; ++n) CHECK(euler_phi(n) == phi_oracle(n));
}

TEST_CASE("mertens_sum") {
    CHECK(mertens_sum(2) == frac(1, 2));
    CHECK(mertens_sum(3) == frac(5, 6));
    CHECK(mertens_sum(10) == frac(247, 210));
    CHECK(mertens_sum(4) == mertens_sum(3));
    CHECK_THROWS_AS(mertens_sum(1), domain_error);
    CHECK_THROWS_AS(mertens_sum(2'000'000), domain_error);
}

TEST_CASE("mertens deviation stays near the frozen constant") {
    // Sampled form of the estimate: sum_{p<=x} 1/p - ln ln x within 0.30 of b.
    for (const std::int64_t x : {100, 317, 1000, 4096, 31337, 100000, 1000000}) {
        const double dev = to_double(mertens_sum(x)) - std::log(std::log(static_cast<double>(x)));
        CHECK(std::abs(dev - 0.2615) <= 0.30);
    }
}

TEST_CASE("big_m") {
    const PsiSpec half = PsiSpec::constant(frac(1, 2));
    CHECK(big_m(2, 4, half) == 2);
    CHECK(big_m(7, 7, half) == frac(7, 2));
    const PsiSpec t = PsiSpec::table({{1, frac(1, 2)}});
    CHECK(big_m(1, 5, t) == frac(5, 2));

    // scaling: M(m, n, psi/K) = M(m, n, psi) / K
    const PsiSpec third = PsiSpec::scaled(half, frac(1, 3));
    for (std::int64_t m = 1; m <= 20; ++m)
        for (std::int64_t n = 1; n <= 20; ++n)
            CHECK(big_m(m, n, third) == big_m(m, n, half) / 3);
}

TEST_CASE("l_t examples and properties") {
    CHECK(l_t(2, 2, Rational(1)) == 0);
    CHECK(l_t(2, 3, Rational(1)) == frac(5, 6));
    CHECK(l_t(2, 3, Rational(3)) == frac(1, 3));

    for (std::int64_t a = 1; a <= 30; ++a) {
        for (std::int64_t b = 1; b <= 30; ++b) {
            const Rational l1 = l_t(a, b, Rational(1));
            CHECK(l1 == l_t(b, a, Rational(1)));                    // symmetry
            CHECK(l_t(a, b, Rational(2)) <= l1);                    // non-increasing in t
            CHECK(l_t(a, b, frac(7, 2)) <= l_t(a, b, Rational(2)));
            CHECK(l_t(3 * a, 3 * b, Rational(1)) == l1);            // gcd-scale invariance
            // cross-check against the trial-division oracle
            const std::int64_t g = std::gcd(a, b);
            Rational expect(0);
            for (std::int64_t p : prime_divisors((a / g) * (b / g))) expect += frac(1, p);
            CHECK(l1 == expect);
        }
    }
}

TEST_CASE("pv_rhs") {
    const PsiSpec half = PsiSpec::constant(frac(1, 2));
    const PairStatistics st = pv_rhs(2, 4, half);
    CHECK(st.indicator);
    CHECK(st.pv_product == frac(3, 2));
    CHECK(st.rhs() == frac(3, 2));

    const PairStatistics small = pv_rhs(2, 3, PsiSpec::constant(frac(1, 100)));
    CHECK_FALSE(small.indicator);
    CHECK(small.rhs() == 0);

    // all prime divisors at or below the cutoff: empty product
    const PairStatistics empty_product = pv_rhs(3, 4, PsiSpec::constant(Rational(1)));
    CHECK(empty_product.indicator);
    CHECK(empty_product.pv_product == 1);

    CHECK_THROWS_AS(pv_rhs(5, 5, half), domain_error);
}

TEST_CASE("et_enumerate") {
    const PsiSpec half = PsiSpec::constant(frac(1, 2));

    SUBCASE("default threshold leaves the grid empty") {
        const EtResult r = et_enumerate(1, 100, Rational(1), half, Rational(10));
        CHECK(r.pairs.empty());
        CHECK(r.weighted_sum == 0);
    }

    SUBCASE("lowered threshold matches the frozen enumeration") {
        const EtResult r = et_enumerate(1, 10, Rational(1), half, frac(1, 2));
        const std::vector<std::pair<std::int64_t, std::int64_t>> expected = {
            {1, 2}, {2, 1}, {2, 4}, {3, 6}, {4, 2}, {4, 8}, {5, 10}, {6, 3}, {8, 4}, {10, 5}};
        CHECK(r.pairs == expected);
        CHECK(r.weighted_sum == frac(347, 450));
    }

    SUBCASE("single diagonal pair") {
        const EtResult r = et_enumerate(5, 5, Rational(1), half, Rational(0));
        REQUIRE(r.pairs.size() == 1);
        CHECK(r.pairs[0] == std::pair<std::int64_t, std::int64_t>{5, 5});
        const Rational w = frac(4, 5) * frac(1, 2);
        CHECK(r.weighted_sum == w * w);
    }

    SUBCASE("diagonal pair drops out once psi is too large") {
        const PsiSpec big = PsiSpec::constant(Rational(2));
        const EtResult r = et_enumerate(5, 5, Rational(1), big, Rational(0));
        CHECK(r.pairs.empty());
    }

    CHECK_THROWS_AS(et_enumerate(10, 5, Rational(1), half, Rational(10)), domain_error);
}

TEST_CASE("rescaled grids contain the unscaled one") {
    const PsiSpec half = PsiSpec::constant(frac(1, 2));
    CHECK(rescale_containment_check(1, 30, Rational(1), half, 1, frac(1, 2)));
    CHECK(rescale_containment_check(1, 50, Rational(2), half, 3, frac(1, 2)));
    CHECK(rescale_containment_check(1, 50, Rational(2), half, 3));  // default threshold: empty sets
    CHECK(rescale_containment_check(1, 40, Rational(1), PsiSpec::constant(Rational(0)), 5, frac(1, 2)));
}

TEST_CASE("sieve basics") {
    const Sieve& sieve = default_sieve();
    CHECK(sieve.is_prime(2));
    CHECK(sieve.is_prime(999983));
    CHECK_FALSE(sieve.is_prime(1));
    CHECK_FALSE(sieve.is_prime(999981));
    CHECK_THROWS_AS(sieve.is_prime(2'000'000), domain_error);
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(8));
    CHECK_THROWS_AS(factorize(0), domain_error);
}
