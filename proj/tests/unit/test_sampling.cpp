#include <doctest.h>

#include <cmath>
#include <random>

#include "padic/sampling.hpp"
#include "../testutil.hpp"

using namespace padic;
using testutil::frac;

TEST_CASE("streams are deterministic and counter-addressed") {
    SampleStream a(3, 4, 12345);
    SampleStream b(3, 4, 12345);
    CHECK(a.sample(0).empty());
    const auto xs = a.sample(50);
    const auto ys = b.sample(50);
    CHECK(xs == ys);
    CHECK(a.counter() == 50);

    // resuming mid-stream reproduces the tail
    SampleStream c(3, 4, 12345, 25);
    const auto tail = c.sample(25);
    for (int i = 0; i < 25; ++i) CHECK(tail[static_cast<std::size_t>(i)] == xs[static_cast<std::size_t>(i + 25)]);

    SampleStream d(3, 4, 54321);
    CHECK(d.sample(50) != xs);

    CHECK_THROWS_AS(SampleStream(4, 2, 1), domain_error);
    CHECK_THROWS_AS(SampleStream(3, 0, 1), domain_error);
}

TEST_CASE("residues are in range and digit frequencies look uniform") {
    const std::int64_t p = 3;
    const int P = 2;
    SampleStream s(p, P, 2024);
    const auto xs = s.sample(100000);
    const Int mod = pow_int(p, P);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
    for (const auto& x : xs) {
        CHECK(x >= 0);
        CHECK(x < mod);
        counts[(x % p).convert_to<std::size_t>()]++;
    }
    const double expect = 100000.0 / static_cast<double>(p);
    const double sigma = std::sqrt(100000.0 * (1.0 / p) * (1.0 - 1.0 / p));
    for (const auto c : counts) CHECK(std::abs(static_cast<double>(c) - expect) <= 5 * sigma);
}

TEST_CASE("member checks congruences at each ball's depth") {
    const BallUnion ball22 = normalize(2, {Ball{2, Int(2)}});
    CHECK(member(Int(6), 4, ball22));
    CHECK_FALSE(member(Int(4), 4, ball22));
    CHECK_FALSE(member(Int(0), 4, BallUnion(2)));
    CHECK_THROWS_AS(member(Int(1), 1, ball22), precision_error);
}

TEST_CASE("member agrees with exact intersection") {
    std::mt19937_64 rng(401);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t p = testutil::random_prime(rng);
        const BallUnion u = testutil::random_union(rng, p);
        const int P = std::max(1, u.max_depth());
        const Int mod = pow_int(p, P);
        std::uniform_int_distribution<long long> dist(0, mod.convert_to<long long>() - 1);
        const Int x(dist(rng));
        const BallUnion point = normalize(p, {Ball{P, x}});
        CHECK(member(x, P, u) == !intersect(point, u).empty());
    }
}

TEST_CASE("estimates land near exact measures on committed seeds") {
    const Estimate est = estimate_measure(2, PsiSpec::psi_k(2, 1), SetKind::B, 1, 60, 100000, 99);
    CHECK(to_double(est.point) == doctest::Approx(0.25).epsilon(0.05));
    CHECK(to_double(abs(est.point - frac(1, 4))) <= 5 * est.std_error);

    const Estimate zero = estimate_measure(5, PsiSpec::constant(Rational(0)), SetKind::A, 1, 10, 100, 7);
    CHECK(zero.hits == 0);
    CHECK(zero.point == 0);

    const Estimate spectrum =
        estimate_measure(2, PsiSpec::psi_x(2, {1, 0, 1}), SetKind::B, 1, 60, 100000, 123);
    CHECK(to_double(abs(spectrum.point - frac(5, 16))) <= 5 * spectrum.std_error);

    // determinism, bit for bit
    const Estimate again =
        estimate_measure(2, PsiSpec::psi_x(2, {1, 0, 1}), SetKind::B, 1, 60, 100000, 123);
    CHECK(again.hits == spectrum.hits);
    CHECK(again.point == spectrum.point);

    CHECK_THROWS_AS(estimate_measure(2, PsiSpec::psi_k(2, 1), SetKind::B, 1, 60, 0, 1), domain_error);
}
