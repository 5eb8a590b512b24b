#include <doctest.h>

#include <algorithm>

#include "padic/psi.hpp"
#include "padic/psi_json.hpp"
#include "../testutil.hpp"

using namespace padic;
using testutil::frac;

TEST_CASE("rule evaluation") {
    const PsiSpec p1 = PsiSpec::psi_k(2, 1);
    CHECK(p1(6) == frac(3, 2));
    CHECK(p1(8) == 0);  // valuation 3, not 1
    CHECK(p1(3) == 0);

    const PsiSpec prime3 = PsiSpec::psi_prime(3);
    CHECK(prime3(6) == 2);
    CHECK(prime3(5) == 0);

    const PsiSpec pk = PsiSpec::psi_prime_k(2, 2);
    CHECK(pk(12) == 3);
    CHECK(pk(6) == 0);
    CHECK(pk(8) == 2);

    const PsiSpec x = PsiSpec::psi_x(2, {1, 0, 1});
    CHECK(x(8) == frac(1, 2));  // valuation 3 selected: 8 / 2^4
    CHECK(x(4) == 0);           // valuation 2 not selected
    CHECK(x(6) == frac(3, 2));  // valuation 1 selected
    CHECK(x(32) == 0);          // valuation 5 beyond the list
    CHECK(x(7) == 0);
}

TEST_CASE("table, scale, restrict") {
    const PsiSpec t = PsiSpec::table({{4, frac(4, 9)}});
    CHECK(t(4) == frac(4, 9));
    CHECK(t(5) == 0);

    CHECK(PsiSpec::restricted(PsiSpec::constant(frac(1, 2)), 3)(6) == 0);
    CHECK(PsiSpec::restricted(PsiSpec::constant(frac(1, 2)), 3)(7) == frac(1, 2));
    CHECK(PsiSpec::scaled(PsiSpec::psi_k(2, 1), frac(1, 2))(6) == frac(3, 4));

    CHECK_THROWS_AS(PsiSpec::constant(frac(-1, 2)), domain_error);
    CHECK_THROWS_AS(PsiSpec::psi_k(4, 1), domain_error);
    CHECK_THROWS_AS(PsiSpec::psi_k(2, -1), domain_error);
    CHECK_THROWS_AS(PsiSpec::table({{0, Rational(1)}}), domain_error);
}

TEST_CASE("restricted vanishes exactly on multiples of p") {
    const PsiSpec r = PsiSpec::restricted(PsiSpec::constant(frac(1, 3)), 5);
    for (std::int64_t n = 1; n <= 500; ++n) {
        if (n % 5 == 0)
            CHECK(r(n) == 0);
        else
            CHECK(r(n) == frac(1, 3));
    }
}

TEST_CASE("bit-list rule equals pointwise max of the single-annulus rules") {
    const std::vector<int> bits = {1, 0, 1, 1};
    for (const std::int64_t p : {2, 3}) {
        const PsiSpec x = PsiSpec::psi_x(p, bits);
        std::vector<PsiSpec> parts;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) parts.push_back(PsiSpec::psi_k(p, static_cast<int>(i) + 1));
        for (std::int64_t n = 1; n <= 2000; ++n) {
            Rational best(0);
            for (const auto& part : parts) best = std::max(best, part(n));
            CHECK(x(n) == best);
        }
    }
}

TEST_CASE("selected annuli have exact power-of-p thresholds") {
    const PsiSpec p2 = PsiSpec::psi_k(3, 2);
    for (std::int64_t n = 1; n <= 2000; ++n) {
        const Rational v = p2(n);
        if (v == 0) continue;
        CHECK(v / n == pow_rational(3, -3));
    }
}

TEST_CASE("kn quantization") {
    CHECK(kn(PsiSpec::constant(frac(2, 5)), 1, 2) == 2);
    CHECK(kn(PsiSpec::constant(Rational(1)), 9, 5) == 0);
    CHECK(kn(PsiSpec::constant(Rational(0)), 4, 2) == std::nullopt);
    CHECK(kn(PsiSpec::constant(Rational(3)), 1, 2) == 0);
    CHECK(kn(PsiSpec::constant(frac(1, 8)), 1, 2) == 3);
}

TEST_CASE("json round-trip and strict parsing") {
    const PsiSpec x = PsiSpec::psi_x(2, {1, 0, 1});
    const PsiSpec back = psi_from_string(psi_to_json(x).dump());
    for (std::int64_t n = 1; n <= 64; ++n) CHECK(back(n) == x(n));

    const PsiSpec t = psi_from_string(R"({"kind":"table","entries":[[4,"4/9"],[6,"0/1"]]})");
    CHECK(t(4) == frac(4, 9));
    CHECK(t(6) == 0);

    const PsiSpec nested = psi_from_string(
        R"({"kind":"rule","name":"scaled","c":"1/4","base":{"kind":"rule","name":"psi_prime","p":2}})");
    CHECK(nested(6) == frac(3, 4));

    CHECK_THROWS_AS(psi_from_string(R"({"kind":"table","entries":[[4,"2/4"]]})"), domain_error);
    CHECK_THROWS_AS(psi_from_string(R"({"kind":"table","entries":[[4,"-1/2"]]})"), domain_error);
    CHECK_THROWS_AS(psi_from_string(R"({"kind":"table","entries":[[4,"1"]]})"), domain_error);
    CHECK_THROWS_AS(psi_from_string(R"({"kind":"rule","name":"nope"})"), domain_error);
    CHECK_THROWS_AS(psi_from_string("not json"), domain_error);
    CHECK_THROWS_AS(psi_from_string(R"({"kind":"rule","name":"psi_k","p":4,"k":1})"), domain_error);
}
