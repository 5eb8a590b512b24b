#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "padic/ball.hpp"
#include "padic/errors.hpp"
#include "padic/psi.hpp"
#include "padic/rational.hpp"

namespace padic {

enum class SetKind { A, B };

inline const char* to_string(SetKind kind) { return kind == SetKind::A ? "A" : "B"; }

inline SetKind set_kind_from_string(const std::string& s) {
    if (s == "A" || s == "a") return SetKind::A;
    if (s == "B" || s == "b") return SetKind::B;
    throw domain_error("set kind must be A or B");
}

namespace detail {

// Balls of radius p^s around a/n for every a in [-n, n] coprime to n. The
// a = 0 term participates only for n = 1, where gcd(0, 1) = 1.
inline void append_direct_family(std::vector<Ball>& out, std::int64_t p, std::int64_t n, int s) {
    for (std::int64_t a = -n; a <= n; ++a) {
        if (std::gcd(std::abs(a), n) != 1) continue;
        const BallUnion piece = ball_around(make_rational(Int(a), Int(n)), s, p);
        out.insert(out.end(), piece.balls().begin(), piece.balls().end());
        if (piece.size() == 1 && piece.balls()[0].depth == 0) {
            out.assign(1, Ball{0, Int(0)});  // already all of Z_p
            return;
        }
    }
}

// Same radius around the reciprocals n/a, a != 0.
inline void append_reciprocal_family(std::vector<Ball>& out, std::int64_t p, std::int64_t n, int s) {
    for (std::int64_t a = -n; a <= n; ++a) {
        if (a == 0 || std::gcd(std::abs(a), n) != 1) continue;
        const BallUnion piece = ball_around(make_rational(Int(n), Int(a)), s, p);
        out.insert(out.end(), piece.balls().begin(), piece.balls().end());
        if (piece.size() == 1 && piece.balls()[0].depth == 0) {
            out.assign(1, Ball{0, Int(0)});
            return;
        }
    }
}

}  // namespace detail

// The direct approximation set: x in Z_p within snapped radius psi(n)/n of
// some reduced fraction a/n, |a| <= n. Empty when psi(n) = 0.
inline BallUnion build_A(std::int64_t p, std::int64_t n, const PsiSpec& psi) {
    detail::require_prime(p, "build_A");
    if (n < 1) throw domain_error("build_A: n must be positive");
    const Rational value = psi(n);
    if (value == 0) return BallUnion(p);
    const int s = snap_radius(value / n, p);
    std::vector<Ball> balls;
    detail::append_direct_family(balls, p, n, s);
    return BallUnion::of(p, std::move(balls));
}

// The symmetric variant that also admits the reciprocals n/a as approximation
// centers, with the same snapped radius.
inline BallUnion build_B(std::int64_t p, std::int64_t n, const PsiSpec& psi) {
    detail::require_prime(p, "build_B");
    if (n < 1) throw domain_error("build_B: n must be positive");
    const Rational value = psi(n);
    if (value == 0) return BallUnion(p);
    const int s = snap_radius(value / n, p);
    std::vector<Ball> balls;
    detail::append_direct_family(balls, p, n, s);
    detail::append_reciprocal_family(balls, p, n, s);
    return BallUnion::of(p, std::move(balls));
}

inline BallUnion build_set(SetKind kind, std::int64_t p, std::int64_t n, const PsiSpec& psi) {
    return kind == SetKind::A ? build_A(p, n, psi) : build_B(p, n, psi);
}

inline Rational measure_A(std::int64_t p, std::int64_t n, const PsiSpec& psi) {
    return build_A(p, n, psi).measure();
}

inline Rational measure_B(std::int64_t p, std::int64_t n, const PsiSpec& psi) {
    return build_B(p, n, psi).measure();
}

// Union of the per-n sets over the window m <= n <= N, the finite surrogate
// for membership in infinitely many of them.
inline BallUnion window_union(std::int64_t p, const PsiSpec& psi, SetKind kind, std::int64_t m,
                              std::int64_t N) {
    detail::require_prime(p, "window_union");
    if (m < 1 || m > N) throw domain_error("window_union: need 1 <= m <= N");
    std::vector<Ball> balls;
    for (std::int64_t n = m; n <= N; ++n) {
        const BallUnion piece = build_set(kind, p, n, psi);
        balls.insert(balls.end(), piece.balls().begin(), piece.balls().end());
    }
    return BallUnion::of(p, std::move(balls));
}

struct WindowRow {
    std::int64_t start = 1;
    std::int64_t end = 1;
    Rational measure;
    BallUnion set;
};

struct WindowReport {
    std::int64_t p = 2;
    SetKind kind = SetKind::A;
    std::vector<WindowRow> rows;
};

// One row per requested window start, all sharing the right endpoint N.
// Stable measures across rows are the caller's evidence that the window has
// reached the tail behaviour.
inline WindowReport limsup_ladder(std::int64_t p, const PsiSpec& psi, SetKind kind, std::int64_t N,
                                  const std::vector<std::int64_t>& ladder) {
    WindowReport report;
    report.p = p;
    report.kind = kind;
    for (const std::int64_t m : ladder) {
        if (m > N) throw domain_error("limsup_ladder: ladder entry exceeds N");
        BallUnion u = window_union(p, psi, kind, m, N);
        Rational mu = u.measure();
        report.rows.push_back(WindowRow{m, N, std::move(mu), std::move(u)});
    }
    return report;
}

// The disjoint union of valuation annuli selected by the bit list: for each
// k with bits[k-1] = 1, the p-1 classes b p^k mod p^(k+1), b = 1..p-1.
// Total measure is sum over selected k of (p-1) p^(-k-1).
inline BallUnion predicted_spectrum_set(std::int64_t p, const std::vector<int>& bits) {
    detail::require_prime(p, "predicted_spectrum_set");
    std::vector<Ball> balls;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == 0) continue;
        if (bits[i] != 1) throw domain_error("predicted_spectrum_set: bits must be 0 or 1");
        const int k = static_cast<int>(i) + 1;
        const Int pk = pow_int(p, k);
        for (std::int64_t b = 1; b < p; ++b) balls.push_back(Ball{k + 1, b * pk});
    }
    return BallUnion::of(p, std::move(balls));
}

}  // namespace padic
