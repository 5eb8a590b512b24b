#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "padic/errors.hpp"
#include "padic/rational.hpp"

namespace padic {

// A closed ball in Z_p, i.e. the residue class {x : x == residue (mod p^depth)}.
// depth 0 with residue 0 is all of Z_p. Haar measure is exactly p^(-depth).
struct Ball {
    int depth = 0;
    Int residue = 0;

    friend bool operator==(const Ball& a, const Ball& b) {
        return a.depth == b.depth && a.residue == b.residue;
    }
    friend bool operator<(const Ball& a, const Ball& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.residue < b.residue;
    }
};

// Finite union of balls in Z_p, kept canonical: balls pairwise disjoint and
// maximal (no ball inside another, no complete family of p siblings left
// uncoalesced), sorted by (depth, residue). Two unions are equal as subsets
// of Z_p iff their canonical forms are identical.
class BallUnion {
public:
    explicit BallUnion(std::int64_t p) : p_(p) {
        if (p < 2) throw domain_error("BallUnion: p must be >= 2");
    }

    static BallUnion whole(std::int64_t p) {
        BallUnion u(p);
        u.balls_.push_back(Ball{0, Int(0)});
        return u;
    }

    // Canonicalizes an arbitrary collection: residues are reduced mod p^depth,
    // contained balls dropped, complete sibling families coalesced bottom-up.
    static BallUnion of(std::int64_t p, std::vector<Ball> raw);

    std::int64_t prime() const { return p_; }
    const std::vector<Ball>& balls() const { return balls_; }
    bool empty() const { return balls_.empty(); }
    std::size_t size() const { return balls_.size(); }

    int max_depth() const {
        int d = 0;
        for (const auto& b : balls_) d = std::max(d, b.depth);
        return d;
    }

    Rational measure() const {
        Rational total(0);
        for (const auto& b : balls_) total += pow_rational(p_, -b.depth);
        return total;
    }

    // Membership of the residue class x mod p^precision. Decidable only when
    // precision reaches every ball's depth.
    bool contains_residue(const Int& x, int precision) const {
        if (precision < max_depth())
            throw precision_error("contains_residue: precision below deepest ball");
        for (const auto& b : balls_) {
            if (mod_reduce(x, pow_int(p_, b.depth)) == b.residue) return true;
        }
        return false;
    }

    friend bool operator==(const BallUnion& a, const BallUnion& b) {
        if (a.p_ != b.p_) throw domain_error("BallUnion comparison: mixed primes");
        return a.balls_ == b.balls_;
    }

private:
    std::int64_t p_;
    std::vector<Ball> balls_;
};

inline BallUnion BallUnion::of(std::int64_t p, std::vector<Ball> raw) {
    BallUnion u(p);
    int max_d = 0;
    for (auto& b : raw) {
        if (b.depth < 0) throw domain_error("Ball: depth must be non-negative");
        max_d = std::max(max_d, b.depth);
    }
    std::vector<Int> pw(static_cast<std::size_t>(max_d) + 1);
    pw[0] = 1;
    for (int d = 1; d <= max_d; ++d) pw[static_cast<std::size_t>(d)] = pw[static_cast<std::size_t>(d - 1)] * p;
    for (auto& b : raw) b.residue = mod_reduce(b.residue, pw[static_cast<std::size_t>(b.depth)]);

    std::sort(raw.begin(), raw.end());

    // Containment pass, shallow first: a ball survives unless an already kept
    // ball at depth d <= depth matches it mod p^d.
    std::map<int, std::set<Int>> kept;
    for (const auto& b : raw) {
        bool covered = false;
        for (const auto& [d, residues] : kept) {
            if (d > b.depth) break;
            if (residues.count(mod_reduce(b.residue, pw[static_cast<std::size_t>(d)]))) {
                covered = true;
                break;
            }
        }
        if (!covered) kept[b.depth].insert(b.residue);
    }

    // Coalesce deepest-first: a full family of p siblings becomes its parent.
    for (int r = max_d; r >= 1; --r) {
        auto it = kept.find(r);
        if (it == kept.end()) continue;
        const Int& parent_mod = pw[static_cast<std::size_t>(r - 1)];
        std::map<Int, int> family;
        for (const auto& res : it->second) family[mod_reduce(res, parent_mod)]++;
        for (const auto& [parent, count] : family) {
            if (count == p) {
                for (std::int64_t j = 0; j < p; ++j) it->second.erase(parent + j * parent_mod);
                kept[r - 1].insert(parent);
            }
        }
        if (it->second.empty()) kept.erase(it);
    }

    for (const auto& [d, residues] : kept)
        for (const auto& res : residues) u.balls_.push_back(Ball{d, res});
    return u;
}

inline BallUnion normalize(std::int64_t p, std::vector<Ball> balls) {
    return BallUnion::of(p, std::move(balls));
}

inline BallUnion unite(const BallUnion& a, const BallUnion& b) {
    if (a.prime() != b.prime()) throw domain_error("unite: mixed primes");
    std::vector<Ball> all = a.balls();
    all.insert(all.end(), b.balls().begin(), b.balls().end());
    return BallUnion::of(a.prime(), std::move(all));
}

// Two balls of Z_p are nested or disjoint; the intersection, when nonempty,
// is the deeper one.
inline BallUnion intersect(const BallUnion& a, const BallUnion& b) {
    if (a.prime() != b.prime()) throw domain_error("intersect: mixed primes");
    const std::int64_t p = a.prime();
    std::vector<Ball> pieces;
    for (const auto& x : a.balls()) {
        for (const auto& y : b.balls()) {
            const Ball& shallow = x.depth <= y.depth ? x : y;
            const Ball& deep = x.depth <= y.depth ? y : x;
            if (mod_reduce(deep.residue, pow_int(p, shallow.depth)) == shallow.residue)
                pieces.push_back(deep);
        }
    }
    return BallUnion::of(p, std::move(pieces));
}

inline bool equals(const BallUnion& a, const BallUnion& b) { return a == b; }

inline bool subset(const BallUnion& a, const BallUnion& b) {
    if (a.prime() != b.prime()) throw domain_error("subset: mixed primes");
    const std::int64_t p = a.prime();
    for (const auto& x : a.balls()) {
        bool inside = false;
        for (const auto& y : b.balls()) {
            if (y.depth <= x.depth && mod_reduce(x.residue, pow_int(p, y.depth)) == y.residue) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

// {x in Z_p : |x - center|_p <= p^radius_exponent}, clipped to Z_p.
//
// By the ultrametric inequality exactly three shapes occur: all of Z_p when
// the radius is >= 1 and reaches the center, the empty set when the center
// is too far outside Z_p, and otherwise a single residue class whose depth
// is -radius_exponent (the center's denominator is then a unit mod p).
inline BallUnion ball_around(const Rational& center, int radius_exponent, std::int64_t p) {
    if (radius_exponent >= 0) {
        if (center == 0 || valuation(center, p) >= -radius_exponent) return BallUnion::whole(p);
        return BallUnion(p);
    }
    if (center != 0 && valuation(center, p) < 0) return BallUnion(p);
    const int depth = -radius_exponent;
    const Int mod = pow_int(p, depth);
    Int residue(0);
    if (center != 0) {
        const Int num = mod_reduce(numerator(center), mod);
        const Int den = mod_reduce(denominator(center), mod);
        residue = mod_reduce(num * mod_inverse(den, mod), mod);
    }
    return BallUnion::of(p, {Ball{depth, residue}});
}

}  // namespace padic
