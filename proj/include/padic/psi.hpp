#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "padic/errors.hpp"
#include "padic/rational.hpp"

namespace padic {

// An approximation function psi: N -> Q>=0, either a finite table (zero off
// the table) or one of the named parametric rules. Immutable; evaluation is
// pure, so specs may be shared freely across threads.
//
// Rule semantics, with v = nu_p(n):
//   constant c          n -> c
//   psi_k(p, k)         n -> n / p^(k+1)   iff v == k, else 0
//   psi_prime(p)        n -> n / p         iff p | n, else 0
//   psi_prime_k(p, k)   n -> n / p^k       iff p^k | n, else 0
//   psi_x(p, bits)      n -> n / p^(v+1)   iff p | n and bits[v] == 1, else 0
//   scaled(base, c)     n -> c * base(n)
//   restricted(base, p) n -> base(n) * [p does not divide n]
class PsiSpec {
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

public:
    enum class Kind { Table, Constant, PsiK, PsiPrime, PsiPrimeK, PsiX, Scaled, Restricted };

    static PsiSpec table(std::map<std::int64_t, Rational> entries);
    static PsiSpec constant(Rational c);
    static PsiSpec psi_k(std::int64_t p, int k);
    static PsiSpec psi_prime(std::int64_t p);
    static PsiSpec psi_prime_k(std::int64_t p, int k);
    // bits are x_1, x_2, ... ; indices beyond the list count as 0.
    static PsiSpec psi_x(std::int64_t p, std::vector<int> bits);
    static PsiSpec scaled(PsiSpec base, Rational c);
    static PsiSpec restricted(PsiSpec base, std::int64_t p);

    Rational operator()(std::int64_t n) const;

    Kind kind() const;
    std::int64_t prime() const;
    int k() const;
    const Rational& scalar() const;
    const std::vector<int>& bits() const;
    const std::map<std::int64_t, Rational>& entries() const;
    const PsiSpec base() const;

private:
    explicit PsiSpec(NodePtr node) : node_(std::move(node)) {}
    NodePtr node_;
};

struct PsiSpec::Node {
    Kind kind;
    std::map<std::int64_t, Rational> table;
    Rational c;
    std::int64_t p = 0;
    int k = 0;
    std::vector<int> bits;
    NodePtr base;
};

namespace detail {

inline void require_prime(std::int64_t p, const char* who) {
    if (p < 2) throw domain_error(std::string(who) + ": p must be prime");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw domain_error(std::string(who) + ": p must be prime");
}

}  // namespace detail

inline PsiSpec PsiSpec::table(std::map<std::int64_t, Rational> entries) {
    for (const auto& [n, v] : entries) {
        if (n < 1) throw domain_error("PsiSpec::table: keys must be positive");
        if (v < 0) throw domain_error("PsiSpec::table: values must be non-negative");
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::Table;
    node->table = std::move(entries);
    return PsiSpec(std::move(node));
}

inline PsiSpec PsiSpec::constant(Rational c) {
    if (c < 0) throw domain_error("PsiSpec::constant: value must be non-negative");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->c = std::move(c);
    return PsiSpec(std::move(node));
}

inline PsiSpec PsiSpec::psi_k(std::int64_t p, int k) {
    detail::require_prime(p, "PsiSpec::psi_k");
    if (k < 0) throw domain_error("PsiSpec::psi_k: k must be non-negative");
    auto node = std::make_shared<Node>();
    node->kind = Kind::PsiK;
    node->p = p;
    node->k = k;
    return PsiSpec(std::move(node));
}

inline PsiSpec PsiSpec::psi_prime(std::int64_t p) {
    detail::require_prime(p, "PsiSpec::psi_prime");
    auto node = std::make_shared<Node>();
    node->kind = Kind::PsiPrime;
    node->p = p;
    return PsiSpec(std::move(node));
}

inline PsiSpec PsiSpec::psi_prime_k(std::int64_t p, int k) {
    detail::require_prime(p, "PsiSpec::psi_prime_k");
    if (k < 0) throw domain_error("PsiSpec::psi_prime_k: k must be non-negative");
    auto node = std::make_shared<Node>();
    node->kind = Kind::PsiPrimeK;
    node->p = p;
    node->k = k;
    return PsiSpec(std::move(node));
}

inline PsiSpec PsiSpec::psi_x(std::int64_t p, std::vector<int> bits) {
    detail::require_prime(p, "PsiSpec::psi_x");
    for (int b : bits)
        if (b != 0 && b != 1) throw domain_error("PsiSpec::psi_x: bits must be 0 or 1");
    auto node = std::make_shared<Node>();
    node->kind = Kind::PsiX;
    node->p = p;
    node->bits = std::move(bits);
    return PsiSpec(std::move(node));
}

inline PsiSpec PsiSpec::scaled(PsiSpec base, Rational c) {
    if (c < 0) throw domain_error("PsiSpec::scaled: factor must be non-negative");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Scaled;
    node->c = std::move(c);
    node->base = base.node_;
    return PsiSpec(std::move(node));
}

inline PsiSpec PsiSpec::restricted(PsiSpec base, std::int64_t p) {
    detail::require_prime(p, "PsiSpec::restricted");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Restricted;
    node->p = p;
    node->base = base.node_;
    return PsiSpec(std::move(node));
}

inline Rational PsiSpec::operator()(std::int64_t n) const {
    if (n < 1) throw domain_error("PsiSpec: n must be positive");
    const Node* node = node_.get();
    Rational scale(1);
    for (;;) {
        switch (node->kind) {
            case Kind::Table: {
                auto it = node->table.find(n);
                return it == node->table.end() ? Rational(0) : scale * it->second;
            }
            case Kind::Constant:
                return scale * node->c;
            case Kind::PsiK: {
                if (valuation(n, node->p) != node->k) return Rational(0);
                return scale * make_rational(Int(n), pow_int(node->p, node->k + 1));
            }
            case Kind::PsiPrime: {
                if (n % node->p != 0) return Rational(0);
                return scale * make_rational(Int(n), Int(node->p));
            }
            case Kind::PsiPrimeK: {
                if (valuation(n, node->p) < node->k) return Rational(0);
                return scale * make_rational(Int(n), pow_int(node->p, node->k));
            }
            case Kind::PsiX: {
                const int v = valuation(n, node->p);
                if (v < 1 || v > static_cast<int>(node->bits.size()) ||
                    node->bits[static_cast<std::size_t>(v - 1)] == 0)
                    return Rational(0);
                return scale * make_rational(Int(n), pow_int(node->p, v + 1));
            }
            case Kind::Scaled:
                scale *= node->c;
                node = node->base.get();
                break;
            case Kind::Restricted:
                if (n % node->p == 0) return Rational(0);
                node = node->base.get();
                break;
        }
    }
}

inline PsiSpec::Kind PsiSpec::kind() const { return node_->kind; }
inline std::int64_t PsiSpec::prime() const { return node_->p; }
inline int PsiSpec::k() const { return node_->k; }
inline const Rational& PsiSpec::scalar() const { return node_->c; }
inline const std::vector<int>& PsiSpec::bits() const { return node_->bits; }
inline const std::map<std::int64_t, Rational>& PsiSpec::entries() const { return node_->table; }
inline const PsiSpec PsiSpec::base() const { return PsiSpec(node_->base); }

// Least k >= 0 with p^(-k) <= psi(n); none when psi(n) = 0. This is the
// quantized exponent the convergence argument works with, exposed for
// side-by-side comparison but never used to build sets.
inline std::optional<int> kn(const PsiSpec& psi, std::int64_t n, std::int64_t p) {
    const Rational v = psi(n);
    if (v == 0) return std::nullopt;
    if (v >= 1) return 0;
    return -snap_radius(v, p);
}

}  // namespace padic
