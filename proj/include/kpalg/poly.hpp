#pragma once

// Sparse multivariate polynomials over Q.
//
// A Poly is bound to a Scope (generator names plus a monomial order). Terms are
// kept sorted in descending monomial order with no zero coefficients, so
// structural equality is mathematical equality.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace kpalg {

using Rat = mpq_class;

/// Upper bound on the number of generators of a scope.
inline constexpr std::size_t kMaxGens = 16;

class Mono {
public:
    using exp_type = std::uint16_t;

    Mono() = default;

    static Mono var(std::size_t index, unsigned exponent = 1);

    exp_type operator[](std::size_t i) const noexcept { return exps_[i]; }
    std::uint32_t degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    void set(std::size_t i, unsigned exponent);

    Mono operator*(const Mono& other) const;
    /// Requires `other.divides(*this)`.
    Mono operator/(const Mono& other) const;

    bool divides(const Mono& other) const noexcept;
    static Mono lcm(const Mono& a, const Mono& b);
    static bool coprime(const Mono& a, const Mono& b) noexcept;

    std::size_t hash() const noexcept;

    friend bool operator==(const Mono& a, const Mono& b) noexcept {
        return a.degree_ == b.degree_ && a.exps_ == b.exps_;
    }

private:
    std::array<exp_type, kMaxGens> exps_{};
    std::uint32_t degree_ = 0;
};

struct MonoHash {
    std::size_t operator()(const Mono& m) const noexcept { return m.hash(); }
};

enum class OrderKind { lex, grevlex };

/// A total, multiplicative order on monomials. `precedence[0]` is the most
/// significant generator.
class MonomialOrder {
public:
    MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence);

    static MonomialOrder grevlex(std::size_t ngens);
    static MonomialOrder lex(std::size_t ngens);

    OrderKind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& precedence() const noexcept { return precedence_; }

    /// Three-way comparison: positive when a > b.
    int compare(const Mono& a, const Mono& b) const noexcept;

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    OrderKind kind_;
    std::vector<std::size_t> precedence_;
};

/// Parse "lex" / "grevlex" (case-insensitive; "degrevlex" accepted).
std::optional<OrderKind> parse_order_kind(std::string_view name);
std::string order_kind_name(OrderKind kind);

class Scope;
using ScopePtr = std::shared_ptr<const Scope>;

class Scope {
public:
    static ScopePtr make(std::vector<std::string> names);
    static ScopePtr make(std::vector<std::string> names, MonomialOrder order);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    const MonomialOrder& order() const noexcept { return order_; }

    /// Same names, different order.
    ScopePtr with_order(MonomialOrder order) const;

    static bool same(const ScopePtr& a, const ScopePtr& b) noexcept;

    // Construction goes through make(); public only for make_shared.
    Scope(std::vector<std::string> names, MonomialOrder order);

private:
    std::vector<std::string> names_;
    MonomialOrder order_;
};

struct Term {
    Mono mono;
    Rat coef;
};

class Poly {
public:
    explicit Poly(ScopePtr scope);
    Poly(ScopePtr scope, const Rat& constant);

    static Poly generator(ScopePtr scope, std::size_t index);
    static Poly monomial(ScopePtr scope, const Mono& mono, const Rat& coef);
    /// Sorts, merges duplicate monomials, drops zeros.
    static Poly from_terms(ScopePtr scope, std::vector<Term> terms);

    const ScopePtr& scope() const noexcept { return scope_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Constant term value (0 when absent).
    Rat constant_term() const;
    /// Requires a nonzero polynomial.
    const Term& leading() const { return terms_.front(); }
    std::uint32_t total_degree() const noexcept;

    Poly operator-() const;
    Poly operator+(const Poly& other) const;
    Poly operator-(const Poly& other) const;
    Poly operator*(const Poly& other) const;
    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Poly& other);

    Poly scale(const Rat& factor) const;
    Poly mul_term(const Mono& mono, const Rat& coef) const;
    Poly pow(unsigned exponent) const;
    /// Divide by the leading coefficient. Zero stays zero.
    Poly monic() const;

    Poly partial(std::size_t index) const;
    Poly partial(std::string_view name) const;

    /// Same polynomial re-sorted under another scope with identical names.
    Poly rescoped(ScopePtr scope) const;

    /// this - factor * mono * other, in one merge pass.
    Poly sub_scaled(const Poly& other, const Mono& mono, const Rat& factor) const;

    std::string str() const;

    friend bool operator==(const Poly& a, const Poly& b);

private:
    void check_scope(const Poly& other) const;

    ScopePtr scope_;
    std::vector<Term> terms_;
};

/// Canonical text: terms in descending order, explicit `*`, `^` for powers.
std::string format_poly(const Poly& p);
std::string format_rat(const Rat& r);

/// Grammar: integer and a/b literals, generator names, + - * ^ and
/// parentheses. Exponents are nonnegative integer literals.
Poly parse_poly(std::string_view text, const ScopePtr& scope);

struct DivisionResult {
    std::vector<Poly> quotients;
    Poly remainder;
};

/// Multivariate division under the scope's order. Every divisor must be nonzero.
DivisionResult divmod_multi(const Poly& p, std::span<const Poly> divisors);
/// Division under an explicit order; results live in the re-ordered scope.
DivisionResult divmod_multi(const Poly& p, std::span<const Poly> divisors,
                            const MonomialOrder& order);
/// Remainder only (no quotient bookkeeping).
Poly reduce(const Poly& p, std::span<const Poly> divisors);
/// Exact quotient p / d when d divides p as polynomials.
std::optional<Poly> divide_exact(const Poly& p, const Poly& d);

struct BuchbergerOptions {
    /// Maximum number of S-pairs processed before giving up.
    std::size_t pair_budget = 20000;
};

/// Reduced Groebner basis (monic, sorted by leading monomial, descending).
std::vector<Poly> buchberger(std::span<const Poly> gens, const BuchbergerOptions& opts = {});
std::vector<Poly> buchberger(std::span<const Poly> gens, const MonomialOrder& order,
                             const BuchbergerOptions& opts = {});

}  // namespace kpalg
