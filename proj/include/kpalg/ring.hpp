#pragma once

// Localized quotient rings Q[x1..xm]/(relations)[d1^-1, ..., dk^-1].
//
// Elements are fractions num / prod(d_j^e_j) whose numerator is kept reduced
// modulo a Groebner basis of the relations. The zero test is
// "numerator reduces to 0", which is sound only when every declared
// denominator is a non-zero-divisor modulo the relations. That is an
// obligation on whoever declares the denominators; it is not checked here.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kpalg/poly.hpp"

namespace kpalg {

class RingCtx;
using RingPtr = std::shared_ptr<const RingCtx>;

struct RingOptions {
    BuchbergerOptions groebner;
};

class RingCtx {
public:
    /// Computes the Groebner basis of `relations` under the scope's order and
    /// rejects any denominator that reduces to zero.
    static RingPtr make(ScopePtr scope, std::vector<Poly> relations, std::vector<Poly> denominators,
                        const RingOptions& opts = {});
    /// Convenience: parse generator names, relations and denominators from text.
    static RingPtr make(std::vector<std::string> gens, const std::vector<std::string>& relations,
                        const std::vector<std::string>& denominators, OrderKind order = OrderKind::grevlex,
                        const RingOptions& opts = {});

    const ScopePtr& scope() const noexcept { return scope_; }
    std::size_t ngens() const noexcept { return scope_->size(); }
    const std::vector<Poly>& relations() const noexcept { return relations_; }
    const std::vector<Poly>& groebner() const noexcept { return groebner_; }
    const std::vector<Poly>& denominators() const noexcept { return denoms_; }
    /// Denominators reduced modulo the relations; these are what numerators are built against.
    const std::vector<Poly>& reduced_denominators() const noexcept { return denoms_nf_; }
    /// Value of a denominator that reduces to a nonzero constant.
    const std::optional<Rat>& constant_denominator(std::size_t j) const { return denoms_unit_.at(j); }
    const RingOptions& options() const noexcept { return opts_; }

    Poly reduce(const Poly& p) const;
    Poly parse(std::string_view text) const { return parse_poly(text, scope_); }

    /// Index of the declared denominator equal to `d` modulo the relations.
    std::optional<std::size_t> find_denominator(const Poly& d) const;

    /// Same ring with `extra` appended to the denominators (duplicates skipped).
    RingPtr with_denominators(std::span<const Poly> extra) const;

    // Use make().
    RingCtx(ScopePtr scope, std::vector<Poly> relations, std::vector<Poly> groebner,
            std::vector<Poly> denoms, RingOptions opts);

private:
    ScopePtr scope_;
    std::vector<Poly> relations_;
    std::vector<Poly> groebner_;
    std::vector<Poly> denoms_;
    std::vector<Poly> denoms_nf_;
    std::vector<std::optional<Rat>> denoms_unit_;
    RingOptions opts_;
};

class Elem {
public:
    explicit Elem(RingPtr ctx);
    Elem(RingPtr ctx, const Rat& value);
    Elem(RingPtr ctx, Poly num);
    Elem(RingPtr ctx, Poly num, std::vector<unsigned> denom_exps);

    static Elem generator(RingPtr ctx, std::size_t index);
    /// 1 / d_j^power.
    static Elem inverse_denominator(RingPtr ctx, std::size_t j, unsigned power = 1);

    const RingPtr& ctx() const noexcept { return ctx_; }
    const Poly& num() const noexcept { return num_; }
    const std::vector<unsigned>& denom_exps() const noexcept { return exps_; }
    bool has_denominator() const noexcept;

    bool is_zero() const noexcept { return num_.is_zero(); }

    Elem operator-() const;
    Elem operator+(const Elem& other) const;
    Elem operator-(const Elem& other) const;
    Elem operator*(const Elem& other) const;
    Elem& operator+=(const Elem& other);
    Elem& operator-=(const Elem& other);
    Elem& operator*=(const Elem& other);
    Elem scale(const Rat& factor) const;

    /// Divide by d_j^power.
    Elem div_by_denominator(std::size_t j, unsigned power = 1) const;
    /// Divide by `unit`, which must be a nonzero rational times a product of
    /// declared denominator powers (modulo the relations), or the inverse of one.
    Elem div(const Elem& unit) const;

    /// Formal partial derivative of the stored representative.
    Elem partial(std::size_t index) const;
    /// All partial derivatives, sharing the common denominator work.
    std::vector<Elem> gradient() const;

    /// Re-express in `target`, whose denominators must include ours.
    Elem lift(const RingPtr& target) const;

    /// "num" or "num / (d1)^e1*(d2)^e2" in canonical text.
    std::string str() const;

    /// Equality in the ring (cross-multiplied zero test), not representation.
    friend bool operator==(const Elem& a, const Elem& b) { return (a - b).is_zero(); }

private:
    void check_ctx(const Elem& other) const;
    void normalize();

    RingPtr ctx_;
    Poly num_;
    std::vector<unsigned> exps_;
};

/// Product of reduced denominator powers prod(d_j^exps[j]).
Poly denominator_product(const RingCtx& ctx, std::span<const unsigned> exps);

/// Parse "num" or "num / base^k * base^k ..." where every base is a declared
/// denominator (a generator name or a parenthesized polynomial).
Elem parse_elem(std::string_view text, const RingPtr& ctx);
std::string format_elem(const Elem& e);

}  // namespace kpalg
