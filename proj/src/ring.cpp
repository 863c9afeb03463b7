#include "kpalg/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "kpalg/error.hpp"

namespace kpalg {

// ---------------------------------------------------------------- RingCtx

RingCtx::RingCtx(ScopePtr scope, std::vector<Poly> relations, std::vector<Poly> groebner,
                 std::vector<Poly> denoms, RingOptions opts)
    : scope_(std::move(scope)),
      relations_(std::move(relations)),
      groebner_(std::move(groebner)),
      denoms_(std::move(denoms)),
      opts_(opts) {
    for (const auto& d : denoms_) {
        Poly nf = reduce(d);
        if (nf.is_zero())
            throw SemanticError("denominator " + format_poly(d) +
                                " is zero in the quotient ring; cannot localize at it");
        denoms_unit_.push_back(nf.is_constant() ? std::optional<Rat>(nf.constant_term()) : std::nullopt);
        denoms_nf_.push_back(std::move(nf));
    }
}

RingPtr RingCtx::make(ScopePtr scope, std::vector<Poly> relations, std::vector<Poly> denominators,
                      const RingOptions& opts) {
    for (const auto& r : relations)
        if (!Scope::same(r.scope(), scope)) throw SemanticError("relation is not over the ring's generators");
    for (const auto& d : denominators)
        if (!Scope::same(d.scope(), scope))
            throw SemanticError("denominator is not over the ring's generators");
    std::vector<Poly> nonzero;
    for (const auto& r : relations)
        if (!r.is_zero()) nonzero.push_back(r);
    std::vector<Poly> gb = buchberger(nonzero, opts.groebner);
    return std::make_shared<const RingCtx>(std::move(scope), std::move(relations), std::move(gb),
                                           std::move(denominators), opts);
}

RingPtr RingCtx::make(std::vector<std::string> gens, const std::vector<std::string>& relations,
                      const std::vector<std::string>& denominators, OrderKind order, const RingOptions& opts) {
    auto n = gens.size();
    auto mo = order == OrderKind::lex ? MonomialOrder::lex(n) : MonomialOrder::grevlex(n);
    auto scope = Scope::make(std::move(gens), std::move(mo));
    std::vector<Poly> rels, dens;
    for (const auto& r : relations) rels.push_back(parse_poly(r, scope));
    for (const auto& d : denominators) dens.push_back(parse_poly(d, scope));
    return make(scope, std::move(rels), std::move(dens), opts);
}

Poly RingCtx::reduce(const Poly& p) const { return kpalg::reduce(p, groebner_); }

std::optional<std::size_t> RingCtx::find_denominator(const Poly& d) const {
    Poly nf = reduce(d);
    for (std::size_t j = 0; j < denoms_nf_.size(); ++j)
        if (denoms_nf_[j] == nf) return j;
    return std::nullopt;
}

RingPtr RingCtx::with_denominators(std::span<const Poly> extra) const {
    std::vector<Poly> dens = denoms_;
    std::vector<Poly> nfs = denoms_nf_;
    for (const auto& d : extra) {
        Poly nf = reduce(d);
        if (nf.is_constant() && !nf.is_zero()) continue;
        if (std::find(nfs.begin(), nfs.end(), nf) != nfs.end()) continue;
        dens.push_back(d);
        nfs.push_back(std::move(nf));
    }
    return std::make_shared<const RingCtx>(scope_, relations_, groebner_, std::move(dens), opts_);
}

Poly denominator_product(const RingCtx& ctx, std::span<const unsigned> exps) {
    Poly p(ctx.scope(), Rat(1));
    const auto& dens = ctx.reduced_denominators();
    for (std::size_t j = 0; j < exps.size(); ++j)
        if (exps[j]) p *= dens[j].pow(exps[j]);
    return p;
}

// ---------------------------------------------------------------- Elem

Elem::Elem(RingPtr ctx) : ctx_(std::move(ctx)), num_(ctx_->scope()), exps_(ctx_->denominators().size(), 0) {}

Elem::Elem(RingPtr ctx, const Rat& value) : Elem(std::move(ctx)) { num_ = Poly(ctx_->scope(), value); }

Elem::Elem(RingPtr ctx, Poly num) : Elem(std::move(ctx)) {
    if (!Scope::same(num.scope(), ctx_->scope())) throw SemanticError("element is not over the ring's generators");
    num_ = std::move(num);
    normalize();
}

Elem::Elem(RingPtr ctx, Poly num, std::vector<unsigned> denom_exps) : Elem(std::move(ctx)) {
    if (!Scope::same(num.scope(), ctx_->scope())) throw SemanticError("element is not over the ring's generators");
    if (denom_exps.size() != exps_.size()) throw SemanticError("denominator exponent vector has the wrong length");
    num_ = std::move(num);
    exps_ = std::move(denom_exps);
    normalize();
}

Elem Elem::generator(RingPtr ctx, std::size_t index) {
    auto scope = ctx->scope();
    return Elem(std::move(ctx), Poly::generator(scope, index));
}

Elem Elem::inverse_denominator(RingPtr ctx, std::size_t j, unsigned power) {
    if (j >= ctx->denominators().size()) throw SemanticError("denominator index out of range");
    std::vector<unsigned> exps(ctx->denominators().size(), 0);
    exps[j] = power;
    auto scope = ctx->scope();
    return Elem(std::move(ctx), Poly(scope, Rat(1)), std::move(exps));
}

bool Elem::has_denominator() const noexcept {
    return std::any_of(exps_.begin(), exps_.end(), [](unsigned e) { return e != 0; });
}

void Elem::check_ctx(const Elem& other) const {
    if (ctx_ != other.ctx_) throw SemanticError("ring context mismatch");
}

void Elem::normalize() {
    const auto& ctx = *ctx_;
    num_ = ctx.reduce(num_);
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        const auto& unit = ctx.constant_denominator(j);
        if (unit && exps_[j]) {
            Rat f(1);
            for (unsigned k = 0; k < exps_[j]; ++k) f *= *unit;
            num_ = num_.scale(1 / f);
            exps_[j] = 0;
        }
    }
    if (num_.is_zero()) {
        std::fill(exps_.begin(), exps_.end(), 0u);
        return;
    }
    // Best effort: cancel a denominator when it divides the numerator as polynomials.
    const auto& dens = ctx.reduced_denominators();
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        while (exps_[j] > 0) {
            auto q = divide_exact(num_, dens[j]);
            if (!q) break;
            num_ = ctx.reduce(*q);
            --exps_[j];
        }
    }
}

Elem Elem::operator-() const {
    Elem r = *this;
    r.num_ = -r.num_;
    return r;
}

Elem Elem::operator+(const Elem& other) const {
    check_ctx(other);
    if (other.is_zero()) return *this;
    if (is_zero()) return other;
    Elem r(ctx_);
    std::vector<unsigned> lift_a(exps_.size()), lift_b(exps_.size());
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        unsigned e = std::max(exps_[j], other.exps_[j]);
        r.exps_[j] = e;
        lift_a[j] = e - exps_[j];
        lift_b[j] = e - other.exps_[j];
    }
    r.num_ = num_ * denominator_product(*ctx_, lift_a) + other.num_ * denominator_product(*ctx_, lift_b);
    r.normalize();
    return r;
}

Elem Elem::operator-(const Elem& other) const { return *this + (-other); }

Elem Elem::operator*(const Elem& other) const {
    check_ctx(other);
    Elem r(ctx_);
    if (is_zero() || other.is_zero()) return r;
    for (std::size_t j = 0; j < exps_.size(); ++j) r.exps_[j] = exps_[j] + other.exps_[j];
    r.num_ = num_ * other.num_;
    r.normalize();
    return r;
}

Elem& Elem::operator+=(const Elem& other) { return *this = *this + other; }
Elem& Elem::operator-=(const Elem& other) { return *this = *this - other; }
Elem& Elem::operator*=(const Elem& other) { return *this = *this * other; }

Elem Elem::scale(const Rat& factor) const {
    if (factor == 0) return Elem(ctx_);
    Elem r = *this;
    r.num_ = r.num_.scale(factor);
    return r;
}

Elem Elem::div_by_denominator(std::size_t j, unsigned power) const {
    if (j >= exps_.size()) throw SemanticError("denominator index out of range");
    Elem r = *this;
    r.exps_[j] += power;
    r.normalize();
    return r;
}

Elem Elem::div(const Elem& unit) const {
    check_ctx(unit);
    const auto& ctx = *ctx_;
    if (unit.is_zero()) throw SemanticError("division by zero");
    // Factor the unit's numerator into declared denominators times a constant.
    Poly rest = unit.num_;
    std::vector<unsigned> found(exps_.size(), 0);
    const auto& dens = ctx.reduced_denominators();
    // Larger factors first, so a denominator that divides another is not taken too early.
    std::vector<std::size_t> by_degree(dens.size());
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](std::size_t a, std::size_t b) {
        return dens[a].total_degree() > dens[b].total_degree();
    });
    bool progress = true;
    while (!rest.is_constant() && progress) {
        progress = false;
        for (std::size_t j : by_degree) {
            if (ctx.constant_denominator(j)) continue;
            if (auto q = divide_exact(rest, dens[j])) {
                rest = ctx.reduce(*q);
                ++found[j];
                progress = true;
            }
        }
    }
    if (!rest.is_constant() || rest.is_zero())
        throw SemanticError("cannot divide by " + unit.str() + ": not a product of declared denominators");
    // a / (c * prod d^found / prod d^f) = a * prod d^f / (c * prod d^found)
    Elem r(ctx_);
    r.num_ = (num_ * denominator_product(ctx, unit.exps_)).scale(1 / rest.constant_term());
    for (std::size_t j = 0; j < exps_.size(); ++j) r.exps_[j] = exps_[j] + found[j];
    r.normalize();
    return r;
}

std::vector<Elem> Elem::gradient() const {
    const auto& ctx = *ctx_;
    const std::size_t m = ctx.ngens();
    std::vector<Elem> out;
    out.reserve(m);
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < exps_.size(); ++j)
        if (exps_[j]) active.push_back(j);
    if (active.empty()) {
        for (std::size_t i = 0; i < m; ++i) out.emplace_back(ctx_, num_.partial(i));
        return out;
    }
    const auto& dens = ctx.reduced_denominators();
    // d(q / prod d^e) = (dq * prod_S d - q * sum_k e_k dd_k * prod_{S \ k} d) / prod d^(e + 1_S)
    Poly all(ctx.scope(), Rat(1));
    std::vector<Poly> others;
    for (std::size_t a = 0; a < active.size(); ++a) {
        all *= dens[active[a]];
        Poly o(ctx.scope(), Rat(1));
        for (std::size_t b = 0; b < active.size(); ++b)
            if (b != a) o *= dens[active[b]];
        others.push_back(std::move(o));
    }
    std::vector<unsigned> exps = exps_;
    for (auto j : active) ++exps[j];
    for (std::size_t i = 0; i < m; ++i) {
        Poly numer = num_.partial(i) * all;
        for (std::size_t a = 0; a < active.size(); ++a) {
            Poly dd = dens[active[a]].partial(i);
            if (dd.is_zero()) continue;
            numer -= (num_ * dd * others[a]).scale(Rat(exps_[active[a]]));
        }
        out.emplace_back(ctx_, std::move(numer), exps);
    }
    return out;
}

Elem Elem::partial(std::size_t index) const {
    if (index >= ctx_->ngens()) throw SemanticError("unknown generator index in partial derivative");
    return gradient()[index];
}

Elem Elem::lift(const RingPtr& target) const {
    if (target == ctx_) return *this;
    if (!Scope::same(target->scope(), ctx_->scope()) || target->groebner() != ctx_->groebner())
        throw SemanticError("cannot lift element into an unrelated ring");
    std::vector<unsigned> exps(target->denominators().size(), 0);
    Poly num = num_.rescoped(target->scope());
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        if (!exps_[j]) continue;
        auto k = target->find_denominator(ctx_->reduced_denominators()[j]);
        if (!k) throw SemanticError("target ring lacks denominator " + format_poly(ctx_->denominators()[j]));
        exps[*k] += exps_[j];
    }
    return Elem(target, std::move(num), std::move(exps));
}

std::string Elem::str() const { return format_elem(*this); }

std::string format_elem(const Elem& e) {
    std::string num = format_poly(e.num());
    if (!e.has_denominator()) return num;
    if (e.num().size() > 1) num = "(" + num + ")";
    std::string den;
    const auto& dens = e.ctx()->denominators();
    for (std::size_t j = 0; j < dens.size(); ++j) {
        unsigned k = e.denom_exps()[j];
        if (!k) continue;
        if (!den.empty()) den += "*";
        den += "(" + format_poly(dens[j]) + ")";
        if (k > 1) den += "^" + std::to_string(k);
    }
    return num + " / " + den;
}

// ---------------------------------------------------------------- parsing

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Position of the '/' separating numerator and denominator, if any. Slashes
// inside rational literals (digit '/' digit) do not count.
std::optional<std::size_t> find_fraction_bar(std::string_view text) {
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c != '/' || depth != 0) continue;
        std::size_t k = i + 1;
        while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
        if (k < text.size() && (text[k] == '(' || is_ident_start(text[k]))) return i;
    }
    return std::nullopt;
}

}  // namespace

Elem parse_elem(std::string_view text, const RingPtr& ctx) {
    auto bar = find_fraction_bar(text);
    Poly num = parse_poly(text.substr(0, bar.value_or(text.size())), ctx->scope());
    Elem result(ctx, num);
    if (!bar) return result;

    std::size_t pos = *bar + 1;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, pos + 1); };
    for (;;) {
        skip_ws();
        if (pos >= text.size()) fail("expected a denominator factor");
        std::size_t base_start = pos;
        std::string_view base_text;
        if (text[pos] == '(') {
            int depth = 0;
            std::size_t close = pos;
            for (; close < text.size(); ++close) {
                if (text[close] == '(') ++depth;
                if (text[close] == ')' && --depth == 0) break;
            }
            if (close >= text.size()) fail("unbalanced '(' in denominator");
            base_text = text.substr(pos + 1, close - pos - 1);
            pos = close + 1;
        } else if (is_ident_start(text[pos])) {
            while (pos < text.size() && is_ident_char(text[pos])) ++pos;
            base_text = text.substr(base_start, pos - base_start);
        } else {
            fail(std::string("unexpected '") + text[pos] + "' in denominator");
        }
        Poly base(ctx->scope());
        try {
            base = parse_poly(base_text, ctx->scope());
        } catch (const ParseError& e) {
            throw e.relocated(base_text.data() - text.data(), 0);
        }
        skip_ws();
        unsigned power = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            skip_ws();
            std::size_t s = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (s == pos || pos - s > 5) fail("expected a small nonnegative integer exponent");
            power = static_cast<unsigned>(std::stoul(std::string(text.substr(s, pos - s))));
        }
        Poly nf = ctx->reduce(base);
        if (nf.is_constant()) {
            if (nf.is_zero()) throw SemanticError("division by zero in '" + std::string(text) + "'");
            Rat f(1);
            for (unsigned k = 0; k < power; ++k) f *= nf.constant_term();
            result = result.scale(1 / f);
        } else {
            auto j = ctx->find_denominator(base);
            if (!j)
                throw SemanticError("'" + std::string(base_text) + "' is not a declared denominator");
            result = result.div_by_denominator(*j, power);
        }
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '*') fail(std::string("unexpected '") + text[pos] + "' in denominator");
        ++pos;
    }
    return result;
}

}  // namespace kpalg
