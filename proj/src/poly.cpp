#include "kpalg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "kpalg/error.hpp"

namespace kpalg {

// ---------------------------------------------------------------- Mono

Mono Mono::var(std::size_t index, unsigned exponent) {
    Mono m;
    m.set(index, exponent);
    return m;
}

void Mono::set(std::size_t i, unsigned exponent) {
    if (i >= kMaxGens) throw SemanticError("generator index out of range");
    if (exponent > std::numeric_limits<exp_type>::max())
        throw ResourceError("monomial exponent overflow");
    degree_ = degree_ - exps_[i] + exponent;
    exps_[i] = static_cast<exp_type>(exponent);
}

Mono Mono::operator*(const Mono& other) const {
    Mono r;
    for (std::size_t i = 0; i < kMaxGens; ++i) {
        unsigned e = unsigned(exps_[i]) + other.exps_[i];
        if (e > std::numeric_limits<exp_type>::max())
            throw ResourceError("monomial exponent overflow");
        r.exps_[i] = static_cast<exp_type>(e);
    }
    r.degree_ = degree_ + other.degree_;
    return r;
}

Mono Mono::operator/(const Mono& other) const {
    Mono r;
    for (std::size_t i = 0; i < kMaxGens; ++i) r.exps_[i] = exps_[i] - other.exps_[i];
    r.degree_ = degree_ - other.degree_;
    return r;
}

bool Mono::divides(const Mono& other) const noexcept {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < kMaxGens; ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

Mono Mono::lcm(const Mono& a, const Mono& b) {
    Mono r;
    for (std::size_t i = 0; i < kMaxGens; ++i) {
        r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
        r.degree_ += r.exps_[i];
    }
    return r;
}

bool Mono::coprime(const Mono& a, const Mono& b) noexcept {
    for (std::size_t i = 0; i < kMaxGens; ++i)
        if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
}

std::size_t Mono::hash() const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : exps_) {
        h ^= e;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- orders

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
    std::vector<std::size_t> sorted = precedence_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i) throw SemanticError("monomial order precedence is not a permutation");
}

MonomialOrder MonomialOrder::grevlex(std::size_t ngens) {
    std::vector<std::size_t> p(ngens);
    for (std::size_t i = 0; i < ngens; ++i) p[i] = i;
    return {OrderKind::grevlex, std::move(p)};
}

MonomialOrder MonomialOrder::lex(std::size_t ngens) {
    std::vector<std::size_t> p(ngens);
    for (std::size_t i = 0; i < ngens; ++i) p[i] = i;
    return {OrderKind::lex, std::move(p)};
}

int MonomialOrder::compare(const Mono& a, const Mono& b) const noexcept {
    if (kind_ == OrderKind::lex) {
        for (std::size_t v : precedence_) {
            if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
        }
        return 0;
    }
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    for (std::size_t k = precedence_.size(); k-- > 0;) {
        std::size_t v = precedence_[k];
        if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
    }
    return 0;
}

std::optional<OrderKind> parse_order_kind(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "lex") return OrderKind::lex;
    if (s == "grevlex" || s == "degrevlex") return OrderKind::grevlex;
    return std::nullopt;
}

std::string order_kind_name(OrderKind kind) {
    return kind == OrderKind::lex ? "lex" : "grevlex";
}

// ---------------------------------------------------------------- Scope

Scope::Scope(std::vector<std::string> names, MonomialOrder order)
    : names_(std::move(names)), order_(std::move(order)) {}

ScopePtr Scope::make(std::vector<std::string> names) {
    auto n = names.size();
    return make(std::move(names), MonomialOrder::grevlex(n));
}

ScopePtr Scope::make(std::vector<std::string> names, MonomialOrder order) {
    if (names.size() > kMaxGens)
        throw SemanticError("at most " + std::to_string(kMaxGens) + " generators are supported");
    if (order.precedence().size() != names.size())
        throw SemanticError("monomial order size does not match generator count");
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& n = names[i];
        bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
        for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok) throw SemanticError("invalid generator name '" + n + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (names[j] == n) throw SemanticError("duplicate generator name '" + n + "'");
    }
    return std::make_shared<const Scope>(std::move(names), std::move(order));
}

std::optional<std::size_t> Scope::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

ScopePtr Scope::with_order(MonomialOrder order) const { return make(names_, std::move(order)); }

bool Scope::same(const ScopePtr& a, const ScopePtr& b) noexcept {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->names_ == b->names_ && a->order_ == b->order_;
}

// ---------------------------------------------------------------- Poly

namespace {

struct Descending {
    const MonomialOrder* order;
    bool operator()(const Term& a, const Term& b) const { return order->compare(a.mono, b.mono) > 0; }
};

}  // namespace

Poly::Poly(ScopePtr scope) : scope_(std::move(scope)) {
    if (!scope_) throw SemanticError("polynomial without a scope");
}

Poly::Poly(ScopePtr scope, const Rat& constant) : Poly(std::move(scope)) {
    if (constant != 0) terms_.push_back({Mono{}, constant});
}

Poly Poly::generator(ScopePtr scope, std::size_t index) {
    if (index >= scope->size()) throw SemanticError("generator index out of range");
    return monomial(std::move(scope), Mono::var(index), Rat(1));
}

Poly Poly::monomial(ScopePtr scope, const Mono& mono, const Rat& coef) {
    Poly p(std::move(scope));
    if (coef != 0) p.terms_.push_back({mono, coef});
    return p;
}

Poly Poly::from_terms(ScopePtr scope, std::vector<Term> terms) {
    Poly p(std::move(scope));
    std::sort(terms.begin(), terms.end(), Descending{&p.scope_->order()});
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) p.terms_.pop_back();
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

bool Poly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

Rat Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return Rat(0);
}

std::uint32_t Poly::total_degree() const noexcept {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

void Poly::check_scope(const Poly& other) const {
    if (!Scope::same(scope_, other.scope_)) throw SemanticError("polynomial scope mismatch");
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Poly Poly::operator+(const Poly& other) const {
    Poly r = *this;
    r += other;
    return r;
}

Poly Poly::operator-(const Poly& other) const {
    Poly r = *this;
    r -= other;
    return r;
}

Poly& Poly::operator+=(const Poly& other) {
    check_scope(other);
    if (other.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = other.terms_;
        return *this;
    }
    const auto& order = scope_->order();
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() && b != other.terms_.end()) {
        int c = order.compare(a->mono, b->mono);
        if (c > 0) {
            out.push_back(std::move(*a++));
        } else if (c < 0) {
            out.push_back(*b++);
        } else {
            Rat s = a->coef + b->coef;
            if (s != 0) out.push_back({a->mono, std::move(s)});
            ++a;
            ++b;
        }
    }
    for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
    for (; b != other.terms_.end(); ++b) out.push_back(*b);
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    *this = sub_scaled(other, Mono{}, Rat(1));
    return *this;
}

Poly Poly::sub_scaled(const Poly& other, const Mono& mono, const Rat& factor) const {
    check_scope(other);
    Poly r(scope_);
    if (factor == 0 || other.terms_.empty()) {
        r.terms_ = terms_;
        return r;
    }
    const auto& order = scope_->order();
    auto& out = r.terms_;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    // Multiplying by a monomial preserves the order, so `b` stays sorted.
    Mono bm = b->mono * mono;
    while (a != terms_.end() && b != other.terms_.end()) {
        int c = order.compare(a->mono, bm);
        if (c > 0) {
            out.push_back(*a++);
        } else {
            Rat s = -factor * b->coef;
            if (c == 0) {
                s += a->coef;
                ++a;
            }
            if (s != 0) out.push_back({bm, std::move(s)});
            if (++b != other.terms_.end()) bm = b->mono * mono;
        }
    }
    for (; a != terms_.end(); ++a) out.push_back(*a);
    for (; b != other.terms_.end(); ++b) out.push_back({b->mono * mono, -factor * b->coef});
    return r;
}

Poly Poly::operator*(const Poly& other) const {
    check_scope(other);
    if (terms_.empty() || other.terms_.empty()) return Poly(scope_);
    if (terms_.size() == 1) return other.mul_term(terms_[0].mono, terms_[0].coef);
    if (other.terms_.size() == 1) return mul_term(other.terms_[0].mono, other.terms_[0].coef);

    std::unordered_map<Mono, Rat, MonoHash> acc;
    acc.reserve(terms_.size() * other.terms_.size());
    Rat prod;
    for (const auto& a : terms_) {
        for (const auto& b : other.terms_) {
            mpq_mul(prod.get_mpq_t(), a.coef.get_mpq_t(), b.coef.get_mpq_t());
            auto [it, fresh] = acc.try_emplace(a.mono * b.mono, prod);
            if (!fresh) it->second += prod;
        }
    }
    Poly r(scope_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(), Descending{&scope_->order()});
    return r;
}

Poly& Poly::operator*=(const Poly& other) {
    *this = *this * other;
    return *this;
}

Poly Poly::scale(const Rat& factor) const {
    Poly r(scope_);
    if (factor == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coef *= factor;
    return r;
}

Poly Poly::mul_term(const Mono& mono, const Rat& coef) const {
    Poly r(scope_);
    if (coef == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * mono, t.coef * coef});
    return r;
}

Poly Poly::pow(unsigned exponent) const {
    Poly result(scope_, Rat(1));
    Poly base = *this;
    while (exponent) {
        if (exponent & 1u) result *= base;
        exponent >>= 1u;
        if (exponent) base *= base;
    }
    return result;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    Rat inv = 1 / terms_.front().coef;
    return scale(inv);
}

Poly Poly::partial(std::size_t index) const {
    if (index >= scope_->size()) throw SemanticError("unknown generator index in partial derivative");
    Poly r(scope_);
    for (const auto& t : terms_) {
        unsigned e = t.mono[index];
        if (e == 0) continue;
        Mono m = t.mono;
        m.set(index, e - 1);
        r.terms_.push_back({m, t.coef * e});
    }
    return r;
}

Poly Poly::partial(std::string_view name) const {
    auto idx = scope_->index_of(name);
    if (!idx) throw SemanticError("unknown generator '" + std::string(name) + "'");
    return partial(*idx);
}

Poly Poly::rescoped(ScopePtr scope) const {
    if (scope->names() != scope_->names())
        throw SemanticError("cannot rescope polynomial to different generators");
    Poly r(std::move(scope));
    r.terms_ = terms_;
    std::sort(r.terms_.begin(), r.terms_.end(), Descending{&r.scope_->order()});
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (!Scope::same(a.scope_, b.scope_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef)
            return false;
    return true;
}

std::string Poly::str() const { return format_poly(*this); }

// ---------------------------------------------------------------- formatting

std::string format_rat(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string format_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    const auto& scope = *p.scope();
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        bool neg = sgn(t.coef) < 0;
        Rat mag = neg ? Rat(-t.coef) : t.coef;
        if (first) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < scope.size(); ++i) {
            unsigned e = t.mono[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += scope.name(i);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += format_rat(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += format_rat(mag) + "*" + mono;
        }
    }
    return out;
}

// ---------------------------------------------------------------- division

namespace {

// out = a[ai..] - c * m * b[1..]; the leading terms are known to cancel.
void cancel_leading(const std::vector<Term>& a, std::size_t ai, const std::vector<Term>& b,
                    const Mono& m, const Rat& c, const MonomialOrder& order, std::vector<Term>& out) {
    out.clear();
    out.reserve(a.size() - ai + b.size());
    std::size_t i = ai + 1, j = 1;
    Rat s;
    while (i < a.size() && j < b.size()) {
        Mono bm = b[j].mono * m;
        int cmp = order.compare(a[i].mono, bm);
        if (cmp > 0) {
            out.push_back(a[i++]);
            continue;
        }
        mpq_mul(s.get_mpq_t(), c.get_mpq_t(), b[j].coef.get_mpq_t());
        if (cmp == 0) {
            Rat d = a[i].coef - s;
            if (d != 0) out.push_back({bm, std::move(d)});
            ++i;
        } else {
            out.push_back({bm, -s});
        }
        ++j;
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back({b[j].mono * m, -(c * b[j].coef)});
}

// Remainder of `p` against `divisors`, optionally tracking quotients.
Poly divide_impl(const Poly& p, std::span<const Poly> divisors, std::vector<Poly>* quotients) {
    const auto& scope = p.scope();
    const auto& order = scope->order();
    for (const auto& d : divisors) {
        if (d.is_zero()) throw SemanticError("division by the zero polynomial");
        if (!Scope::same(d.scope(), scope)) throw SemanticError("polynomial scope mismatch");
    }
    std::vector<std::vector<Term>> qterms(quotients ? divisors.size() : 0);

    std::vector<Term> rem;
    std::vector<Term> cur = p.terms();
    std::vector<Term> next;
    std::size_t head = 0;
    while (head < cur.size()) {
        const Term& lt = cur[head];
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            const Term& dl = divisors[i].leading();
            if (!dl.mono.divides(lt.mono)) continue;
            Mono m = lt.mono / dl.mono;
            Rat c = lt.coef / dl.coef;
            cancel_leading(cur, head, divisors[i].terms(), m, c, order, next);
            if (quotients) qterms[i].push_back({m, std::move(c)});
            std::swap(cur, next);
            head = 0;
            reduced = true;
            break;
        }
        if (!reduced) rem.push_back(cur[head++]);
    }
    if (quotients) {
        quotients->clear();
        for (auto& q : qterms) quotients->push_back(Poly::from_terms(scope, std::move(q)));
    }
    // Remainder terms were emitted in descending order already.
    return Poly::from_terms(scope, std::move(rem));
}

}  // namespace

DivisionResult divmod_multi(const Poly& p, std::span<const Poly> divisors) {
    DivisionResult r{{}, Poly(p.scope())};
    r.remainder = divide_impl(p, divisors, &r.quotients);
    return r;
}

DivisionResult divmod_multi(const Poly& p, std::span<const Poly> divisors, const MonomialOrder& order) {
    auto scope = p.scope()->with_order(order);
    std::vector<Poly> ds;
    ds.reserve(divisors.size());
    for (const auto& d : divisors) ds.push_back(d.rescoped(scope));
    return divmod_multi(p.rescoped(scope), ds);
}

Poly reduce(const Poly& p, std::span<const Poly> divisors) {
    if (divisors.empty()) return p;
    return divide_impl(p, divisors, nullptr);
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& d) {
    if (d.is_zero()) throw SemanticError("division by the zero polynomial");
    if (!Scope::same(d.scope(), p.scope())) throw SemanticError("polynomial scope mismatch");
    const auto& order = p.scope()->order();
    const Term& dl = d.leading();
    std::vector<Term> q;
    std::vector<Term> cur = p.terms();
    std::vector<Term> next;
    while (!cur.empty()) {
        const Term& lt = cur.front();
        // With a single divisor, any non-divisible leading term stays in the remainder.
        if (!dl.mono.divides(lt.mono)) return std::nullopt;
        Mono m = lt.mono / dl.mono;
        Rat c = lt.coef / dl.coef;
        cancel_leading(cur, 0, d.terms(), m, c, order, next);
        std::swap(cur, next);
        q.push_back({m, std::move(c)});
    }
    return Poly::from_terms(p.scope(), std::move(q));
}

// ---------------------------------------------------------------- Buchberger

namespace {

Poly s_polynomial(const Poly& f, const Poly& g) {
    const Term& a = f.leading();
    const Term& b = g.leading();
    Mono l = Mono::lcm(a.mono, b.mono);
    Poly left = f.mul_term(l / a.mono, 1 / a.coef);
    return left.sub_scaled(g, l / b.mono, 1 / b.coef);
}

}  // namespace

std::vector<Poly> buchberger(std::span<const Poly> gens, const BuchbergerOptions& opts) {
    std::vector<Poly> basis;
    for (const auto& g : gens) {
        if (g.is_zero()) throw SemanticError("Groebner input contains the zero polynomial");
        if (!basis.empty() && !Scope::same(basis.front().scope(), g.scope()))
            throw SemanticError("polynomial scope mismatch");
        basis.push_back(g.monic());
    }
    if (basis.empty()) return basis;
    const auto& order = basis.front().scope()->order();

    struct Pair {
        std::size_t i, j;
        Mono lcm;
    };
    std::vector<Pair> pairs;
    auto add_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            pairs.push_back({i, k, Mono::lcm(basis[i].leading().mono, basis[k].leading().mono)});
    };
    for (std::size_t k = 1; k < basis.size(); ++k) add_pairs(k);

    std::size_t processed = 0;
    while (!pairs.empty()) {
        // Normal selection strategy: smallest lcm first.
        auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            return order.compare(a.lcm, b.lcm) < 0;
        });
        Pair pr = *it;
        pairs.erase(it);
        if (++processed > opts.pair_budget)
            throw ResourceError("Groebner pair budget exceeded (" + std::to_string(opts.pair_budget) +
                                " pairs)");
        const auto& f = basis[pr.i];
        const auto& g = basis[pr.j];
        if (Mono::coprime(f.leading().mono, g.leading().mono)) continue;
        Poly r = reduce(s_polynomial(f, g), basis);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        add_pairs(basis.size() - 1);
    }

    // Minimal basis: drop elements whose leading monomial is a multiple of another's.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const auto& mi = basis[i].leading().mono;
            const auto& mj = basis[j].leading().mono;
            if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    // Interreduce.
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = reduce(minimal[i], others).monic();
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return order.compare(a.leading().mono, b.leading().mono) > 0;
    });
    return minimal;
}

std::vector<Poly> buchberger(std::span<const Poly> gens, const MonomialOrder& order,
                             const BuchbergerOptions& opts) {
    if (gens.empty()) return {};
    auto scope = gens.front().scope()->with_order(order);
    std::vector<Poly> rescoped;
    for (const auto& g : gens) rescoped.push_back(g.rescoped(scope));
    return buchberger(rescoped, opts);
}

}  // namespace kpalg
