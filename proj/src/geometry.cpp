#include "kpalg/geometry.hpp"

#include "kpalg/error.hpp"

namespace kpalg {

Tensor::Tensor(const RingPtr& ctx, std::size_t m, std::size_t rank) : m_(m), rank_(rank) {
    std::size_t n = 1;
    for (std::size_t r = 0; r < rank; ++r) n *= m;
    data_.assign(n, Elem(ctx));
}

std::size_t Tensor::offset(std::initializer_list<std::size_t> idx) const {
    if (idx.size() != rank_) throw SemanticError("tensor index has the wrong rank");
    std::size_t off = 0;
    for (std::size_t i : idx) {
        if (i >= m_) throw SemanticError("tensor index out of range");
        off = off * m_ + i;
    }
    return off;
}

bool PropertyReport::ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

namespace {

// sum_j vals[j] * grad[j]
Elem contract(const RingPtr& ctx, const std::vector<Elem>& vals, const std::vector<Elem>& grad) {
    Elem acc(ctx);
    for (std::size_t j = 0; j < vals.size(); ++j)
        if (!vals[j].is_zero() && !grad[j].is_zero()) acc += vals[j] * grad[j];
    return acc;
}

// D^a(f) = D^{aj} d_j f for all a, given the gradient of f.
std::vector<Elem> d_from_gradient(const KPCtx& kp, const std::vector<Elem>& grad) {
    std::vector<Elem> out;
    for (std::size_t a = 0; a < kp.m(); ++a) {
        Elem acc(kp.ring());
        for (std::size_t j = 0; j < kp.m(); ++j)
            if (!grad[j].is_zero() && !kp.D()(a, j).is_zero()) acc += kp.D()(a, j) * grad[j];
        out.push_back(std::move(acc));
    }
    return out;
}

std::string tuple_str(std::initializer_list<std::size_t> idx) {
    std::string s = "(";
    bool first = true;
    for (auto i : idx) {
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
    }
    return s + ")";
}

class Recorder {
public:
    explicit Recorder(std::string name) { check_.name = std::move(name); }

    void record(const Elem& residual, std::initializer_list<std::size_t> idx) {
        ++check_.checked;
        if (residual.is_zero()) return;
        ++check_.failures;
        check_.ok = false;
        std::size_t size = residual.num().terms().size();
        if (!check_.residual || size > worst_) {
            worst_ = size;
            check_.residual = residual;
            check_.witness = tuple_str(idx);
        }
    }

    // A derivation residual is zero iff it kills every generator.
    void record(const KPCtx& kp, const Deriv& residual, std::initializer_list<std::size_t> idx) {
        auto v = kp.values(residual);
        for (const auto& e : v)
            if (!e.is_zero()) return record(e, idx);
        record(v.front(), idx);
    }

    IdentityCheck take() { return std::move(check_); }

private:
    IdentityCheck check_;
    std::size_t worst_ = 0;
};

}  // namespace

Geometry::Geometry(KPPtr kp, std::optional<Tensor> gamma_override) : kp_(std::move(kp)) {
    if (!kp_) throw SemanticError("null KP context");
    const std::size_t n = m();
    const auto& ring = kp_->ring();
    const auto& D = kp_->D();
    const auto& Dl = kp_->D_low();
    const auto& g = kp_->g();

    dD_ = Tensor(ring, n, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto vals = d_from_gradient(*kp_, D(i, j).gradient());
            for (std::size_t a = 0; a < n; ++a) {
                dD_.at({a, i, j}) = vals[a];
                dD_.at({a, j, i}) = vals[a];
            }
        }

    if (gamma_override) {
        if (gamma_override->dim() != n || gamma_override->rank() != 3)
            throw SemanticError("Christoffel override must be an m x m x m tensor");
        gamma_ = std::move(*gamma_override);
    } else {
        gamma_ = Tensor(ring, n, 3);
        const Rat half(1, 2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Elem acc(ring);
                    for (std::size_t l = 0; l < n; ++l) {
                        if (Dl(l, k).is_zero()) continue;
                        acc += (dD_.at({i, j, l}) - dD_.at({j, i, l})) * Dl(l, k);
                    }
                    // D_k(D^{ij}) = g_kn D^n(D^{ij})
                    for (std::size_t t = 0; t < n; ++t)
                        if (!g(k, t).is_zero()) acc += g(k, t) * dD_.at({t, i, j});
                    gamma_.at({i, j, k}) = acc.scale(half);
                }
    }

    brackets_.reserve(n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            std::vector<Elem> vals;
            for (std::size_t t = 0; t < n; ++t) vals.push_back(dD_.at({k, l, t}) - dD_.at({l, k, t}));
            brackets_.push_back(kp_->coeffs_from_values(vals));
        }
}

Deriv Geometry::nabla_generators(std::size_t i, std::size_t j) const {
    Deriv d = kp_->zero_deriv();
    for (std::size_t k = 0; k < m(); ++k) d[k] = gamma_.at({i, j, k});
    return d;
}

Deriv Geometry::nabla(const Deriv& alpha, const Deriv& beta) const {
    const std::size_t n = m();
    auto av = kp_->values(alpha);
    Deriv out = kp_->zero_deriv();
    for (std::size_t k = 0; k < n; ++k) {
        Elem acc = contract(kp_->ring(), av, beta[k].gradient());
        for (std::size_t i = 0; i < n; ++i) {
            if (alpha[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!beta[j].is_zero() && !gamma_.at({i, j, k}).is_zero())
                    acc += gamma_.at({i, j, k}) * alpha[i] * beta[j];
        }
        out[k] = std::move(acc);
    }
    return out;
}

Deriv Geometry::nabla_along(std::size_t a, const Deriv& beta) const {
    const std::size_t n = m();
    Deriv out = kp_->zero_deriv();
    for (std::size_t k = 0; k < n; ++k) {
        Elem acc = kp_->d_apply(a, beta[k]);
        for (std::size_t q = 0; q < n; ++q)
            if (!beta[q].is_zero() && !gamma_.at({a, q, k}).is_zero()) acc += gamma_.at({a, q, k}) * beta[q];
        out[k] = std::move(acc);
    }
    return out;
}

Deriv Geometry::lie_bracket(const Deriv& alpha, const Deriv& beta) const {
    auto av = kp_->values(alpha);
    auto bv = kp_->values(beta);
    std::vector<Elem> vals;
    for (std::size_t t = 0; t < m(); ++t)
        vals.push_back(kp_->apply(alpha, bv[t]) - kp_->apply(beta, av[t]));
    return kp_->coeffs_from_values(vals);
}

void Geometry::ensure_curvature() const {
    std::call_once(*curvature_once_, [this] {
        const std::size_t n = m();
        const auto& ring = kp_->ring();

        // nabla_{D^a}(nabla_{D^l} D^j), with D^a(Gamma^{lj}_k) from one gradient per entry.
        std::vector<std::vector<Elem>> dgamma(n * n * n);
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    dgamma[(l * n + j) * n + k] = d_from_gradient(*kp_, gamma_.at({l, j, k}).gradient());
        auto nabla_gamma = [&](std::size_t a, std::size_t l, std::size_t j) {
            Deriv out = kp_->zero_deriv();
            for (std::size_t k = 0; k < n; ++k) {
                Elem acc = dgamma[(l * n + j) * n + k][a];
                for (std::size_t q = 0; q < n; ++q) {
                    const Elem& b = gamma_.at({l, j, q});
                    if (!b.is_zero() && !gamma_.at({a, q, k}).is_zero()) acc += gamma_.at({a, q, k}) * b;
                }
                out[k] = std::move(acc);
            }
            return out;
        };

        Rv_.assign(n * n * n, kp_->zero_deriv());
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t j = 0; j < n; ++j) {
                    Deriv r = nabla_gamma(k, l, j) - nabla_gamma(l, k, j);
                    const Deriv& c = bracket_generators(k, l);
                    for (std::size_t p = 0; p < n; ++p)
                        if (!c[p].is_zero()) r = r - c[p] * nabla_generators(p, j);
                    Rv_[(k * n + l) * n + j] = std::move(r);
                }

        Rlow_ = Tensor(ring, n, 4);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t j = 0; j < n; ++j) {
                    auto vals = kp_->values(Rv_[(k * n + l) * n + j]);
                    for (std::size_t i = 0; i < n; ++i) Rlow_.at({i, j, k, l}) = vals[i];
                }

        const auto& Dl = kp_->D_low();
        ric_ = Tensor(ring, n, 2);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                Elem acc(ring);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        const Elem& r = Rlow_.at({j, q, i, p});
                        if (!r.is_zero() && !Dl(i, j).is_zero()) acc += r * Dl(i, j);
                    }
                ric_.at({p, q}) = std::move(acc);
            }
    });
}

const Deriv& Geometry::curvature_generators(std::size_t k, std::size_t l, std::size_t j) const {
    ensure_curvature();
    const std::size_t n = m();
    return Rv_.at((k * n + l) * n + j);
}

Deriv Geometry::curvature(const Deriv& alpha, const Deriv& beta, const Deriv& gamma) const {
    ensure_curvature();
    const std::size_t n = m();
    Deriv out = kp_->zero_deriv();
    for (std::size_t k = 0; k < n; ++k) {
        if (alpha[k].is_zero()) continue;
        for (std::size_t l = 0; l < n; ++l) {
            if (beta[l].is_zero()) continue;
            Elem kl = alpha[k] * beta[l];
            for (std::size_t j = 0; j < n; ++j)
                if (!gamma[j].is_zero()) out = out + (kl * gamma[j]) * Rv_[(k * n + l) * n + j];
        }
    }
    return out;
}

const Tensor& Geometry::riemann() const {
    ensure_curvature();
    return Rlow_;
}

const Tensor& Geometry::ricci() const {
    ensure_curvature();
    return ric_;
}

Elem Geometry::ricci(const Deriv& alpha, const Deriv& beta) const {
    const auto& ric = ricci();
    Elem acc(kp_->ring());
    for (std::size_t p = 0; p < m(); ++p)
        for (std::size_t q = 0; q < m(); ++q)
            if (!alpha[p].is_zero() && !beta[q].is_zero() && !ric.at({p, q}).is_zero())
                acc += alpha[p] * beta[q] * ric.at({p, q});
    return acc;
}

Elem Geometry::scalar() const {
    const auto& ric = ricci();
    const auto& Dl = kp_->D_low();
    Elem acc(kp_->ring());
    for (std::size_t k = 0; k < m(); ++k)
        for (std::size_t l = 0; l < m(); ++l)
            if (!ric.at({k, l}).is_zero() && !Dl(k, l).is_zero()) acc += ric.at({k, l}) * Dl(k, l);
    return acc;
}

Deriv Geometry::gradient(const Elem& f) const { return Deriv{kp_->d_lower_all(f)}; }

Elem Geometry::divergence(const Deriv& alpha) const {
    RingMatrix L(kp_->ring(), m(), m());
    for (std::size_t i = 0; i < m(); ++i) {
        Deriv row = nabla_along(i, alpha);
        for (std::size_t p = 0; p < m(); ++p) L(i, p) = row[p];
    }
    return kp_->trace(L);
}

Elem Geometry::laplacian(const Elem& f) const { return divergence(gradient(f)); }

PropertyReport Geometry::verify_properties() const {
    const std::size_t n = m();
    const auto& ring = kp_->ring();
    const auto& D = kp_->D();
    PropertyReport rep;

    // g(alpha, D^k) is the action of alpha on x^k.
    auto pair_gen = [&](const Deriv& a, std::size_t k) {
        Elem acc(ring);
        for (std::size_t p = 0; p < n; ++p)
            if (!a[p].is_zero() && !D(p, k).is_zero()) acc += a[p] * D(p, k);
        return acc;
    };

    {
        Recorder r("koszul");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Elem lhs = pair_gen(nabla_generators(i, j), k).scale(Rat(2));
                    Elem rhs = dD_.at({i, j, k}) + dD_.at({j, k, i}) - dD_.at({k, i, j}) -
                               pair_gen(bracket_generators(j, k), i) + pair_gen(bracket_generators(k, i), j) +
                               pair_gen(bracket_generators(i, j), k);
                    r.record(lhs - rhs, {i, j, k});
                }
        rep.checks.push_back(r.take());
    }
    {
        Recorder r("torsion-free");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r.record(*kp_, nabla_generators(i, j) - nabla_generators(j, i) - bracket_generators(i, j), {i, j});
        rep.checks.push_back(r.take());
    }
    {
        Recorder r("metricity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Elem res = dD_.at({i, j, k}) - pair_gen(nabla_generators(i, j), k) -
                               pair_gen(nabla_generators(i, k), j);
                    r.record(res, {i, j, k});
                }
        rep.checks.push_back(r.take());
    }

    ensure_curvature();
    auto R = [&](std::size_t k, std::size_t l, std::size_t j) -> const Deriv& { return Rv_[(k * n + l) * n + j]; };

    {
        Recorder r("bianchi-1");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) r.record(*kp_, R(a, b, c) + R(c, a, b) + R(b, c, a), {a, b, c});
        rep.checks.push_back(r.take());
    }
    {
        // (nabla_{D^a} R)(D^b, D^c, D^d), summed cyclically over (a, b, c).
        auto nabla_R = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
            Deriv out = nabla_along(a, R(b, c, d));
            for (std::size_t p = 0; p < n; ++p) {
                if (!gamma_.at({a, b, p}).is_zero()) out = out - gamma_.at({a, b, p}) * R(p, c, d);
                if (!gamma_.at({a, c, p}).is_zero()) out = out - gamma_.at({a, c, p}) * R(b, p, d);
                if (!gamma_.at({a, d, p}).is_zero()) out = out - gamma_.at({a, d, p}) * R(b, c, p);
            }
            return out;
        };
        Recorder r("bianchi-2");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d)
                        r.record(*kp_, nabla_R(a, b, c, d) + nabla_R(b, c, a, d) + nabla_R(c, a, b, d),
                                 {a, b, c, d});
        rep.checks.push_back(r.take());
    }
    {
        Recorder first("antisymmetry-12"), second("antisymmetry-34"), pair("pair-symmetry");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) {
                        const Elem& x = Rlow_.at({i, j, k, l});
                        first.record(x + Rlow_.at({j, i, k, l}), {i, j, k, l});
                        second.record(x + Rlow_.at({i, j, l, k}), {i, j, k, l});
                        pair.record(x - Rlow_.at({k, l, i, j}), {i, j, k, l});
                    }
        rep.checks.push_back(first.take());
        rep.checks.push_back(second.take());
        rep.checks.push_back(pair.take());
    }
    return rep;
}

}  // namespace kpalg
