#include "kpalg/kp.hpp"

#include "kpalg/error.hpp"

namespace kpalg {

KPVerifyReport kp_verify(const BracketTable& P, const RingMatrix& g, const Elem& eta) {
    const RingMatrix& p = P.matrix();
    RingMatrix r = (p * g * p * g * p).scale(eta) + p;
    KPVerifyReport rep;
    if (auto w = r.first_nonzero()) {
        rep.ok = false;
        rep.witness = w;
        rep.residual = r(w->first, w->second);
        rep.residual_matrix = std::move(r);
    }
    return rep;
}

KPCtx::KPCtx(BracketTable P, RingMatrix g, Elem eta, bool verified)
    : P_(std::move(P)),
      g_(std::move(g)),
      eta_(std::move(eta)),
      verified_(verified),
      D_((P_.matrix() * g_ * P_.matrix().transpose()).scale(eta_).with_shape(Shape::symmetric)),
      D_low_((g_ * D_ * g_).with_shape(Shape::symmetric)),
      D_mixed_(D_ * g_) {}

KPPtr KPCtx::make(BracketTable P, RingMatrix g, Elem eta, bool defer_verify) {
    const auto& ring = P.ctx();
    if (g.ctx() != ring || eta.ctx() != ring) throw SemanticError("P, g and eta must live in the same ring");
    if (g.rows() != P.size() || !g.square()) throw SemanticError("metric must be an m x m matrix");
    g = g.with_shape(Shape::symmetric);
    if (auto c = check_relations_central(P); !c.ok)
        throw SemanticError("bracket does not descend to the quotient: {" + ring->scope()->names()[*c.generator] +
                            ", relation " + std::to_string(*c.relation + 1) + "} = " + c.residual->str());
    bool verified = false;
    if (!defer_verify) {
        auto rep = kp_verify(P, g, eta);
        if (!rep.ok)
            throw VerificationError("KP relation fails at (" + std::to_string(rep.witness->first + 1) + ", " +
                                    std::to_string(rep.witness->second + 1) + "): residual " + rep.residual->str());
        verified = true;
    }
    return std::make_shared<const KPCtx>(std::move(P), std::move(g), std::move(eta), verified);
}

std::vector<Elem> KPCtx::d_apply_all(const Elem& f) const {
    auto df = f.gradient();
    std::vector<Elem> out;
    out.reserve(m());
    for (std::size_t i = 0; i < m(); ++i) {
        Elem acc(ring());
        for (std::size_t j = 0; j < m(); ++j)
            if (!df[j].is_zero() && !D_(i, j).is_zero()) acc += D_(i, j) * df[j];
        out.push_back(std::move(acc));
    }
    return out;
}

Elem KPCtx::d_apply(std::size_t i, const Elem& f) const {
    if (i >= m()) throw SemanticError("derivation index out of range");
    auto df = f.gradient();
    Elem acc(ring());
    for (std::size_t j = 0; j < m(); ++j)
        if (!df[j].is_zero() && !D_(i, j).is_zero()) acc += D_(i, j) * df[j];
    return acc;
}

std::vector<Elem> KPCtx::d_lower_all(const Elem& f) const {
    auto up = d_apply_all(f);
    std::vector<Elem> out;
    for (std::size_t i = 0; i < m(); ++i) {
        Elem acc(ring());
        for (std::size_t j = 0; j < m(); ++j)
            if (!up[j].is_zero() && !g_(i, j).is_zero()) acc += g_(i, j) * up[j];
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<Elem> KPCtx::project(const std::vector<Elem>& X) const {
    if (X.size() != m()) throw SemanticError("vector length must equal the generator count");
    std::vector<Elem> out;
    for (std::size_t i = 0; i < m(); ++i) {
        Elem acc(ring());
        for (std::size_t j = 0; j < m(); ++j)
            if (!X[j].is_zero() && !D_mixed_(i, j).is_zero()) acc += D_mixed_(i, j) * X[j];
        out.push_back(std::move(acc));
    }
    return out;
}

Deriv KPCtx::zero_deriv() const { return Deriv{std::vector<Elem>(m(), Elem(ring()))}; }

Deriv KPCtx::generator(std::size_t i) const {
    Deriv d = zero_deriv();
    d[i] = Elem(ring(), Rat(1));
    return d;
}

std::vector<Elem> KPCtx::values(const Deriv& alpha) const {
    if (alpha.size() != m()) throw SemanticError("derivation has the wrong number of coefficients");
    std::vector<Elem> out;
    for (std::size_t j = 0; j < m(); ++j) {
        Elem acc(ring());
        for (std::size_t i = 0; i < m(); ++i)
            if (!alpha[i].is_zero() && !D_(i, j).is_zero()) acc += alpha[i] * D_(i, j);
        out.push_back(std::move(acc));
    }
    return out;
}

Elem KPCtx::apply(const Deriv& alpha, const Elem& f) const {
    auto v = values(alpha);
    auto df = f.gradient();
    Elem acc(ring());
    for (std::size_t j = 0; j < m(); ++j)
        if (!v[j].is_zero() && !df[j].is_zero()) acc += v[j] * df[j];
    return acc;
}

bool KPCtx::same_action(const Deriv& alpha, const Deriv& beta) const {
    auto a = values(alpha);
    auto b = values(beta);
    for (std::size_t j = 0; j < m(); ++j)
        if (!(a[j] == b[j])) return false;
    return true;
}

Elem KPCtx::g_form(const Deriv& alpha, const Deriv& beta) const {
    auto a = values(alpha);
    auto b = values(beta);
    Elem acc(ring());
    for (std::size_t i = 0; i < m(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < m(); ++j)
            if (!b[j].is_zero() && !g_(i, j).is_zero()) acc += a[i] * g_(i, j) * b[j];
    }
    return acc;
}

Deriv KPCtx::coeffs_from_values(const std::vector<Elem>& v) const {
    if (v.size() != m()) throw SemanticError("value vector length must equal the generator count");
    Deriv out = zero_deriv();
    for (std::size_t j = 0; j < m(); ++j)
        for (std::size_t k = 0; k < m(); ++k)
            if (!v[k].is_zero() && !D_low_(k, j).is_zero()) out[j] += v[k] * D_low_(k, j);
    return out;
}

Elem KPCtx::trace(const RingMatrix& L) const {
    if (L.rows() != m() || L.cols() != m()) throw SemanticError("trace needs an m x m coefficient matrix");
    RingMatrix DD = D_ * D_low_;
    Elem acc(ring());
    for (std::size_t i = 0; i < m(); ++i)
        for (std::size_t p = 0; p < m(); ++p)
            if (!L(i, p).is_zero() && !DD(p, i).is_zero()) acc += L(i, p) * DD(p, i);
    return acc;
}

Deriv operator+(const Deriv& a, const Deriv& b) {
    Deriv r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Deriv operator-(const Deriv& a, const Deriv& b) {
    Deriv r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Deriv operator*(const Elem& f, const Deriv& a) {
    Deriv r = a;
    for (auto& c : r.coeffs) c = f * c;
    return r;
}

}  // namespace kpalg
