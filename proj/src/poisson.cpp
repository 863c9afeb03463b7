#include "kpalg/poisson.hpp"

#include "kpalg/error.hpp"

namespace kpalg {

BracketTable::BracketTable(RingMatrix P) : P_(P.with_shape(Shape::antisymmetric)) {}

BracketTable BracketTable::from_upper(const RingPtr& ctx,
                                      const std::vector<std::tuple<std::size_t, std::size_t, Elem>>& entries) {
    const std::size_t m = ctx->ngens();
    RingMatrix P(ctx, m, m);
    std::vector<bool> seen(m * m, false);
    for (const auto& [i, j, e] : entries) {
        if (i >= m || j >= m) throw SemanticError("bracket entry index out of range");
        if (i >= j) throw SemanticError("bracket entries must be upper-triangular (i < j)");
        if (seen[i * m + j])
            throw SemanticError("duplicate bracket entry " + std::to_string(i + 1) + " " + std::to_string(j + 1));
        seen[i * m + j] = true;
        P(i, j) = e;
        P(j, i) = -e;
    }
    return BracketTable(std::move(P));
}

Elem BracketTable::bracket(const Elem& a, const Elem& b) const {
    if (a.ctx() != ctx() || b.ctx() != ctx()) throw SemanticError("ring context mismatch in bracket");
    const std::size_t m = size();
    auto da = a.gradient();
    auto db = b.gradient();
    Elem acc(ctx());
    for (std::size_t i = 0; i < m; ++i) {
        if (da[i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || db[j].is_zero() || P_(i, j).is_zero()) continue;
            acc += da[i] * db[j] * P_(i, j);
        }
    }
    return acc;
}

std::vector<Elem> BracketTable::brackets_with_generators(const Elem& a) const {
    const std::size_t m = size();
    auto da = a.gradient();
    std::vector<Elem> out;
    for (std::size_t k = 0; k < m; ++k) {
        Elem acc(ctx());
        for (std::size_t j = 0; j < m; ++j)
            if (!da[j].is_zero() && !P_(k, j).is_zero()) acc += P_(k, j) * da[j];
        out.push_back(std::move(acc));
    }
    return out;
}

Elem BracketTable::generator_bracket_raw(std::size_t k, const Poly& r) const {
    Elem acc(ctx());
    for (std::size_t j = 0; j < size(); ++j) {
        Poly dr = r.partial(j);
        if (dr.is_zero() || P_(k, j).is_zero()) continue;
        acc += P_(k, j) * Elem(ctx(), std::move(dr));
    }
    return acc;
}

Elem jacobiator(const BracketTable& P, const Elem& a, const Elem& b, const Elem& c) {
    return P.bracket(P.bracket(a, b), c) + P.bracket(P.bracket(b, c), a) + P.bracket(P.bracket(c, a), b);
}

JacobiReport jacobi_check(const BracketTable& P) {
    const std::size_t m = P.size();
    JacobiReport rep;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                // {P_ij, x^k} = -{x^k, P_ij}, etc.
                Elem res = -(P.brackets_with_generators(P(i, j))[k] + P.brackets_with_generators(P(j, k))[i] +
                             P.brackets_with_generators(P(k, i))[j]);
                if (!res.is_zero()) {
                    rep.ok = false;
                    rep.witness = {i, j, k};
                    rep.residual = std::move(res);
                    return rep;
                }
            }
    return rep;
}

CentralityReport check_relations_central(const BracketTable& P) {
    CentralityReport rep;
    const auto& rels = P.ctx()->relations();
    for (std::size_t r = 0; r < rels.size(); ++r)
        for (std::size_t k = 0; k < P.size(); ++k) {
            Elem v = P.generator_bracket_raw(k, rels[r]);
            if (!v.is_zero()) {
                rep.ok = false;
                rep.generator = k;
                rep.relation = r;
                rep.residual = std::move(v);
                return rep;
            }
        }
    return rep;
}

BracketTable level_set_table(const RingPtr& ctx, const Poly& C) {
    if (ctx->ngens() != 3) throw SemanticError("level-set brackets need exactly 3 generators");
    auto d = [&](std::size_t i) { return Elem(ctx, C.partial(i)); };
    return BracketTable::from_upper(ctx, {{0, 1, d(2)}, {1, 2, d(0)}, {0, 2, -d(1)}});
}

}  // namespace kpalg
