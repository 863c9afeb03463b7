#include "kpalg/skewnf.hpp"

#include <cstdint>
#include <unordered_map>

#include "kpalg/error.hpp"

namespace kpalg {

namespace {

RingMatrix embed(const RingMatrix& block, std::size_t n) {
    const auto& ctx = block.ctx();
    RingMatrix out = RingMatrix::identity(ctx, n);
    std::size_t off = n - block.rows();
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j) out(off + i, off + j) = block(i, j);
    return out;
}

RingMatrix trailing_block(const RingMatrix& M, std::size_t off) {
    std::size_t n = M.rows() - off;
    RingMatrix out(M.ctx(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = M(off + i, off + j);
    return out;
}

}  // namespace

PairElimination eliminate_pair(const RingMatrix& P) {
    if (!P.square() || P.rows() < 2) throw SemanticError("eliminate_pair needs a square matrix with N >= 2");
    if (!P.is_antisymmetric()) throw SemanticError("eliminate_pair needs an antisymmetric matrix");
    const auto& ctx = P.ctx();
    const std::size_t n = P.rows();
    RingMatrix V = RingMatrix::identity(ctx, n);
    for (std::size_t k = 2; k < n; ++k) {
        RingMatrix scale_row = RingMatrix::identity(ctx, n);
        scale_row(k, k) = P(0, 1);
        RingMatrix add_first = RingMatrix::identity(ctx, n);
        add_first(0, k) = -P(k, 1);
        RingMatrix add_second = RingMatrix::identity(ctx, n);
        add_second(1, k) = P(k, 0);
        V = V * (scale_row * add_first * add_second);
    }
    RingMatrix reduced = V.transpose() * P * V;
    return {std::move(V), reduced.with_shape(Shape::antisymmetric)};
}

BlockDiagResult block_diagonalize(const RingMatrix& P) {
    if (!P.square()) throw SemanticError("block_diagonalize needs a square matrix");
    if (!P.is_antisymmetric()) throw SemanticError("block_diagonalize needs an antisymmetric matrix");
    const auto& ctx = P.ctx();
    const std::size_t n = P.rows();
    BlockDiagResult res{RingMatrix::identity(ctx, n), P, {}, n % 2 == 1};
    for (std::size_t off = 0; n - off >= 2; off += 2) {
        auto step = eliminate_pair(trailing_block(res.normal_form, off));
        RingMatrix W = embed(step.V, n);
        res.V = res.V * W;
        res.normal_form = W.transpose() * res.normal_form * W;
        res.lambdas.push_back(res.normal_form(off, off + 1));
    }
    return res;
}

namespace {

// Determinant of the submatrix on rows [row, n) and the columns in `mask`,
// expanding along the first remaining row. Memoized on the column mask.
class CofactorDet {
public:
    CofactorDet(const RingMatrix& M) : M_(M) {}

    Elem det(std::uint32_t mask) {
        const std::size_t n = M_.rows();
        std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(mask));
        if (row == n) return Elem(M_.ctx(), Rat(1));
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
        Elem acc(M_.ctx());
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            const Elem& a = M_(row, c);
            if (!a.is_zero()) {
                Elem term = a * det(mask & ~(1u << c));
                acc = sign > 0 ? acc + term : acc - term;
            }
            sign = -sign;
        }
        memo_.emplace(mask, acc);
        return acc;
    }

private:
    const RingMatrix& M_;
    std::unordered_map<std::uint32_t, Elem> memo_;
};

RingMatrix minor_matrix(const RingMatrix& M, std::size_t skip_row, std::size_t skip_col) {
    const std::size_t n = M.rows();
    RingMatrix out(M.ctx(), n - 1, n - 1);
    for (std::size_t i = 0, oi = 0; i < n; ++i) {
        if (i == skip_row) continue;
        for (std::size_t j = 0, oj = 0; j < n; ++j) {
            if (j == skip_col) continue;
            out(oi, oj++) = M(i, j);
        }
        ++oi;
    }
    return out;
}

void check_dim(const RingMatrix& M, std::size_t max_dim) {
    if (!M.square()) throw SemanticError("determinant of a non-square matrix");
    if (M.rows() > max_dim)
        throw ResourceError("cofactor expansion limited to dimension " + std::to_string(max_dim) + ", got " +
                            std::to_string(M.rows()));
}

}  // namespace

Elem determinant(const RingMatrix& M, std::size_t max_dim) {
    check_dim(M, max_dim);
    if (M.rows() == 0) return Elem(M.ctx(), Rat(1));
    return CofactorDet(M).det((1u << M.rows()) - 1);
}

Adjugate adjugate(const RingMatrix& M, std::size_t max_dim) {
    check_dim(M, max_dim);
    const std::size_t n = M.rows();
    RingMatrix adj(M.ctx(), n, n);
    if (n == 1) {
        adj(0, 0) = Elem(M.ctx(), Rat(1));
        return {std::move(adj), M(0, 0)};
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Elem cof = determinant(minor_matrix(M, j, i), max_dim);
            adj(i, j) = (i + j) % 2 ? -cof : cof;
        }
    return {std::move(adj), determinant(M, max_dim)};
}

MetricConstruction build_metric(const RingMatrix& P, std::size_t max_dim) {
    auto bd = block_diagonalize(P);
    const auto& ctx = P.ctx();
    const std::size_t n = P.rows();
    const std::size_t blocks = bd.lambdas.size();
    if (blocks == 0) throw VerificationError("metric construction needs at least two generators");
    for (std::size_t k = 0; k < blocks; ++k)
        if (bd.lambdas[k].is_zero())
            throw VerificationError("degenerate block: lambda_" + std::to_string(k + 1) +
                                    " is zero, cannot build a metric");

    Elem lambda(ctx, Rat(1));
    for (const auto& l : bd.lambdas) lambda *= l;

    // g0 block k carries lambda / lambda_k, i.e. the product of the other lambdas.
    RingMatrix g0(ctx, n, n);
    for (std::size_t k = 0; k < blocks; ++k) {
        Elem others(ctx, Rat(1));
        for (std::size_t l = 0; l < blocks; ++l)
            if (l != k) others *= bd.lambdas[l];
        g0(2 * k, 2 * k) = others;
        g0(2 * k + 1, 2 * k + 1) = others;
    }
    // The kernel coordinate of an odd-dimensional P gets lambda; any unit would do.
    if (bd.residual_zero_block) g0(n - 1, n - 1) = lambda;
    g0 = g0.with_shape(Shape::symmetric);

    RingMatrix g = (bd.V * g0 * bd.V.transpose()).with_shape(Shape::symmetric);
    Elem det_V = determinant(bd.V, max_dim);
    if (det_V.is_zero()) throw VerificationError("det(V) is zero; the localization does not exist");

    RingMatrix defect = P * g * P * g * P + P.scale(lambda * lambda);
    if (!defect.scale(det_V * det_V).is_zero())
        throw VerificationError("internal error: det(V)^2 (PgPgP + lambda^2 P) does not vanish");

    std::vector<Poly> extra{lambda.num(), det_V.num()};
    RingPtr local = ctx->with_denominators(extra);
    Elem lambda_l = lambda.lift(local);
    auto lambda_index = local->find_denominator(lambda.num());
    Elem eta(local);
    if (lambda_index) {
        // 1 / lambda^2 = (denominators of lambda)^2 / num(lambda)^2
        Poly den = denominator_product(*ctx, lambda.denom_exps());
        eta = Elem(local, den * den) * Elem::inverse_denominator(local, *lambda_index, 2);
    } else {
        eta = Elem(local, Rat(1)).div(lambda_l * lambda_l);
    }

    std::vector<Elem> lambdas;
    for (const auto& l : bd.lambdas) lambdas.push_back(l.lift(local));
    return {local,         P.lift(local),  bd.V.lift(local), std::move(lambdas), g0.lift(local),
            g.lift(local), lambda_l,       det_V.lift(local), std::move(eta)};
}

}  // namespace kpalg
