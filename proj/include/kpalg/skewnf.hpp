#pragma once

// Congruence normal form of antisymmetric matrices over a commutative ring,
// and the metric construction that turns a bracket table into a
// Kahler-Poisson structure after localizing at lambda and det(V).

#include <vector>

#include "kpalg/matrix.hpp"

namespace kpalg {

struct PairElimination {
    RingMatrix V;
    /// V^T P V, with rows/columns 0 and 1 cleared outside the leading 2x2 block.
    RingMatrix reduced;
};

/// One elimination step: V = V_3 ... V_N where each V_k is the product of
/// "scale row k by p01", "add row 0 times -p_k1", "add row 1 times p_k0".
PairElimination eliminate_pair(const RingMatrix& P);

struct BlockDiagResult {
    RingMatrix V;
    /// V^T P V.
    RingMatrix normal_form;
    std::vector<Elem> lambdas;
    /// True for odd N: the last row and column of the normal form are zero.
    bool residual_zero_block = false;
};

/// V^T P V = diag(L_1, ..., L_n[, 0]) with L_k = [[0, lambda_k], [-lambda_k, 0]].
BlockDiagResult block_diagonalize(const RingMatrix& P);

struct Adjugate {
    RingMatrix adj;
    Elem det;
};

inline constexpr std::size_t kDefaultCofactorLimit = 8;

/// adj * M = M * adj = det * Id, by cofactor expansion. Throws ResourceError
/// above `max_dim`.
Adjugate adjugate(const RingMatrix& M, std::size_t max_dim = kDefaultCofactorLimit);
Elem determinant(const RingMatrix& M, std::size_t max_dim = kDefaultCofactorLimit);

struct MetricConstruction {
    /// Ring extended by lambda and det(V) as denominators.
    RingPtr ctx;
    /// Input bracket matrix, lifted into `ctx`.
    RingMatrix P;
    RingMatrix V;
    std::vector<Elem> lambdas;
    RingMatrix g0;
    RingMatrix g;
    Elem lambda;
    Elem det_V;
    Elem eta;
};

/// g = V g0 V^T with g0 = diag((lambda/lambda_k) Id_2, ..., [lambda]),
/// lambda = prod lambda_k, eta = 1/lambda^2. Verifies
/// det(V)^2 (P g P g P + lambda^2 P) = 0 before localizing.
MetricConstruction build_metric(const RingMatrix& P, std::size_t max_dim = kDefaultCofactorLimit);

}  // namespace kpalg
