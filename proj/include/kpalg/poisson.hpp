#pragma once

#include <array>
#include <optional>

#include "kpalg/matrix.hpp"
#include "kpalg/ring.hpp"

namespace kpalg {

/// Brackets of the generators, P(i, j) = {x^i, x^j}. Antisymmetric by construction.
class BracketTable {
public:
    explicit BracketTable(RingMatrix P);
    /// Entries (i, j, {x^i, x^j}) for i < j; unlisted pairs are zero.
    static BracketTable from_upper(const RingPtr& ctx,
                                   const std::vector<std::tuple<std::size_t, std::size_t, Elem>>& entries);

    const RingPtr& ctx() const noexcept { return P_.ctx(); }
    std::size_t size() const noexcept { return P_.rows(); }
    const RingMatrix& matrix() const noexcept { return P_; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return P_(i, j); }

    /// {a, b} = sum_{i,j} d_i(a) d_j(b) P(i, j) on representatives.
    Elem bracket(const Elem& a, const Elem& b) const;
    /// The vector ({x^k, a})_k.
    std::vector<Elem> brackets_with_generators(const Elem& a) const;
    /// {x^k, r} for a raw polynomial representative (not reduced first).
    Elem generator_bracket_raw(std::size_t k, const Poly& r) const;

    BracketTable lift(const RingPtr& target) const { return BracketTable(P_.lift(target)); }

private:
    RingMatrix P_;
};

struct JacobiReport {
    bool ok = true;
    /// Failing triple (i, j, k), i < j < k, with its Jacobiator.
    std::optional<std::array<std::size_t, 3>> witness;
    std::optional<Elem> residual;
};

/// {{x^i,x^j},x^k} + cyclic == 0 for all i < j < k.
JacobiReport jacobi_check(const BracketTable& P);

struct CentralityReport {
    bool ok = true;
    std::optional<std::size_t> generator;
    std::optional<std::size_t> relation;
    std::optional<Elem> residual;
};

/// Every {x^i, r} for a relation r lies in the ideal, so the bracket descends to the quotient.
CentralityReport check_relations_central(const BracketTable& P);

/// {x^i, x^j} = eps^{ijk} d_k C on a three-generator ring.
BracketTable level_set_table(const RingPtr& ctx, const Poly& C);

/// Jacobiator {{a,b},c} + {{b,c},a} + {{c,a},b}.
Elem jacobiator(const BracketTable& P, const Elem& a, const Elem& b, const Elem& c);

}  // namespace kpalg
