#pragma once

// Kahler-Poisson structures: (A, {x^1..x^m}, g) together with eta, and the
// derivations D^i = eta {x^k, .} g_kl {x^l, x^i} built from them.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "kpalg/matrix.hpp"
#include "kpalg/poisson.hpp"

namespace kpalg {

struct KPVerifyReport {
    bool ok = true;
    /// First (i, j) with (eta P g P g P + P)_ij != 0.
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::optional<Elem> residual;
    /// The full matrix eta P g P g P + P.
    std::optional<RingMatrix> residual_matrix;
};

/// eta P g P g P = -P, entry-wise.
KPVerifyReport kp_verify(const BracketTable& P, const RingMatrix& g, const Elem& eta);

/// alpha = sum_i coeffs[i] D^i. Coefficients are not unique; compare actions.
struct Deriv {
    std::vector<Elem> coeffs;

    std::size_t size() const noexcept { return coeffs.size(); }
    const Elem& operator[](std::size_t i) const { return coeffs[i]; }
    Elem& operator[](std::size_t i) { return coeffs[i]; }
};

class KPCtx;
using KPPtr = std::shared_ptr<const KPCtx>;

class KPCtx {
public:
    /// Checks shapes, that the relations are Poisson-central, and (unless
    /// `defer_verify`) the KP relation. Throws SemanticError or VerificationError.
    static KPPtr make(BracketTable P, RingMatrix g, Elem eta, bool defer_verify = false);

    const RingPtr& ring() const noexcept { return P_.ctx(); }
    std::size_t m() const noexcept { return P_.size(); }
    const BracketTable& P() const noexcept { return P_; }
    const RingMatrix& g() const noexcept { return g_; }
    const Elem& eta() const noexcept { return eta_; }
    bool verified() const noexcept { return verified_; }

    /// D^{ij} = eta (P g P^T)_ij.
    const RingMatrix& D() const noexcept { return D_; }
    /// D_ij = g_ik D^{kl} g_lj.
    const RingMatrix& D_low() const noexcept { return D_low_; }
    /// D^i_j = D^{ik} g_kj.
    const RingMatrix& D_mixed() const noexcept { return D_mixed_; }

    /// D^i(f) = D^{ij} d_j f.
    Elem d_apply(std::size_t i, const Elem& f) const;
    /// (D^1(f), ..., D^m(f)) from one gradient.
    std::vector<Elem> d_apply_all(const Elem& f) const;
    /// D_i(f) = g_ij D^j(f), for all i.
    std::vector<Elem> d_lower_all(const Elem& f) const;

    /// X^i -> D^i_j X^j.
    std::vector<Elem> project(const std::vector<Elem>& X) const;

    Deriv zero_deriv() const;
    /// The generator D^i.
    Deriv generator(std::size_t i) const;

    /// alpha(x^j) = sum_i alpha_i D^{ij}.
    std::vector<Elem> values(const Deriv& alpha) const;
    /// alpha(f) by the chain rule on the representative of f.
    Elem apply(const Deriv& alpha, const Elem& f) const;
    /// Same action on every generator.
    bool same_action(const Deriv& alpha, const Deriv& beta) const;

    /// g(alpha, beta) = alpha(x^i) g_ij beta(x^j).
    Elem g_form(const Deriv& alpha, const Deriv& beta) const;
    /// c_j = v^k D_kj, so that the result acts as D^j_k v^k on x^j.
    Deriv coeffs_from_values(const std::vector<Elem>& values) const;
    /// tr(L) = g(L(D^i), D^j) D_ij, where row i of L holds the coefficients of L(D^i).
    Elem trace(const RingMatrix& L) const;

    // Use make().
    KPCtx(BracketTable P, RingMatrix g, Elem eta, bool verified);

private:
    BracketTable P_;
    RingMatrix g_;
    Elem eta_;
    bool verified_;
    RingMatrix D_, D_low_, D_mixed_;
};

Deriv operator+(const Deriv& a, const Deriv& b);
Deriv operator-(const Deriv& a, const Deriv& b);
Deriv operator*(const Elem& f, const Deriv& a);

}  // namespace kpalg
