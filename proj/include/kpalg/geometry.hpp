#pragma once

// Levi-Civita connection and curvature of a Kahler-Poisson algebra, in terms
// of the generating derivations D^1..D^m.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kpalg/kp.hpp"

namespace kpalg {

/// Dense m^r array of ring elements, row-major.
class Tensor {
public:
    Tensor() = default;
    Tensor(const RingPtr& ctx, std::size_t m, std::size_t rank);

    std::size_t dim() const noexcept { return m_; }
    std::size_t rank() const noexcept { return rank_; }

    Elem& at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
    const Elem& at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }
    const std::vector<Elem>& flat() const noexcept { return data_; }

private:
    std::size_t offset(std::initializer_list<std::size_t> idx) const;

    std::size_t m_ = 0, rank_ = 0;
    std::vector<Elem> data_;
};

struct IdentityCheck {
    std::string name;
    bool ok = true;
    std::size_t checked = 0;
    std::size_t failures = 0;
    /// 1-based index tuple of the largest residual, e.g. "(1,2,3)".
    std::string witness;
    std::optional<Elem> residual;
};

struct PropertyReport {
    std::vector<IdentityCheck> checks;
    bool ok() const;
};

class Geometry {
public:
    /// Christoffel symbols are computed from the KP data unless `gamma_override`
    /// (rank 3, Gamma^{ij}_k at (i, j, k)) is given.
    explicit Geometry(KPPtr kp, std::optional<Tensor> gamma_override = std::nullopt);

    const KPCtx& kp() const noexcept { return *kp_; }
    const KPPtr& kp_ptr() const noexcept { return kp_; }
    std::size_t m() const noexcept { return kp_->m(); }

    /// D^a(D^{ij}) at (a, i, j).
    const Tensor& dD() const noexcept { return dD_; }
    /// Gamma^{ij}_k at (i, j, k).
    const Tensor& christoffel() const noexcept { return gamma_; }

    /// nabla_{D^i} D^j = Gamma^{ij}_k D^k.
    Deriv nabla_generators(std::size_t i, std::size_t j) const;
    /// (nabla_alpha beta)_k = alpha(beta_k) + Gamma^{ij}_k alpha_i beta_j.
    Deriv nabla(const Deriv& alpha, const Deriv& beta) const;
    /// nabla_{D^a} beta.
    Deriv nabla_along(std::size_t a, const Deriv& beta) const;

    /// [alpha, beta], recovered from its values on the generators.
    Deriv lie_bracket(const Deriv& alpha, const Deriv& beta) const;
    /// [D^k, D^l].
    const Deriv& bracket_generators(std::size_t k, std::size_t l) const { return brackets_[k * m() + l]; }

    /// R(D^k, D^l) D^j.
    const Deriv& curvature_generators(std::size_t k, std::size_t l, std::size_t j) const;
    /// R(alpha, beta) gamma by multilinearity.
    Deriv curvature(const Deriv& alpha, const Deriv& beta, const Deriv& gamma) const;
    /// R(D^i, D^j, D^k, D^l) = g(D^i, R(D^k, D^l) D^j) at (i, j, k, l).
    const Tensor& riemann() const;

    /// Ric(D^p, D^q) at (p, q).
    const Tensor& ricci() const;
    Elem ricci(const Deriv& alpha, const Deriv& beta) const;
    Elem scalar() const;

    /// D_i(f) D^i.
    Deriv gradient(const Elem& f) const;
    /// tr(beta -> nabla_beta alpha).
    Elem divergence(const Deriv& alpha) const;
    Elem laplacian(const Elem& f) const;

    /// Koszul, torsion, metricity, Bianchi I and II, and the curvature symmetries,
    /// each on every generator index tuple.
    PropertyReport verify_properties() const;

private:
    void ensure_curvature() const;

    KPPtr kp_;
    Tensor dD_;
    Tensor gamma_;
    std::vector<Deriv> brackets_;

    std::unique_ptr<std::once_flag> curvature_once_ = std::make_unique<std::once_flag>();
    mutable std::vector<Deriv> Rv_;
    mutable Tensor Rlow_;
    mutable Tensor ric_;
};

}  // namespace kpalg
