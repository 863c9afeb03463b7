#pragma once

#include <memory>
#include <random>
#include <string>

#include "kpalg/geometry.hpp"
#include "kpalg/pipeline.hpp"

#ifndef KPALG_FIXTURE_DIR
#error "KPALG_FIXTURE_DIR must point at the fixture directory"
#endif

namespace testing {

using namespace kpalg;

inline std::string fixture_path(const std::string& name) { return std::string(KPALG_FIXTURE_DIR) + "/" + name; }

/// A fixture with its verified KP context and geometry.
struct Loaded {
    AlgebraConfig cfg;
    Algebra alg;
    KPSetup kp;
    std::shared_ptr<Geometry> geo;

    const RingPtr& ring() const { return kp.kp->ring(); }
    Elem elem(const std::string& s) const { return parse_elem(s, ring()); }
};

inline Loaded from_config(AlgebraConfig cfg) {
    auto alg = build_algebra(cfg);
    auto kp = build_kp(cfg, alg);
    auto geo = std::make_shared<Geometry>(kp.kp);
    return Loaded{std::move(cfg), std::move(alg), std::move(kp), std::move(geo)};
}

inline Loaded load(const std::string& name) { return from_config(load_config(fixture_path(name))); }

inline Loaded from_text(const std::string& text) { return from_config(parse_config(text)); }

/// Ellipsoid a x^2 + b y^2 + c z^2 = 1 with the generators listed in `order`.
inline std::string ellipsoid_text(int a, int b, int c, const std::string& order = "x, y, z") {
    auto A = std::to_string(a), B = std::to_string(b), C = std::to_string(c);
    std::string n = A + "^2*x^2 + " + B + "^2*y^2 + " + C + "^2*z^2";
    return "generators: " + order + "\nlevelset C = 1/2*(" + A + "*x^2 + " + B + "*y^2 + " + C +
           "*z^2 - 1)\ndenominators: " + n + "\nmetric: euclidean\neta: 1 / (" + n + ")\n";
}

inline Poly random_poly(std::mt19937_64& rng, const ScopePtr& scope, unsigned max_deg, int terms, int coef = 5) {
    std::uniform_int_distribution<int> c(-coef, coef);
    std::uniform_int_distribution<unsigned> e(0, max_deg);
    std::uniform_int_distribution<std::size_t> v(0, scope->size() - 1);
    Poly p(scope);
    for (int t = 0; t < terms; ++t) {
        Mono m;
        unsigned budget = e(rng);
        for (unsigned k = 0; k < budget; ++k) {
            std::size_t i = v(rng);
            m.set(i, m[i] + 1);
        }
        p += Poly::monomial(scope, m, Rat(c(rng)));
    }
    return p;
}

/// Random element, with a random power of a random declared denominator when the ring has any.
inline Elem random_elem(std::mt19937_64& rng, const RingPtr& ring, unsigned max_deg = 2, int terms = 3) {
    Elem e(ring, random_poly(rng, ring->scope(), max_deg, terms));
    const auto& dens = ring->denominators();
    if (!dens.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, dens.size() - 1);
        std::uniform_int_distribution<unsigned> pw(0, 2);
        e = e.div_by_denominator(pick(rng), pw(rng));
    }
    return e;
}

inline Deriv random_deriv(std::mt19937_64& rng, const KPCtx& kp, unsigned max_deg = 1) {
    Deriv d = kp.zero_deriv();
    for (auto& c : d.coeffs) c = random_elem(rng, kp.ring(), max_deg, 2);
    return d;
}

/// Two generators x, y with {x,y} = p, g = Id / lambda, eta = lambda^2 / p^2;
/// lambda and p (when non-constant) are declared denominators.
inline KPPtr plane_family(const std::string& lambda, const std::string& p = "1") {
    std::vector<std::string> dens{lambda};
    if (p != "1") dens.push_back(p);
    auto r = RingCtx::make({"x", "y"}, {}, dens);
    auto lam = parse_elem(lambda, r);
    auto pp = parse_elem(p, r);
    auto inv_lam = Elem::inverse_denominator(r, 0);
    auto eta = p == "1" ? lam * lam : (lam * lam).div(pp * pp);
    auto g = RingMatrix(r, {{inv_lam, Elem(r)}, {Elem(r), inv_lam}}, Shape::symmetric);
    return KPCtx::make(BracketTable::from_upper(r, {{0, 1, pp}}), g, eta);
}

/// Antisymmetric N x N matrix with random entries of degree <= max_deg.
inline RingMatrix random_antisymmetric(std::mt19937_64& rng, const RingPtr& ring, std::size_t N, unsigned max_deg = 1) {
    RingMatrix M(ring, N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            Poly p(ring->scope());
            while (p.is_zero()) p = random_poly(rng, ring->scope(), max_deg, 3);
            M(i, j) = Elem(ring, p);
            M(j, i) = -M(i, j);
        }
    return M;
}

}  // namespace testing

