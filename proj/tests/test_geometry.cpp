#include <random>

#include "doctest.h"
#include "kpalg/geometry.hpp"
#include "oracles.hpp"
#include "printers.hpp"
#include "support.hpp"

using namespace kpalg;
using testing::load;

namespace {

const std::vector<std::string> kFixtures = {"sphere.kp",          "ellipsoid_1_1_1.kp", "ellipsoid_1_2_3.kp",
                                            "ellipsoid_2_1_1.kp", "ellipsoid_1_1_5.kp", "ellipsoid_3_2_7.kp",
                                            "plane_lambda_x.kp",  "plane_flat.kp",      "su2_construct.kp"};

// Closed forms for the plane with {x,y} = 1, g = Id / lambda.
struct PlaneForms {
    KPPtr kp;
    Elem lam;
    Elem Dx_lam, Dy_lam;  // D^x(lambda), D^y(lambda)
    Elem dx_lam, dy_lam;  // D_x(lambda), D_y(lambda)

    explicit PlaneForms(const std::string& lambda) : kp(testing::plane_family(lambda)), lam(parse_elem(lambda, kp->ring())),
        Dx_lam(kp->d_apply(0, lam)), Dy_lam(kp->d_apply(1, lam)),
        dx_lam(Dx_lam * Elem::inverse_denominator(kp->ring(), 0)), dy_lam(Dy_lam * Elem::inverse_denominator(kp->ring(), 0)) {}

    Elem lower_x(const Elem& f) const { return kp->d_apply(0, f) * Elem::inverse_denominator(kp->ring(), 0); }
    Elem lower_y(const Elem& f) const { return kp->d_apply(1, f) * Elem::inverse_denominator(kp->ring(), 0); }
};

}  // namespace

TEST_CASE("flat plane") {
    auto l = load("plane_flat.kp");
    const auto& G = *l.geo;
    for (const auto& e : G.christoffel().flat()) CHECK(e.is_zero());
    for (const auto& e : G.riemann().flat()) CHECK(e.is_zero());
    for (const auto& e : G.ricci().flat()) CHECK(e.is_zero());
    CHECK(G.scalar().is_zero());
    auto grad = G.gradient(l.elem("x"));
    CHECK(G.kp().same_action(grad, G.kp().generator(0)));
    CHECK(G.kp().same_action(G.gradient(l.elem("1")), G.kp().zero_deriv()));
    CHECK(G.divergence(G.kp().zero_deriv()).is_zero());
    CHECK(G.laplacian(l.elem("7")).is_zero());
    CHECK(G.laplacian(l.elem("x^2 + y^2")) == l.elem("4"));
}

TEST_CASE("conformal plane family") {
    for (auto lambda : {"x", "1 + x^2 + y^2", "x^2 - x*y + 2"}) {
        CAPTURE(lambda);
        PlaneForms F(lambda);
        const auto& kp = *F.kp;
        Geometry G(F.kp);
        auto r = kp.ring();
        auto inv = Elem::inverse_denominator(r, 0);
        auto Dx = kp.generator(0), Dy = kp.generator(1);

        // nabla_{D^x} D^x = nabla_{D^y} D^y = 1/2 D^i(lambda) D_i, with D_i = D^i / lambda.
        Deriv half{{(F.Dx_lam * inv).scale(Rat(1, 2)), (F.Dy_lam * inv).scale(Rat(1, 2))}};
        CHECK(kp.same_action(G.nabla(Dx, Dx), half));
        CHECK(kp.same_action(G.nabla(Dy, Dy), half));

        // D^lambda = gamma^-1 {lambda, .} with gamma = 1 / lambda, and the bracket form of it.
        std::vector<Elem> vals;
        for (std::size_t j = 0; j < 2; ++j) vals.push_back(F.lam * kp.P().bracket(F.lam, Elem::generator(r, j)));
        auto D_lambda = kp.coeffs_from_values(vals);
        Deriv via_bracket{{-(F.Dy_lam * inv), F.Dx_lam * inv}};
        CHECK(kp.same_action(D_lambda, via_bracket));
        // nabla_{D^x} D^y = 1/2 D^x(l) D_y - 1/2 D^y(l) D_x = -nabla_{D^y} D^x, which is
        // half of [D^x, D^y]; torsion-freeness rules out the full D^lambda.
        Deriv mixed{{-(F.Dy_lam * inv).scale(Rat(1, 2)), (F.Dx_lam * inv).scale(Rat(1, 2))}};
        CHECK(kp.same_action(G.nabla(Dx, Dy), mixed));
        CHECK(kp.same_action(G.nabla(Dy, Dx), kp.zero_deriv() - mixed));
        CHECK(kp.same_action(mixed + mixed, D_lambda));
        CHECK_FALSE(kp.same_action(G.nabla(Dx, Dy), D_lambda));
        CHECK(kp.same_action(G.lie_bracket(Dx, Dy), D_lambda));
        CHECK(kp.same_action(G.lie_bracket(Dx, Dx), kp.zero_deriv()));

        // R(D^x, D^y) D^x = [D_x(l)^2 + D_y(l)^2 - 1/2 D_x(D^x l) - 1/2 D_y(D^y l)] D^y
        Elem coef = F.dx_lam * F.dx_lam + F.dy_lam * F.dy_lam - F.lower_x(F.Dx_lam).scale(Rat(1, 2)) -
                    F.lower_y(F.Dy_lam).scale(Rat(1, 2));
        CHECK(kp.same_action(G.curvature_generators(0, 1, 0), coef * Dy));

        Elem S = inv * (F.lower_x(F.Dx_lam) + F.lower_y(F.Dy_lam) - (F.dx_lam * F.dx_lam).scale(2) -
                        (F.dy_lam * F.dy_lam).scale(2));
        CHECK(G.scalar() == S);

        // div(a D^x + b D^y) = D^x(a) + D^y(b); Delta f = D^x(D_x f) + D^y(D_y f).
        auto a = parse_elem("x*y + 3", r), b = parse_elem("y^2 - x", r);
        CHECK(G.divergence(Deriv{{a, b}}) == kp.d_apply(0, a) + kp.d_apply(1, b));
        auto f = parse_elem("x^3 - x*y^2 + y", r);
        CHECK(G.laplacian(f) == kp.d_apply(0, F.lower_x(f)) + kp.d_apply(1, F.lower_y(f)));
    }
    auto l = load("plane_lambda_x.kp");
    CHECK(l.geo->scalar() == l.elem("-1 / x"));
}

TEST_CASE("connection and brackets") {
    std::mt19937_64 rng(12);
    for (const auto& name : kFixtures) {
        auto l = load(name);
        const auto& G = *l.geo;
        const auto& kp = G.kp();
        CAPTURE(name);
        for (int t = 0; t < 4; ++t) {
            auto a = testing::random_deriv(rng, kp), b = testing::random_deriv(rng, kp);
            CHECK(kp.same_action(G.nabla(a, b) - G.nabla(b, a), G.lie_bracket(a, b)));
            // [a, b](f) = a(b(f)) - b(a(f))
            auto f = testing::random_elem(rng, kp.ring());
            CHECK(kp.apply(G.lie_bracket(a, b), f) == kp.apply(a, kp.apply(b, f)) - kp.apply(b, kp.apply(a, f)));
            CHECK(kp.same_action(G.nabla(kp.zero_deriv(), b), kp.zero_deriv()));
        }
        for (std::size_t i = 0; i < kp.m(); ++i)
            CHECK(kp.same_action(G.bracket_generators(i, i), kp.zero_deriv()));
    }

    // g([D^i, D^j], D^k) = D^i(D^jk) - D^j(D^ik)
    auto l = load("ellipsoid_1_2_3.kp");
    const auto& kp = l.geo->kp();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(kp.g_form(l.geo->bracket_generators(i, j), kp.generator(k)) ==
                      kp.d_apply(i, kp.D()(j, k)) - kp.d_apply(j, kp.D()(i, k)));
}

TEST_CASE("ellipsoid curvature matrix") {
    auto l = load("ellipsoid_1_2_3.kp");
    const auto& G = *l.geo;
    const auto& kp = G.kp();
    auto eta = kp.eta();
    auto Rhat = RingMatrix::from_strings(kp.ring(), {{"0", "-3*z", "2*y"}, {"3*z", "0", "-x"}, {"-2*y", "x", "0"}})
                    .scale(eta * eta * eta * l.elem("6"));
    struct Variant {
        std::size_t k, l;
        const char* factor;
    };
    for (auto v : {Variant{0, 1, "3*z"}, Variant{1, 2, "x"}, Variant{2, 0, "2*y"}}) {
        CAPTURE(v.factor);
        for (std::size_t i = 0; i < 3; ++i) {
            Deriv rhs = kp.zero_deriv();
            for (std::size_t j = 0; j < 3; ++j) rhs.coeffs[j] = l.elem(v.factor) * Rhat(i, j);
            CHECK(kp.same_action(G.curvature_generators(v.k, v.l, i), rhs));
        }
    }
}

TEST_CASE("scalar curvature of ellipsoids") {
    for (auto [a, b, c] : {std::tuple{1, 1, 1}, {1, 2, 3}, {2, 1, 1}, {1, 1, 5}, {3, 2, 7}}) {
        auto l = testing::from_text(testing::ellipsoid_text(a, b, c));
        CAPTURE(a * 100 + b * 10 + c);
        auto eta = l.geo->kp().eta();
        CHECK(l.geo->scalar() == (eta * eta).scale(2 * a * b * c));
        // Relabelling the generators leaves S unchanged.
        auto p = testing::from_text(testing::ellipsoid_text(a, b, c, "z, x, y"));
        auto eta_p = p.geo->kp().eta();
        CHECK(p.geo->scalar() == (eta_p * eta_p).scale(2 * a * b * c));
    }
    auto sphere = load("sphere.kp");
    CHECK(sphere.geo->scalar() == sphere.elem("2"));
}

TEST_CASE("Ricci curvature") {
    auto sphere = load("sphere.kp");
    const auto& Ric = sphere.geo->ricci();
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q) CHECK(Ric.at({p, q}) == sphere.geo->kp().D()(p, q));

    std::mt19937_64 rng(31);
    for (auto name : {"ellipsoid_1_2_3.kp", "su2_construct.kp", "plane_lambda_x.kp"}) {
        auto l = load(name);
        const auto& kp = l.geo->kp();
        for (int t = 0; t < 5; ++t) {
            auto a = testing::random_deriv(rng, kp), b = testing::random_deriv(rng, kp);
            CHECK(l.geo->ricci(a, b) == l.geo->ricci(b, a));
        }
    }
}

TEST_CASE("gradient and divergence") {
    std::mt19937_64 rng(41);
    for (const auto& name : kFixtures) {
        auto l = load(name);
        const auto& G = *l.geo;
        const auto& kp = G.kp();
        CAPTURE(name);
        for (int t = 0; t < 4; ++t) {
            auto f = testing::random_elem(rng, kp.ring());
            auto alpha = testing::random_deriv(rng, kp);
            CHECK(kp.g_form(G.gradient(f), alpha) == kp.apply(alpha, f));
            CHECK(G.divergence(f * alpha) == f * G.divergence(alpha) + kp.apply(alpha, f));
        }
    }
}

TEST_CASE("Laplacian on the round sphere") {
    auto l = load("sphere.kp");
    const auto& G = *l.geo;
    CHECK(G.laplacian(l.elem("z")) == l.elem("-2*z"));
    CHECK(G.laplacian(l.elem("x")) == l.elem("-2*x"));
    CHECK(G.laplacian(l.elem("z^2")) == l.elem("2 - 6*z^2"));

    auto scope = l.ring()->scope();
    std::mt19937_64 rng(53);
    for (unsigned d = 1; d <= 4; ++d)
        for (int t = 0; t < 3; ++t) {
            // Homogeneous of degree d.
            Poly f(scope);
            auto draw = testing::random_poly(rng, scope, d, 4);
            for (const auto& term : draw.terms())
                if (term.mono.degree() == d) f += Poly::monomial(scope, term.mono, term.coef);
            f += Poly::monomial(scope, Mono::var(2, d), 1);
            CHECK(G.laplacian(Elem(l.ring(), f)) == Elem(l.ring(), oracle::sphere_laplacian_homogeneous(f)));
        }
}

TEST_CASE("property suite") {
    for (const auto& name : kFixtures) {
        auto l = load(name);
        auto rep = l.geo->verify_properties();
        CAPTURE(name);
        for (const auto& c : rep.checks) {
            CAPTURE(c.name);
            CHECK(c.ok);
            CHECK(c.checked > 0);
        }
        CHECK(rep.ok());
        CHECK(rep.checks.size() == 8);
    }
}

TEST_CASE("a perturbed connection is caught") {
    auto l = load("sphere.kp");
    Tensor gamma = l.geo->christoffel();
    gamma.at({0, 0, 0}) += Elem(l.ring(), Rat(1));
    Geometry bad(l.kp.kp, gamma);
    auto rep = bad.verify_properties();
    CHECK_FALSE(rep.ok());
    bool caught = false;
    for (const auto& c : rep.checks)
        if (c.name == "torsion-free" || c.name == "metricity") caught = caught || !c.ok;
    CHECK(caught);
}

TEST_CASE("pair symmetry in index form") {
    auto l = load("sphere.kp");
    const auto& R = l.geo->riemann();
    bool nonzero = false;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t m = 0; m < 3; ++m) {
                    CHECK(R.at({i, j, k, m}) == R.at({k, m, i, j}));
                    // The reversed-pair form R(a,b,c,d) = R(d,c,a,b) holds only up to sign.
                    CHECK((R.at({i, j, k, m}) + R.at({m, k, i, j})).is_zero());
                    nonzero = nonzero || !R.at({i, j, k, m}).is_zero();
                }
    CHECK(nonzero);
}
