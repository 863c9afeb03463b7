#include <random>

#include "doctest.h"
#include "kpalg/poisson.hpp"
#include "printers.hpp"
#include "support.hpp"

using namespace kpalg;

namespace {

// {f, g} = P^{ij} d_i f d_j g over a polynomial ring, expanded by hand.
Poly bracket_oracle(const std::vector<std::vector<Poly>>& P, const Poly& f, const Poly& g) {
    Poly acc(f.scope());
    for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t j = 0; j < P.size(); ++j) acc += P[i][j] * f.partial(i) * g.partial(j);
    return acc;
}

BracketTable table3(const RingPtr& r, const std::string& xy, const std::string& yz, const std::string& zx) {
    return BracketTable::from_upper(r, {{0, 1, parse_elem(xy, r)}, {1, 2, parse_elem(yz, r)}, {0, 2, -parse_elem(zx, r)}});
}

}  // namespace

TEST_CASE("brackets on generators and products") {
    auto r = RingCtx::make({"x", "y"}, {}, {});
    auto P = BracketTable::from_upper(r, {{0, 1, Elem(r, Rat(1))}});
    auto x = Elem::generator(r, 0);
    auto y = Elem::generator(r, 1);
    CHECK(P.bracket(x, y) == P(0, 1));
    CHECK(P.bracket(y, x) == -P(0, 1));
    CHECK(P.bracket(x * x, y) == x.scale(2));
    CHECK(P.bracket(x * x, y) == P.bracket(x, y) * x + x * P.bracket(x, y));
    CHECK_THROWS(BracketTable::from_upper(r, {{1, 0, Elem(r, Rat(1))}}));
}

TEST_CASE("ellipsoid level set brackets") {
    auto r = RingCtx::make({"x", "y", "z"}, {"1/2*(x^2+2*y^2+3*z^2-1)"}, {});
    auto P = level_set_table(r, r->parse("1/2*(x^2+2*y^2+3*z^2-1)"));
    auto gen = [&](std::size_t i) { return Elem::generator(r, i); };
    CHECK(P.bracket(gen(0), gen(1)) == gen(2).scale(3));
    CHECK(P.bracket(gen(1), gen(2)) == gen(0));
    CHECK(P.bracket(gen(2), gen(0)) == gen(1).scale(2));
    CHECK(jacobi_check(P).ok);
    CHECK(check_relations_central(P).ok);

    auto free = RingCtx::make({"x", "y", "z"}, {}, {});
    auto L = level_set_table(free, free->parse("z"));
    CHECK(L(0, 1) == Elem(free, Rat(1)));
    CHECK(L(1, 2).is_zero());
    CHECK(L(2, 0).is_zero());
    auto M = level_set_table(free, free->parse("x*y*z"));
    CHECK(M(0, 1) == parse_elem("x*y", free));
    CHECK(M(1, 2) == parse_elem("y*z", free));
    CHECK(M(2, 0) == parse_elem("x*z", free));
}

TEST_CASE("Jacobi identity") {
    auto r = RingCtx::make({"x", "y", "z"}, {}, {});
    CHECK(jacobi_check(table3(r, "z", "x", "y")).ok);
    // The sign flip gives sl(2), which is still a Lie algebra.
    CHECK(jacobi_check(table3(r, "z", "x", "-y")).ok);

    auto bad = table3(r, "z", "x", "y + x");
    auto rep = jacobi_check(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(*rep.witness == std::array<std::size_t, 3>{0, 1, 2});
    std::vector<std::vector<Poly>> Pp(3, std::vector<Poly>(3, Poly(r->scope())));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) Pp[i][j] = bad(i, j).num();
    auto g = [&](std::size_t i) { return Poly::generator(r->scope(), i); };
    Poly J = bracket_oracle(Pp, bracket_oracle(Pp, g(0), g(1)), g(2)) +
             bracket_oracle(Pp, bracket_oracle(Pp, g(1), g(2)), g(0)) +
             bracket_oracle(Pp, bracket_oracle(Pp, g(2), g(0)), g(1));
    CHECK(J == g(2));
    CHECK(rep.residual->num() == J);

    // Random level sets always satisfy Jacobi; random polynomial tables match the oracle.
    std::mt19937_64 rng(17);
    for (int t = 0; t < 10; ++t) {
        auto C = testing::random_poly(rng, r->scope(), 3, 4);
        CHECK(jacobi_check(level_set_table(r, C)).ok);
        auto T = table3(r, testing::random_poly(rng, r->scope(), 1, 2).str(),
                        testing::random_poly(rng, r->scope(), 1, 2).str(), testing::random_poly(rng, r->scope(), 1, 2).str());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) Pp[i][j] = T(i, j).num();
        Poly Jr = bracket_oracle(Pp, bracket_oracle(Pp, g(0), g(1)), g(2)) +
                  bracket_oracle(Pp, bracket_oracle(Pp, g(1), g(2)), g(0)) +
                  bracket_oracle(Pp, bracket_oracle(Pp, g(2), g(0)), g(1));
        CHECK(jacobiator(T, Elem(r, g(0)), Elem(r, g(1)), Elem(r, g(2))).num() == Jr);
        CHECK(jacobi_check(T).ok == Jr.is_zero());
    }
}

TEST_CASE("brackets agree with the oracle on random polynomials") {
    auto r = RingCtx::make({"x", "y", "z"}, {}, {});
    auto P = table3(r, "3*z", "x", "2*y");
    std::vector<std::vector<Poly>> Pp(3, std::vector<Poly>(3, Poly(r->scope())));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) Pp[i][j] = P(i, j).num();
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
        auto f = testing::random_poly(rng, r->scope(), 3, 4);
        auto h = testing::random_poly(rng, r->scope(), 3, 4);
        CHECK(P.bracket(Elem(r, f), Elem(r, h)).num() == bracket_oracle(Pp, f, h));
    }
}

TEST_CASE("relations must be Poisson central") {
    auto sphere = RingCtx::make({"x", "y", "z"}, {"1/2*(x^2+y^2+z^2-1)"}, {"x^2+y^2+z^2"});
    CHECK(check_relations_central(level_set_table(sphere, sphere->parse("1/2*(x^2+y^2+z^2-1)"))).ok);
    CHECK(check_relations_central(BracketTable::from_upper(RingCtx::make({"x", "y"}, {}, {}), {})).ok);

    auto r = RingCtx::make({"x", "y"}, {"x"}, {});
    auto rep = check_relations_central(BracketTable::from_upper(r, {{0, 1, Elem(r, Rat(1))}}));
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.generator);
    CHECK(*rep.generator == 1);
}
