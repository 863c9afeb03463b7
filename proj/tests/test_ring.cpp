#include <random>

#include "doctest.h"
#include "kpalg/error.hpp"
#include "kpalg/ring.hpp"
#include "printers.hpp"
#include "support.hpp"

using namespace kpalg;

namespace {

RingPtr sphere() { return RingCtx::make({"x", "y", "z"}, {"1/2*(x^2+y^2+z^2-1)"}, {"x^2+y^2+z^2"}); }

}  // namespace

TEST_CASE("contexts") {
    auto free = RingCtx::make({"x", "y"}, {}, {});
    CHECK(free->groebner().empty());
    CHECK(free->denominators().empty());

    auto s = sphere();
    REQUIRE(s->reduced_denominators().size() == 1);
    CHECK(s->reduced_denominators()[0] == s->parse("1"));
    CHECK(s->constant_denominator(0) == Rat(1));

    CHECK_THROWS_AS(RingCtx::make({"x", "y", "z"}, {"x"}, {"x"}), SemanticError);
    CHECK_THROWS(RingCtx::make({"x", "y", "x"}, {}, {}));
}

TEST_CASE("localized arithmetic") {
    auto s = sphere();
    CHECK(parse_elem("x^2+y^2+z^2", s) == Elem(s, Rat(1)));

    auto r = RingCtx::make({"x", "y"}, {}, {"x+y"});
    auto d = Elem(r, r->parse("x+y"));
    auto x = Elem::generator(r, 0);
    auto y = Elem::generator(r, 1);
    CHECK((x * d).div_by_denominator(0) == x);
    auto z = Elem(r).div_by_denominator(0, 3);
    CHECK(z.is_zero());
    CHECK(z.denom_exps() == std::vector<unsigned>{0});

    auto a = x.div_by_denominator(0);
    CHECK((a + (-a)).is_zero());
    CHECK(x.div_by_denominator(0) * y.div_by_denominator(0) == (x * y).div_by_denominator(0, 2));
    CHECK(a * d == x);
    CHECK(a.div(Elem::inverse_denominator(r, 0)) == x);
    CHECK(x.div(d) == a);
    CHECK_THROWS_AS(x.div(y), SemanticError);

    // eta = lambda^2 / p^2 with both declared.
    auto r61 = RingCtx::make({"x", "y"}, {}, {"x", "y"});
    auto lam = Elem::generator(r61, 0);
    auto p = Elem::generator(r61, 1);
    auto eta = (lam * lam).div(p * p);
    CHECK(eta == parse_elem("x^2 / y^2", r61));
    CHECK(eta * p * p == lam * lam);
}

TEST_CASE("zero tests") {
    auto s = sphere();
    CHECK(parse_elem("1/2*(x^2+y^2+z^2-1)", s).is_zero());
    CHECK(parse_elem("(x^2+y^2+z^2-1) / (x^2+y^2+z^2)^5", s).is_zero());
    CHECK_FALSE(parse_elem("x", RingCtx::make({"x"}, {}, {})).is_zero());
    CHECK(parse_elem("z^2", s) == parse_elem("1 - x^2 - y^2", s));
}

TEST_CASE("field axioms on random elements") {
    auto r = RingCtx::make({"x", "y", "z"}, {"1/2*(x^2+2*y^2+3*z^2-1)"}, {"x^2+4*y^2+9*z^2", "x"});
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        auto a = testing::random_elem(rng, r);
        auto b = testing::random_elem(rng, r);
        auto c = testing::random_elem(rng, r);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - b) + b == a);
        CHECK((a * b) * c == a * (b * c));
        auto g = a.gradient();
        for (std::size_t k = 0; k < 3; ++k) CHECK(g[k] == a.partial(k));
    }
}

TEST_CASE("partials obey the Leibniz rule without relations") {
    // With relations the formal partials depend on the representative; only
    // combinations tangent to the level set (brackets) descend to the quotient.
    auto r = RingCtx::make({"x", "y", "z"}, {}, {"x^2+4*y^2+9*z^2", "x"});
    std::mt19937_64 rng(98);
    for (int i = 0; i < 40; ++i) {
        auto a = testing::random_elem(rng, r);
        auto b = testing::random_elem(rng, r);
        for (std::size_t k = 0; k < 3; ++k) CHECK((a * b).partial(k) == a.partial(k) * b + a * b.partial(k));
    }
}

TEST_CASE("quotient rule") {
    auto r = RingCtx::make({"x", "y"}, {}, {"x^2+y"});
    auto f = parse_elem("x*y / (x^2+y)^2", r);
    // d/dx (x y (x^2+y)^-2) = y (x^2+y)^-2 - 4 x^2 y (x^2+y)^-3
    CHECK(f.partial(0) == parse_elem("y / (x^2+y)^2", r) - parse_elem("4*x^2*y / (x^2+y)^3", r));
}

TEST_CASE("element text") {
    auto r = RingCtx::make({"x", "y"}, {}, {"x"});
    std::mt19937_64 rng(1);
    for (int i = 0; i < 30; ++i) {
        auto a = testing::random_elem(rng, r);
        CHECK(parse_elem(format_elem(a), r) == a);
    }
    CHECK_THROWS_AS(parse_elem("1 / y", r), SemanticError);
    CHECK_THROWS_AS(parse_elem("1 / (x - x)", r), SemanticError);
    try {
        parse_elem("1 / (x +)", r);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 9);
    }
}

TEST_CASE("lift into a larger localization") {
    auto r = RingCtx::make({"x", "y"}, {}, {"x"});
    auto bigger = r->with_denominators(std::vector<Poly>{r->parse("y")});
    auto a = parse_elem("y / x^2", r);
    auto b = a.lift(bigger);
    CHECK(b * Elem::generator(bigger, 0) * Elem::generator(bigger, 0) == Elem::generator(bigger, 1));
    CHECK_THROWS_AS(parse_elem("1/y", bigger).lift(r), SemanticError);
}
