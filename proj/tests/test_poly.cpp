#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "htheta/poly.hpp"

using namespace htheta;

namespace {

RingPtr qxyz() {
    return PolyRing::make(CoefficientField::rationals(), {"x", "y", "z"});
}

Polynomial random_poly(const RingPtr& ring, std::mt19937_64& rng, int max_terms = 5,
                       std::uint32_t max_exp = 3) {
    std::vector<PolyTerm> terms;
    const auto& K = ring->field();
    int nterms = static_cast<int>(rng() % (max_terms + 1));
    for (int t = 0; t < nterms; ++t) {
        std::vector<std::uint32_t> e(ring->nvars());
        for (auto& x : e) x = static_cast<std::uint32_t>(rng() % (max_exp + 1));
        long num = static_cast<long>(rng() % 11) - 5;
        Coeff c = K.from_long(num);
        if (K.kind() == FieldKind::rationals && rng() % 3 == 0)
            c = K.div(c, K.from_long(static_cast<long>(rng() % 4) + 1));
        terms.push_back({Monomial(std::move(e)), c});
    }
    return Polynomial::from_terms(ring, std::move(terms));
}

Monomial random_monomial(std::size_t nvars, std::mt19937_64& rng, std::uint32_t max_exp = 4) {
    std::vector<std::uint32_t> e(nvars);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng() % (max_exp + 1));
    return Monomial(std::move(e));
}

}  // namespace

TEST_CASE("field axioms spot-checked for both field kinds") {
    std::mt19937_64 rng(42);
    for (const auto& K : {CoefficientField::rationals(), CoefficientField::prime_field(7)}) {
        for (int trial = 0; trial < 200; ++trial) {
            Coeff a = K.from_long(static_cast<long>(rng() % 23) - 11);
            Coeff b = K.from_long(static_cast<long>(rng() % 23) - 11);
            Coeff c = K.from_long(static_cast<long>(rng() % 23) - 11);
            CHECK(K.equal(K.add(K.add(a, b), c), K.add(a, K.add(b, c))));
            CHECK(K.equal(K.mul(K.mul(a, b), c), K.mul(a, K.mul(b, c))));
            CHECK(K.equal(K.mul(a, K.add(b, c)), K.add(K.mul(a, b), K.mul(a, c))));
            CHECK(K.equal(K.add(a, K.neg(a)), K.zero()));
            if (!K.is_zero(a)) CHECK(K.equal(K.mul(a, K.inv(a)), K.one()));
        }
    }
    CHECK(CoefficientField::rationals().characteristic() == 0);
    CHECK(CoefficientField::prime_field(5).characteristic() == 5);
    CHECK(CoefficientField::rationals().is_perfect());
    CHECK_THROWS_AS(CoefficientField::prime_field(6), InvalidParameter);
}

TEST_CASE("monomial orders are total, multiplicative, with 1 minimal") {
    std::mt19937_64 rng(7);
    for (OrderKind kind : {OrderKind::grevlex, OrderKind::lex}) {
        MonomialOrder ord(kind);
        Monomial one(3);
        for (int trial = 0; trial < 300; ++trial) {
            Monomial a = random_monomial(3, rng), b = random_monomial(3, rng),
                     c = random_monomial(3, rng);
            int ab = ord.compare(a, b);
            CHECK(ord.compare(b, a) == -ab);
            CHECK((ab == 0) == (a == b));
            // multiplicative
            CHECK(ord.compare(a.times(c), b.times(c)) == ab);
            // 1 minimal
            if (!a.is_one()) CHECK(ord.compare(a, one) > 0);
            // refines divisibility
            if (a.divides(b)) CHECK(ord.compare(a, b) <= 0);
        }
    }
    // univariate agreement
    MonomialOrder g(OrderKind::grevlex), l(OrderKind::lex);
    std::mt19937_64 rng2(11);
    for (int trial = 0; trial < 50; ++trial) {
        Monomial a = random_monomial(1, rng2, 9), b = random_monomial(1, rng2, 9);
        CHECK(g.compare(a, b) == l.compare(a, b));
    }
}

TEST_CASE("parse examples") {
    auto ring = qxyz();
    CHECK(parse_poly("0", ring).is_zero());

    Polynomial p = parse_poly("x^3 - y*z", ring);
    REQUIRE(p.terms().size() == 2);
    CHECK(p.terms()[0].mon == Monomial(std::vector<std::uint32_t>{3, 0, 0}));
    CHECK(p.terms()[0].coeff == Coeff(1));
    CHECK(p.terms()[1].mon == Monomial(std::vector<std::uint32_t>{0, 1, 1}));
    CHECK(p.terms()[1].coeff == Coeff(-1));

    auto f2 = PolyRing::make(CoefficientField::prime_field(2), {"x", "y"});
    Polynomial q = parse_poly("(x+y)^2", f2);
    CHECK(q == parse_poly("x^2 + y^2", f2));

    // grammar corners
    CHECK(parse_poly("-x", ring) == -Polynomial::variable(ring, 0));
    CHECK(parse_poly("2*x - 3", ring) ==
          parse_poly("x", ring).scale(Coeff(2)) - Polynomial::constant(ring, Coeff(3)));
    CHECK(parse_poly("1/2*x^2", ring) == parse_poly("x^2", ring).scale(Coeff(1, 2)));

    CHECK_THROWS_AS(parse_poly("x +", ring), SyntaxError);
    CHECK_THROWS_AS(parse_poly("x y", ring), SyntaxError);  // juxtaposition
    CHECK_THROWS_AS(parse_poly("2^3", ring), SyntaxError);  // ^ needs var or parens
    CHECK_THROWS_AS(parse_poly("q + 1", ring), UnknownVariable);
    CHECK_THROWS_AS(parse_poly("x^-2", ring), NegativeExponent);
    try {
        parse_poly("x + @", ring);
        CHECK(false);
    } catch (const SyntaxError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("arithmetic examples") {
    auto ring = qxyz();
    Polynomial x = Polynomial::variable(ring, 0), y = Polynomial::variable(ring, 1);
    CHECK((x + (-x)).is_zero());
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK(parse_poly("x^2", ring).scale(Coeff(1, 2)).to_string() == "1/2*x^2");
    CHECK_THROWS_AS(x + Polynomial::variable(PolyRing::make(CoefficientField::rationals(),
                                                            {"t"}),
                                             0),
                    RingMismatch);
}

TEST_CASE("derivatives") {
    auto ring = qxyz();
    Polynomial x = Polynomial::variable(ring, 0), y = Polynomial::variable(ring, 1);
    CHECK(x.pow(3).derivative(0) == parse_poly("3*x^2", ring));
    CHECK((x * y).derivative(1) == x);
    auto f5 = PolyRing::make(CoefficientField::prime_field(5), {"x"});
    CHECK(Polynomial::variable(f5, 0).pow(5).derivative(0).is_zero());
}

TEST_CASE("parse-print round trip and ring laws on random inputs") {
    std::mt19937_64 rng(2024);
    auto ring = qxyz();
    auto f3 = PolyRing::make(CoefficientField::prime_field(3), {"x", "y"});
    for (int trial = 0; trial < 120; ++trial) {
        Polynomial p = random_poly(ring, rng), q = random_poly(ring, rng),
                   r = random_poly(ring, rng);
        CHECK(parse_poly(p.to_string(), ring) == p);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        // derivative is linear and satisfies Leibniz
        for (std::size_t v = 0; v < 3; ++v) {
            CHECK((p + q).derivative(v) == p.derivative(v) + q.derivative(v));
            CHECK((p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v));
        }
        Polynomial pm = random_poly(f3, rng);
        CHECK(parse_poly(pm.to_string(), f3) == pm);
    }
}

TEST_CASE("transplant moves polynomials into extension rings") {
    auto ring = PolyRing::make(CoefficientField::rationals(), {"x", "y"});
    auto big = PolyRing::make(CoefficientField::rationals(), {"x", "y", "u"});
    Polynomial p = parse_poly("x^2 - y", ring);
    CHECK(transplant(p, big, {0, 1}) == parse_poly("x^2 - y", big));
}
