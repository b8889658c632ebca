#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <cmath>

using namespace subdyn;
using namespace subdyn::testing;

TEST_CASE("parse denotes the exact polynomial") {
    RingPtr r = PolyRing::make(FieldDesc::rationals(), {"x", "y"});
    Polynomial p = parse_poly("x^2 + 2*x*y", r);
    CHECK(p.nterms() == 2);
    CHECK(p.leading().coeff == Scalar::of_int(r->field(), 1));
    CHECK(p == Polynomial::variable(r, 0, 2) +
                   Polynomial::variable(r, 0) * Polynomial::variable(r, 1) *
                       Scalar::of_int(r->field(), 2));

    RingPtr f2 = PolyRing::make(FieldDesc::prime(2), {"x", "y", "z"});
    Polynomial q = parse_poly("y^2 + x*z + z^2", f2);
    CHECK(q.nterms() == 3);
    CHECK(q.str() == "y^2 + x*z + z^2");
}

TEST_CASE("parse reports positions") {
    RingPtr r = PolyRing::make(FieldDesc::rationals(), {"x", "y"});
    try {
        parse_poly("x +* y", r);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    CHECK_THROWS_AS(parse_poly("x + w", r), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0*x", r), ParseError);
    CHECK_THROWS_AS(parse_poly("x + ", r), ParseError);
    CHECK_THROWS_AS(parse_poly("2 x", r), ParseError);
}

TEST_CASE("parse-print round trip on random polynomials") {
    std::vector<FieldPtr> fields = {FieldDesc::rationals(), FieldDesc::prime(5),
                                    FieldDesc::function({"a", "b"}, FieldDesc::rationals()),
                                    FieldDesc::function({"s"}, FieldDesc::prime(3))};
    unsigned long seed = 100;
    for (const auto& f : fields) {
        RingPtr r = PolyRing::make(f, {"x", "y", "z"});
        auto rng = make_rng(seed++);
        for (int i = 0; i < 100; ++i) {
            Polynomial p = random_poly(rng, r);
            Polynomial q = parse_poly(p.str(), r);
            CHECK(p == q);
        }
    }
}

TEST_CASE("ring axioms hold exactly") {
    std::vector<FieldPtr> fields = {FieldDesc::rationals(), FieldDesc::prime(7),
                                    FieldDesc::function({"a"}, FieldDesc::rationals())};
    unsigned long seed = 200;
    for (const auto& f : fields) {
        RingPtr r = PolyRing::make(f, {"x", "y"});
        auto rng = make_rng(seed++);
        for (int i = 0; i < 40; ++i) {
            Polynomial a = random_poly(rng, r, 4, 2);
            Polynomial b = random_poly(rng, r, 4, 2);
            Polynomial c = random_poly(rng, r, 4, 2);
            CHECK((a + b) * c == a * c + b * c);
            CHECK(a * b == b * a);
            CHECK((a + b) - b == a);
            CHECK((a * b) * c == a * (b * c));
        }
    }
}

TEST_CASE("weighted degree check") {
    RingPtr r = ring_q3();
    auto [h1, d1] = parse_poly("x^2 + y*z", r).weighted_homogeneous();
    CHECK(h1);
    CHECK(*d1 == 2);

    RingPtr w = PolyRing::make(FieldDesc::rationals(), {"x", "y"}, MonomialOrder::GrevLex,
                               {1, 2});
    auto [h2, d2] = parse_poly("y - x^2", w).weighted_homogeneous();
    CHECK(h2);
    CHECK(*d2 == 2);

    RingPtr r2 = PolyRing::make(FieldDesc::rationals(), {"x", "y"});
    auto [h3, d3] = parse_poly("x + y^2", r2).weighted_homogeneous();
    CHECK_FALSE(h3);
    CHECK_FALSE(d3.has_value());

    CHECK_THROWS_AS(Polynomial::zero(r).weighted_homogeneous(), MathError);
}

TEST_CASE("poly_height golden values") {
    RingPtr r = PolyRing::make(FieldDesc::rationals(), {"x", "y"});
    CHECK(poly_height(parse_poly("x + y", r)) == 0);
    Real h2 = poly_height(parse_poly("2*x + y", r));
    CHECK(abs(h2 - log(Real(2))) < 1e-30);
    // oracle: clear denominators of (1/3, 2) to (1, 6)
    Real h6 = poly_height(parse_poly("1/3*x + 2*y", r));
    CHECK(abs(h6 - log(Real(6))) < 1e-30);
    CHECK_THROWS_AS(poly_height(Polynomial::zero(r)), MathError);
}

TEST_CASE("poly_height is scaling invariant") {
    RingPtr r = ring_q3();
    auto rng = make_rng(300);
    for (int i = 0; i < 100; ++i) {
        Polynomial p = random_poly(rng, r);
        if (p.is_zero()) continue;
        Rational c = random_rational(rng);
        if (c == 0) c = 1;
        Polynomial cp = p * Scalar::of_rational(r->field(), c);
        CHECK(abs(poly_height(p) - poly_height(cp)) < 1e-30);
    }
}

TEST_CASE("compose picks coordinates and multiplies degrees") {
    Morphism f = example_map_q();
    const RingPtr& r = f.ring();
    CHECK(compose(parse_poly("x", r), f) == parse_poly("x^2", r));

    Morphism g2 = example31_map();
    const RingPtr& r2 = g2.ring();
    Polynomial comp = compose(parse_poly("y + z", r2), g2);
    CHECK(comp == parse_poly("x^2 + y^2 + x*z + z^2", r2));
    auto [h, d] = comp.weighted_homogeneous();
    CHECK(h);
    CHECK(*d == 2);
}

TEST_CASE("compose degree law on random forms") {
    auto rng = make_rng(400);
    Morphism f = example_map_q();
    const RingPtr& r = f.ring();
    for (int i = 0; i < 50; ++i) {
        unsigned deg = 1 + (i % 3);
        Polynomial g = random_homogeneous(rng, r, deg);
        Polynomial c = compose(g, f);
        CHECK(c.total_degree() == deg * f.degree());
        CHECK(c.weighted_homogeneous().first);
    }
}

TEST_CASE("partial derivatives") {
    RingPtr r = PolyRing::make(FieldDesc::rationals(), {"x", "y"});
    Polynomial p = parse_poly("x^2*y", r);
    CHECK(p.derivative(0) == parse_poly("2*x*y", r));
    CHECK(p.derivative(0, 3).is_zero());
    CHECK(p.derivative(1) == parse_poly("x^2", r));
}

TEST_CASE("normalized generators are deterministic") {
    RingPtr r = ring_q3();
    Polynomial p = parse_poly("2/3*x - 4*y", r);
    CHECK(p.normalized().str() == "x - 6*y");
    Polynomial q = parse_poly("0 - x + y", r);
    CHECK(q.normalized().str() == "x - y");

    FieldPtr f = FieldDesc::function({"a", "b"}, FieldDesc::rationals());
    RingPtr rf = PolyRing::make(f, {"x", "y"});
    Polynomial s = parse_poly("2*a*x + 2*b*y", rf);
    CHECK(s.normalized().str() == "a*x + b*y");
}

TEST_CASE("frobenius on polynomials over F_p") {
    for (unsigned long p : {2UL, 3UL}) {
        RingPtr r = PolyRing::make(FieldDesc::prime(p), {"x", "y"});
        auto rng = make_rng(500 + p);
        for (int i = 0; i < 20; ++i) {
            Polynomial a = random_poly(rng, r, 3, 2);
            Polynomial b = random_poly(rng, r, 3, 2);
            CHECK((a + b).pow(static_cast<unsigned>(p)) ==
                  a.pow(static_cast<unsigned>(p)) + b.pow(static_cast<unsigned>(p)));
        }
    }
}
