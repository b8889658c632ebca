#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace subdyn;
using namespace subdyn::testing;

namespace {

void check_field_axioms(const FieldPtr& f, unsigned long seed) {
    auto rng = make_rng(seed);
    for (int i = 0; i < 60; ++i) {
        Scalar a = random_scalar(rng, f);
        Scalar b = random_scalar(rng, f);
        Scalar c = random_scalar(rng, f);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Scalar::zero(f));
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Scalar::one(f));
            CHECK((a / a) == Scalar::one(f));
        }
        // exactness: (a+b)-b == a
        CHECK((a + b) - b == a);
    }
}

} // namespace

TEST_CASE("rational field axioms") { check_field_axioms(FieldDesc::rationals(), 1); }

TEST_CASE("prime field axioms") {
    check_field_axioms(FieldDesc::prime(2), 2);
    check_field_axioms(FieldDesc::prime(5), 3);
    check_field_axioms(FieldDesc::prime(32003), 4);
}

TEST_CASE("function field axioms") {
    FieldPtr f = FieldDesc::function({"a", "b"}, FieldDesc::rationals());
    check_field_axioms(f, 5);
    FieldPtr g = FieldDesc::function({"s"}, FieldDesc::prime(5));
    check_field_axioms(g, 6);
}

TEST_CASE("rational values stay canonical") {
    FieldPtr q = FieldDesc::rationals();
    Scalar a = Scalar::of_rational(q, Rational(4, 6));
    CHECK(a.rational_value().get_num() == 2);
    CHECK(a.rational_value().get_den() == 3);
    Scalar b = Scalar::of_rational(q, Rational(-3, -9));
    CHECK(b.rational_value().get_num() == 1);
    CHECK(b.rational_value().get_den() == 3);
}

TEST_CASE("prime residues live in [0, p)") {
    FieldPtr f5 = FieldDesc::prime(5);
    CHECK(Scalar::of_int(f5, -1).residue_value() == 4);
    CHECK(Scalar::of_int(f5, 12).residue_value() == 2);
    CHECK(Scalar::of_rational(f5, Rational(1, 2)).residue_value() == 3); // 2*3 = 6 = 1
    CHECK_THROWS_AS(FieldDesc::prime(6), MathError);
}

TEST_CASE("frobenius identity in F_p") {
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
        FieldPtr f = FieldDesc::prime(p);
        auto rng = make_rng(7 + p);
        for (int i = 0; i < 40; ++i) {
            Scalar a = random_scalar(rng, f);
            Scalar b = random_scalar(rng, f);
            auto pw = [&](Scalar s) {
                Scalar r = Scalar::one(f);
                for (unsigned long k = 0; k < p; ++k) r = r * s;
                return r;
            };
            CHECK(pw(a + b) == pw(a) + pw(b));
        }
    }
}

TEST_CASE("function field fractions reduce") {
    FieldPtr f = FieldDesc::function({"s"}, FieldDesc::rationals());
    const RingPtr& pr = f->param_ring;
    // (s^2 - 1)/(s - 1) == s + 1
    Polynomial num = parse_poly("s^2 - 1", pr);
    Polynomial den = parse_poly("s - 1", pr);
    Scalar v = Scalar::from_fraction(f, num, den);
    Scalar expected = Scalar::from_fraction(f, parse_poly("s + 1", pr),
                                            Polynomial::constant(pr, 1));
    CHECK(v == expected);

    // scaling is invisible: (2s+2)/2 == s+1
    Scalar w = Scalar::from_fraction(f, parse_poly("2*s + 2", pr), Polynomial::constant(pr, 2));
    CHECK(w == expected);

    // denominator sign is pinned: 1/(-s) == -1/s structurally
    Scalar a = Scalar::from_fraction(f, Polynomial::constant(pr, 1), parse_poly("0 - s", pr));
    Scalar b = -Scalar::from_fraction(f, Polynomial::constant(pr, 1), parse_poly("s", pr));
    CHECK(a == b);

    CHECK_THROWS_AS(Scalar::from_fraction(f, num, Polynomial::zero(pr)), MathError);
}

TEST_CASE("function field arithmetic keeps normal forms equal") {
    FieldPtr f = FieldDesc::function({"a", "b"}, FieldDesc::rationals());
    auto rng = make_rng(11);
    const RingPtr& pr = f->param_ring;
    for (int i = 0; i < 30; ++i) {
        Polynomial n1 = random_poly(rng, pr, 3, 2);
        Polynomial d1 = random_poly(rng, pr, 2, 2);
        if (d1.is_zero()) continue;
        Scalar v = Scalar::from_fraction(f, n1, d1);
        if (v.is_zero()) continue;
        // v * (1/v) == 1 exercises cross-cancellation
        CHECK(v * v.inverse() == Scalar::one(f));
        // (v + v) == 2v
        CHECK(v + v == v * Scalar::of_int(f, 2));
    }
}
