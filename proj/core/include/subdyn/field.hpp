#pragma once

#include "subdyn/bigint.hpp"
#include "subdyn/errors.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace subdyn {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;
class Polynomial;

enum class FieldKind { Rationals, Prime, Function };

struct FieldDesc;
using FieldPtr = std::shared_ptr<const FieldDesc>;

// A coefficient field: Q, F_p (p prime, machine word), or a rational function
// field over one of these with named parameters.
struct FieldDesc {
    FieldKind kind = FieldKind::Rationals;
    unsigned long p = 0;                 // Prime
    std::vector<std::string> parameters; // Function
    FieldPtr base;                       // Function: the ground field
    RingPtr param_ring;                  // Function: parameters over base, grevlex

    static FieldPtr rationals();
    static FieldPtr prime(unsigned long p);
    static FieldPtr function(std::vector<std::string> parameters, FieldPtr base);

    bool same(const FieldDesc& other) const;
    unsigned long characteristic() const;
    std::string describe() const;
};

// Numerator/denominator pair for function-field values. Both live in the
// field's param_ring. Reduced: poly gcd removed, denominator normalized to an
// integer-primitive (base Q) or monic (base F_p) polynomial with positive /
// unit leading coefficient.
struct FracData;

// An exact field element. Immutable; safe to share across threads.
class Scalar {
public:
    Scalar() = default;

    static Scalar zero(const FieldPtr& f);
    static Scalar one(const FieldPtr& f);
    static Scalar of_int(const FieldPtr& f, long v);
    static Scalar of_rational(const FieldPtr& f, const Rational& q);
    static Scalar parameter(const FieldPtr& f, std::size_t index, unsigned exp = 1);
    // Takes ownership of an unreduced fraction and normalizes it.
    static Scalar from_fraction(const FieldPtr& f, Polynomial num, Polynomial den);

    const FieldPtr& field() const { return field_; }
    bool valid() const { return field_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;
    // True when the value lies in the ground field (no parameters involved).
    bool is_base_constant() const;
    Rational rational_value() const;      // Rationals (or Function/Q constants)
    unsigned long residue_value() const;  // Prime field
    const FracData& frac() const;         // Function field

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;
    std::size_t hash() const;

private:
    FieldPtr field_;
    Rational q_;
    unsigned long r_ = 0;
    std::shared_ptr<const FracData> frac_;

    void check_same_field(const Scalar& o) const;
};

// Residue arithmetic helpers (p prime, < 2^63).
namespace fp {
unsigned long add(unsigned long a, unsigned long b, unsigned long p);
unsigned long sub(unsigned long a, unsigned long b, unsigned long p);
unsigned long mul(unsigned long a, unsigned long b, unsigned long p);
unsigned long pow(unsigned long a, unsigned long e, unsigned long p);
unsigned long inv(unsigned long a, unsigned long p);
unsigned long of_rational(const Rational& q, unsigned long p);
} // namespace fp

} // namespace subdyn
