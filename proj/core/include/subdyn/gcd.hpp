#pragma once

#include "subdyn/poly.hpp"

namespace subdyn {

// Multivariate gcd over any supported coefficient field, computed by the
// primitive PRS with recursive contents. Result is normalized().
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b);

// Exact division. try_exact_divide returns false when b does not divide a.
bool try_exact_divide(const Polynomial& a, const Polynomial& b, Polynomial& quot);
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

// p = unit * prod factors[i].first ^ factors[i].second with pairwise coprime
// square-free factors. Handles prime characteristic by p-th root descent.
struct SquarefreeDecomposition {
    Scalar unit;
    std::vector<std::pair<Polynomial, unsigned>> factors;
};
SquarefreeDecomposition squarefree_decomposition(const Polynomial& p);

Polynomial squarefree_part(const Polynomial& p);

// Largest k >= 1 with p = c * root^k for a k-th power c in the ground field.
std::pair<Polynomial, unsigned> perfect_power(const Polynomial& p);

// Throws MathError when p is not a k-th power (up to a k-th power constant).
Polynomial kth_root(const Polynomial& p, unsigned k);

// Exact k-th root of a rational if it exists.
bool rational_kth_root(const Rational& q, unsigned k, Rational& root);

} // namespace subdyn
