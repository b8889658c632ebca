#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace subdyn {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt big_binomial(unsigned long n, unsigned long k) {
    BigInt r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt big_factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline bool is_prime(const BigInt& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// tau(v) = C(N+v, N): number of degree-v monomials in N+1 variables.
inline BigInt tau_count(unsigned long N, unsigned long v) {
    return big_binomial(N + v, N);
}

} // namespace subdyn
