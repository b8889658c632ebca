#include "subdyn/real.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace subdyn {

namespace {
std::atomic<unsigned> g_bits{128};
}

void set_real_precision_bits(unsigned bits) {
    if (bits < 80) bits = 80;
    g_bits = bits;
    // boost's default_precision is in decimal digits
    Real::default_precision(static_cast<unsigned>(bits * 0.30103) + 2);
}

unsigned real_precision_bits() { return g_bits.load(); }

namespace {
struct PrecisionInit {
    PrecisionInit() { set_real_precision_bits(128); }
} g_precision_init;
} // namespace

Real real_of(const BigInt& z) { return Real(z.get_str()); }

Real real_of(const Rational& q) {
    return real_of(BigInt(q.get_num())) / real_of(BigInt(q.get_den()));
}

Real ln_big(const BigInt& z) { return log(real_of(z)); }

Real ln_factorial(unsigned long n) {
    if (n <= 10000) {
        if (n <= 1) return Real(0);
        return ln_big(big_factorial(n));
    }
    return Real(lgamma(Real(n) + 1));
}

std::string format_real(const Real& x) { return x.str(15); }

BigInt floor_snapped(const Real& x) {
    Real r = round(x);
    Real eps = Real(1);
    eps = ldexp(eps, -40);
    Real fl = (abs(x - r) < eps) ? r : floor(x);
    std::string s = fl.str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s = s.substr(0, dot);
    if (s.empty() || s == "-") s = "0";
    return BigInt(s);
}

} // namespace subdyn
