#include "sz/numeric.hpp"

#include <cmath>

namespace sz {

unsigned digits10_for_bits(unsigned bits) {
    // ceil(bits * log10(2)) plus a guard digit; boost rounds the reverse
    // conversion up, so the resulting mpfr precision is >= bits.
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

BigFloat pi_value() {
    BigFloat p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

BigFloat pow2(long e) {
    return ldexp(BigFloat(1), e);
}

BigFloat sqrt_of(unsigned n) {
    return sqrt(BigFloat(n));
}

BigFloat abs(const Complex& z) {
    return hypot(z.re, z.im);
}

BigFloat arg(const Complex& z) {
    return atan2(z.im, z.re);
}

Complex unit_phase(const BigFloat& angle) {
    return {cos(angle), sin(angle)};
}

Complex exp_2pi_i_times(const Complex& tau) {
    BigFloat two_pi = 2 * pi_value();
    BigFloat radius = exp(-two_pi * tau.im);
    BigFloat angle = two_pi * tau.re;
    return {radius * cos(angle), radius * sin(angle)};
}

Complex cpow(const Complex& base, long long e) {
    if (e < 0) return Complex(1) / cpow(base, -e);
    Complex acc(1);
    Complex b = base;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n != 0) {
        if (n & 1ull) acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    return acc;
}

std::string decimal_string(const BigFloat& x, unsigned digits) {
    return x.str(digits, std::ios_base::scientific);
}


} // namespace sz
