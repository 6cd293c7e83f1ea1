#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace sz {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Dynamic-precision MPFR float. Working precision is selected through
// PrecisionGuard; a declared precision of b bits yields an effective MPFR
// precision >= b (the digits10 <-> bits conversion rounds up), so every
// threshold stated in bits (2^(1-b), 2^(32-b), ...) is a valid bound.
using BigFloat = boost::multiprecision::mpfr_float;

unsigned digits10_for_bits(unsigned bits);

// Sets the process-wide default MPFR precision for the lifetime of the
// guard. Boost stores this as a single atomic, not per thread, so parallel
// code must run all threads at one working precision (the tools here do).
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits)
        : saved_(BigFloat::default_precision()) {
        if (bits < 2) throw std::invalid_argument("precision must be >= 2 bits");
        BigFloat::default_precision(digits10_for_bits(bits));
    }
    ~PrecisionGuard() { BigFloat::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

BigFloat pi_value();          // pi at the current working precision
BigFloat pow2(long e);        // exact 2^e
BigFloat sqrt_of(unsigned n); // sqrt(n) at the current working precision

// Minimal complex type over BigFloat. std::complex is only specified for
// the builtin floating types, hence this local one; it provides just the
// operations the evaluators need.
struct Complex {
    BigFloat re, im;

    Complex() : re(0), im(0) {}
    Complex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(long r) : re(r), im(0) {}

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        Complex r;
        r.re = a.re * b.re - a.im * b.im;
        r.im = a.re * b.im + a.im * b.re;
        return r;
    }
    friend Complex operator*(const BigFloat& s, const Complex& a) {
        return {s * a.re, s * a.im};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        BigFloat d = b.re * b.re + b.im * b.im;
        Complex r;
        r.re = (a.re * b.re + a.im * b.im) / d;
        r.im = (a.im * b.re - a.re * b.im) / d;
        return r;
    }
};

BigFloat abs(const Complex& z);
BigFloat arg(const Complex& z);
Complex unit_phase(const BigFloat& angle);       // e^{i angle}
Complex exp_2pi_i_times(const Complex& tau);     // e^{2 pi i tau}
Complex cpow(const Complex& base, long long e);  // integer powers, e may be < 0

// Decimal rendering used by all machine-readable output; digits == 0 means
// full precision of the operand. Locale-independent by construction.
std::string decimal_string(const BigFloat& x, unsigned digits = 0);

} // namespace sz
