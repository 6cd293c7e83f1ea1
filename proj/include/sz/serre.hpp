#pragma once

#include "sz/generators.hpp"

namespace sz {

// Memoized copies of the E_{2,p} series, keyed by (level, truncation,
// domain). Concurrent lookups are safe; racing fills compute the same
// value and the first insert wins.
ExactSeries e2p_series_cached(int level, std::int64_t trunc);
FloatSeries e2p_series_cached(int level, std::int64_t trunc, unsigned precision_bits);

namespace detail {
template <typename T>
Series<T> e2p_series_for(const CoefficientDomain& d, int level, std::int64_t trunc) {
    if constexpr (coefficient_traits<T>::kind == DomainKind::exact_rational) {
        (void)d;
        return e2p_series_cached(level, trunc);
    } else {
        return e2p_series_cached(level, trunc, d.precision_bits);
    }
}

template <typename T> T scalar_from(const Rational& r);
template <> inline Rational scalar_from<Rational>(const Rational& r) { return r; }
template <> inline BigFloat scalar_from<BigFloat>(const Rational& r) { return BigFloat(r); }
} // namespace detail

// The weight-k Serre derivative (D - ((p+1)/24) k E_{2,p}) f. The result
// has weight k+2, the same level and domain, and real coefficients
// whenever f has them.
template <typename T>
ModularForm<T> serre_derivative(const ModularForm<T>& f) {
    if (!supported_level(f.level)) throw std::invalid_argument("unsupported level");
    detail::DomainGuard<T> dg(f.series.domain());
    Series<T> e2 = detail::e2p_series_for<T>(f.series.domain(), f.level, f.series.truncation());
    T c = detail::scalar_from<T>(Rational(f.weight * (f.level + 1), 24));
    Series<T> out = f.series.derivative_q() - c * (e2 * f.series);
    return {f.weight + 2, f.level, std::move(out), f.real_coefficients,
            "serre(" + f.label + ")"};
}

// n-fold composition, advancing the weight by 2 at every step.
template <typename T>
ModularForm<T> serre_iterate(const ModularForm<T>& f, int n) {
    if (n < 1) throw std::invalid_argument("iteration count must be >= 1");
    ModularForm<T> g = serre_derivative(f);
    for (int i = 1; i < n; ++i) g = serre_derivative(g);
    return g;
}

// Order at the cusp: the valuation of the stored expansion. In the float
// domain, coefficients of magnitude at most 2^(32 - precision_bits) are
// treated as zero; that sits far above accumulated rounding and far below
// any genuine coefficient met at this scale.
std::int64_t ord_infinity(const ExactForm& f);
std::int64_t ord_infinity(const FloatForm& f);

} // namespace sz
