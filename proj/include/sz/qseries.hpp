#pragma once

#include "sz/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sz {

enum class DomainKind { exact_rational, big_float };

struct CoefficientDomain {
    DomainKind kind = DomainKind::exact_rational;
    unsigned precision_bits = 0; // big_float only

    static CoefficientDomain exact() { return {DomainKind::exact_rational, 0}; }
    static CoefficientDomain floating(unsigned bits) {
        if (bits < 64) throw std::invalid_argument("big-float precision must be >= 64 bits");
        return {DomainKind::big_float, bits};
    }
    std::string name() const {
        return kind == DomainKind::exact_rational ? "exact-rational" : "big-float";
    }
    friend bool operator==(const CoefficientDomain& a, const CoefficientDomain& b) {
        return a.kind == b.kind && a.precision_bits == b.precision_bits;
    }
    friend bool operator!=(const CoefficientDomain& a, const CoefficientDomain& b) {
        return !(a == b);
    }
};

template <typename T> struct coefficient_traits;
template <> struct coefficient_traits<Rational> {
    static constexpr DomainKind kind = DomainKind::exact_rational;
};
template <> struct coefficient_traits<BigFloat> {
    static constexpr DomainKind kind = DomainKind::big_float;
};

namespace detail {
// Pins the working precision to the series' declared precision while an
// operation runs, so float-domain arithmetic does not depend on whatever
// ambient default the caller left behind. No-op in the exact domain.
template <typename T> struct DomainGuard {
    explicit DomainGuard(const CoefficientDomain&) {}
};
template <> struct DomainGuard<BigFloat> {
    PrecisionGuard guard;
    explicit DomainGuard(const CoefficientDomain& d) : guard(d.precision_bits) {}
};
} // namespace detail

/*
 * Truncated Laurent series in q.
 *
 * A series stores the coefficients of q^n for n in the window
 * [valuation, valuation + truncation); everything at or beyond
 * known_until() = valuation + truncation is unknown (O(q^known_until)).
 * The leading stored coefficient is nonzero, except for the zero series,
 * which is canonically {valuation 0, empty coefficient list} and whose
 * truncation records how far the series is known to vanish.
 *
 * Every operation propagates the window pessimistically: a result is
 * never reported as known beyond what the operands support. Stripping a
 * known-zero leading coefficient therefore shortens the truncation while
 * leaving known_until() unchanged.
 */
template <typename T>
class Series {
public:
    Series() : domain_{coefficient_traits<T>::kind, default_bits()}, val_(0), trunc_(1) {}

    Series(CoefficientDomain domain, std::int64_t valuation, std::vector<T> coeffs)
        : domain_(domain), val_(valuation), trunc_(static_cast<std::int64_t>(coeffs.size())),
          coeffs_(std::move(coeffs)) {
        if (domain_.kind != coefficient_traits<T>::kind)
            throw std::invalid_argument("coefficient type does not match declared domain");
        if (coeffs_.empty()) throw std::invalid_argument("empty coefficient list; use Series::zero");
        canonicalize();
    }

    static Series zero(CoefficientDomain domain, std::int64_t known_until) {
        Series s;
        s.domain_ = domain;
        s.val_ = 0;
        s.trunc_ = std::max<std::int64_t>(known_until, 1);
        return s;
    }

    static Series constant(CoefficientDomain domain, const T& value, std::int64_t truncation) {
        if (truncation < 1) throw std::invalid_argument("truncation must be positive");
        if (value == 0) return zero(domain, truncation);
        std::vector<T> c(static_cast<std::size_t>(truncation), T(0));
        c[0] = value;
        return Series(domain, 0, std::move(c));
    }

    const CoefficientDomain& domain() const { return domain_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::int64_t valuation() const { return val_; }
    std::int64_t truncation() const { return trunc_; }
    std::int64_t known_until() const { return val_ + trunc_; }
    const std::vector<T>& coeffs() const { return coeffs_; }

    // Coefficient of q^n. Exponents below the valuation are genuinely zero;
    // exponents at or beyond known_until() are not represented.
    T coeff(std::int64_t n) const {
        if (n >= known_until())
            throw std::out_of_range("coefficient beyond the truncation window");
        if (is_zero() || n < val_) return T(0);
        return coeffs_[static_cast<std::size_t>(n - val_)];
    }

    T leading() const {
        if (is_zero()) throw std::domain_error("zero series has no leading coefficient");
        return coeffs_.front();
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.domain_ == b.domain_ && a.val_ == b.val_ && a.trunc_ == b.trunc_ &&
               a.coeffs_ == b.coeffs_;
    }

    friend Series operator+(const Series& a, const Series& b) {
        a.require_same_domain(b);
        detail::DomainGuard<T> dg(a.domain_);
        if (a.is_zero() && b.is_zero())
            return zero(a.domain_, std::min(a.known_until(), b.known_until()));
        std::int64_t lo = std::min(a.is_zero() ? b.val_ : a.val_, b.is_zero() ? a.val_ : b.val_);
        std::int64_t hi = std::min(a.known_until(), b.known_until());
        if (hi <= lo) return zero(a.domain_, hi); // disjoint: nothing reliably known
        std::vector<T> c(static_cast<std::size_t>(hi - lo), T(0));
        a.accumulate(c, lo, hi, false);
        b.accumulate(c, lo, hi, false);
        return make(a.domain_, lo, std::move(c));
    }

    friend Series operator-(const Series& a, const Series& b) {
        a.require_same_domain(b);
        detail::DomainGuard<T> dg(a.domain_);
        if (a.is_zero() && b.is_zero())
            return zero(a.domain_, std::min(a.known_until(), b.known_until()));
        std::int64_t lo = std::min(a.is_zero() ? b.val_ : a.val_, b.is_zero() ? a.val_ : b.val_);
        std::int64_t hi = std::min(a.known_until(), b.known_until());
        if (hi <= lo) return zero(a.domain_, hi);
        std::vector<T> c(static_cast<std::size_t>(hi - lo), T(0));
        a.accumulate(c, lo, hi, false);
        b.accumulate(c, lo, hi, true);
        return make(a.domain_, lo, std::move(c));
    }

    friend Series operator-(const Series& a) {
        Series r = a;
        for (auto& x : r.coeffs_) x = -x;
        return r;
    }

    // Direct O(N^2) convolution. At desk scale (N <= 4096) this is not the
    // bottleneck; swapping in a faster multiplication is a pure
    // performance-engineering extension.
    friend Series operator*(const Series& a, const Series& b) {
        a.require_same_domain(b);
        detail::DomainGuard<T> dg(a.domain_);
        std::int64_t n = std::min(a.trunc_, b.trunc_);
        if (a.is_zero() || b.is_zero()) {
            std::int64_t ku = a.val_ + b.val_ + n;
            return zero(a.domain_, ku);
        }
        std::vector<T> c(static_cast<std::size_t>(n), T(0));
        std::size_t an = std::min(a.coeffs_.size(), static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < an; ++i) {
            if (a.coeffs_[i] == 0) continue;
            std::size_t bn = std::min(b.coeffs_.size(), static_cast<std::size_t>(n) - i);
            for (std::size_t j = 0; j < bn; ++j) {
                if (b.coeffs_[j] == 0) continue;
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return make(a.domain_, a.val_ + b.val_, std::move(c));
    }

    friend Series operator*(const T& s, const Series& a) {
        if (s == 0) return zero(a.domain_, a.known_until());
        detail::DomainGuard<T> dg(a.domain_);
        Series r = a;
        for (auto& x : r.coeffs_) x = s * x;
        r.canonicalize();
        return r;
    }
    friend Series operator*(const Series& a, const T& s) { return s * a; }

    friend Series operator/(const Series& a, const T& s) {
        if (s == 0) throw std::invalid_argument("division by zero scalar");
        detail::DomainGuard<T> dg(a.domain_);
        Series r = a;
        for (auto& x : r.coeffs_) x = x / s;
        return r;
    }

    Series pow(std::int64_t e) const {
        if (e < 0)
            throw std::invalid_argument("pow with negative exponent; invert first");
        Series acc = constant(domain_, T(1), trunc_);
        if (e == 0) return acc;
        Series base = *this;
        auto n = static_cast<std::uint64_t>(e);
        while (n != 0) {
            if (n & 1ull) acc = acc * base;
            if (n >>= 1) base = base * base;
        }
        return acc;
    }

    // Multiplicative inverse through the window: for a = c0 q^v (1 + ...),
    // the result has valuation -v and the same truncation, and satisfies
    // (*this) * inverse() == 1 + O(q^truncation) after the valuation shift.
    Series inverse() const {
        if (is_zero()) throw std::invalid_argument("cannot invert the zero series");
        detail::DomainGuard<T> dg(domain_);
        std::size_t n = coeffs_.size();
        std::vector<T> b(n, T(0));
        T lead_inv = T(1) / coeffs_[0];
        b[0] = lead_inv;
        for (std::size_t m = 1; m < n; ++m) {
            T acc(0);
            for (std::size_t i = 1; i <= m; ++i) {
                if (coeffs_[i] == 0) continue;
                acc += coeffs_[i] * b[m - i];
            }
            b[m] = -lead_inv * acc;
        }
        return Series(domain_, -val_, std::move(b));
    }

    // D = q d/dq, acting as sum a_n q^n -> sum n a_n q^n.
    Series derivative_q() const {
        if (is_zero()) return *this;
        detail::DomainGuard<T> dg(domain_);
        std::vector<T> c(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            c[i] = T(static_cast<long>(val_ + static_cast<std::int64_t>(i))) * coeffs_[i];
        return make(domain_, val_, std::move(c));
    }

    // q -> q^p. Knowledge extends: a + O(q^K) becomes a(q^p) + O(q^{pK}).
    Series scaled_exponents(std::int64_t p) const {
        if (p < 1) throw std::invalid_argument("exponent scale must be >= 1");
        if (p == 1) return *this;
        if (is_zero()) return zero(domain_, known_until() * p);
        std::vector<T> c(static_cast<std::size_t>(trunc_ * p), T(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            c[i * static_cast<std::size_t>(p)] = coeffs_[i];
        return make(domain_, val_ * p, std::move(c));
    }

    Series truncated(std::int64_t new_trunc) const {
        if (new_trunc < 1) throw std::invalid_argument("truncation must be positive");
        if (new_trunc >= trunc_) return *this;
        if (is_zero()) return zero(domain_, new_trunc);
        std::vector<T> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::size_t>(new_trunc));
        return make(domain_, val_, std::move(c));
    }

private:
    CoefficientDomain domain_;
    std::int64_t val_;
    std::int64_t trunc_;
    std::vector<T> coeffs_;

    static unsigned default_bits() {
        return coefficient_traits<T>::kind == DomainKind::big_float ? 64u : 0u;
    }

    static Series make(CoefficientDomain d, std::int64_t val, std::vector<T> coeffs) {
        Series s;
        s.domain_ = d;
        s.val_ = val;
        s.trunc_ = static_cast<std::int64_t>(coeffs.size());
        s.coeffs_ = std::move(coeffs);
        s.canonicalize();
        return s;
    }

    void require_same_domain(const Series& other) const {
        if (domain_ != other.domain_)
            throw std::invalid_argument("coefficient domains differ (" + domain_.name() + " vs " +
                                        other.domain_.name() + ")");
    }

    void accumulate(std::vector<T>& out, std::int64_t lo, std::int64_t hi, bool negate) const {
        if (is_zero()) return;
        std::int64_t from = std::max(lo, val_);
        std::int64_t to = std::min(hi, known_until());
        for (std::int64_t n = from; n < to; ++n) {
            const T& x = coeffs_[static_cast<std::size_t>(n - val_)];
            if (negate)
                out[static_cast<std::size_t>(n - lo)] -= x;
            else
                out[static_cast<std::size_t>(n - lo)] += x;
        }
    }

    // Strip leading coefficients that are exactly zero (structural zeros
    // only; float-domain near-zeros are a caller-level concern). known_until
    // is preserved, so the truncation shrinks by the number of strips.
    void canonicalize() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
        if (lead == coeffs_.size()) {
            std::int64_t ku = known_until();
            coeffs_.clear();
            val_ = 0;
            trunc_ = std::max<std::int64_t>(ku, 1);
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<std::int64_t>(lead);
            trunc_ -= static_cast<std::int64_t>(lead);
        }
    }
};

using ExactSeries = Series<Rational>;
using FloatSeries = Series<BigFloat>;

// Coefficientwise rounding into the big-float domain; valuation and
// truncation are preserved. Round-to-nearest gives a relative error of at
// most 2^(1-bits) per coefficient.
FloatSeries to_float(const ExactSeries& a, unsigned precision_bits);

// True when a and b agree on every exponent both windows cover.
template <typename T>
bool agrees_on_overlap(const Series<T>& a, const Series<T>& b) {
    std::int64_t lo = std::min(a.valuation(), b.valuation());
    std::int64_t hi = std::min(a.known_until(), b.known_until());
    for (std::int64_t n = lo; n < hi; ++n)
        if (a.coeff(n) != b.coeff(n)) return false;
    return true;
}

std::string to_json_string(const ExactSeries& a);
std::string to_json_string(const FloatSeries& a);
ExactSeries exact_series_from_json(const std::string& text);
FloatSeries float_series_from_json(const std::string& text);

} // namespace sz
