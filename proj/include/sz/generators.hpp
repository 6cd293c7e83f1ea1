#pragma once

#include "sz/qseries.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sz {

inline bool supported_level(int p) {
    return p == 1 || p == 2 || p == 3 || p == 5 || p == 7;
}

// A q-expansion tagged with its weight and level. The real_coefficients
// flag is carried explicitly because the arc restrictions are only
// real-valued for forms with real Fourier coefficients; everything this
// library constructs keeps it true.
template <typename T>
struct ModularForm {
    int weight = 0;
    int level = 1;
    Series<T> series;
    bool real_coefficients = true;
    std::string label;
};

using ExactForm = ModularForm<Rational>;
using FloatForm = ModularForm<BigFloat>;

template <typename T>
ModularForm<T> operator*(const ModularForm<T>& a, const ModularForm<T>& b) {
    if (a.level != b.level) throw std::invalid_argument("level mismatch in product");
    return {a.weight + b.weight, a.level, a.series * b.series,
            a.real_coefficients && b.real_coefficients, "(" + a.label + "*" + b.label + ")"};
}

template <typename T>
ModularForm<T> operator/(const ModularForm<T>& a, const ModularForm<T>& b) {
    if (a.level != b.level) throw std::invalid_argument("level mismatch in quotient");
    return {a.weight - b.weight, a.level, a.series * b.series.inverse(),
            a.real_coefficients && b.real_coefficients, "(" + a.label + "/" + b.label + ")"};
}

template <typename T>
ModularForm<T> operator+(const ModularForm<T>& a, const ModularForm<T>& b) {
    if (a.level != b.level) throw std::invalid_argument("level mismatch in sum");
    if (a.weight != b.weight)
        throw std::invalid_argument("weight mismatch in sum: " + std::to_string(a.weight) +
                                    " vs " + std::to_string(b.weight));
    return {a.weight, a.level, a.series + b.series, a.real_coefficients && b.real_coefficients,
            "(" + a.label + "+" + b.label + ")"};
}

template <typename T>
ModularForm<T> operator-(const ModularForm<T>& a, const ModularForm<T>& b) {
    if (a.level != b.level) throw std::invalid_argument("level mismatch in difference");
    if (a.weight != b.weight)
        throw std::invalid_argument("weight mismatch in difference: " + std::to_string(a.weight) +
                                    " vs " + std::to_string(b.weight));
    return {a.weight, a.level, a.series - b.series, a.real_coefficients && b.real_coefficients,
            "(" + a.label + "-" + b.label + ")"};
}

template <typename T>
ModularForm<T> operator*(const T& s, const ModularForm<T>& a) {
    return {a.weight, a.level, s * a.series, a.real_coefficients, a.label};
}

template <typename T>
ModularForm<T> pow(const ModularForm<T>& a, int e) {
    if (e < 0) throw std::invalid_argument("negative form power; divide instead");
    return {a.weight * e, a.level, a.series.pow(e), a.real_coefficients,
            a.label + "^" + std::to_string(e)};
}

FloatForm to_float(const ExactForm& f, unsigned precision_bits);

// Exact Bernoulli numbers B_k (even k >= 2) by the defining recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0.
Rational bernoulli(int k);

// sigma_r(n) for n = 0..n_max (index 0 unused), by sieving over divisors.
std::vector<Integer> divisor_power_sums(int r, std::int64_t n_max);

// E_k = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n; k = 2 gives the
// quasi-modular E_2.
ExactForm eisenstein(int k, std::int64_t trunc);

// Delta = (E_4^3 - E_6^2)/1728, valuation 1, leading coefficient 1.
ExactForm delta(std::int64_t trunc);

// j = E_4^3 / Delta, valuation -1, leading coefficient 1, weight 0.
ExactForm j_invariant(std::int64_t trunc);

// E_{2,p} = (p E_2(p tau) + E_2(tau)) / (p+1); p = 1 collapses to E_2.
// Coefficient at n >= 1 is (-24/(p+1)) (sigma_1(n) + p sigma_1(n/p) [p|n]).
ExactForm e2p(int level, std::int64_t trunc);

// Level-p Eisenstein-type form (E_k(tau) + p^{k/2} E_k(p tau))/(1 + p^{k/2}),
// normalized to constant term 1. Invariant of weight k under
// tau -> -1/(p tau); used as the stock of level-p test inputs.
ExactForm fricke_eisenstein(int k, int level, std::int64_t trunc);

} // namespace sz
