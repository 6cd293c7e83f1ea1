#include "sz/generators.hpp"

#include <mutex>

namespace sz {

FloatForm to_float(const ExactForm& f, unsigned precision_bits) {
    return {f.weight, f.level, to_float(f.series, precision_bits), f.real_coefficients, f.label};
}

Rational bernoulli(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("Bernoulli index must be even and >= 2");

    static std::mutex mtx;
    static std::vector<Rational> table{Rational(1), Rational(-1, 2)}; // B_0, B_1

    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(table.size()) <= k) {
        int m = static_cast<int>(table.size());
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        Rational acc(0);
        Integer binom(1); // C(m+1, 0)
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * table[static_cast<std::size_t>(j)];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        table.push_back(-acc / (m + 1));
    }
    return table[static_cast<std::size_t>(k)];
}

std::vector<Integer> divisor_power_sums(int r, std::int64_t n_max) {
    if (r < 0 || n_max < 0) throw std::invalid_argument("divisor_power_sums: bad arguments");
    std::vector<Integer> sig(static_cast<std::size_t>(n_max) + 1, Integer(0));
    for (std::int64_t d = 1; d <= n_max; ++d) {
        Integer dp = boost::multiprecision::pow(Integer(d), static_cast<unsigned>(r));
        for (std::int64_t n = d; n <= n_max; n += d) sig[static_cast<std::size_t>(n)] += dp;
    }
    return sig;
}

ExactForm eisenstein(int k, std::int64_t trunc) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("Eisenstein weight must be even and >= 2");
    if (trunc < 1) throw std::invalid_argument("truncation must be positive");
    Rational factor = Rational(-2 * k) / bernoulli(k);
    auto sig = divisor_power_sums(k - 1, trunc - 1);
    std::vector<Rational> c(static_cast<std::size_t>(trunc));
    c[0] = 1;
    for (std::int64_t n = 1; n < trunc; ++n)
        c[static_cast<std::size_t>(n)] = factor * Rational(sig[static_cast<std::size_t>(n)]);
    return {k, 1, ExactSeries(CoefficientDomain::exact(), 0, std::move(c)), true,
            "E" + std::to_string(k)};
}

ExactForm delta(std::int64_t trunc) {
    ExactForm e4 = eisenstein(4, trunc + 1);
    ExactForm e6 = eisenstein(6, trunc + 1);
    ExactSeries d = (e4.series.pow(3) - e6.series.pow(2)) / Rational(1728);
    return {12, 1, std::move(d), true, "Delta"};
}

ExactForm j_invariant(std::int64_t trunc) {
    ExactForm e4 = eisenstein(4, trunc + 2);
    ExactForm e6 = eisenstein(6, trunc + 2);
    ExactSeries d = (e4.series.pow(3) - e6.series.pow(2)) / Rational(1728);
    ExactSeries j = e4.series.pow(3) * d.inverse();
    return {0, 1, std::move(j), true, "j"};
}

ExactForm e2p(int level, std::int64_t trunc) {
    if (!supported_level(level)) throw std::invalid_argument("unsupported level");
    if (level == 1) {
        ExactForm e2 = eisenstein(2, trunc);
        e2.label = "E2p(1)";
        return e2;
    }
    auto sig = divisor_power_sums(1, trunc - 1);
    Rational factor = Rational(-24, level + 1);
    std::vector<Rational> c(static_cast<std::size_t>(trunc));
    c[0] = 1;
    for (std::int64_t n = 1; n < trunc; ++n) {
        Rational s(sig[static_cast<std::size_t>(n)]);
        if (n % level == 0) s += Rational(level) * Rational(sig[static_cast<std::size_t>(n / level)]);
        c[static_cast<std::size_t>(n)] = factor * s;
    }
    return {2, level, ExactSeries(CoefficientDomain::exact(), 0, std::move(c)), true,
            "E2p(" + std::to_string(level) + ")"};
}

ExactForm fricke_eisenstein(int k, int level, std::int64_t trunc) {
    if (level == 1) throw std::invalid_argument("level 1 has no Fricke symmetrization; use eisenstein");
    if (!supported_level(level)) throw std::invalid_argument("unsupported level");
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 4");
    ExactForm ek = eisenstein(k, trunc);
    Rational pk = Rational(boost::multiprecision::pow(Integer(level), static_cast<unsigned>(k / 2)));
    ExactSeries s = (ek.series + pk * ek.series.scaled_exponents(level)) / (Rational(1) + pk);
    return {k, level, std::move(s), true,
            "FrickeE(" + std::to_string(k) + "," + std::to_string(level) + ")"};
}

} // namespace sz
