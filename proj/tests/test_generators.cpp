#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sz/arc_analysis.hpp"
#include "sz/generators.hpp"

#include <random>

using namespace sz;

TEST_CASE("bernoulli numbers against the Akiyama-Tanigawa oracle") {
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(6) == Rational(1, 42));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    for (int k = 2; k <= 60; k += 2) CHECK(bernoulli(k) == oracles::bernoulli_at(k));
    CHECK_THROWS_AS(bernoulli(3), std::invalid_argument);
    CHECK_THROWS_AS(bernoulli(0), std::invalid_argument);
}

TEST_CASE("divisor power sums against trial division") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> pick(1, 199);
    for (int r : {1, 3, 5, 9}) {
        auto sig = divisor_power_sums(r, 200);
        for (int t = 0; t < 12; ++t) {
            long n = pick(rng);
            CHECK(sig[static_cast<std::size_t>(n)] == oracles::sigma_brute(r, n));
        }
    }
}

TEST_CASE("Eisenstein expansions") {
    ExactForm e2 = eisenstein(2, 8);
    CHECK(e2.series.coeff(0) == 1);
    CHECK(e2.series.coeff(1) == -24);
    CHECK(e2.series.coeff(2) == -72);
    CHECK(e2.series.coeff(3) == -96);
    CHECK(e2.weight == 2);

    CHECK(eisenstein(4, 4).series.coeff(1) == 240);
    CHECK(eisenstein(6, 4).series.coeff(1) == -504);

    // a_{E_k}(n) / sigma_{k-1}(n) is the constant -2k/B_k
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> pick(1, 127);
    for (int k : {4, 10, 16}) {
        ExactForm ek = eisenstein(k, 128);
        Rational expected = Rational(-2 * k) / bernoulli(k);
        for (int t = 0; t < 8; ++t) {
            long n = pick(rng);
            CHECK(ek.series.coeff(n) == expected * Rational(oracles::sigma_brute(k - 1, n)));
        }
    }
    CHECK_THROWS_AS(eisenstein(5, 8), std::invalid_argument);
}

TEST_CASE("Delta against the eta-product oracle, j expansion") {
    std::int64_t n = 48;
    ExactForm d = delta(n);
    CHECK(d.series.valuation() == 1);
    CHECK(d.series.coeff(1) == 1);
    CHECK(d.series.coeff(2) == -24);
    CHECK(d.series.coeff(3) == 252);
    CHECK(d.series.coeff(4) == -1472);
    auto eta = oracles::eta24(static_cast<std::size_t>(n));
    for (std::int64_t m = 1; m < n; ++m) CHECK(d.series.coeff(m) == eta[static_cast<std::size_t>(m)]);

    ExactForm j = j_invariant(n);
    CHECK(j.weight == 0);
    CHECK(j.series.valuation() == -1);
    CHECK(j.series.coeff(-1) == 1);
    CHECK(j.series.coeff(0) == 744);
    CHECK(j.series.coeff(1) == 196884);

    // structural identities by construction
    ExactForm e4 = eisenstein(4, n), e6 = eisenstein(6, n);
    CHECK(agrees_on_overlap(e4.series.pow(3) - e6.series.pow(2),
                            Rational(1728) * d.series));
    CHECK(agrees_on_overlap(j.series * d.series, e4.series.pow(3)));
}

TEST_CASE("E_{2,p}: coefficient formula against the substitution oracle") {
    std::int64_t n = 40;
    ExactForm e2 = eisenstein(2, n);
    CHECK(e2p(1, n).series == e2.series);

    ExactForm h2 = e2p(2, n);
    CHECK(h2.series.coeff(0) == 1);
    CHECK(h2.series.coeff(1) == -8);
    CHECK(h2.series.coeff(2) == -40);
    ExactForm h3 = e2p(3, n);
    CHECK(h3.series.coeff(1) == -6);
    CHECK(h3.series.coeff(2) == -18);
    CHECK(h3.series.coeff(3) == -42);

    for (int p : {2, 3, 5, 7}) {
        // (p E_2(p tau) + E_2(tau)) / (p+1), built by exponent scaling
        ExactSeries sub = (Rational(p) * e2.series.scaled_exponents(p) + e2.series) /
                          Rational(p + 1);
        ExactForm direct = e2p(p, n);
        CHECK(agrees_on_overlap(direct.series, sub));
        CHECK(direct.series.coeff(1) == Rational(-24, p + 1));
        CHECK(direct.real_coefficients);
    }
    CHECK_THROWS_AS(e2p(4, n), std::invalid_argument);
}

TEST_CASE("level-p Eisenstein symmetrization") {
    ExactForm h = fricke_eisenstein(4, 2, 24);
    CHECK(h.series.coeff(0) == 1);
    CHECK(h.series.coeff(1) == 48); // 240/5
    CHECK(h.series.valuation() == 0);
    CHECK(fricke_eisenstein(6, 3, 12).series.coeff(0) == 1);
    CHECK_THROWS_AS(fricke_eisenstein(4, 1, 12), std::invalid_argument);
    CHECK_THROWS_AS(fricke_eisenstein(3, 2, 12), std::invalid_argument);
}

TEST_CASE("transformation law under tau -> -1/(p tau), numerically") {
    // |h(-1/(p tau)) - (sqrt(p) tau)^k h(tau)| at tau = (1+3i)/4
    unsigned bits = 192;
    PrecisionGuard guard(bits);
    BigFloat tol("1e-20");
    for (int p : {2, 3, 5, 7}) {
        for (int k : {4, 6}) {
            FloatForm h = to_float(fricke_eisenstein(k, p, 1024), bits);
            Complex tau{BigFloat(1) / 4, BigFloat(3) / 4};
            Complex fricke_tau = Complex(-1) / (BigFloat(p) * tau);
            Complex lhs = evaluate(h, fricke_tau, tol).value;
            Complex factor = cpow(Complex{sqrt_of(static_cast<unsigned>(p)) * tau.re,
                                          sqrt_of(static_cast<unsigned>(p)) * tau.im},
                                  k);
            Complex rhs = factor * evaluate(h, tau, tol).value;
            CHECK(abs(lhs - rhs) < tol);
        }
    }
}

TEST_CASE("generator outputs carry real coefficients and level tags") {
    CHECK(eisenstein(8, 8).real_coefficients);
    CHECK(delta(8).real_coefficients);
    CHECK(j_invariant(8).real_coefficients);
    CHECK(fricke_eisenstein(8, 5, 8).level == 5);
    CHECK(delta(8).weight == 12);
    CHECK(e2p(7, 8).weight == 2);
}
