#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sz/geometry.hpp"

using namespace sz;

namespace {

// independent route: scan all j in [1, e] for k == 2j (mod 2e)
int forced_order_brute(int e, int k) {
    for (int j = 1; j <= e; ++j) {
        int r = (k - 2 * j) % (2 * e);
        if (r < 0) r += 2 * e;
        if (r == 0) return e - j;
    }
    return -1;
}

} // namespace

TEST_CASE("corner angles") {
    PrecisionGuard guard(256);
    BigFloat pi = pi_value();
    CHECK(abs(BigFloat(DomainSpec::make(1).alpha() - 2 * pi / 3)) < pow2(-240));
    CHECK(abs(BigFloat(DomainSpec::make(2).alpha() - 3 * pi / 4)) < pow2(-240));
    CHECK(abs(BigFloat(DomainSpec::make(3).alpha() - 5 * pi / 6)) < pow2(-240));

    DomainSpec s5 = DomainSpec::make(5), s7 = DomainSpec::make(7);
    CHECK(abs(BigFloat(s5.alpha() - s5.beta() - pi / 2)) < pow2(-240));
    CHECK(abs(BigFloat(s7.alpha() - s7.beta() - 2 * pi / 3)) < pow2(-240));
    CHECK(abs(BigFloat(s5.beta() - atan(BigFloat(2)))) < pow2(-240));
    CHECK_THROWS_AS(DomainSpec::make(4), std::invalid_argument);
}

TEST_CASE("elliptic point coordinates") {
    PrecisionGuard guard(256);
    DomainSpec s5 = DomainSpec::make(5);
    const auto& rho51 = s5.elliptic_points()[1];
    CHECK(abs(rho51.tau - Complex{BigFloat(-2) / 5, BigFloat(1) / 5}) < pow2(-240));
    CHECK(rho51.half_order == 2);

    DomainSpec s7 = DomainSpec::make(7);
    const auto& rho71 = s7.elliptic_points()[1];
    CHECK(abs(rho71.tau - Complex{BigFloat(-5) / 14, sqrt_of(3) / 14}) < pow2(-240));
    CHECK(rho71.half_order == 3);
    const auto& rho72 = s7.elliptic_points()[2];
    CHECK(abs(rho72.tau - Complex{BigFloat(-1) / 2, 1 / (2 * sqrt_of(7))}) < pow2(-240));

    // stored half-orders per level
    auto orders = [](int p) {
        std::vector<int> es;
        for (const auto& pt : DomainSpec::make(p).elliptic_points()) es.push_back(pt.half_order);
        return es;
    };
    CHECK(orders(1) == std::vector<int>{2, 3});
    CHECK(orders(2) == std::vector<int>{2, 4});
    CHECK(orders(3) == std::vector<int>{2, 6});
    CHECK(orders(5) == std::vector<int>{2, 2, 2});
    CHECK(orders(7) == std::vector<int>{2, 3, 2});

    // the rho half-orders for p <= 3 match the (5-p)/12 weighting
    for (int p : {1, 2, 3}) {
        int e = DomainSpec::make(p).elliptic_points()[1].half_order;
        CHECK(Rational(5 - p, 12) == Rational(1, e));
    }
}

TEST_CASE("arc parametrization and junction continuity") {
    PrecisionGuard guard(256);
    DomainSpec s1 = DomainSpec::make(1);
    Complex at_i = s1.arc_point(1, pi_value() / 2);
    CHECK(abs(at_i - Complex{BigFloat(0), BigFloat(1)}) < pow2(-240));

    for (int p : {5, 7}) {
        DomainSpec s = DomainSpec::make(p);
        Complex junction1 = s.arc_point(1, s.alpha());
        Complex junction2 = s.arc_point(2, s.alpha());
        CHECK(abs(junction1 - junction2) < pow2(-240));
        CHECK(abs(junction1 - s.elliptic_points()[1].tau) < pow2(-240));

        Complex top = s.arc_point(2, s.arc(2).theta_hi);
        CHECK(abs(top - s.elliptic_points()[2].tau) < pow2(-240));

        // radii along both arcs
        BigFloat sp = sqrt_of(static_cast<unsigned>(p));
        for (int i = 0; i <= 16; ++i) {
            const ArcWindow& w1 = s.arc(1);
            BigFloat th = w1.theta_lo + (w1.theta_hi - w1.theta_lo) * i / 16;
            CHECK(abs(BigFloat(abs(s.arc_point(1, th)) - 1 / sp)) < pow2(-240));
            const ArcWindow& w2 = s.arc(2);
            BigFloat th2 = w2.theta_lo + (w2.theta_hi - w2.theta_lo) * i / 16;
            Complex shifted = s.arc_point(2, th2) + Complex{BigFloat(1) / 2, BigFloat(0)};
            CHECK(abs(BigFloat(abs(shifted) - 1 / (2 * sp))) < pow2(-240));
        }
    }

    CHECK_THROWS_AS(s1.arc_point(2, BigFloat(2)), std::invalid_argument);
    CHECK_THROWS_AS(s1.arc_point(1, BigFloat(0)), std::invalid_argument);
}

TEST_CASE("fundamental domain membership") {
    DomainSpec s1 = DomainSpec::make(1);
    CHECK_FALSE(s1.contains({BigFloat(0), BigFloat("0.6")}));
    CHECK(s1.contains({BigFloat(0), BigFloat(2)}));
    CHECK(s1.classify({BigFloat(0), BigFloat(2)}) == Region::interior);
    CHECK(s1.classify({BigFloat(0), BigFloat(1)}) == Region::boundary);
    CHECK(s1.classify({BigFloat(-1) / 2, BigFloat(3)}) == Region::boundary);
    // half-open right edge
    CHECK_FALSE(s1.contains({BigFloat(1) / 2, BigFloat(3)}));
    CHECK(s1.contains({BigFloat("0.49"), BigFloat(3)}));
    CHECK_THROWS_AS(s1.contains({BigFloat(0), BigFloat(-1)}), std::invalid_argument);

    DomainSpec s5 = DomainSpec::make(5);
    CHECK(s5.classify({BigFloat(-2) / 5, BigFloat(1) / 5}) == Region::boundary);
    CHECK(s5.contains({BigFloat(-2) / 5, BigFloat(1) / 5}));
    // inside the excluded disk around -1/2
    CHECK_FALSE(s5.contains({BigFloat(-45) / 100, BigFloat("0.12")}));
    CHECK(s5.contains({BigFloat(-1) / 4, BigFloat(2)}));
}

TEST_CASE("forced elliptic orders") {
    DomainSpec s1 = DomainSpec::make(1);
    const auto& i_pt = s1.elliptic_points()[0];
    const auto& rho1 = s1.elliptic_points()[1];
    CHECK(forced_elliptic_order(rho1, 4) == 1);
    CHECK(forced_elliptic_order(i_pt, 4) == 0);
    CHECK(forced_elliptic_order(i_pt, 6) == 1);

    DomainSpec s7 = DomainSpec::make(7);
    CHECK(forced_elliptic_order(s7.elliptic_points()[1], 8) == 2);

    // brute-force congruence oracle across levels and weights, negative too
    for (int p : {1, 2, 3, 5, 7}) {
        DomainSpec s = DomainSpec::make(p);
        for (const auto& pt : s.elliptic_points())
            for (int k = -24; k <= 24; k += 2)
                CHECK(forced_elliptic_order(pt, k) == forced_order_brute(pt.half_order, k));
    }

    CHECK(forced_elliptic_order(s1, Complex{BigFloat(0), BigFloat(1)}, 4) == 0);
    CHECK_THROWS_AS(forced_elliptic_order(s1, Complex{BigFloat(0), BigFloat(2)}, 4),
                    std::invalid_argument);
}

TEST_CASE("valence budget") {
    CHECK(valence_budget(1, 12, 0) == 1);
    CHECK(valence_budget(1, 12, 1) == 0);
    CHECK(valence_budget(7, 6, 0) == 2);
    CHECK(valence_budget(1, 4, 0) == Rational(1, 3));
    CHECK(valence_budget(5, 4, 0) == 1);
    CHECK(valence_budget(1, -8, -1) == Rational(1, 3));
    CHECK_THROWS_AS(valence_budget(6, 4, 0), std::invalid_argument);
}

TEST_CASE("elliptic-point contributions match the genus-zero count") {
    for (int p : {1, 2, 3, 5, 7}) {
        auto [lhs, rhs] = rh_check(p);
        CHECK(lhs == rhs);
    }
    CHECK(rh_check(1).first == Rational(7, 6));
    CHECK(rh_check(5).first == Rational(3, 2));
    CHECK(rh_check(7).first == Rational(5, 3));
}

TEST_CASE("geometry json dump") {
    std::string j = domain_spec_json(DomainSpec::make(5));
    CHECK(j.find("serre-zeros/1") != std::string::npos);
    CHECK(j.find("beta") != std::string::npos);
    CHECK(j.find("rho_5,1") != std::string::npos);
}
