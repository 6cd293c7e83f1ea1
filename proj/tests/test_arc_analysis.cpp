#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sz/arc_analysis.hpp"
#include "sz/serre.hpp"

using namespace sz;

namespace {

constexpr unsigned kBits = 192;

FloatForm make_float(const ExactForm& f) { return to_float(f, kBits); }

ScanConfig test_config(int grid = 1024) {
    ScanConfig cfg;
    cfg.grid_size = grid;
    return cfg;
}

BigFloat eval_j_at(const Complex& tau) {
    static FloatForm j = make_float(j_invariant(256));
    return evaluate(j, tau, BigFloat("1e-15")).value.re;
}

} // namespace

TEST_CASE("point evaluation at the classical zeros") {
    PrecisionGuard guard(kBits);
    BigFloat tol("1e-20");
    FloatForm e4 = make_float(eisenstein(4, 256));
    FloatForm e6 = make_float(eisenstein(6, 256));
    FloatForm d = make_float(delta(256));

    Complex i{BigFloat(0), BigFloat(1)};
    Complex rho{BigFloat(-1) / 2, sqrt_of(3) / 2};

    EvalResult e6_at_i = evaluate(e6, i, tol);
    CHECK(e6_at_i.usable);
    CHECK(abs(e6_at_i.value) < tol);
    CHECK(abs(evaluate(e4, rho, tol).value) < tol);

    // Delta(i) is real and positive, and 1728 Delta(i) = E4(i)^3
    EvalResult d_at_i = evaluate(d, i, tol);
    CHECK(d_at_i.value.re > 0);
    CHECK(abs(BigFloat(d_at_i.value.im)) < tol);
    Complex e4_cubed = cpow(evaluate(e4, i, tol).value, 3);
    CHECK(abs(BigFloat(1728) * d_at_i.value - e4_cubed) < tol);

    CHECK_THROWS_AS(evaluate(e4, Complex{BigFloat(0), BigFloat(-1)}, tol),
                    std::invalid_argument);
}

TEST_CASE("tail estimates flag short truncations with a usable suggestion") {
    PrecisionGuard guard(kBits);
    FloatForm stub = make_float(eisenstein(4, 8));
    Complex rho{BigFloat(-1) / 2, sqrt_of(3) / 2};
    EvalResult ev = evaluate(stub, rho, BigFloat("1e-20"));
    CHECK_FALSE(ev.usable);
    CHECK(ev.sufficient_truncation > 8);

    FloatForm enough = make_float(eisenstein(4, ev.sufficient_truncation));
    CHECK(evaluate(enough, rho, BigFloat("1e-20")).usable);

    DomainSpec spec = DomainSpec::make(1);
    CHECK_THROWS_AS(scan_zeros(stub, spec, 1, test_config(64)), std::runtime_error);
}

TEST_CASE("arc restriction values") {
    PrecisionGuard guard(kBits);
    DomainSpec spec = DomainSpec::make(1);
    BigFloat tol("1e-18");
    FloatForm e4 = make_float(eisenstein(4, 256));
    FloatForm e6 = make_float(eisenstein(6, 256));
    FloatForm j = make_float(j_invariant(256));

    ArcValue at_rho = arc_restriction(e4, spec, 1, spec.alpha(), tol);
    CHECK(abs(BigFloat(at_rho.real_part)) < tol);

    ArcValue j_at_i = arc_restriction(j, spec, 1, pi_value() / 2, tol);
    CHECK(abs(BigFloat(j_at_i.real_part - 1728)) < BigFloat("1e-15"));

    ArcValue e6_at_i = arc_restriction(e6, spec, 1, pi_value() / 2, tol);
    CHECK(abs(BigFloat(e6_at_i.real_part)) < tol);
}

TEST_CASE("realness of the restriction, with a corrupted negative control") {
    BigFloat tol("1e-10");
    DomainSpec s1 = DomainSpec::make(1);
    FloatForm e4 = make_float(eisenstein(4, 256));
    CHECK(realness_check(e4, s1, 1, 512, tol).pass);

    DomainSpec s5 = DomainSpec::make(5);
    FloatForm h = make_float(fricke_eisenstein(4, 5, 512));
    CHECK(realness_check(h, s5, 1, 512, tol).pass);
    CHECK(realness_check(h, s5, 2, 512, tol).pass);

    // perturb one coefficient: the transformation law breaks and the
    // restriction stops being real
    ExactForm bad = eisenstein(4, 256);
    {
        std::vector<Rational> c = bad.series.coeffs();
        c[1] += Rational(1, 1000);
        bad.series = ExactSeries(CoefficientDomain::exact(), 0, std::move(c));
    }
    RealnessReport rr = realness_check(make_float(bad), s1, 1, 128, tol);
    CHECK_FALSE(rr.pass);
    CHECK(rr.max_imag > BigFloat("1e-7"));
}

TEST_CASE("scans: nonvanishing, endpoint zeros, interior zeros") {
    DomainSpec spec = DomainSpec::make(1);

    ScanResult d_scan = scan_zeros(make_float(delta(256)), spec, 1, test_config());
    CHECK(d_scan.zeros.empty());

    ScanResult e4_scan = scan_zeros(make_float(eisenstein(4, 256)), spec, 1, test_config());
    REQUIRE(e4_scan.zeros.size() == 1);
    CHECK(e4_scan.zeros[0].endpoint);
    CHECK(e4_scan.zeros[0].attribution == "rho_1");
    CHECK(e4_scan.zeros[0].order == 1);

    ScanResult e12_scan = scan_zeros(make_float(eisenstein(12, 256)), spec, 1, test_config());
    REQUIRE(e12_scan.zeros.size() == 1);
    const ArcZero& z = e12_scan.zeros[0];
    CHECK_FALSE(z.endpoint);
    CHECK(z.parity == ZeroParity::odd);
    CHECK(z.bracket_width <= BigFloat("1e-12"));
    // the unique zero of E12 sits over j = 432000/691
    PrecisionGuard guard(kBits);
    BigFloat jval = eval_j_at(z.tau);
    CHECK(abs(BigFloat(jval - Rational(432000, 691))) < BigFloat("1e-8"));
}

TEST_CASE("endpoint order estimation beyond the forced one") {
    // E4^3 vanishes at rho_1 to order 3 while the congruence only forces 0
    DomainSpec spec = DomainSpec::make(1);
    ExactForm e4 = eisenstein(4, 256);
    ScanResult scan = scan_zeros(make_float(e4 * e4 * e4), spec, 1, test_config());
    REQUIRE(scan.zeros.size() == 1);
    CHECK(scan.zeros[0].endpoint);
    CHECK(scan.zeros[0].order == 3);

    // the level-2 symmetrized weight-4 form vanishes at rho_2 to the forced
    // order 2 (half-order 4 corner)
    DomainSpec s2 = DomainSpec::make(2);
    ScanResult scan2 = scan_zeros(make_float(fricke_eisenstein(4, 2, 256)), s2, 1, test_config());
    REQUIRE(scan2.zeros.size() == 1);
    CHECK(scan2.zeros[0].endpoint);
    CHECK(scan2.zeros[0].attribution == "rho_2");
    CHECK(scan2.zeros[0].order == 2);
}

TEST_CASE("valence audits close exactly") {
    DomainSpec spec = DomainSpec::make(1);
    auto audit_of = [&](const ExactForm& f, int grid = 1024) {
        FloatForm ff = make_float(f);
        auto scans = scan_all_arcs(ff, spec, test_config(grid));
        return valence_audit(ff, spec, scans);
    };

    ValenceReport e4_rep = audit_of(eisenstein(4, 256));
    CHECK(e4_rep.pass);
    CHECK(e4_rep.budget == Rational(1, 3));
    CHECK(e4_rep.forced_elliptic == Rational(1, 3));
    CHECK(e4_rep.weighted_arc_count == 0);

    ValenceReport d_rep = audit_of(delta(256));
    CHECK(d_rep.pass);
    CHECK(d_rep.budget == 0);
    CHECK(d_rep.zeros.empty());

    ValenceReport se4_rep = audit_of(serre_derivative(eisenstein(4, 256)));
    CHECK(se4_rep.pass);
    CHECK(se4_rep.budget == Rational(1, 2));
    CHECK(se4_rep.forced_elliptic == Rational(1, 2)); // simple zero at i

    ExactForm e4c = eisenstein(4, 256);
    ValenceReport cube_rep = audit_of(e4c * e4c * e4c);
    CHECK(cube_rep.pass);
    CHECK(cube_rep.budget == 1);
    CHECK(cube_rep.forced_elliptic == 1); // order 3 at the half-order-3 corner

    ValenceReport weakly_rep = audit_of(eisenstein(4, 256) / delta(260));
    CHECK(weakly_rep.pass);
    CHECK(weakly_rep.ord_inf == -1);
    CHECK(weakly_rep.budget == Rational(1, 3));
}

TEST_CASE("suspected even zeros are flagged and arbitrated by the residual") {
    DomainSpec spec = DomainSpec::make(1);
    ExactForm e12 = eisenstein(12, 256);
    FloatForm sq = make_float(e12 * e12); // double interior zero, no sign change

    ScanConfig fine_cfg = test_config(8192);
    fine_cfg.minima_rel = BigFloat("1e-6"); // a quadratic dip flattens the grid resolution
    ScanResult fine = scan_zeros(sq, spec, 1, fine_cfg);
    REQUIRE(fine.zeros.size() == 1);
    CHECK(fine.zeros[0].parity == ZeroParity::suspected_even);
    ValenceReport rep = valence_audit(sq, spec, {fine});
    CHECK(rep.pass);
    CHECK(rep.heuristic);
    CHECK(rep.weighted_arc_count == 2);

    // at the default grid the dip stays above threshold: the audit must
    // fail loudly instead of inventing a zero
    ScanResult coarse = scan_zeros(sq, spec, 1, test_config(1024));
    if (coarse.zeros.empty()) {
        ValenceReport bad = valence_audit(sq, spec, {coarse});
        CHECK_FALSE(bad.pass);
        CHECK(bad.residual == 2);
        CHECK(bad.diagnostics.find("even-order") != std::string::npos);
    }
}

TEST_CASE("derivative identity: small residual and O(h^2) convergence") {
    DomainSpec s1 = DomainSpec::make(1);
    PrecisionGuard guard(kBits);
    FloatForm e4 = make_float(eisenstein(4, 256));
    FloatForm d = make_float(delta(256));

    BigFloat r1 = derivative_identity_residual(e4, s1, 1, pi_value() / 2, BigFloat("1e-5"));
    CHECK(r1 < BigFloat("1e-8"));
    BigFloat rd = derivative_identity_residual(d, s1, 1, BigFloat("0.6") * pi_value(),
                                               BigFloat("1e-5"));
    CHECK(rd < BigFloat("1e-8"));

    DomainSpec s5 = DomainSpec::make(5);
    FloatForm h5 = make_float(fricke_eisenstein(4, 5, 512));
    const ArcWindow& w2 = s5.arc(2);
    BigFloat mid = (w2.theta_lo + w2.theta_hi) / 2;
    BigFloat r2 = derivative_identity_residual(h5, s5, 2, mid, BigFloat("1e-5"));
    CHECK(r2 < BigFloat("1e-8"));

    // halving h divides the residual by about 4
    BigFloat prev;
    bool first = true;
    for (const char* hs : {"1e-4", "5e-5", "2.5e-5"}) {
        BigFloat r = derivative_identity_residual(e4, s1, 1, BigFloat("1.9"), BigFloat(hs));
        if (!first) {
            BigFloat ratio = prev / r;
            CHECK(ratio > 3);
            CHECK(ratio < 5);
        }
        prev = r;
        first = false;
    }
}

TEST_CASE("interlacing on the weight-10 product") {
    DomainSpec spec = DomainSpec::make(1);
    ExactForm f = eisenstein(4, 256) * eisenstein(6, 256);
    ExactForm df = serre_derivative(f);
    FloatForm ff = make_float(f), dff = make_float(df);
    auto fs = scan_all_arcs(ff, spec, test_config());
    auto dfs = scan_all_arcs(dff, spec, test_config());

    // f vanishes exactly at both corners; its derivative picks up one
    // interior zero sitting over j = 691.2
    REQUIRE(fs[0].zeros.size() == 2);
    REQUIRE(dfs[0].zeros.size() == 1);
    PrecisionGuard guard(kBits);
    BigFloat jval = eval_j_at(dfs[0].zeros[0].tau);
    CHECK(abs(BigFloat(jval - Rational(3456, 5))) < BigFloat("1e-8"));

    InterlacingReport rep = interlacing_check(fs, dfs, spec);
    CHECK(rep.pass());
    REQUIRE(rep.gaps.size() == 1);
    CHECK(rep.gaps[0].zero_found);
}

TEST_CASE("doubling the grid never loses a bracketed odd zero") {
    DomainSpec spec = DomainSpec::make(1);
    FloatForm e60 = make_float(eisenstein(60, 256));
    ScanResult coarse = scan_zeros(e60, spec, 1, test_config(256));
    ScanResult fine = scan_zeros(e60, spec, 1, test_config(512));
    CHECK(coarse.zeros.size() == 5); // budget 60/12 with free corners
    for (const auto& z : coarse.zeros) {
        if (z.parity != ZeroParity::odd || z.endpoint) continue;
        bool found = false;
        for (const auto& w : fine.zeros)
            if (abs(BigFloat(w.theta - z.theta)) < BigFloat("1e-10")) found = true;
        CHECK(found);
    }
}

TEST_CASE("two-arc scan and audit at level 5") {
    DomainSpec spec = DomainSpec::make(5);
    ExactForm h = fricke_eisenstein(6, 5, 512);
    FloatForm ff = make_float(h);
    auto scans = scan_all_arcs(ff, spec, test_config());
    ValenceReport rep = valence_audit(ff, spec, scans);
    CHECK(rep.pass);
    CHECK(rep.budget == Rational(3, 2));
    // zeros at all three corners, each simple over a half-order-2 point
    CHECK(rep.forced_elliptic == Rational(3, 2));
    CHECK(rep.weighted_arc_count == 0);
}
