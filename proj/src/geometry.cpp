#include "sz/geometry.hpp"

#include <json.hpp>

#include <stdexcept>

namespace sz {

namespace {

int pos_mod(long long a, int m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

} // namespace

DomainSpec DomainSpec::make(int level, unsigned precision_bits) {
    if (level != 1 && level != 2 && level != 3 && level != 5 && level != 7)
        throw std::invalid_argument("unsupported level");
    PrecisionGuard guard(precision_bits);

    DomainSpec s;
    s.level_ = level;
    s.bits_ = precision_bits;
    BigFloat pi = pi_value();
    BigFloat sp = sqrt_of(static_cast<unsigned>(level));

    if (level <= 3) {
        s.alpha_ = BigFloat(level + 7) * pi / 12;
        s.beta_ = 0;
        s.alpha_note_ = "(" + std::to_string(level + 7) + "/12) pi";
        s.arcs_ = {{1, pi / 2, s.alpha_}};
        // i/sqrt(p) and rho_p = e^{i alpha}/sqrt(p); the rho stabilizer
        // half-orders are 3, 4, 6 for p = 1, 2, 3.
        int rho_e = level == 1 ? 3 : (level == 2 ? 4 : 6);
        s.elliptic_ = {
            {{BigFloat(0), 1 / sp}, 2, level == 1 ? "i" : "i/sqrt(" + std::to_string(level) + ")"},
            {{cos(s.alpha_) / sp, sin(s.alpha_) / sp}, rho_e, "rho_" + std::to_string(level)},
        };
        return s;
    }

    // rho_{5,1} = -2/5 + i/5 and rho_{7,1} = -5/14 + i sqrt(3)/14; beta is
    // the argument of 2 sqrt(p) (rho_{p,1} + 1/2).
    Complex rho1 = level == 5 ? Complex{BigFloat(-2) / 5, BigFloat(1) / 5}
                              : Complex{BigFloat(-5) / 14, sqrt_of(3) / 14};
    s.beta_ = atan2(rho1.im, rho1.re + BigFloat(1) / 2);
    BigFloat offset = level == 5 ? BigFloat(pi / 2) : BigFloat(2 * pi / 3);
    s.alpha_ = s.beta_ + offset;
    s.beta_note_ = level == 5 ? "atan(2)" : "atan(sqrt(3)/2)";
    s.alpha_note_ = level == 5 ? "beta + pi/2" : "beta + 2 pi/3";
    s.arcs_ = {{1, pi / 2, s.alpha_}, {2, s.alpha_, s.alpha_ - s.beta_ + pi / 2}};
    int rho1_e = level == 5 ? 2 : 3;
    s.elliptic_ = {
        {{BigFloat(0), 1 / sp}, 2, "i/sqrt(" + std::to_string(level) + ")"},
        {rho1, rho1_e, "rho_" + std::to_string(level) + ",1"},
        {{BigFloat(-1) / 2, 1 / (2 * sp)}, 2, "rho_" + std::to_string(level) + ",2"},
    };
    return s;
}

const ArcWindow& DomainSpec::arc(int arc_id) const {
    for (const auto& a : arcs_)
        if (a.id == arc_id) return a;
    throw std::invalid_argument("level " + std::to_string(level_) + " has no arc " +
                                std::to_string(arc_id));
}

Complex DomainSpec::arc_point(int arc_id, const BigFloat& theta) const {
    arc(arc_id); // validates the arc id
    PrecisionGuard guard(bits_);
    // The parametrization is defined (and the restriction real-analytic) on
    // the full open interval, of which the scan window is a closed piece;
    // derivative checks step slightly past the window ends.
    BigFloat slack("1e-30");
    BigFloat lo = arc_id == 1 ? BigFloat(0) : BigFloat(alpha_ - beta_);
    BigFloat hi = arc_id == 1 ? pi_value() : BigFloat(pi_value() + alpha_ - beta_);
    if (theta < lo + slack || theta > hi - slack)
        throw std::invalid_argument("theta outside the arc parameter interval");
    BigFloat sp = sqrt_of(static_cast<unsigned>(level_));
    if (arc_id == 1) {
        Complex u = unit_phase(theta);
        return {u.re / sp, u.im / sp};
    }
    Complex u = unit_phase(theta - alpha_ + beta_);
    return {BigFloat(-1) / 2 + u.re / (2 * sp), u.im / (2 * sp)};
}

const EllipticPoint& DomainSpec::arc_endpoint_elliptic(int arc_id, bool upper) const {
    arc(arc_id); // validates
    if (arc_id == 1) return upper ? elliptic_[1] : elliptic_[0];
    return upper ? elliptic_[2] : elliptic_[1];
}

Region DomainSpec::classify(const Complex& tau, const BigFloat& tol) const {
    if (!(tau.im > 0)) throw std::invalid_argument("point not in the upper half-plane");
    PrecisionGuard guard(bits_);
    BigFloat sp = sqrt_of(static_cast<unsigned>(level_));
    BigFloat x = tau.re;
    BigFloat r = abs(tau);
    BigFloat r_min = 1 / sp;

    if (x < BigFloat(-1) / 2 - tol || x > BigFloat(1) / 2 - tol) return Region::outside;
    if (r < r_min - tol) return Region::outside;
    // strict inequalities on the open right half
    if (x > tol && r < r_min + tol) return Region::outside;

    bool on_boundary = (r < r_min + tol) || (x < BigFloat(-1) / 2 + tol);

    if (level_ == 5 || level_ == 7) {
        BigFloat r2 = abs(Complex{x + BigFloat(1) / 2, tau.im});
        BigFloat r3 = abs(Complex{x - BigFloat(1) / 2, tau.im});
        BigFloat half_r = 1 / (2 * sp);
        if (r2 < half_r - tol) return Region::outside;
        if (x > tol && r3 < half_r + tol) return Region::outside;
        if (r2 < half_r + tol) on_boundary = true;
    }
    return on_boundary ? Region::boundary : Region::interior;
}

std::optional<EllipticPoint> DomainSpec::elliptic_at(const Complex& tau,
                                                     const BigFloat& tol) const {
    for (const auto& pt : elliptic_)
        if (abs(tau - pt.tau) < tol) return pt;
    return std::nullopt;
}

int forced_elliptic_order(const EllipticPoint& pt, int weight) {
    if (weight % 2 != 0) throw std::invalid_argument("weight must be even");
    int e = pt.half_order;
    int j = pos_mod(weight / 2, e);
    if (j == 0) j = e;
    return e - j;
}

int forced_elliptic_order(const DomainSpec& spec, const Complex& tau0, int weight) {
    auto pt = spec.elliptic_at(tau0);
    if (!pt) throw std::invalid_argument("not an elliptic point of this level");
    return forced_elliptic_order(*pt, weight);
}

Rational valence_budget(int level, int weight, std::int64_t ord_inf) {
    if (level != 1 && level != 2 && level != 3 && level != 5 && level != 7)
        throw std::invalid_argument("unsupported level");
    return Rational((level + 1) * weight, 24) - Rational(ord_inf);
}

std::pair<Rational, Rational> rh_check(int level) {
    DomainSpec spec = DomainSpec::make(level, 64);
    Rational lhs(0);
    for (const auto& pt : spec.elliptic_points()) lhs += 1 - Rational(1, pt.half_order);
    Rational rhs = Rational(level + 1, 12) - 2 * spec.genus() + 1;
    return {lhs, rhs};
}

std::string domain_spec_json(const DomainSpec& spec) {
    nlohmann::json j;
    j["schema"] = "serre-zeros/1";
    j["level"] = spec.level();
    j["genus"] = spec.genus();
    j["alpha"] = decimal_string(spec.alpha(), 40);
    if (!spec.alpha_annotation().empty()) j["alpha_exact"] = spec.alpha_annotation();
    if (spec.level() == 5 || spec.level() == 7) {
        j["beta"] = decimal_string(spec.beta(), 40);
        j["beta_exact"] = spec.beta_annotation();
    }
    auto& arcs = j["arcs"] = nlohmann::json::array();
    for (const auto& a : spec.arcs()) {
        arcs.push_back({{"id", a.id},
                        {"theta_lo", decimal_string(a.theta_lo, 40)},
                        {"theta_hi", decimal_string(a.theta_hi, 40)}});
    }
    auto& ell = j["elliptic_points"] = nlohmann::json::array();
    for (const auto& pt : spec.elliptic_points()) {
        ell.push_back({{"label", pt.label},
                       {"re", decimal_string(pt.tau.re, 40)},
                       {"im", decimal_string(pt.tau.im, 40)},
                       {"half_order", pt.half_order}});
    }
    return j.dump(2);
}

} // namespace sz
