#pragma once

#include "sz/numeric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sz {

// An elliptic point of the level-p group inside the standard fundamental
// domain, with half the order of its stabilizer.
struct EllipticPoint {
    Complex tau;
    int half_order = 2;
    std::string label;
};

enum class Region { outside, boundary, interior };

// Scanning window of one lower-boundary arc, in the angle parameter.
struct ArcWindow {
    int id = 1;
    BigFloat theta_lo, theta_hi;
};

/*
 * Per-level geometry of the standard fundamental domain: the corner
 * angles, the lower-boundary arc parametrizations, and the elliptic
 * points. Levels 1, 2, 3 have a single lower arc |tau| = 1/sqrt(p) with
 * corner angle alpha = (p+7) pi / 12; levels 5 and 7 add a second arc
 * |tau + 1/2| = 1/(2 sqrt(p)) meeting the first at an elliptic corner.
 *
 * The corner angles for levels 5 and 7 are not rational multiples of pi;
 * beta is derived from the exact corner coordinates (beta_5 = atan 2,
 * beta_7 = atan(sqrt(3)/2)) and alpha from the exact offsets
 * alpha_5 - beta_5 = pi/2, alpha_7 - beta_7 = 2 pi/3, which keeps the
 * junction of the two parametrizations consistent to working precision.
 */
class DomainSpec {
public:
    static DomainSpec make(int level, unsigned precision_bits = 256);

    int level() const { return level_; }
    int genus() const { return 0; }
    unsigned precision_bits() const { return bits_; }
    const BigFloat& alpha() const { return alpha_; }
    const BigFloat& beta() const { return beta_; } // levels 5, 7 only
    const std::vector<ArcWindow>& arcs() const { return arcs_; }
    const std::vector<EllipticPoint>& elliptic_points() const { return elliptic_; }
    const std::string& alpha_annotation() const { return alpha_note_; }
    const std::string& beta_annotation() const { return beta_note_; }

    // Point on arc 1 (e^{i theta}/sqrt(p)) or arc 2
    // (-1/2 + e^{i(theta - alpha + beta)}/(2 sqrt(p))); theta must lie in
    // the arc's parameter window.
    Complex arc_point(int arc_id, const BigFloat& theta) const;

    const ArcWindow& arc(int arc_id) const;

    // Elliptic point sitting at an arc-window endpoint (lower = theta_lo).
    const EllipticPoint& arc_endpoint_elliptic(int arc_id, bool upper) const;

    // Membership in the standard fundamental domain, with the half-open
    // right edge excluded. Points within `tol` of an included boundary
    // piece classify as boundary; requires Im tau > 0.
    Region classify(const Complex& tau, const BigFloat& tol = BigFloat("1e-30")) const;
    bool contains(const Complex& tau, const BigFloat& tol = BigFloat("1e-30")) const {
        return classify(tau, tol) != Region::outside;
    }

    std::optional<EllipticPoint> elliptic_at(const Complex& tau,
                                             const BigFloat& tol = BigFloat("1e-20")) const;

private:
    int level_ = 1;
    unsigned bits_ = 256;
    BigFloat alpha_, beta_;
    std::vector<ArcWindow> arcs_;
    std::vector<EllipticPoint> elliptic_;
    std::string alpha_note_, beta_note_;
};

// Minimum possible vanishing order at an elliptic point of half-order e
// for a nonzero form of even weight k: e - j where j in [1, e] satisfies
// k == 2j (mod 2e).
int forced_elliptic_order(const EllipticPoint& pt, int weight);
int forced_elliptic_order(const DomainSpec& spec, const Complex& tau0, int weight);

// (p+1) k / 24 - ord_infinity: the weighted zero count available inside
// the fundamental domain. May be negative, in which case no nonzero form
// with these invariants exists.
Rational valence_budget(int level, int weight, std::int64_t ord_inf);

// Both sides of sum_elliptic (1 - 1/e) = (p+1)/12 - 2 g + 1, computed
// independently from the stored data.
std::pair<Rational, Rational> rh_check(int level);

std::string domain_spec_json(const DomainSpec& spec);

} // namespace sz
