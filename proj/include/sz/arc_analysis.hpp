#pragma once

#include "sz/generators.hpp"
#include "sz/geometry.hpp"
#include "sz/serre.hpp"

#include <string>
#include <vector>

namespace sz {

struct EvalResult {
    Complex value;
    BigFloat tail_estimate;
    Complex tau;
    bool usable = true;
    std::int64_t sufficient_truncation = 0; // populated when !usable
};

// Horner summation of the truncated expansion at q = e^{2 pi i tau}.
// The tail bound is 8 * max over the last 32 retained terms of |a_n q^n|
// times |q|/(1-|q|); results whose bound exceeds tol are flagged unusable
// together with a truncation that would suffice.
EvalResult evaluate(const FloatForm& f, const Complex& tau, const BigFloat& tol);

struct ArcValue {
    BigFloat real_part, imag_part;
    BigFloat tail_estimate;
    Complex tau;
    bool usable = true;
};

// F(theta) = e^{ik theta/2} f(e^{i theta}/sqrt p) on arc 1, and
// e^{ik(theta-alpha+beta)/2} f(-1/2 + e^{i(theta-alpha+beta)}/(2 sqrt p))
// on arc 2. Real-valued for real-coefficient forms; the imaginary part is
// exposed so that the realness check can measure it.
ArcValue arc_restriction(const FloatForm& f, const DomainSpec& spec, int arc_id,
                         const BigFloat& theta, const BigFloat& tol);

struct RealnessReport {
    BigFloat max_imag;
    BigFloat max_tail;
    bool pass = false;
};

RealnessReport realness_check(const FloatForm& f, const DomainSpec& spec, int arc_id,
                              int grid_size, const BigFloat& tol);

enum class ZeroParity { odd, suspected_even };

struct ArcZero {
    int arc_id = 1;
    BigFloat theta;
    Complex tau;
    BigFloat bracket_width;   // 0 for endpoint zeros
    ZeroParity parity = ZeroParity::odd;
    bool endpoint = false;
    int order = 1;            // for endpoint zeros, the admissible order estimate
    std::string attribution;  // elliptic-point label for endpoint zeros
};

struct ScanConfig {
    int grid_size = 2048;
    BigFloat refine_tol = BigFloat("1e-12");
    BigFloat minima_rel = BigFloat("1e-8"); // dip threshold relative to the grid max
    BigFloat eval_tol = BigFloat("1e-20");  // per-evaluation tail budget
};

struct ScanResult {
    int arc_id = 1;
    std::vector<ArcZero> zeros; // ordered by theta
    BigFloat grid_max_abs;
    int grid_size = 0;
};

/*
 * Sign-change zero scan over the arc's parameter window. Interior sign
 * changes are bisected to refine_tol and reported as odd zeros; interior
 * dips of |F| below minima_rel * max|F| without a sign change are reported
 * as suspected even-order zeros; window endpoints are evaluated separately
 * and attributed to their elliptic points, with the vanishing order
 * estimated from |F| at two inward offsets and snapped to the nearest
 * order admissible at that point (forced order plus multiples of e).
 */
ScanResult scan_zeros(const FloatForm& f, const DomainSpec& spec, int arc_id,
                      const ScanConfig& cfg);

std::vector<ScanResult> scan_all_arcs(const FloatForm& f, const DomainSpec& spec,
                                      const ScanConfig& cfg);

// |central difference of F - [(ik/2) F - (c pi/sqrt p) F_{k+2}(Df)]| at
// theta, where c = 2 on arc 1 and c = 1 on arc 2 (the second arc has half
// the radius). Expected O(h^2) plus truncation tails.
BigFloat derivative_identity_residual(const FloatForm& f, const DomainSpec& spec, int arc_id,
                                      const BigFloat& theta, const BigFloat& h);

struct InterlacingGap {
    int arc_id = 1;
    BigFloat lo, hi;
    bool cross_corner = false;
    bool zero_found = false;
    BigFloat zero_theta;
};

struct InterlacingReport {
    std::vector<InterlacingGap> gaps;
    int violations = 0; // same-arc gaps with no derivative zero inside
    bool pass() const { return violations == 0; }
};

// Between consecutive zeros of F(f) on one arc there must be a zero of
// F(serre_derivative(f)); gaps straddling the two-arc corner are reported
// but never counted as violations, since the extra zero may fall on either
// side of the corner.
InterlacingReport interlacing_check(const std::vector<ScanResult>& f_scans,
                                    const std::vector<ScanResult>& df_scans,
                                    const DomainSpec& spec);

struct ValenceReport {
    int level = 1;
    int weight = 0;
    std::int64_t ord_inf = 0;
    Rational budget;
    Rational weighted_arc_count; // interior zeros (1 per odd, 2 per suspected even)
    Rational forced_elliptic;    // endpoint contributions ord/e
    Rational residual;           // budget - weighted_arc_count - forced_elliptic
    bool heuristic = false;      // suspected even zeros entered the count
    bool pass = false;           // residual == 0
    std::vector<ArcZero> zeros;
    std::string diagnostics;
};

ValenceReport valence_audit(const FloatForm& f, const DomainSpec& spec,
                            const std::vector<ScanResult>& scans);

std::string valence_report_json(const ValenceReport& report, const std::string& form_label);
std::string zeros_csv(const std::vector<ScanResult>& scans);

} // namespace sz
