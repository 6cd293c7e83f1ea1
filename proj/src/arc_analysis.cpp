#include "sz/arc_analysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace sz {

namespace {

int sign_of(const BigFloat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

BigFloat abs_bf(const BigFloat& x) { return x < 0 ? BigFloat(-x) : x; }

struct Sample {
    BigFloat theta;
    ArcValue value;
};

// Nearest admissible vanishing order at an elliptic point: the forced
// order plus a multiple of the half-order (orders at an elliptic point are
// congruent to the forced one mod e). A numerically vanishing F has order
// at least 1, so the candidate 0 is skipped.
int snap_order(double estimate, int forced, int half_order) {
    int best = forced > 0 ? forced : half_order;
    double best_err = 1e300;
    for (int s = 0; s < 12; ++s) {
        int cand = forced + s * half_order;
        if (cand == 0) continue;
        double err = std::abs(estimate - cand);
        if (err < best_err) {
            best_err = err;
            best = cand;
        }
    }
    return best;
}

} // namespace

EvalResult evaluate(const FloatForm& f, const Complex& tau, const BigFloat& tol) {
    if (!(tau.im > 0)) throw std::invalid_argument("evaluation point must satisfy Im tau > 0");
    PrecisionGuard guard(f.series.domain().precision_bits);
    EvalResult r;
    r.tau = tau;
    if (f.series.is_zero()) {
        r.value = Complex(0);
        r.tail_estimate = 0;
        return r;
    }
    Complex q = exp_2pi_i_times(tau);
    const auto& c = f.series.coeffs();
    Complex acc(0);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * q;
        acc.re += c[i]; // coefficients are real
    }
    acc = acc * cpow(q, f.series.valuation());
    r.value = acc;

    BigFloat aq = abs(q);
    std::size_t m = std::min<std::size_t>(c.size(), 32);
    std::int64_t first_exp = f.series.known_until() - static_cast<std::int64_t>(m);
    BigFloat qn = pow(aq, static_cast<int>(first_exp));
    BigFloat max_term = 0;
    for (std::size_t i = c.size() - m; i < c.size(); ++i) {
        BigFloat t = abs_bf(c[i]) * qn;
        if (t > max_term) max_term = t;
        qn *= aq;
    }
    r.tail_estimate = 8 * max_term * aq / (1 - aq);
    if (r.tail_estimate > tol) {
        r.usable = false;
        // geometric decay: need roughly log(tol/tail)/log|q| more terms
        double extra = BigFloat(log(tol / r.tail_estimate) / log(aq)).convert_to<double>();
        r.sufficient_truncation =
            f.series.truncation() + static_cast<std::int64_t>(extra) + 32;
    }
    return r;
}

ArcValue arc_restriction(const FloatForm& f, const DomainSpec& spec, int arc_id,
                         const BigFloat& theta, const BigFloat& tol) {
    if (!f.real_coefficients)
        throw std::invalid_argument("arc restriction requires real Fourier coefficients");
    if (f.level != spec.level()) throw std::invalid_argument("form level does not match geometry");
    PrecisionGuard guard(f.series.domain().precision_bits);
    Complex tau = spec.arc_point(arc_id, theta);
    EvalResult ev = evaluate(f, tau, tol);
    BigFloat angle = arc_id == 1 ? BigFloat(theta * f.weight / 2)
                                 : BigFloat((theta - spec.alpha() + spec.beta()) * f.weight / 2);
    Complex F = unit_phase(angle) * ev.value;
    return {F.re, F.im, ev.tail_estimate, tau, ev.usable};
}

RealnessReport realness_check(const FloatForm& f, const DomainSpec& spec, int arc_id,
                              int grid_size, const BigFloat& tol) {
    if (grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
    PrecisionGuard guard(f.series.domain().precision_bits);
    const ArcWindow& w = spec.arc(arc_id);
    RealnessReport rep;
    rep.max_imag = 0;
    rep.max_tail = 0;
    for (int i = 0; i < grid_size; ++i) {
        BigFloat theta = w.theta_lo + (w.theta_hi - w.theta_lo) * i / (grid_size - 1);
        ArcValue v = arc_restriction(f, spec, arc_id, theta, tol);
        BigFloat ai = abs_bf(v.imag_part);
        if (ai > rep.max_imag) rep.max_imag = ai;
        if (v.tail_estimate > rep.max_tail) rep.max_tail = v.tail_estimate;
    }
    rep.pass = rep.max_imag <= tol + rep.max_tail;
    return rep;
}

ScanResult scan_zeros(const FloatForm& f, const DomainSpec& spec, int arc_id,
                      const ScanConfig& cfg) {
    if (cfg.grid_size < 16) throw std::invalid_argument("grid size must be >= 16");
    if (f.series.is_zero()) throw std::invalid_argument("cannot scan an identically zero form");
    PrecisionGuard guard(f.series.domain().precision_bits);
    const ArcWindow& w = spec.arc(arc_id);

    auto F = [&](const BigFloat& theta) -> ArcValue {
        ArcValue v = arc_restriction(f, spec, arc_id, theta, cfg.eval_tol);
        if (!v.usable) {
            EvalResult ev = evaluate(f, v.tau, cfg.eval_tol);
            throw std::runtime_error(
                "tail estimate " + decimal_string(v.tail_estimate, 3) +
                " exceeds the evaluation budget; rebuild the form with truncation >= " +
                std::to_string(ev.sufficient_truncation));
        }
        return v;
    };

    const int G = cfg.grid_size;
    BigFloat span = w.theta_hi - w.theta_lo;
    BigFloat step = span / (G + 1);

    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(G) + 2);
    samples.push_back({w.theta_lo, F(w.theta_lo)});
    for (int i = 1; i <= G; ++i) {
        BigFloat th = w.theta_lo + span * i / (G + 1);
        samples.push_back({th, F(th)});
    }
    samples.push_back({w.theta_hi, F(w.theta_hi)});

    BigFloat grid_max = 0;
    for (const auto& s : samples) {
        BigFloat a = abs_bf(s.value.real_part);
        if (a > grid_max) grid_max = a;
    }
    BigFloat zero_thresh = cfg.minima_rel * grid_max;

    ScanResult out;
    out.arc_id = arc_id;
    out.grid_size = G;
    out.grid_max_abs = grid_max;

    // Endpoints: decide vanishing, estimate the order from two inward
    // offsets (|F| ~ C t^r), and attribute to the elliptic corner.
    BigFloat probe = step / 4 < BigFloat("1e-5") ? BigFloat(step / 4) : BigFloat("1e-5");
    auto handle_endpoint = [&](bool upper) -> std::optional<Sample> {
        const Sample& s = upper ? samples.back() : samples.front();
        if (abs_bf(s.value.real_part) > zero_thresh) return std::nullopt;
        const EllipticPoint& pt = spec.arc_endpoint_elliptic(arc_id, upper);
        BigFloat dir = upper ? BigFloat(-probe) : probe;
        Sample s1{s.theta + dir, F(s.theta + dir)};
        Sample s2{s.theta + 2 * dir, F(s.theta + 2 * dir)};
        BigFloat a1 = abs_bf(s1.value.real_part);
        BigFloat a2 = abs_bf(s2.value.real_part);
        double est = 12.0;
        if (a1 > 0 && a2 > 0)
            est = BigFloat(log(a2 / a1) / log(BigFloat(2))).convert_to<double>();
        if (est < 0.5) return std::nullopt; // small value but no graded decay: not a zero
        int forced = forced_elliptic_order(pt, f.weight);
        int order = snap_order(est, forced, pt.half_order);
        ArcZero z;
        z.arc_id = arc_id;
        z.theta = s.theta;
        z.tau = pt.tau;
        z.bracket_width = 0;
        z.parity = order % 2 != 0 ? ZeroParity::odd : ZeroParity::suspected_even;
        z.endpoint = true;
        z.order = order;
        z.attribution = pt.label;
        out.zeros.push_back(std::move(z));
        return s1; // bracket the first interior segment from just inside
    };

    auto lo_inset = handle_endpoint(false);
    auto hi_inset = handle_endpoint(true);
    if (lo_inset) samples.front() = *lo_inset;
    if (hi_inset) samples.back() = *hi_inset;

    // Sign changes: bisect each bracket down to the requested width.
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        int sa = sign_of(samples[i].value.real_part);
        int sb = sign_of(samples[i + 1].value.real_part);
        if (sa == 0 || sb == 0 || sa == sb) continue;
        BigFloat a = samples[i].theta, b = samples[i + 1].theta;
        while (b - a > cfg.refine_tol) {
            BigFloat m = (a + b) / 2;
            int sm = sign_of(F(m).real_part);
            if (sm == 0) {
                a = m;
                b = m;
                break;
            }
            (sm == sa ? a : b) = m;
        }
        ArcZero z;
        z.arc_id = arc_id;
        z.theta = (a + b) / 2;
        z.tau = spec.arc_point(arc_id, z.theta);
        z.bracket_width = b - a;
        z.parity = ZeroParity::odd;
        out.zeros.push_back(std::move(z));
    }

    // Dips of |F| below the threshold without a sign change: candidate
    // even-order zeros. These are reported, never silently certified.
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        BigFloat a = abs_bf(samples[i].value.real_part);
        if (a > zero_thresh) continue;
        if (a > abs_bf(samples[i - 1].value.real_part) ||
            a > abs_bf(samples[i + 1].value.real_part))
            continue;
        int s0 = sign_of(samples[i - 1].value.real_part);
        int s1 = sign_of(samples[i].value.real_part);
        int s2 = sign_of(samples[i + 1].value.real_part);
        if (s0 != s1 || s1 != s2) continue; // adjacent sign change: odd zero territory
        bool near_known = false;
        for (const auto& z : out.zeros)
            if (abs_bf(z.theta - samples[i].theta) < 2 * step) near_known = true;
        if (near_known) continue;
        ArcZero z;
        z.arc_id = arc_id;
        z.theta = samples[i].theta;
        z.tau = spec.arc_point(arc_id, z.theta);
        z.bracket_width = step; // grid resolution, not a sign-change bracket
        z.parity = ZeroParity::suspected_even;
        z.order = 2;
        out.zeros.push_back(std::move(z));
    }

    std::sort(out.zeros.begin(), out.zeros.end(),
              [](const ArcZero& x, const ArcZero& y) { return x.theta < y.theta; });
    return out;
}

std::vector<ScanResult> scan_all_arcs(const FloatForm& f, const DomainSpec& spec,
                                      const ScanConfig& cfg) {
    std::vector<ScanResult> out;
    for (const auto& a : spec.arcs()) out.push_back(scan_zeros(f, spec, a.id, cfg));
    return out;
}

BigFloat derivative_identity_residual(const FloatForm& f, const DomainSpec& spec, int arc_id,
                                      const BigFloat& theta, const BigFloat& h) {
    PrecisionGuard guard(f.series.domain().precision_bits);
    BigFloat loose("1e60"); // tails are reported through the residual itself
    auto Fc = [&](const FloatForm& g, const BigFloat& th) -> Complex {
        ArcValue v = arc_restriction(g, spec, arc_id, th, loose);
        return {v.real_part, v.imag_part};
    };
    Complex Fp = Fc(f, theta + h);
    Complex Fm = Fc(f, theta - h);
    Complex F0 = Fc(f, theta);
    FloatForm df{f.weight + 2, f.level, f.series.derivative_q(), f.real_coefficients, ""};
    Complex FD = Fc(df, theta);

    BigFloat c = pi_value() / sqrt_of(static_cast<unsigned>(f.level));
    if (arc_id == 1) c = 2 * c; // arc 2 has half the radius
    Complex rhs = Complex{BigFloat(0), BigFloat(f.weight) / 2} * F0 - c * FD;
    Complex lhs = (BigFloat(1) / (2 * h)) * (Fp - Fm);
    return abs(lhs - rhs);
}

InterlacingReport interlacing_check(const std::vector<ScanResult>& f_scans,
                                    const std::vector<ScanResult>& df_scans,
                                    const DomainSpec& spec) {
    InterlacingReport rep;
    BigFloat margin("1e-11");

    auto df_zero_in = [&](int arc_id, const BigFloat& lo, const BigFloat& hi,
                          bool include_endpoints) -> std::optional<BigFloat> {
        for (const auto& scan : df_scans) {
            if (scan.arc_id != arc_id) continue;
            for (const auto& z : scan.zeros) {
                if (z.endpoint && !include_endpoints) continue;
                if (z.theta > lo && z.theta < hi) return z.theta;
            }
        }
        return std::nullopt;
    };

    for (const auto& scan : f_scans) {
        for (std::size_t j = 0; j + 1 < scan.zeros.size(); ++j) {
            InterlacingGap gap;
            gap.arc_id = scan.arc_id;
            gap.lo = scan.zeros[j].theta;
            gap.hi = scan.zeros[j + 1].theta;
            auto c = df_zero_in(scan.arc_id, gap.lo + margin, gap.hi - margin, false);
            gap.zero_found = c.has_value();
            if (c) gap.zero_theta = *c;
            if (!gap.zero_found) ++rep.violations;
            rep.gaps.push_back(std::move(gap));
        }
    }

    // Corner gap between the last arc-1 zero and the first arc-2 zero:
    // the derivative zero may fall on either side of the corner, so this
    // is reported but never counted as a violation.
    if (spec.arcs().size() == 2 && f_scans.size() == 2) {
        const auto& z1 = f_scans[0].zeros;
        const auto& z2 = f_scans[1].zeros;
        if (!z1.empty() && !z2.empty() && !z1.back().endpoint) {
            InterlacingGap gap;
            gap.cross_corner = true;
            gap.arc_id = 0;
            gap.lo = z1.back().theta;
            gap.hi = z2.front().theta;
            auto c1 = df_zero_in(1, gap.lo + margin, gap.hi - margin, true);
            auto c2 = df_zero_in(2, gap.lo + margin, gap.hi - margin, true);
            gap.zero_found = c1.has_value() || c2.has_value();
            if (c1) gap.zero_theta = *c1;
            if (c2) gap.zero_theta = *c2;
            rep.gaps.push_back(std::move(gap));
        }
    }
    return rep;
}

ValenceReport valence_audit(const FloatForm& f, const DomainSpec& spec,
                            const std::vector<ScanResult>& scans) {
    if (f.level != spec.level()) throw std::invalid_argument("form level does not match geometry");
    ValenceReport rep;
    rep.level = f.level;
    rep.weight = f.weight;
    rep.ord_inf = ord_infinity(f);
    rep.budget = valence_budget(f.level, f.weight, rep.ord_inf);
    rep.weighted_arc_count = 0;
    rep.forced_elliptic = 0;

    std::map<std::string, int> half_order;
    for (const auto& pt : spec.elliptic_points()) half_order[pt.label] = pt.half_order;

    std::ostringstream diag;
    std::map<std::string, int> endpoint_orders; // dedupes the two-arc junction
    for (const auto& scan : scans) {
        for (const auto& z : scan.zeros) {
            if (z.endpoint) {
                auto it = endpoint_orders.find(z.attribution);
                if (it != endpoint_orders.end()) {
                    if (it->second != z.order)
                        diag << "order mismatch at " << z.attribution << " between arcs ("
                             << it->second << " vs " << z.order << "); ";
                    continue;
                }
                endpoint_orders[z.attribution] = z.order;
                rep.forced_elliptic += Rational(z.order, half_order.at(z.attribution));
                rep.zeros.push_back(z);
            } else if (z.parity == ZeroParity::odd) {
                rep.weighted_arc_count += 1;
                rep.zeros.push_back(z);
            } else {
                rep.weighted_arc_count += 2;
                rep.heuristic = true;
                rep.zeros.push_back(z);
            }
        }
    }

    // Forced vanishing that the scan did not observe signals a numerical
    // fault in the input, not a property of the geometry.
    for (const auto& a : spec.arcs()) {
        for (bool upper : {false, true}) {
            const EllipticPoint& pt = spec.arc_endpoint_elliptic(a.id, upper);
            if (endpoint_orders.count(pt.label)) continue;
            if (forced_elliptic_order(pt, f.weight) > 0)
                diag << "expected forced vanishing at " << pt.label << " was not observed; ";
        }
    }

    rep.residual = rep.budget - rep.weighted_arc_count - rep.forced_elliptic;
    rep.pass = rep.residual == 0;
    if (!rep.pass) {
        if (rep.residual > 0)
            diag << "count short of budget by " << rep.residual.str()
                 << ": possible zero off the scanned arcs, a missed even-order zero, or an "
                    "endpoint order underestimate (raise grid size); ";
        else
            diag << "count exceeds budget by " << Rational(-rep.residual).str()
                 << ": an endpoint order or even-order contribution is overestimated; ";
    }
    rep.diagnostics = diag.str();
    return rep;
}

std::string valence_report_json(const ValenceReport& rep, const std::string& form_label) {
    nlohmann::json j;
    j["schema"] = "serre-zeros/1";
    j["form"] = form_label;
    j["level"] = rep.level;
    j["weight"] = rep.weight;
    j["ord_infinity"] = rep.ord_inf;
    j["budget"] = rep.budget.str();
    j["weighted_arc_count"] = rep.weighted_arc_count.str();
    j["forced_elliptic_contribution"] = rep.forced_elliptic.str();
    j["residual"] = rep.residual.str();
    j["heuristic"] = rep.heuristic;
    j["pass"] = rep.pass;
    j["diagnostics"] = rep.diagnostics;
    auto& zs = j["zeros"] = nlohmann::json::array();
    for (const auto& z : rep.zeros) {
        zs.push_back({{"arc", z.arc_id},
                      {"theta", decimal_string(z.theta, 30)},
                      {"re_tau", decimal_string(z.tau.re, 30)},
                      {"im_tau", decimal_string(z.tau.im, 30)},
                      {"parity", z.endpoint ? "endpoint"
                                            : (z.parity == ZeroParity::odd ? "odd" : "suspected-even")},
                      {"bracket_width", decimal_string(z.bracket_width, 6)},
                      {"order", z.order},
                      {"attribution", z.attribution}});
    }
    return j.dump(2);
}

std::string zeros_csv(const std::vector<ScanResult>& scans) {
    std::ostringstream os;
    os << "arc,theta,re_tau,im_tau,parity,bracket_width\n";
    for (const auto& scan : scans) {
        for (const auto& z : scan.zeros) {
            os << z.arc_id << ',' << decimal_string(z.theta, 30) << ','
               << decimal_string(z.tau.re, 30) << ',' << decimal_string(z.tau.im, 30) << ','
               << (z.endpoint ? "endpoint" : (z.parity == ZeroParity::odd ? "odd" : "suspected-even"))
               << ',' << decimal_string(z.bracket_width, 6) << '\n';
        }
    }
    return os.str();
}

} // namespace sz
