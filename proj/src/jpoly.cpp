#include "sz/jpoly.hpp"

#include <json.hpp>

#include <algorithm>

namespace sz {

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return RationalPoly(std::move(c));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return RationalPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RationalPoly(std::move(c));
}

RationalPoly operator*(const Rational& s, const RationalPoly& a) {
    if (s == 0) return RationalPoly();
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x = s * x;
    return RationalPoly(std::move(c));
}

namespace {

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

RationalPoly monic(const RationalPoly& p) {
    if (p.is_zero() || p.leading() == 1) return p;
    return (Rational(1) / p.leading()) * p;
}

// ---- integer polynomial layer (ascending, trimmed, empty == zero) ----

using IntPoly = std::vector<Integer>;

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

Integer content_of(const IntPoly& p) {
    Integer g(0);
    for (const auto& c : p) g = gcd(g, c);
    return g;
}

IntPoly primitive(IntPoly p) {
    trim(p);
    if (p.empty()) return p;
    Integer g = content_of(p);
    if (p.back() < 0) g = -g;
    for (auto& c : p) c /= g;
    return p;
}

// lc(B)^(deg A - deg B + 1) * A  mod  B
IntPoly pseudo_rem(IntPoly A, const IntPoly& B) {
    const int db = deg(B);
    const Integer& lb = B.back();
    int e = deg(A) - db + 1;
    while (!A.empty() && deg(A) >= db) {
        Integer s = A.back();
        int shift = deg(A) - db;
        for (auto& c : A) c *= lb;
        for (int i = 0; i <= db; ++i)
            A[static_cast<std::size_t>(i + shift)] -= s * B[static_cast<std::size_t>(i)];
        trim(A);
        --e;
    }
    if (e > 0 && !A.empty()) {
        Integer f = boost::multiprecision::pow(lb, static_cast<unsigned>(e));
        for (auto& c : A) c *= f;
    }
    return A;
}

// Subresultant PRS gcd (Brown); keeps the intermediate coefficients from
// exploding the way plain rational Euclid does at higher degrees.
IntPoly int_gcd(IntPoly A, IntPoly B) {
    trim(A);
    trim(B);
    if (A.empty()) return primitive(std::move(B));
    if (B.empty()) return primitive(std::move(A));
    Integer d = gcd(content_of(A), content_of(B));
    A = primitive(std::move(A));
    B = primitive(std::move(B));
    if (deg(A) < deg(B)) std::swap(A, B);
    Integer g(1), h(1);
    while (true) {
        int delta = deg(A) - deg(B);
        IntPoly R = pseudo_rem(A, B);
        if (R.empty()) break;
        if (deg(R) == 0) {
            B = {Integer(1)};
            break;
        }
        A = std::move(B);
        Integer divisor = g * boost::multiprecision::pow(h, static_cast<unsigned>(delta));
        B = std::move(R);
        for (auto& c : B) c /= divisor;
        g = A.back();
        if (delta > 0)
            h = boost::multiprecision::pow(g, static_cast<unsigned>(delta)) /
                boost::multiprecision::pow(h, static_cast<unsigned>(delta - 1));
    }
    B = primitive(std::move(B));
    for (auto& c : B) c *= d;
    return B;
}

IntPoly to_int_poly(const RationalPoly& p) {
    Integer l(1);
    for (const auto& c : p.coeffs()) l = lcm(l, denominator(c));
    IntPoly out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.push_back(numerator(c) * (l / denominator(c)));
    return out;
}

RationalPoly from_int_poly(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& x : p) c.emplace_back(x);
    return RationalPoly(std::move(c));
}

// Positive rational rescaling to a primitive integer polynomial; the sign
// pattern is preserved, which is all the Sturm chain needs.
RationalPoly normalize_signs(const RationalPoly& p) {
    if (p.is_zero()) return p;
    IntPoly ip = to_int_poly(p);
    Integer g = content_of(ip); // nonnegative, so dividing keeps every sign
    for (auto& c : ip) c /= g;
    return from_int_poly(ip);
}

// remainder of a by b over the rationals
RationalPoly poly_mod(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rational f = r.leading() / b.leading();
        int shift = r.degree() - b.degree();
        std::vector<Rational> sub(static_cast<std::size_t>(shift + b.degree() + 1), Rational(0));
        for (int i = 0; i <= b.degree(); ++i)
            sub[static_cast<std::size_t>(i + shift)] = f * b.coeff(i);
        r = r - RationalPoly(std::move(sub));
    }
    return r;
}

std::vector<RationalPoly> sturm_chain(const RationalPoly& s) {
    std::vector<RationalPoly> chain{s};
    RationalPoly d = s.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(normalize_signs(d));
    while (chain.back().degree() > 0) {
        RationalPoly r = poly_mod(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(normalize_signs(Rational(-1) * r));
    }
    return chain;
}

int variations(const std::vector<RationalPoly>& chain, const Rational& x) {
    int count = 0;
    int last = 0;
    for (const auto& p : chain) {
        Rational v = p.eval(x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

struct Isolator {
    const std::vector<RationalPoly>& chain;
    const RationalPoly& s;
    std::vector<RootInterval> out;

    void isolate(const Rational& a, const Rational& b, int va, int vb) {
        int n = va - vb;
        if (n <= 0) return;
        if (n == 1) {
            out.push_back({a, b, 1, false});
            return;
        }
        Rational m = (a + b) / 2;
        if (s.eval(m) == 0) {
            // exact root at the midpoint: carve out a neighborhood that
            // isolates it and recurse on the two sides
            Rational w = (b - a) / 4;
            int va2 = 0, vb2 = 0;
            while (true) {
                if (s.eval(m - w) != 0 && s.eval(m + w) != 0) {
                    va2 = variations(chain, m - w);
                    vb2 = variations(chain, m + w);
                    if (va2 - vb2 == 1) break;
                }
                w /= 2;
            }
            out.push_back({m, m, 1, true});
            isolate(a, m - w, va, va2);
            isolate(m + w, b, vb2, vb);
        } else {
            int vm = variations(chain, m);
            isolate(a, m, va, vm);
            isolate(m, b, vm, vb);
        }
    }
};

// Shrink (lo, hi] around its single root of s; collapses to an exact point
// when the root is rational and gets hit.
RootInterval refine_interval(const std::vector<RationalPoly>& chain, const RationalPoly& s,
                             RootInterval iv, const Rational& width_target) {
    if (iv.exact) return iv;
    if (s.eval(iv.hi) == 0) return {iv.hi, iv.hi, iv.multiplicity, true};
    while (iv.hi - iv.lo > width_target) {
        Rational m = (iv.lo + iv.hi) / 2;
        if (s.eval(m) == 0) return {m, m, iv.multiplicity, true};
        if (variations(chain, m) - variations(chain, iv.hi) == 1)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

bool factor_has_root(const RationalPoly& factor, const RootInterval& iv) {
    if (iv.exact) return factor.eval(iv.lo) == 0;
    auto chain = sturm_chain(factor);
    return variations(chain, iv.lo) - variations(chain, iv.hi) > 0;
}

} // namespace

RationalPoly poly_gcd(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() && b.is_zero()) return RationalPoly();
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    return monic(from_int_poly(int_gcd(to_int_poly(a), to_int_poly(b))));
}

RationalPoly poly_div_exact(const RationalPoly& a, const RationalPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (a.is_zero()) return RationalPoly();
    if (a.degree() < b.degree()) throw std::invalid_argument("inexact polynomial division");
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    RationalPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rational f = r.leading() / b.leading();
        int shift = r.degree() - b.degree();
        q[static_cast<std::size_t>(shift)] = f;
        std::vector<Rational> sub(static_cast<std::size_t>(shift + b.degree() + 1), Rational(0));
        for (int i = 0; i <= b.degree(); ++i)
            sub[static_cast<std::size_t>(i + shift)] = f * b.coeff(i);
        r = r - RationalPoly(std::move(sub));
    }
    if (!r.is_zero()) throw std::invalid_argument("inexact polynomial division");
    return RationalPoly(std::move(q));
}

RationalPoly squarefree_part(const RationalPoly& a) {
    if (a.degree() < 1) return RationalPoly::constant(1);
    RationalPoly g = poly_gcd(a, a.derivative());
    if (g.degree() == 0) return monic(a);
    return monic(poly_div_exact(a, g));
}

std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(const RationalPoly& a) {
    std::vector<std::pair<RationalPoly, int>> out;
    if (a.degree() < 1) return out;
    RationalPoly g = poly_gcd(a, a.derivative());
    if (g.degree() == 0) {
        out.emplace_back(monic(a), 1);
        return out;
    }
    RationalPoly w = poly_div_exact(a, g);
    RationalPoly y = poly_div_exact(a.derivative(), g);
    RationalPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        RationalPoly gi = poly_gcd(w, z);
        if (gi.degree() > 0) out.emplace_back(gi, i);
        w = poly_div_exact(w, gi);
        y = poly_div_exact(z, gi);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

SturmResult sturm_count(const RationalPoly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw std::invalid_argument("Sturm count of the zero polynomial");
    if (!(a < b)) throw std::invalid_argument("Sturm count needs a < b");
    SturmResult res;
    if (p.degree() == 0) return res;

    RationalPoly s = squarefree_part(p);
    auto chain = sturm_chain(s);
    Isolator iso{chain, s, {}};
    iso.isolate(a, b, variations(chain, a), variations(chain, b)); // roots in (a, b]
    if (p.eval(a) == 0) iso.out.push_back({a, a, 1, true});        // left endpoint separately

    auto factors = squarefree_decomposition(p);
    Rational width_target = (b - a) / Rational(Integer(1000000000000LL)); // 1e-12 relative
    for (auto& iv : iso.out) {
        iv = refine_interval(chain, s, iv, width_target);
        for (const auto& [factor, mult] : factors)
            if (factor_has_root(factor, iv)) {
                iv.multiplicity = mult;
                break;
            }
    }
    std::sort(iso.out.begin(), iso.out.end(),
              [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
    res.roots = std::move(iso.out);
    res.distinct_count = static_cast<int>(res.roots.size());
    return res;
}

namespace {

// (epsilon, delta) is pinned by the weight modulo 12.
std::pair<int, int> eps_delta_for_weight(int k) {
    int r = k % 12;
    if (r < 0) r += 12;
    switch (r) {
        case 0: return {0, 0};
        case 2: return {2, 1};
        case 4: return {1, 0};
        case 6: return {0, 1};
        case 8: return {2, 0};
        case 10: return {1, 1};
        default: throw std::invalid_argument("weight must be even");
    }
}

ExactSeries eval_poly_at_series(const RationalPoly& p, const ExactSeries& j) {
    if (p.is_zero()) return ExactSeries::zero(CoefficientDomain::exact(), j.truncation());
    ExactSeries acc =
        ExactSeries::constant(CoefficientDomain::exact(), p.coeff(p.degree()), j.truncation());
    for (int d = p.degree() - 1; d >= 0; --d) {
        acc = acc * j;
        if (p.coeff(d) != 0)
            acc = acc + ExactSeries::constant(CoefficientDomain::exact(), p.coeff(d),
                                              j.truncation());
    }
    return acc;
}

struct Level1Basis {
    ExactSeries e4, e6, dlt, j;
};

Level1Basis level1_basis(std::int64_t trunc) {
    ExactForm e4 = eisenstein(4, trunc + 2);
    ExactForm e6 = eisenstein(6, trunc + 2);
    ExactSeries dlt = (e4.series.pow(3) - e6.series.pow(2)) / Rational(1728);
    ExactSeries j = e4.series.pow(3) * dlt.inverse();
    return {e4.series, e6.series, dlt, j};
}

ExactSeries prefactor_series(const Level1Basis& basis, int epsilon, int delta, std::int64_t m) {
    ExactSeries out =
        ExactSeries::constant(CoefficientDomain::exact(), Rational(1), basis.e4.truncation());
    if (epsilon) out = out * basis.e4.pow(epsilon);
    if (delta) out = out * basis.e6.pow(delta);
    if (m > 0) out = out * basis.dlt.pow(m);
    if (m < 0) out = out * basis.dlt.inverse().pow(-m);
    return out;
}

} // namespace

bool equivalent(const JDecomposition& a, const JDecomposition& b) {
    if (a.weight != b.weight) return false;
    if (a.poly.is_zero() || b.poly.is_zero()) return a.poly.is_zero() && b.poly.is_zero();
    return a.epsilon == b.epsilon && a.delta == b.delta && a.m == b.m && a.poly == b.poly;
}

JDecomposition decompose(const ExactForm& f) {
    if (f.level != 1) throw std::invalid_argument("decomposition is a level-1 construction");
    if (f.weight % 2 != 0) throw std::invalid_argument("weight must be even");
    auto [epsilon, delta] = eps_delta_for_weight(f.weight);
    std::int64_t m = (f.weight - 4 * epsilon - 6 * delta) / 12;
    if (f.series.is_zero()) return {epsilon, delta, m, RationalPoly(), f.weight};

    std::int64_t ord = f.series.valuation();
    std::int64_t deg_p = m - ord;
    if (deg_p < 0)
        throw std::invalid_argument("valuation too low for this weight; not modular as declared");
    std::int64_t needed = deg_p + std::max<std::int64_t>(1, m < 0 ? -m : m) + 8;
    if (f.series.truncation() < needed)
        throw std::invalid_argument("truncation too short for decomposition; need >= " +
                                    std::to_string(needed) + " coefficients");

    Level1Basis basis = level1_basis(f.series.truncation() + deg_p + (m < 0 ? -m : m) + 8);
    ExactSeries g = f.series;
    if (epsilon) g = g * basis.e4.inverse().pow(epsilon);
    if (delta) g = g * basis.e6.inverse().pow(delta);
    if (m > 0) g = g * basis.dlt.inverse().pow(m);
    if (m < 0) g = g * basis.dlt.pow(-m);

    std::vector<Rational> pc(static_cast<std::size_t>(deg_p) + 1, Rational(0));
    while (!g.is_zero() && g.valuation() <= 0) {
        std::int64_t d = -g.valuation();
        if (d > deg_p)
            throw std::invalid_argument("principal part deeper than the weight allows");
        Rational c = g.leading();
        pc[static_cast<std::size_t>(d)] += c;
        g = g - c * basis.j.pow(d);
    }
    if (!g.is_zero())
        throw std::invalid_argument(
            "nonzero residual after extraction: input is not modular of the declared weight, "
            "or its truncation is too short");
    JDecomposition dec{epsilon, delta, m, RationalPoly(std::move(pc)), f.weight};

    // reconstruction check: the decomposition must reproduce f
    ExactSeries back = prefactor_series(basis, epsilon, delta, m) *
                       eval_poly_at_series(dec.poly, basis.j);
    if (!agrees_on_overlap(back, f.series))
        throw std::logic_error("decomposition verification failed");
    return dec;
}

/*
 * Polynomial form of the Serre derivative. Writing f = E4^e E6^d Delta^m P(j)
 * and using the Ramanujan identities (the E4, E6, Delta derivatives) and
 * D(j) = -E4^2 E6 / Delta, the derivative acquires a prefactor E6/E4 which
 * is cleared case by case with E4^3 = Delta j and E6^2 = Delta (j - 1728):
 *
 *   (e,d)=(0,0): (2,1,m-1),  -P'
 *   (e,d)=(1,0): (0,1,m  ),  -(1/3) P - X P'
 *   (e,d)=(2,0): (1,1,m  ),  -(2/3) P - X P'
 *   (e,d)=(0,1): (2,0,m  ),  -(1/2) P - (X-1728) P'
 *   (e,d)=(1,1): (0,0,m+1),  (576 - (5/6) X) P - X (X-1728) P'
 *   (e,d)=(2,1): (1,0,m+1),  (1152 - (7/6) X) P - X (X-1728) P'
 */
JDecomposition serre_poly(const JDecomposition& d) {
    const RationalPoly& p = d.poly;
    RationalPoly dp = p.derivative();
    RationalPoly x({Rational(0), Rational(1)});
    RationalPoly x1728({Rational(-1728), Rational(1)});
    JDecomposition out;
    out.weight = d.weight + 2;
    int key = d.epsilon * 10 + d.delta;
    switch (key) {
        case 0: // (0,0)
            out.epsilon = 2; out.delta = 1; out.m = d.m - 1;
            out.poly = Rational(-1) * dp;
            break;
        case 10: // (1,0)
            out.epsilon = 0; out.delta = 1; out.m = d.m;
            out.poly = Rational(-1, 3) * p - x * dp;
            break;
        case 20: // (2,0)
            out.epsilon = 1; out.delta = 1; out.m = d.m;
            out.poly = Rational(-2, 3) * p - x * dp;
            break;
        case 1: // (0,1)
            out.epsilon = 2; out.delta = 0; out.m = d.m;
            out.poly = Rational(-1, 2) * p - x1728 * dp;
            break;
        case 11: // (1,1)
            out.epsilon = 0; out.delta = 0; out.m = d.m + 1;
            out.poly = RationalPoly({Rational(576), Rational(-5, 6)}) * p - x * x1728 * dp;
            break;
        case 21: // (2,1)
            out.epsilon = 1; out.delta = 0; out.m = d.m + 1;
            out.poly = RationalPoly({Rational(1152), Rational(-7, 6)}) * p - x * x1728 * dp;
            break;
        default:
            throw std::invalid_argument("invalid (epsilon, delta) pair");
    }
    return out;
}

ExactForm reconstruct(const JDecomposition& d, std::int64_t trunc) {
    Level1Basis basis = level1_basis(trunc + d.poly.degree() + 4 +
                                     (d.m < 0 ? -d.m : d.m));
    ExactSeries s = prefactor_series(basis, d.epsilon, d.delta, d.m) *
                    eval_poly_at_series(d.poly, basis.j);
    return {d.weight, 1, s.truncated(std::min<std::int64_t>(trunc, s.truncation())), true,
            "reconstructed"};
}

namespace {

bool roots_confined(const RationalPoly& p, SturmResult& roots_out) {
    if (p.degree() < 1) return true; // constants have no roots anywhere
    roots_out = sturm_count(p, Rational(0), Rational(1728));
    long total = 0;
    for (const auto& iv : roots_out.roots) total += iv.multiplicity;
    return total == p.degree();
}

} // namespace

ArcCertificate certify_zeros_on_arc(const ExactForm& f) {
    ArcCertificate cert;
    cert.f_dec = decompose(f);
    if (cert.f_dec.poly.is_zero()) {
        cert.note = "zero form; nothing to certify";
        return cert;
    }
    cert.hypothesis_ok = roots_confined(cert.f_dec.poly, cert.f_roots);
    if (!cert.hypothesis_ok) {
        cert.note = "hypothesis failed: P_f has roots outside [0, 1728]; "
                    "certificate refused (the arc-confinement statement does not cover "
                    "this input)";
        return cert;
    }
    cert.df_dec = serre_poly(cert.f_dec);
    if (cert.df_dec.poly.is_zero()) {
        cert.certified = true;
        cert.note = "Serre derivative vanishes identically";
        return cert;
    }
    cert.certified = roots_confined(cert.df_dec.poly, cert.df_roots);
    if (cert.df_dec.epsilon > 0)
        cert.prefactor_zeros.push_back("rho_1 (order " + std::to_string(cert.df_dec.epsilon) +
                                       ", from the E4 power)");
    if (cert.df_dec.delta > 0)
        cert.prefactor_zeros.push_back("i (order " + std::to_string(cert.df_dec.delta) +
                                       ", from the E6 power)");
    if (!cert.certified)
        cert.note = "root confinement of P_serre failed; this contradicts the expected "
                    "behavior and indicates a defect upstream";
    return cert;
}

namespace {

nlohmann::json decomposition_json(const JDecomposition& d, const SturmResult& roots) {
    nlohmann::json j;
    j["epsilon"] = d.epsilon;
    j["delta"] = d.delta;
    j["m"] = d.m;
    auto& pc = j["poly"] = nlohmann::json::array();
    for (const auto& c : d.poly.coeffs()) pc.push_back(c.str());
    auto& rs = j["roots"] = nlohmann::json::array();
    for (const auto& iv : roots.roots)
        rs.push_back({{"lo", iv.lo.str()},
                      {"hi", iv.hi.str()},
                      {"multiplicity", iv.multiplicity},
                      {"exact", iv.exact}});
    return j;
}

} // namespace

std::string jpoly_json(const ArcCertificate& cert, const std::string& form_label) {
    nlohmann::json j = decomposition_json(cert.f_dec, cert.f_roots);
    j["schema"] = "serre-zeros/1";
    j["form"] = form_label;
    j["weight"] = cert.f_dec.weight;
    j["hypothesis_ok"] = cert.hypothesis_ok;
    j["certified"] = cert.certified;
    j["serre"] = decomposition_json(cert.df_dec, cert.df_roots);
    j["prefactor_zeros"] = cert.prefactor_zeros;
    j["note"] = cert.note;
    return j.dump(2);
}

} // namespace sz
