#pragma once

#include "sz/generators.hpp"

#include <string>
#include <vector>

namespace sz {

// Dense rational polynomial, coefficients ascending. The zero polynomial
// has an empty coefficient list and degree -1.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RationalPoly constant(const Rational& v) {
        return v == 0 ? RationalPoly() : RationalPoly({v});
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const {
        return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)]
                                                         : Rational(0);
    }
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    RationalPoly derivative() const {
        if (c_.size() <= 1) return RationalPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
        return RationalPoly(std::move(d));
    }

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const Rational& s, const RationalPoly& a);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

// gcd normalized monic; uses a subresultant remainder sequence over the
// integers to keep intermediate coefficients under control.
RationalPoly poly_gcd(const RationalPoly& a, const RationalPoly& b);

// Exact quotient; throws if b does not divide a.
RationalPoly poly_div_exact(const RationalPoly& a, const RationalPoly& b);

// Squarefree part a / gcd(a, a'), monic.
RationalPoly squarefree_part(const RationalPoly& a);

// Yun decomposition a = c * prod f_i^i with the f_i squarefree, monic and
// pairwise coprime; returns the (f_i, i) with deg f_i > 0.
std::vector<std::pair<RationalPoly, int>> squarefree_decomposition(const RationalPoly& a);

struct RootInterval {
    Rational lo, hi; // lo == hi for an exactly known rational root
    int multiplicity = 1;
    bool exact = false;
};

struct SturmResult {
    int distinct_count = 0;             // distinct real roots in [a, b]
    std::vector<RootInterval> roots;    // disjoint, one distinct root each
};

// Exact root counting and isolation on the closed interval [a, b]:
// Sturm's theorem on the squarefree part counts (a, b], the left endpoint
// is checked by exact evaluation, and multiplicities come from the Yun
// ledger. Isolating intervals are refined to width (b-a) * 1e-12.
SturmResult sturm_count(const RationalPoly& p, const Rational& a, const Rational& b);

// f = E4^epsilon E6^delta Delta^m P(j) with (epsilon, delta) in
// {0,1,2} x {0,1} fixed by the weight; m may be negative for weakly
// holomorphic forms.
struct JDecomposition {
    int epsilon = 0;
    int delta = 0;
    std::int64_t m = 0;
    RationalPoly poly;
    int weight = 0;
};

bool equivalent(const JDecomposition& a, const JDecomposition& b);

// Extracts the decomposition of a level-1 exact form by clearing the
// prefactors and peeling P off the principal part of the resulting
// weight-0 expansion; the reconstruction is verified against f before
// returning. The degree of P is forced: deg P = m - ord_infinity(f).
JDecomposition decompose(const ExactForm& f);

// Decomposition of the Serre derivative computed on the polynomial side.
JDecomposition serre_poly(const JDecomposition& d);

// Rebuild the q-expansion of a decomposition (mainly for verification).
ExactForm reconstruct(const JDecomposition& d, std::int64_t trunc);

struct ArcCertificate {
    bool hypothesis_ok = false; // all roots of P_f in [0, 1728], full multiplicity
    bool certified = false;     // same statement for P_{serre(f)}
    JDecomposition f_dec, df_dec;
    SturmResult f_roots, df_roots;
    std::vector<std::string> prefactor_zeros; // zeros contributed by E4/E6 powers
    std::string note;
};

// Certifies, in exact arithmetic, that every zero of the Serre derivative
// of f located in the level-1 fundamental domain lies on the boundary arc,
// via root confinement of the associated polynomials to [0, 1728]. The
// hypothesis (the same confinement for f itself) is certified first; if it
// fails the certificate is refused rather than reported as an error.
ArcCertificate certify_zeros_on_arc(const ExactForm& f);

std::string jpoly_json(const ArcCertificate& cert, const std::string& form_label);

} // namespace sz
