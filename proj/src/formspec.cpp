#include "sz/formspec.hpp"

#include <cctype>

namespace sz {

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;
    int level;
    std::int64_t trunc;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " +
                                    msg);
    }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    ExactForm scalar(const Rational& v, const std::string& label) const {
        return {0, level, ExactSeries::constant(CoefficientDomain::exact(), v, trunc), true,
                label};
    }

    long parse_integer() {
        skip_ws();
        bool neg = false;
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) neg = src[pos++] == '-';
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
            fail("expected an integer");
        long v = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
            v = v * 10 + (src[pos++] - '0');
        return neg ? -v : v;
    }

    ExactForm parse_generator(const std::string& name) {
        if (name == "E2p") return e2p(level, trunc);
        if (name == "FrickeE") {
            if (!eat('(')) fail("FrickeE takes a weight argument: FrickeE(k)");
            long k = parse_integer();
            if (!eat(')')) fail("expected ')'");
            if (level == 1) fail("FrickeE is for levels 2, 3, 5, 7; use E<k> at level 1");
            return fricke_eisenstein(static_cast<int>(k), level, trunc);
        }
        if (level != 1)
            fail("unknown generator '" + name + "' at level " + std::to_string(level) +
                 " (use E2p or FrickeE(k))");
        if (name == "Delta") return delta(trunc);
        if (name == "j") return j_invariant(trunc);
        if (name.size() > 1 && name[0] == 'E') {
            std::string num = name.substr(name[1] == '_' ? 2 : 1);
            if (!num.empty() &&
                std::all_of(num.begin(), num.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                int k = std::stoi(num);
                if (k < 2 || k % 2 != 0) fail("Eisenstein weight must be even and >= 2");
                return eisenstein(k, trunc);
            }
        }
        fail("unknown generator '" + name + "'");
    }

    ExactForm parse_primary() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of expression");
        char c = src[pos];
        if (c == '(') {
            ++pos;
            ExactForm f = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = parse_integer();
            return scalar(Rational(v), std::to_string(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                        src[pos] == '_'))
                ++pos;
            return parse_generator(src.substr(start, pos - start));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    ExactForm parse_factor() {
        skip_ws();
        if (pos < src.size() && src[pos] == '-') {
            ++pos;
            ExactForm f = parse_factor();
            return Rational(-1) * f;
        }
        ExactForm f = parse_primary();
        skip_ws();
        if (pos < src.size() && src[pos] == '^') {
            ++pos;
            long e = parse_integer();
            if (e < 0) fail("negative powers are not supported; divide instead");
            f = pow(f, static_cast<int>(e));
        }
        return f;
    }

    ExactForm parse_term() {
        ExactForm f = parse_factor();
        while (true) {
            skip_ws();
            if (pos < src.size() && src[pos] == '*') {
                ++pos;
                f = f * parse_factor();
            } else if (pos < src.size() && src[pos] == '/') {
                ++pos;
                f = f / parse_factor();
            } else {
                return f;
            }
        }
    }

    ExactForm parse_expr() {
        ExactForm f = parse_term();
        while (true) {
            skip_ws();
            if (pos < src.size() && src[pos] == '+') {
                ++pos;
                f = f + parse_term();
            } else if (pos < src.size() && src[pos] == '-') {
                ++pos;
                f = f - parse_term();
            } else {
                return f;
            }
        }
    }
};

} // namespace

ExactForm parse_form_spec(const std::string& text, int level, std::int64_t truncation) {
    if (!supported_level(level)) throw std::invalid_argument("unsupported level");
    if (truncation < 1) throw std::invalid_argument("truncation must be positive");
    Parser p{text, 0, level, truncation};
    ExactForm f = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    if (f.weight % 2 != 0) p.fail("expression has odd weight");
    f.label = text;
    return f;
}

} // namespace sz
