#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pshbump/mixed_poly.hpp"

namespace pshbump {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& what)
        : std::runtime_error("parse error at offset " + std::to_string(off) + ": " + what),
          offset(off) {}
};

struct RealityError : std::runtime_error {
    explicit RealityError(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedPoly {
    MixedPoly poly;
    bool holomorphic = false;  // true when flagged as the holomorphic sub-role
};

namespace detail {

// Recursive-descent parser for:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := unit ('*' unit)*
//   unit   := coeff | factor
//   factor := base ('^' nat)?
//   base   := 'z1' | 'z2' | 'conj(' expr ')' | 'abs2(' expr ')' | 'Re(' expr ')'
//           | 'Im(' expr ')' | '(' expr ')'
//   coeff  := nat ('/' nat)? ['i']
class PolyParser {
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    MixedPoly parse() {
        MixedPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    MixedPoly expr() {
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        MixedPoly p = term();
        if (neg) p = -p;
        for (;;) {
            if (eat('+')) p = p + term();
            else if (eat('-')) p = p - term();
            else break;
        }
        return p;
    }

    MixedPoly term() {
        MixedPoly p = unit();
        while (eat('*')) p = p * unit();
        return p;
    }

    MixedPoly unit() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return coeff();
        return factor();
    }

    MixedPoly coeff() {
        skip_ws();
        BigInt num = nat();
        BigInt den = 1;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            den = nat();
            if (den == 0) fail("zero denominator");
        }
        ComplexRational c{Rational(num, den)};
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == 'i' &&
            (pos_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
            ++pos_;
            c = ComplexRational(Rational(0), c.re);
        } else {
            pos_ = save;
        }
        return MixedPoly::constant(c);
    }

    BigInt nat() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected number");
        BigInt v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    MixedPoly factor() {
        MixedPoly b = base();
        if (eat('^')) {
            BigInt e = nat();
            if (e > 512) fail("exponent too large");
            b = b.pow(e.convert_to<unsigned>());
        }
        return b;
    }

    MixedPoly base() {
        skip_ws();
        if (eat_word("z1")) return MixedPoly::z1();
        if (eat_word("z2")) return MixedPoly::z2();
        if (eat_word("conj(")) return closed(expr().conj());
        if (eat_word("abs2(")) {
            MixedPoly e = expr();
            return closed(e * e.conj());
        }
        if (eat_word("Re(")) {
            MixedPoly e = expr();
            return closed(Rational(1, 2) * (e + e.conj()));
        }
        if (eat_word("Im(")) {
            MixedPoly e = expr();
            // (e - conj(e)) / (2i) = -i/2 * (e - conj(e))
            return closed(ComplexRational(Rational(0), Rational(-1, 2)) * (e - e.conj()));
        }
        if (eat('(')) {
            --pos_;
            eat('(');
            return closed(expr());
        }
        fail("unknown token");
    }

    MixedPoly closed(MixedPoly p) {
        if (!eat(')')) fail("expected ')'");
        return p;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a polynomial expression. The result must be real-valued or purely
/// holomorphic; anything else is a reality violation.
inline ParsedPoly parse_poly(std::string_view text) {
    detail::PolyParser parser(text);
    ParsedPoly r;
    r.poly = parser.parse();
    if (r.poly.is_real_valued()) {
        r.holomorphic = r.poly.is_holomorphic();  // constants are both
        return r;
    }
    if (r.poly.is_holomorphic()) {
        r.holomorphic = true;
        return r;
    }
    throw RealityError("expression is neither real-valued nor holomorphic");
}

/// Parse an expression that is required to be real-valued.
inline MixedPoly parse_real_poly(std::string_view text) {
    ParsedPoly p = parse_poly(text);
    if (!p.poly.is_real_valued())
        throw RealityError("expression declared real violates the reality invariant");
    return p.poly;
}

}  // namespace pshbump
