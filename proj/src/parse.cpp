#include "padic/parse.hpp"

#include <cctype>
#include <optional>

namespace padic {

ParseError::ParseError(std::size_t column, const std::string& msg)
    : std::invalid_argument("parse error at column " + std::to_string(column) + ": " + msg), column_(column) {}

namespace {

constexpr int kMaxExponent = 1000;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) { reject_quantifiers(); }

    Poly poly() {
        skip();
        bool neg = eat('-');
        Poly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip();
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else return acc;
        }
    }

    Formula formula() {
        std::vector<Formula> parts{conj()};
        while (skip(), eat('|')) parts.push_back(conj());
        return parts.size() == 1 ? parts.front() : Formula::disj(std::move(parts));
    }

    void finish() {
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(i_ + 1, msg); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool at(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool eat(char c) {
        if (!at(c)) return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool at_digit() {
        skip();
        return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
    }

    std::string peek_word() {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
        return s_.substr(i_, j - i_);
    }
    bool eat_word(const std::string& w) {
        if (peek_word() != w) return false;
        i_ += w.size();
        return true;
    }

    void reject_quantifiers() {
        for (std::size_t j = 0; j < s_.size();) {
            if (std::isalpha(static_cast<unsigned char>(s_[j]))) {
                std::size_t k = j;
                while (k < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[k])) || s_[k] == '_')) ++k;
                std::string w = s_.substr(j, k - j);
                if (w == "exists" || w == "forall") throw UnsupportedInput("quantifiers not supported");
                j = k;
            } else {
                ++j;
            }
        }
        if (s_.find("∃") != std::string::npos || s_.find("∀") != std::string::npos)
            throw UnsupportedInput("quantifiers not supported");
    }

    Int natural() {
        if (!at_digit()) fail("expected an integer");
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        Int v(s_.substr(i_, j - i_));
        i_ = j;
        return v;
    }
    Int integer() {
        bool neg = eat('-');
        Int v = natural();
        return neg ? Int(-v) : v;
    }
    std::int64_t small(Int v) {
        if (!v.fits_slong_p()) fail("integer out of range");
        return v.get_si();
    }

    bool starts_factor() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return c == '(' || c == 'y' || std::isdigit(static_cast<unsigned char>(c));
    }

    Poly term() {
        Poly acc = power();
        for (;;) {
            if (eat('*')) acc = acc * power();
            else if (starts_factor() && peek_word() != "mod") acc = acc * power();
            else return acc;
        }
    }

    Poly power() {
        Poly base = factor();
        if (!eat('^')) return base;
        std::int64_t k = small(natural());
        if (k > kMaxExponent) fail("exponent too large");
        Poly out{1};
        for (std::int64_t j = 0; j < k; ++j) out = out * base;
        return out;
    }

    Poly factor() {
        skip();
        if (eat('(')) {
            Poly inner = poly();
            expect(')');
            return inner;
        }
        if (at_digit()) {
            Int num = natural();
            Int den = 1;
            if (eat('/')) {
                den = natural();
                if (den == 0) fail("division by zero");
            }
            Rat c(num, den);
            c.canonicalize();
            return Poly::constant(c);
        }
        std::string w = peek_word();
        if (w == "y") {
            i_ += 1;
            return Poly::linear(0, 1);
        }
        if (!w.empty()) fail("unknown identifier '" + w + "'");
        if (i_ >= s_.size()) fail("unexpected end of input");
        fail("unexpected '" + std::string(1, s_[i_]) + "'");
    }

    Formula conj() {
        std::vector<Formula> parts{unary()};
        while (eat('&')) parts.push_back(unary());
        return parts.size() == 1 ? parts.front() : Formula::conj(std::move(parts));
    }

    Formula unary() {
        if (eat('!')) return Formula::negate(unary());
        if (at('(')) {
            std::size_t save = i_;
            try {
                ++i_;
                Formula f = formula();
                expect(')');
                skip();
                bool continues_poly = i_ < s_.size() && std::string("=^*+-y0123456789(").find(s_[i_]) != std::string::npos;
                if (!continues_poly) return f;
            } catch (const ParseError&) {
            }
            i_ = save;
        }
        return Formula::leaf(atom());
    }

    std::optional<Rel> rel() {
        if (eat('<')) return eat('=') ? Rel::Le : Rel::Lt;
        if (eat('>')) return eat('=') ? Rel::Ge : Rel::Gt;
        if (eat('=')) return Rel::Eq;
        return std::nullopt;
    }

    Poly call_arg() {
        expect('(');
        Poly f = poly();
        expect(')');
        return f;
    }

    Atom atom() {
        std::size_t save = i_;
        if (eat_word("ord") && at('(')) {
            Poly f = call_arg();
            if (eat_word("mod")) {
                std::int64_t n = small(natural());
                if (n <= 0) fail("modulus must be positive");
                expect('=');
                std::int64_t r = small(integer());
                return OrdMod{f, n, r};
            }
            auto r = rel();
            if (!r) fail("expected a comparison or 'mod'");
            if (eat_word("ord")) {
                Poly g = call_arg();
                std::int64_t off = 0;
                if (eat('+')) off = small(natural());
                else if (eat('-')) off = -small(natural());
                return OrdCmp{f, g, off, *r};
            }
            return OrdCmp{f, Poly{1}, small(integer()), *r};
        }
        i_ = save;
        if (eat_word("ac") && at('(')) {
            expect('(');
            int d = static_cast<int>(small(natural()));
            if (d < 1) fail("depth must be at least 1");
            expect(',');
            Poly f = poly();
            expect(')');
            expect('=');
            return AcEq{d, f, integer()};
        }
        i_ = save;
        if (eat_word("rv") && at('(')) {
            expect('(');
            int d = static_cast<int>(small(natural()));
            if (d < 1) fail("depth must be at least 1");
            expect(',');
            Poly f = poly();
            expect(')');
            expect('=');
            if (eat('(')) {
                std::int64_t v = small(integer());
                expect(',');
                Int u = integer();
                expect(')');
                return RvEq{d, f, RvData::make(d, v, u)};
            }
            Int z = natural();
            if (z != 0) fail("expected 0 or a pair (valuation, unit)");
            return RvEq{d, f, RvData::make_zero(d)};
        }
        i_ = save;
        Poly f = poly();
        expect('=');
        skip();
        std::size_t zpos = i_;
        Poly rhs = poly();
        if (!rhs.is_zero()) {
            i_ = zpos;
            fail("expected 0 on the right of '='");
        }
        return OrdEqInf{f};
    }
};

}  // namespace

Poly parse_poly(const std::string& text) {
    Parser ps(text);
    Poly f = ps.poly();
    ps.finish();
    return f;
}

Formula parse_formula(const std::string& text) {
    Parser ps(text);
    Formula f = ps.formula();
    ps.finish();
    return f;
}

}  // namespace padic
