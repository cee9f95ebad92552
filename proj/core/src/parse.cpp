#include "invlab/gfunc.hpp"

#include <cctype>
#include <string>

namespace invlab {
namespace {

// Tiny recursive-descent parser for polynomial expressions in q1,q2,p1,p2
// with rational literals, + - * ^ and parentheses. Used for CLI pins.
struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ConfigError("parse error at position " + std::to_string(pos) + ": " + what + " in '" + s + "'");
    }

    GeneralizedFunction expr() {
        GeneralizedFunction acc = term();
        while (true) {
            skip();
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    GeneralizedFunction term() {
        GeneralizedFunction acc = factor();
        while (true) {
            skip();
            if (eat('*')) acc *= factor();
            else return acc;
        }
    }

    GeneralizedFunction factor() {
        GeneralizedFunction base = atom();
        skip();
        if (eat('^')) {
            skip();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected integer exponent");
            base = gf::pow(base, std::stoi(s.substr(start, pos - start)));
        }
        return base;
    }

    GeneralizedFunction atom() {
        skip();
        if (eat('(')) {
            GeneralizedFunction inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (eat('-')) return -atom();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string num = s.substr(start, pos - start);
            if (eat('/')) {
                skip();
                std::size_t ds = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == ds) fail("expected denominator");
                num += "/" + s.substr(ds, pos - ds);
            }
            return gf::c(FieldScalar(parse_rational(num)));
        }
        for (int axis = 0; axis < kDim; ++axis) {
            const std::string name = kAxisNames[axis];
            if (s.compare(pos, name.size(), name) == 0) {
                pos += name.size();
                return GeneralizedFunction::var(axis);
            }
        }
        fail("expected number, variable or '('");
    }
};

} // namespace

GeneralizedFunction parse_polynomial(const std::string& text) {
    Parser p(text);
    GeneralizedFunction f = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

} // namespace invlab
