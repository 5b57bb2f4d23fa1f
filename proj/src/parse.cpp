#include "lipsat/parse.hpp"

#include <cctype>

namespace lipsat {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void err(const std::string& what) const {
        fail(ErrorCode::ParseError, what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Rat number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) err("expected number");
        if (pos < s.size() && s[pos] == '/') {
            size_t save = pos++;
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == dstart) pos = save; // the '/' was not part of the number
        }
        return parse_rat(s.substr(start, pos - start));
    }

    long uinteger() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) err("expected integer");
        return std::stol(s.substr(start, pos - start));
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        if (pos >= s.size() || !(std::isalpha((unsigned char)s[pos]) || s[pos] == '_'))
            err("expected identifier");
        while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
        while (pos < s.size() && s[pos] == '\'') ++pos; // primes
        return s.substr(start, pos - start);
    }

    // (zN) token if the parenthesis opens one, otherwise a grouped expression
    Poly paren() {
        size_t save = pos;
        ++pos; // '('
        skip_ws();
        if (pos < s.size() && s[pos] == 'z') {
            size_t zsave = pos++;
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos > dstart) {
                long N = std::stol(s.substr(dstart, pos - dstart));
                skip_ws();
                if (pos < s.size() && s[pos] == ')') {
                    ++pos;
                    return Poly::constant(CycRat::root_of_unity(N));
                }
            }
            pos = zsave; // plain variable starting with z
        }
        Poly inner = expr();
        if (!eat(')')) err("expected ')'");
        (void)save;
        return inner;
    }

    Poly factor() {
        skip_ws();
        if (pos >= s.size()) err("unexpected end of input");
        Poly base;
        char c = s[pos];
        if (c == '(') {
            base = paren();
        } else if (std::isdigit((unsigned char)c)) {
            base = Poly::constant(CycRat(number()));
        } else if (std::isalpha((unsigned char)c) || c == '_') {
            base = Poly::variable(ident());
        } else {
            err("unexpected character '" + std::string(1, c) + "'");
        }
        skip_ws();
        while (eat('^')) {
            long e = uinteger();
            base = base.pow(e);
            skip_ws();
        }
        return base;
    }

    Poly term() {
        Poly p = factor();
        while (true) {
            skip_ws();
            if (eat('*')) {
                p *= factor();
                continue;
            }
            // implicit multiplication for forms like 2x or x(z5)
            char c = peek();
            if (c == '(' || std::isalpha((unsigned char)c) || c == '_') {
                p *= factor();
                continue;
            }
            break;
        }
        return p;
    }

    Poly expr() {
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        else eat('+');
        Poly p = term();
        if (neg) p = -p;
        while (true) {
            skip_ws();
            if (eat('+')) p += term();
            else if (eat('-')) p -= term();
            else break;
        }
        return p;
    }
};

} // namespace

Poly parse_poly(const std::string& text) {
    Parser p(text);
    Poly out = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.err("trailing input");
    return out;
}

CycRat parse_cycrat(const std::string& text) {
    Poly p = parse_poly(text);
    if (!p.is_constant()) fail(ErrorCode::ParseError, "expected a constant: '" + text + "'");
    return p.constant_term();
}

} // namespace lipsat
