#include "higgs5/ratfunc.hpp"

#include <sstream>

namespace higgs5 {

int form_pole_order(const RatFunc& f, const P1Point& p) {
    if (f.is_zero()) throw DomainError("order undefined for the zero form");
    if (!p.is_infinity()) return f.pole_order(p);
    // x = 1/w, dx = -dw/w^2
    return f.pole_order(p) + 2;
}

Rational residue(const RatFunc& f, const P1Point& p) {
    if (f.is_zero()) return Rational(0);
    if (p.is_infinity()) {
        // g(w) dw with g(w) = -f(1/w)/w^2
        RatFunc g = -(f.substitute_inverse() / RatFunc(Poly{Rational(0), Rational(0), Rational(1)}));
        return residue(g, P1Point(Rational(0)));
    }
    const Rational& v = p.value();
    int ord = f.pole_order(p);
    if (ord <= 0) return Rational(0);
    if (ord >= 2) throw DomainError("not logarithmic at " + p.str());
    // simple pole: num(p) / den'(p)
    return f.num().eval(v) / f.den().derivative().eval(v);
}

std::string RatFunc::str() const {
    auto poly_str = [](const Poly& p) -> std::string {
        if (p.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k <= p.degree(); ++k) {
            Rational c = p.coeff(k);
            if (c == 0) continue;
            if (!first) os << (c > 0 ? "+" : "-");
            else if (c < 0) os << "-";
            Rational a = c > 0 ? c : Rational(-c);
            if (k == 0) os << rat_to_string(a);
            else {
                if (a != 1) os << rat_to_string(a) << "*";
                os << "x";
                if (k > 1) os << "^" << k;
            }
            first = false;
        }
        return os.str();
    };
    if (is_polynomial()) return poly_str(num_);
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

namespace {

// Minimal recursive-descent parser for poly expressions in x:
// terms of the form c, c*x^k, x^k, with +/- separators; parentheses not nested.
Poly parse_poly_expr(const std::string& s) {
    Poly out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    if (i >= s.size()) throw ParseError("empty polynomial");
    bool expect_term = true;
    Rational sign(1);
    while (i < s.size()) {
        skip_ws();
        if (i >= s.size()) break;
        char c = s[i];
        if (c == '+' || c == '-') {
            if (expect_term && c == '-') sign = -sign;
            else if (expect_term && c == '+') { /* unary plus */ }
            else {
                sign = (c == '-') ? Rational(-1) : Rational(1);
                expect_term = true;
            }
            ++i;
            continue;
        }
        if (!expect_term) throw ParseError("malformed polynomial: " + s);
        // term: [coef][*][x[^k]]
        Rational coef(1);
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
            coef = rat_from_string(s.substr(i, j - i));
            i = j;
            have_coef = true;
            skip_ws();
            if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        }
        int k = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            k = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw ParseError("malformed exponent in: " + s);
                k = std::stoi(s.substr(i, j - i));
                i = j;
            }
        } else if (!have_coef) {
            throw ParseError("malformed polynomial: " + s);
        }
        Poly term = Poly(sign * coef).shift_up(k);
        out += term;
        sign = Rational(1);
        expect_term = false;
    }
    if (expect_term) throw ParseError("dangling sign in: " + s);
    return out;
}

} // namespace

RatFunc RatFunc::parse(const std::string& s) {
    // form "(num)/(den)" or a bare polynomial
    auto strip = [](std::string v) {
        size_t a = v.find_first_not_of(" \t");
        size_t b = v.find_last_not_of(" \t");
        if (a == std::string::npos) return std::string();
        return v.substr(a, b - a + 1);
    };
    std::string t = strip(s);
    if (!t.empty() && t.front() == '(') {
        size_t close = t.find(')');
        if (close == std::string::npos) throw ParseError("unbalanced parenthesis: " + s);
        std::string nums = t.substr(1, close - 1);
        std::string rest = strip(t.substr(close + 1));
        if (rest.empty()) return RatFunc(parse_poly_expr(nums));
        if (rest.front() != '/') throw ParseError("malformed rational function: " + s);
        rest = strip(rest.substr(1));
        if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
            throw ParseError("malformed rational function: " + s);
        Poly den = parse_poly_expr(rest.substr(1, rest.size() - 2));
        return RatFunc(parse_poly_expr(nums), den);
    }
    return RatFunc(parse_poly_expr(t));
}

} // namespace higgs5
