#pragma once

#include "higgs5/point.hpp"
#include "higgs5/poly.hpp"

namespace higgs5 {

/// Rational function num/den over Q, kept with den monic and gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::one()) {}
    RatFunc(Poly num, Poly den) { assign(std::move(num), std::move(den)); }
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one()) {}
    explicit RatFunc(const Rational& c) : num_(Poly(c)), den_(Poly::one()) {}

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Poly::one()); }
    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == Poly::one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const {
        RatFunc r(*this);
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw DomainError("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Evaluation at a finite point; throws on a pole.
    Rational eval(const Rational& p) const {
        Rational d = den_.eval(p);
        if (d == 0) throw DomainError("evaluation at a pole");
        return num_.eval(p) / d;
    }

    /// Order of the pole at p: > 0 pole, 0 regular, < 0 vanishing order.
    /// Requires a nonzero function. At infinity this is deg num - deg den.
    int pole_order(const P1Point& p) const {
        if (is_zero()) throw DomainError("order undefined for the zero function");
        if (p.is_infinity()) return num_.degree() - den_.degree();
        const Rational& v = p.value();
        int dm = den_.eval(v) == 0 ? den_.root_multiplicity(v) : 0;
        int nm = num_.eval(v) == 0 ? num_.root_multiplicity(v) : 0;
        return dm - nm; // gcd=1 means at most one of them is nonzero
    }

    /// Substitute x -> 1/w, returning the result as a rational function in w.
    RatFunc substitute_inverse() const {
        if (is_zero()) return RatFunc();
        int n = num_.degree(), d = den_.degree();
        int k = std::max(n, d);
        // f(1/w) = w^{k-n} rev_n(num) / (w^{k-d} rev_d(den)) after clearing w^{-k}
        Poly rn = num_.reverse(n).shift_up(k - n);
        Poly rd = den_.reverse(d).shift_up(k - d);
        return RatFunc(std::move(rn), std::move(rd));
    }

    /// Derivative d/dx.
    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    std::string str() const;
    static RatFunc parse(const std::string& s);

private:
    void assign(Poly num, Poly den) {
        if (den.is_zero()) throw DomainError("rational function with zero denominator");
        if (num.is_zero()) {
            num_ = Poly();
            den_ = Poly::one();
            return;
        }
        Poly g = Poly::gcd(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
        Rational inv_lead = Rational(1) / den.lead();
        num_ = num * inv_lead;
        den_ = den * inv_lead;
    }
    Poly num_;
    Poly den_;
};

/// Residue of the 1-form f(x) dx at a point of P^1. At infinity the form is
/// rewritten through x = 1/w, dx = -dw/w^2. Throws "not logarithmic at p"
/// if the pole order there exceeds 1.
Rational residue(const RatFunc& f, const P1Point& p);

/// Pole order of the 1-form f(x) dx at p (the chart correction at infinity
/// adds 2 to the plain function order there).
int form_pole_order(const RatFunc& f, const P1Point& p);

} // namespace higgs5
