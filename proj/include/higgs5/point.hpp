#pragma once

#include "higgs5/rational.hpp"

#include <compare>
#include <string>

namespace higgs5 {

/// Point of P^1 over Q: a finite rational value or the point at infinity.
class P1Point {
public:
    P1Point() : finite_(true), value_(0) {}
    explicit P1Point(Rational v) : finite_(true), value_(std::move(v)) {}
    static P1Point infinity() {
        P1Point p;
        p.finite_ = false;
        p.value_ = 0;
        return p;
    }

    bool is_infinity() const { return !finite_; }
    const Rational& value() const {
        if (!finite_) throw DomainError("value() of the point at infinity");
        return value_;
    }

    friend bool operator==(const P1Point& a, const P1Point& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend bool operator!=(const P1Point& a, const P1Point& b) { return !(a == b); }
    friend bool operator<(const P1Point& a, const P1Point& b) {
        if (a.finite_ != b.finite_) return a.finite_; // finite points before inf
        if (!a.finite_) return false;
        return a.value_ < b.value_;
    }

    std::string str() const { return finite_ ? rat_to_string(value_) : "inf"; }

    static P1Point parse(const std::string& s) {
        if (s == "inf") return infinity();
        return P1Point(rat_from_string(s));
    }

private:
    bool finite_;
    Rational value_;
};

} // namespace higgs5
