#pragma once

#include "higgs5/ratfunc.hpp"

#include <vector>

namespace higgs5 {

/// Logarithmic 1-form f(x) dx: every finite pole simple and inside the
/// allowed pole set fixed at construction; pole order at infinity <= 1
/// (computed in the w = 1/x chart where dx = -dw/w^2).
class LogForm {
public:
    LogForm(RatFunc value, std::vector<P1Point> allowed_poles)
        : value_(std::move(value)), allowed_(std::move(allowed_poles)) {
        validate();
    }

    const RatFunc& value() const { return value_; }
    const std::vector<P1Point>& allowed_poles() const { return allowed_; }

    Rational residue_at(const P1Point& p) const { return residue(value_, p); }
    int pole_order_at(const P1Point& p) const {
        return form_pole_order(value_, p);
    }

private:
    void validate() const {
        if (value_.is_zero()) return;
        // finite poles are the roots of den; all rational since we only
        // admit denominators split over Q in this artifact
        Poly den = value_.den();
        // factor out rational roots greedily; anything left of positive
        // degree would be an irrational pole, which we reject
        for (const auto& p : allowed_) {
            if (p.is_infinity()) continue;
            int m = den.eval(p.value()) == 0 ? den.root_multiplicity(p.value()) : 0;
            if (m > 1) throw DomainError("not logarithmic at " + p.str());
            for (int i = 0; i < m; ++i) den = den / Poly::linear_root(p.value());
        }
        if (den.degree() > 0)
            throw DomainError("pole outside the allowed set");
        if (form_pole_order(value_, P1Point::infinity()) > 1)
            throw DomainError("pole at inf of order >= 2");
    }

    RatFunc value_;
    std::vector<P1Point> allowed_;
};

} // namespace higgs5
