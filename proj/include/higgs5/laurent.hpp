#pragma once

#include "higgs5/matrix.hpp"

#include <map>

namespace higgs5 {

/// Finite Laurent expansion in a scaling parameter c with rational-function
/// coefficients: sum of c^k * f_k(x).
class CLaurent {
public:
    CLaurent() = default;
    CLaurent(int power, RatFunc coeff) {
        if (!coeff.is_zero()) terms_[power] = std::move(coeff);
    }
    explicit CLaurent(RatFunc constant) : CLaurent(0, std::move(constant)) {}

    const std::map<int, RatFunc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_power() const {
        if (is_zero()) throw DomainError("empty Laurent expansion");
        return terms_.begin()->first;
    }
    int max_power() const {
        if (is_zero()) throw DomainError("empty Laurent expansion");
        return terms_.rbegin()->first;
    }
    RatFunc coeff(int power) const {
        auto it = terms_.find(power);
        return it == terms_.end() ? RatFunc() : it->second;
    }

    friend CLaurent operator+(const CLaurent& a, const CLaurent& b) {
        CLaurent r = a;
        for (const auto& [k, f] : b.terms_) {
            RatFunc s = r.coeff(k) + f;
            if (s.is_zero()) r.terms_.erase(k);
            else r.terms_[k] = std::move(s);
        }
        return r;
    }
    friend CLaurent operator-(const CLaurent& a, const CLaurent& b) { return a + (-b); }
    CLaurent operator-() const {
        CLaurent r;
        for (const auto& [k, f] : terms_) r.terms_[k] = -f;
        return r;
    }
    friend CLaurent operator*(const CLaurent& a, const CLaurent& b) {
        CLaurent r;
        for (const auto& [ka, fa] : a.terms_)
            for (const auto& [kb, fb] : b.terms_) {
                RatFunc s = r.coeff(ka + kb) + fa * fb;
                if (s.is_zero()) r.terms_.erase(ka + kb);
                else r.terms_[ka + kb] = std::move(s);
            }
        return r;
    }
    friend bool operator==(const CLaurent& a, const CLaurent& b) { return a.terms_ == b.terms_; }

    /// Value at c -> 0; throws "divergent family" when negative powers remain.
    RatFunc limit_at_zero() const {
        if (!is_zero() && min_power() < 0) throw DomainError("divergent family");
        return coeff(0);
    }
    /// Value at c -> infinity; throws when positive powers remain.
    RatFunc limit_at_infinity() const {
        if (!is_zero() && max_power() > 0) throw DomainError("divergent family");
        return coeff(0);
    }

private:
    std::map<int, RatFunc> terms_;
};

template <>
inline CLaurent ring_one<CLaurent>() { return CLaurent(RatFunc::one()); }

using LaurentMatrix = Mat2<CLaurent>;
using LaurentVec = std::array<CLaurent, 2>;

inline LaurentMatrix laurent_matrix(const Mat2R& m, int power = 0) {
    return {CLaurent(power, m.a), CLaurent(power, m.b), CLaurent(power, m.c),
            CLaurent(power, m.d)};
}

/// Projective limit of a direction family as c -> 0: the coefficient vector
/// of the lowest power of c present.
Vec2Q projective_limit_at_zero(const LaurentVec& v);
/// Same at c -> infinity (highest power dominates).
Vec2Q projective_limit_at_infinity(const LaurentVec& v);

} // namespace higgs5
