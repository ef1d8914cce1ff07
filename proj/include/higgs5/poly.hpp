#pragma once

#include "higgs5/rational.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace higgs5 {

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial is the empty coefficient list; no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rational> cs) : coeffs_(cs) { trim(); }
    explicit Poly(std::vector<Rational> cs) : coeffs_(std::move(cs)) { trim(); }
    explicit Poly(const Rational& c) : coeffs_{c} { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly{Rational(1)}; }
    /// The monomial x.
    static Poly x() { return Poly{Rational(0), Rational(1)}; }
    /// x - p.
    static Poly linear_root(const Rational& p) { return Poly{-p, Rational(1)}; }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    /// Coefficient of x^k (0 beyond the stored range).
    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
        return coeffs_[static_cast<size_t>(k)];
    }
    Rational lead() const {
        if (is_zero()) throw DomainError("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) cs[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) cs[i] += b.coeffs_[i];
        return Poly(std::move(cs));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> cs(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(cs));
    }
    friend Poly operator*(const Rational& c, const Poly& p) { return Poly(c) * p; }
    friend Poly operator*(const Poly& p, const Rational& c) { return Poly(c) * p; }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Euclidean division; throws on zero divisor.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        Poly rem = a;
        std::vector<Rational> q;
        int db = b.degree();
        if (rem.degree() >= db) q.assign(static_cast<size_t>(rem.degree() - db + 1), Rational(0));
        while (!rem.is_zero() && rem.degree() >= db) {
            int k = rem.degree() - db;
            Rational c = rem.lead() / b.lead();
            q[static_cast<size_t>(k)] = c;
            // rem -= c x^k b, done in place to avoid re-trimming churn
            for (int i = 0; i <= db; ++i)
                rem.coeffs_[static_cast<size_t>(i + k)] -= c * b.coeffs_[static_cast<size_t>(i)];
            rem.trim();
        }
        return {Poly(std::move(q)), rem};
    }
    friend Poly operator/(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw DomainError("inexact polynomial division");
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    bool divides(const Poly& a) const { return divmod(a, *this).second.is_zero(); }

    /// Monic gcd (gcd(0,0) = 0).
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic_or_zero();
    }

    Poly monic_or_zero() const {
        if (is_zero()) return Poly();
        Poly r(*this);
        Rational l = r.lead();
        for (auto& c : r.coeffs_) c /= l;
        return r;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rational> cs(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) cs[i - 1] = coeffs_[i] * Rational(i);
        return Poly(std::move(cs));
    }

    /// Multiplicity of the root p (0 if p is not a root).
    int root_multiplicity(const Rational& p) const {
        if (is_zero()) throw DomainError("root multiplicity of zero polynomial");
        Poly lin = linear_root(p);
        Poly cur = *this;
        int m = 0;
        while (cur.eval(p) == 0) {
            cur = divmod(cur, lin).first;
            ++m;
        }
        return m;
    }

    /// Reverse coefficients as a degree-bound-k reversal: x^k p(1/x).
    /// Requires degree() <= k.
    Poly reverse(int k) const {
        if (degree() > k) throw DomainError("reversal bound below degree");
        std::vector<Rational> cs(static_cast<size_t>(k) + 1, Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i)
            cs[static_cast<size_t>(k) - i] = coeffs_[i];
        return Poly(std::move(cs));
    }

    /// x^k * p, k >= 0.
    Poly shift_up(int k) const {
        if (is_zero() || k == 0) return *this;
        std::vector<Rational> cs(coeffs_.size() + static_cast<size_t>(k), Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) cs[i + static_cast<size_t>(k)] = coeffs_[i];
        return Poly(std::move(cs));
    }

    /// Exact division by x^k; requires valuation >= k.
    Poly shift_down(int k) const {
        if (k == 0 || is_zero()) return *this;
        if (valuation() < k) throw DomainError("inexact shift_down");
        return Poly(std::vector<Rational>(coeffs_.begin() + k, coeffs_.end()));
    }

    /// Index of the lowest nonzero coefficient.
    int valuation() const {
        if (is_zero()) throw DomainError("valuation of zero polynomial");
        int v = 0;
        while (coeffs_[static_cast<size_t>(v)] == 0) ++v;
        return v;
    }

    /// True when the polynomial is c * x^k.
    bool is_monomial() const { return !is_zero() && valuation() == degree(); }

    /// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
    static std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
        Poly r0 = a, r1 = b;
        Poly s0 = Poly::one(), s1 = Poly();
        Poly t0 = Poly(), t1 = Poly::one();
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Poly s = s0 - q * s1;
            Poly t = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r);
            s0 = std::move(s1); s1 = std::move(s);
            t0 = std::move(t1); t1 = std::move(t);
        }
        if (r0.is_zero()) return {Poly(), Poly(), Poly()};
        Rational inv = Rational(1) / r0.lead();
        return {r0 * inv, s0 * inv, t0 * inv};
    }

    /// Exact square root if the polynomial is a perfect square in Q[x].
    std::optional<Poly> sqrt_exact() const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

inline std::optional<Poly> Poly::sqrt_exact() const {
    if (is_zero()) return Poly();
    int d = degree();
    if (d % 2 != 0) return std::nullopt;
    // lead must be a rational square
    Rational l = lead();
    if (l < 0) return std::nullopt;
    auto int_sqrt = [](const Integer& n) -> std::optional<Integer> {
        if (n < 0) return std::nullopt;
        Integer r = boost::multiprecision::sqrt(n);
        if (r * r != n) return std::nullopt;
        return r;
    };
    auto sn = int_sqrt(rat_num(l));
    auto sd = int_sqrt(rat_den(l));
    if (!sn || !sd) return std::nullopt;
    // Solve for coefficients top-down: (sum s_i x^i)^2 = this.
    int h = d / 2;
    std::vector<Rational> s(static_cast<size_t>(h) + 1, Rational(0));
    s[static_cast<size_t>(h)] = Rational(*sn, *sd);
    for (int k = h - 1; k >= 0; --k) {
        // coefficient of x^{k+h} in the square: 2 s_k s_h + sum_{i+j=k+h, i,j<h,>k} s_i s_j
        Rational acc(0);
        for (int i = k + 1; i <= h - 1; ++i) {
            int j = k + h - i;
            if (j > k && j < h && j >= 0 && i < j) acc += 2 * s[size_t(i)] * s[size_t(j)];
            else if (j == i) acc += s[size_t(i)] * s[size_t(i)];
        }
        Rational target = coeff(k + h) - acc;
        s[static_cast<size_t>(k)] = target / (2 * s[static_cast<size_t>(h)]);
    }
    Poly cand{std::vector<Rational>(s)};
    if (cand * cand == *this) return cand;
    return std::nullopt;
}

} // namespace higgs5
