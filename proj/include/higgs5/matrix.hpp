#pragma once

#include "higgs5/ratfunc.hpp"

#include <array>

namespace higgs5 {

template <class T>
inline T ring_one();
template <>
inline Rational ring_one<Rational>() { return Rational(1); }
template <>
inline RatFunc ring_one<RatFunc>() { return RatFunc::one(); }
template <>
inline Poly ring_one<Poly>() { return Poly::one(); }

/// 2x2 matrix over a commutative ring/field type T (entries a b / c d).
template <class T>
struct Mat2 {
    T a{}, b{}, c{}, d{};

    static Mat2 identity() { return {ring_one<T>(), T{}, T{}, ring_one<T>()}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(T x, T y) { return {std::move(x), T{}, T{}, std::move(y)}; }
    static Mat2 from_columns(const std::array<T, 2>& c1, const std::array<T, 2>& c2) {
        return {c1[0], c2[0], c1[1], c2[1]};
    }

    T det() const { return a * d - b * c; }
    T trace() const { return a + d; }
    bool is_zero() const { return a == T{} && b == T{} && c == T{} && d == T{}; }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    Mat2 operator-() const { return {T{} - a, T{} - b, T{} - c, T{} - d}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(const T& s, const Mat2& m) {
        return {s * m.a, s * m.b, s * m.c, s * m.d};
    }
    std::array<T, 2> operator*(const std::array<T, 2>& v) const {
        return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

    Mat2 inverse() const {
        T dt = det();
        if (dt == T{}) throw DomainError("singular 2x2 matrix");
        T inv = ring_one<T>() / dt;
        return {d * inv, (T{} - b) * inv, (T{} - c) * inv, a * inv};
    }

    template <class F>
    auto map(F&& f) const -> Mat2<decltype(f(a))> {
        return {f(a), f(b), f(c), f(d)};
    }
};

using Mat2Q = Mat2<Rational>;
using Mat2R = Mat2<RatFunc>;
using Vec2Q = std::array<Rational, 2>;
using Vec2R = std::array<RatFunc, 2>;

inline Mat2R to_ratfunc(const Mat2Q& m) {
    return {RatFunc(m.a), RatFunc(m.b), RatFunc(m.c), RatFunc(m.d)};
}

/// Entrywise residue of the matrix form M(x) dx at p.
inline Mat2Q residue_entrywise(const Mat2R& m, const P1Point& p) {
    return {residue(m.a, p), residue(m.b, p), residue(m.c, p), residue(m.d, p)};
}

inline Mat2Q eval_entrywise(const Mat2R& m, const Rational& x) {
    return {m.a.eval(x), m.b.eval(x), m.c.eval(x), m.d.eval(x)};
}

inline Mat2R derivative_entrywise(const Mat2R& m) {
    return {m.a.derivative(), m.b.derivative(), m.c.derivative(), m.d.derivative()};
}

inline Mat2R substitute_inverse_entrywise(const Mat2R& m) {
    return {m.a.substitute_inverse(), m.b.substitute_inverse(),
            m.c.substitute_inverse(), m.d.substitute_inverse()};
}

} // namespace higgs5
