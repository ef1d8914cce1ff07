#pragma once

#include "higgs5/matrix.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace higgs5 {

/// The five marked points in canonical order.
enum class Mark : int { P0 = 0, P1 = 1, PLambda = 2, PT = 3, PInf = 4 };

constexpr std::array<Mark, 5> kMarks = {Mark::P0, Mark::P1, Mark::PLambda, Mark::PT,
                                        Mark::PInf};

inline const char* mark_name(Mark m) {
    switch (m) {
        case Mark::P0: return "0";
        case Mark::P1: return "1";
        case Mark::PLambda: return "lambda";
        case Mark::PT: return "t";
        case Mark::PInf: return "inf";
    }
    return "?";
}
Mark mark_from_name(const std::string& s);

/// Subset of marked points as a 5-bit mask.
using MarkSet = unsigned; // bits indexed by Mark

inline bool mark_in(MarkSet s, Mark m) { return (s >> static_cast<int>(m)) & 1u; }
inline MarkSet mark_bit(Mark m) { return 1u << static_cast<int>(m); }
inline int mark_count(MarkSet s) { return __builtin_popcount(s); }
std::string mark_set_str(MarkSet s);

/// P^1 with the divisor 0 + 1 + lambda + t + inf of five distinct points.
class MarkedSphere {
public:
    MarkedSphere(Rational lambda, Rational t) : lambda_(std::move(lambda)), t_(std::move(t)) {
        if (lambda_ == 0 || lambda_ == 1 || t_ == 0 || t_ == 1 || lambda_ == t_)
            throw DomainError("marked points 0,1,lambda,t,inf must be pairwise distinct");
    }

    const Rational& lambda() const { return lambda_; }
    const Rational& t() const { return t_; }

    P1Point point(Mark m) const {
        switch (m) {
            case Mark::P0: return P1Point(Rational(0));
            case Mark::P1: return P1Point(Rational(1));
            case Mark::PLambda: return P1Point(lambda_);
            case Mark::PT: return P1Point(t_);
            case Mark::PInf: return P1Point::infinity();
        }
        throw DomainError("bad mark");
    }

    std::optional<Mark> mark_of(const P1Point& p) const {
        for (Mark m : kMarks)
            if (point(m) == p) return m;
        return std::nullopt;
    }

    /// x(x-1)(x-lambda)(x-t), the common denominator of Higgs matrices.
    Poly vanishing_poly() const {
        return Poly::x() * Poly::linear_root(Rational(1)) * Poly::linear_root(lambda_) *
               Poly::linear_root(t_);
    }

    friend bool operator==(const MarkedSphere& a, const MarkedSphere& b) {
        return a.lambda_ == b.lambda_ && a.t_ == b.t_;
    }

private:
    Rational lambda_;
    Rational t_;
};

/// A point of P(Q^2), stored with the first nonzero coordinate equal to 1.
class ProjDirection {
public:
    ProjDirection() : c_{Rational(1), Rational(0)} {}
    ProjDirection(const Rational& x, const Rational& y) : c_{x, y} {
        if (x == 0 && y == 0) throw DomainError("projective direction (0,0)");
        if (x != 0) {
            c_[1] = y / x;
            c_[0] = 1;
        } else {
            c_[1] = 1;
        }
    }
    explicit ProjDirection(const Vec2Q& v) : ProjDirection(v[0], v[1]) {}

    const Rational& x() const { return c_[0]; }
    const Rational& y() const { return c_[1]; }
    Vec2Q vec() const { return {c_[0], c_[1]}; }

    friend bool operator==(const ProjDirection& a, const ProjDirection& b) {
        return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1];
    }
    friend bool operator!=(const ProjDirection& a, const ProjDirection& b) { return !(a == b); }
    friend bool operator<(const ProjDirection& a, const ProjDirection& b) {
        if (a.c_[0] != b.c_[0]) return a.c_[0] < b.c_[0];
        return a.c_[1] < b.c_[1];
    }

    /// Incidence with a fiber vector: det [v | this] == 0.
    bool contains(const Vec2Q& v) const { return v[0] * c_[1] - v[1] * c_[0] == 0; }

private:
    Vec2Q c_;
};

using DirectionMap = std::array<ProjDirection, 5>;

/// Quasiparabolic bundle O(-d) (+) O(d) on the marked sphere with a direction
/// over each marked point. The direction at inf is stored in the w = 1/x
/// chart frame; the transition from the x-frame to the w-frame is
/// diag(x^d, x^-d).
class ParabolicBundle {
public:
    ParabolicBundle(MarkedSphere sphere, int d, DirectionMap directions)
        : sphere_(std::move(sphere)), d_(d), dirs_(std::move(directions)) {
        if (d < 0) throw DomainError("splitting exponent must be nonnegative");
    }

    const MarkedSphere& sphere() const { return sphere_; }
    int d() const { return d_; }
    const DirectionMap& directions() const { return dirs_; }
    const ProjDirection& direction(Mark m) const { return dirs_[static_cast<size_t>(m)]; }

    friend bool operator==(const ParabolicBundle& a, const ParabolicBundle& b) {
        return a.sphere_ == b.sphere_ && a.d_ == b.d_ && a.dirs_ == b.dirs_;
    }

private:
    MarkedSphere sphere_;
    int d_;
    DirectionMap dirs_;
};

/// Weight vector mu in [0,1]^5.
class WeightVector {
public:
    explicit WeightVector(std::array<Rational, 5> mu) : mu_(std::move(mu)) {
        for (const auto& m : mu_)
            if (m < 0 || m > 1) throw DomainError("weight outside [0,1]");
    }
    static WeightVector central() {
        Rational h(1, 2);
        return WeightVector({h, h, h, h, h});
    }
    const Rational& at(Mark m) const { return mu_[static_cast<size_t>(m)]; }
    Rational total() const {
        Rational s(0);
        for (const auto& m : mu_) s += m;
        return s;
    }
    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.mu_ == b.mu_; }

private:
    std::array<Rational, 5> mu_;
};

/// Saturated line subbundle witness: the embedding O(degree) -> O(-d)(+)O(d)
/// with components (a, b), deg a <= -d - degree, deg b <= d - degree,
/// gcd(a,b) = 1 and at least one component attaining its bound at inf.
struct SubbundleWitness {
    int degree = 0;
    Poly a, b;
    MarkSet incident = 0;

    /// Fiber value at a finite point, in the x-chart frame.
    Vec2Q fiber_at(const Rational& x) const { return {a.eval(x), b.eval(x)}; }
    /// Fiber value at inf in the w-chart frame: top coefficients at the
    /// degree bounds.
    Vec2Q fiber_at_inf(int d) const {
        return {a.coeff(-d - degree), b.coeff(d - degree)};
    }
};

enum class Stability { Stable, StrictlySemistable, Unstable };
const char* stability_name(Stability s);

struct StabilityReport {
    Stability verdict;
    Rational min_stab;
    SubbundleWitness worst;
};

/// One of the 16 special line labels of Table 2: 10 pairs, 5 quadruples
/// (stored by their 4-point set), 1 quintuple.
struct Line16 {
    enum class Kind { Pair, Quad, Quint } kind;
    MarkSet subset;

    friend bool operator==(const Line16& a, const Line16& b) {
        return a.kind == b.kind && a.subset == b.subset;
    }
    friend bool operator<(const Line16& a, const Line16& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.subset < b.subset;
    }
    std::string str() const;
};

/// Canonical enumeration of the 16 line labels; index 0 is Pair{t,inf}
/// (the paper's zeta_1), then the remaining pairs in lexicographic order,
/// then the quads, then the quint.
const std::vector<Line16>& line16_labels();
int line16_index(const Line16& l);

/// Table 1 label: the 16 unstable bundles supporting semistable Higgs fields.
struct Table1Label {
    enum class Kind { Split, OneOnPlus, AllOnMinus } kind;
    // Split: the 2-element subset lying on the second trivial factor;
    // OneOnPlus: the single mark on O(1).
    MarkSet subset = 0;

    friend bool operator==(const Table1Label& a, const Table1Label& b) {
        return a.kind == b.kind && a.subset == b.subset;
    }
    friend bool operator<(const Table1Label& a, const Table1Label& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.subset < b.subset;
    }
    std::string str() const;
};

/// Canonical enumeration matching line16_labels: index 0 is Split{t,inf}
/// (the bundle of Theta_1), pairs in the same order, then OneOnPlus by
/// point order, then AllOnMinus.
const std::vector<Table1Label>& table1_labels();
int table1_index(const Table1Label& l);

/// Solvability of the incidence system: does a nonzero (a, b) with
/// deg a <= -d - e, deg b <= d - e pass through l_i for all i in S?
bool incidence_solvable(const ParabolicBundle& B, MarkSet S, int e);

/// Maximal-degree saturated line subbundle through the directions of S,
/// searching degrees from d down to -3; absent if none exists there.
std::optional<SubbundleWitness> subline_max(const ParabolicBundle& B, MarkSet S);

/// Exact Stab_mu value of a witness; validates the claimed incidence.
Rational stab_value(const ParabolicBundle& B, const WeightVector& mu,
                    const SubbundleWitness& L);

/// Stability of the quasiparabolic bundle against every saturated line
/// subbundle of degree >= -3 (lower degrees provably cannot destabilize).
StabilityReport classify_stability(const ParabolicBundle& B, const WeightVector& mu);

/// Same search with an arbitrary degree cutoff (used by the test oracle).
StabilityReport classify_stability_cutoff(const ParabolicBundle& B, const WeightVector& mu,
                                          int min_degree);

/// The set of Table-2 line labels whose defining incidence holds for B.
/// Requires a mu_c-stable bundle; d = 1 inputs are moved to a d = 0 chart
/// by an elementary transformation and labels are mapped back.
std::set<Line16> lines_through(const ParabolicBundle& B);

/// Direct evaluation of the 16 conditions on a d = 0 bundle (no elem).
std::set<Line16> lines_through_d0(const ParabolicBundle& B);

/// Table-1 membership test; absent for anything else.
std::optional<Table1Label> classify_table1(const ParabolicBundle& B);

/// Constant frame change of a d = 0 bundle (acts on all directions,
/// including the one at inf, since the transition there is the identity).
ParabolicBundle apply_constant_gauge(const ParabolicBundle& B, const Mat2Q& g);

/// Witness incidences recomputed from scratch.
MarkSet witness_incidence(const ParabolicBundle& B, const SubbundleWitness& w);

/// Canonical representative of the isomorphism class (frame-normal form).
/// Two bundles are isomorphic iff their canonical forms compare equal.
ParabolicBundle canonical_form(const ParabolicBundle& B);

/// The constant gauge realizing canonical_form on a d = 0 bundle.
Mat2Q canonical_gauge_d0(const ParabolicBundle& B);

/// Normalized (u,v) chart data for bundles with l_0, l_1, l_inf pairwise
/// distinct: the gauge moving them to (1,0), (1,1), (0,1).
struct ChartForm {
    ParabolicBundle bundle;
    Rational u, v;
};
std::optional<ChartForm> to_normalized_chart(const ParabolicBundle& B);

/// Builds the normalized-chart bundle l_0=(1,0), l_1=(1,1), l_lambda=(1,u),
/// l_t=(1,v), l_inf=(0,1).
ParabolicBundle chart_bundle(const MarkedSphere& sph, const Rational& u, const Rational& v);

} // namespace higgs5
