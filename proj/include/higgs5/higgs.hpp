#pragma once

#include "higgs5/bundle.hpp"

namespace higgs5 {

/// Value of the Hitchin map: det theta = (h1 + h2 x) dx^2 / (x(x-1)(x-lambda)(x-t)).
struct HitchinPoint {
    Rational h1, h2;
    bool is_zero() const { return h1 == 0 && h2 == 0; }
    friend bool operator==(const HitchinPoint& a, const HitchinPoint& b) {
        return a.h1 == b.h1 && a.h2 == b.h2;
    }
};

/// Traceless Higgs field [[alpha, beta], [gamma, -alpha]] dx / (x(x-1)(x-lambda)(x-t))
/// in the x-chart frame, nilpotent with respect to the parabolic directions.
/// Degree bounds deg alpha <= 3, deg beta <= 3-2d, deg gamma <= 3+2d make
/// every pole (including inf) simple.
class HiggsField {
public:
    const ParabolicBundle& base() const { return base_; }
    const Poly& alpha() const { return alpha_; }
    const Poly& beta() const { return beta_; }
    const Poly& gamma() const { return gamma_; }
    bool is_zero() const { return alpha_.is_zero() && beta_.is_zero() && gamma_.is_zero(); }

    /// x-chart matrix of 1-form coefficients.
    Mat2R matrix_x() const;
    /// w-chart matrix (frame change diag(x^d, x^-d), then dx = -dw/w^2).
    Mat2R matrix_w() const;

    friend HiggsField operator*(const Rational& c, const HiggsField& th);
    friend HiggsField operator+(const HiggsField& a, const HiggsField& b);

    friend bool operator==(const HiggsField& a, const HiggsField& b) {
        return a.base_ == b.base_ && a.alpha_ == b.alpha_ && a.beta_ == b.beta_ &&
               a.gamma_ == b.gamma_;
    }

private:
    friend HiggsField make_higgs(ParabolicBundle B, Poly alpha, Poly beta, Poly gamma);
    friend std::array<Mat2Q, 5> monomial_field_residues(const ParabolicBundle& B, int slot,
                                                        int power);
    HiggsField(ParabolicBundle B, Poly a, Poly b, Poly g)
        : base_(std::move(B)), alpha_(std::move(a)), beta_(std::move(b)), gamma_(std::move(g)) {}
    ParabolicBundle base_;
    Poly alpha_, beta_, gamma_;
};

/// Validated construction: degree bounds and residue nilpotency
/// (Res . l_i = 0, image inside l_i) at all five marked points.
HiggsField make_higgs(ParabolicBundle B, Poly alpha, Poly beta, Poly gamma);

inline HiggsField zero_higgs(ParabolicBundle B) {
    return make_higgs(std::move(B), Poly(), Poly(), Poly());
}

/// Residue of theta at a marked point, in the chart frame there
/// (w-chart at inf).
Mat2Q residue_matrix(const HiggsField& th, Mark i);

/// Pole-cleared evaluation at a marked point: the residue when theta has a
/// simple pole there, the plain matrix value when it is holomorphic.
Mat2Q constant_part(const HiggsField& th, Mark i);

/// Exact Hitchin coordinates; asserts the determinant numerator reduces to
/// degree <= 1 over the common denominator.
HitchinPoint higgs_det(const HiggsField& th);

struct InvariantLines {
    enum class Kind { All, One, None } kind;
    std::optional<SubbundleWitness> line; // set for One
};

/// All invariant lines: the zero field fixes everything; a nonzero nilpotent
/// field has exactly its saturated kernel; det != 0 admits none (the
/// determinant numerator is never a perfect square over Q).
InvariantLines invariant_lines(const HiggsField& th);

/// Parabolic Higgs stability: Stab_mu over invariant lines only.
Stability higgs_stability(const HiggsField& th, const WeightVector& mu);

/// Exact basis of the nilpotent-compatible field space on B, echelonized by
/// coefficient pivot order (alpha_0..alpha_3, beta..., gamma...).
std::vector<HiggsField> higgs_space(const ParabolicBundle& B);

/// Residues at the five marks of the raw field with a single monomial x^power
/// in the given slot (0 = alpha, 1 = beta, 2 = gamma); the linear building
/// block behind higgs_space and related solvers.
std::array<Mat2Q, 5> monomial_field_residues(const ParabolicBundle& B, int slot, int power);

/// The paper's chart fields theta_1, theta_2 on a normalized-chart bundle
/// (l_0=(1,0), l_1=(1,1), l_lambda=(1,u), l_t=(1,v), l_inf=(0,1)).
std::pair<HiggsField, HiggsField> chart_theta_pair(const ParabolicBundle& B);

/// The displayed product formulas for det(c1 theta_1 + c2 theta_2) on the
/// normalized chart (with the lambda-u factor; see the ledger note on the
/// typo in the printed h2).
HitchinPoint chart_det_formula(const MarkedSphere& sph, const Rational& u, const Rational& v,
                               const Rational& c1, const Rational& c2);

/// Scales th so that the residue at the first marked point with nonzero
/// residue equals [[ab, -a^2], [b^2, -ab]] for the normalized direction
/// (a, b) there. Reproduces the paper's theta_1 on zeta_1-frame bundles.
HiggsField normalize_nilpotent_generator(const HiggsField& th);

/// The scale kappa with residue = kappa * [[ab, -a^2], [b^2, -ab]] at the
/// first nonzero-residue mark.
Rational nilpotent_generator_scale(const HiggsField& th);

} // namespace higgs5
