#pragma once

#include "higgs5/hitchin.hpp"
#include "higgs5/laurent.hpp"

namespace higgs5 {

/// Prescribed residue eigenvalues over the marked points.
class EigenvalueVector {
public:
    explicit EigenvalueVector(std::array<Rational, 5> nu) : nu_(std::move(nu)) {}
    const Rational& at(Mark m) const { return nu_[static_cast<size_t>(m)]; }
    std::array<Rational, 5>& raw() { return nu_; }
    const std::array<Rational, 5>& raw() const { return nu_; }
    friend bool operator==(const EigenvalueVector& a, const EigenvalueVector& b) {
        return a.nu_ == b.nu_;
    }

private:
    std::array<Rational, 5> nu_;
};

/// nu_i != 0 for all i and no signed sum of the nu_i is an integer.
bool is_generic(const EigenvalueVector& nu);

/// Trace-free logarithmic connection d + A(x) dx on a parabolic bundle,
/// with residue eigenvalues +-nu_i and l_i the nu_i-eigenspace.
class Connection {
public:
    const ParabolicBundle& base() const { return base_; }
    const Mat2R& matrix_x() const { return A_; }
    const EigenvalueVector& nu() const { return nu_; }

    /// w-chart matrix: -(T A T^{-1})(1/w)/w^2 + diag(d,-d)/w.
    Mat2R matrix_w() const;

    friend bool operator==(const Connection& a, const Connection& b) {
        return a.base_ == b.base_ && a.A_ == b.A_ && a.nu_ == b.nu_;
    }

private:
    friend Connection make_connection(ParabolicBundle B, Mat2R A, EigenvalueVector nu);
    Connection(ParabolicBundle B, Mat2R A, EigenvalueVector nu)
        : base_(std::move(B)), A_(std::move(A)), nu_(std::move(nu)) {}
    ParabolicBundle base_;
    Mat2R A_;
    EigenvalueVector nu_;
};

/// Fully validated construction: poles simple and inside the divisor, trace
/// zero, residues with the right eigenvalues and eigenspaces at all marks.
Connection make_connection(ParabolicBundle B, Mat2R A, EigenvalueVector nu);

/// Residue of the connection at a marked point, in the chart frame there.
Mat2Q connection_residue(const Connection& C, Mark i);

/// Elementary transformation of the connection; the square-root twist adds
/// -1/2 sum_{finite i in I} dx/(x - i) to the trace part, and the residue
/// eigenvalues at the masked points move by 1/2 accordingly.
Connection elem_even(const Connection& C, const ElemMask& I);

/// The explicit family nabla_0 + a1 theta_1 + a2 theta_2 on the bundle
/// l_0 = l_lambda = l_t = (0,1), l_1 = (1,1), l_inf = (1,0).
Connection thm64_family(const MarkedSphere& sph, const EigenvalueVector& nu, const Rational& a1,
                        const Rational& a2);

/// The n = 5 family of the weighted counterexample, slot convention
/// (t1, t2, t3, t4, t5) = (lambda, t, 0, 1, inf); l_{t1} = (u, 1).
Connection prop63_family(const MarkedSphere& sph, const EigenvalueVector& nu, const Rational& u,
                         const Rational& a1, const Rational& a2);

/// A connection with the prescribed eigenvalue data on a given bundle,
/// solved exactly from the residue conditions (free parameters set to 0).
Connection fuchsian_connection(const ParabolicBundle& B, const EigenvalueVector& nu);

/// lim_{c -> 0} g_c (c nabla) g_c^{-1} with g_c = diag(c^{k1}, c^{k2});
/// returns the limit Higgs field on the projected bundle. Throws
/// "divergent family" when the limit does not exist entrywise (the identity
/// family k1 = k2 is rejected up front: the d-part of c nabla has no limit
/// interpretation).
std::pair<HiggsField, ParabolicBundle> scaled_gauge_limit(const Connection& C,
                                                          std::pair<int, int> exponents);

/// The mu-limit lim_{c -> 0} c . (E, nabla, l), on the cases the paper
/// computes; everything else reports Uncovered.
struct PiMuLimit {
    enum class Kind { StableBundle, HodgeLimit, FamilyLimit, Uncovered } kind;
    std::optional<HiggsField> field;        // absent for Uncovered
    std::optional<HodgeNormalForm> hodge;   // set for HodgeLimit
};
PiMuLimit pi_mu_limit(const Connection& C, const WeightVector& mu);

} // namespace higgs5
