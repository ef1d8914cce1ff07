#pragma once

#include "higgs5/higgs.hpp"

#include <map>

namespace higgs5 {

/// Even-cardinality subset of the marked points, the index of an elementary
/// transformation elem_I.
class ElemMask {
public:
    ElemMask() : set_(0) {}
    explicit ElemMask(MarkSet s) : set_(s) {
        if (mark_count(s) % 2 != 0) throw DomainError("elem mask must have even cardinality");
    }
    MarkSet set() const { return set_; }
    bool contains(Mark m) const { return mark_in(set_, m); }
    bool empty() const { return set_ == 0; }
    friend bool operator==(const ElemMask& a, const ElemMask& b) { return a.set_ == b.set_; }
    std::string str() const { return mark_set_str(set_); }

private:
    MarkSet set_;
};

/// elem_I . elem_J = elem_{symmetric difference}.
inline ElemMask group_compose(const ElemMask& a, const ElemMask& b) {
    return ElemMask(a.set() ^ b.set());
}

/// The 16 even masks in canonical (numeric) order; index 0 is the identity.
const std::vector<ElemMask>& elem_masks();
int elem_mask_index(const ElemMask& m);

/// mu_i -> 1 - mu_i on the mask.
WeightVector weight_transform(const WeightVector& mu, const ElemMask& I);

/// The meromorphic gauge realizing an elementary transformation: final-frame
/// coordinates = matrix * original-frame coordinates, with the divisor of
/// its determinant recorded (and validated) over the marked points.
struct MeromorphicGauge {
    Mat2R matrix;
    std::map<Mark, int> det_divisor;
};

struct ElemComputation {
    ParabolicBundle bundle;   // standard-form image, d' in {0,1} enforced by callers
    int new_d;
    Mat2R gauge_x;            // x-frame coordinate change, original -> final
    MeromorphicGauge gauge;   // same matrix plus its validated determinant divisor
    RatFunc conn_twist;       // scalar -1/2 sum_{finite i in I} 1/(x-i) for connections
};

/// Core elem pipeline: local modifications along the parabolic directions,
/// the degree-|I|/2 twist at infinity, and exact Birkhoff re-splitting to
/// O(-d') (+) O(d'). Throws when the result has d' >= 2.
ElemComputation elem_transform(const ParabolicBundle& B, const ElemMask& I);

ParabolicBundle elem_even(const ParabolicBundle& B, const ElemMask& I);
HiggsField elem_even(const HiggsField& th, const ElemMask& I);

/// Rebuild a validated Higgs field from an x-chart matrix of 1-form
/// coefficients on the given bundle (entries must clear to polynomials of
/// the right degrees over the common denominator).
HiggsField higgs_from_matrix(const ParabolicBundle& B, const Mat2R& M);

/// 2x2 Birkhoff factorization: V(w) T(x) U(x) = diag(x^d1, x^d2), d1 >= d2,
/// with U in GL2(Q[x]) and V in GL2(Q[w]) of constant determinant. T must be
/// Laurent (denominators powers of x) with monomial determinant.
struct BirkhoffResult {
    Mat2<Poly> U;   // polynomial in x
    Mat2<Poly> V_w; // polynomial in w
    int d1, d2;
};
BirkhoffResult birkhoff_factor(const Mat2R& T);

enum class ElTarget { Table1, Line16, Hodge16 };

/// The permutation action of a mask on the 16 labels of the target set,
/// computed from generic rational representatives; cached per sphere.
/// perm[label index] = image label index, indices per the canonical
/// enumerations in bundle.hpp.
const std::array<int, 16>& el_permutation(const MarkedSphere& sph, ElTarget target,
                                          const ElemMask& I);

/// The zeta_i <-> Theta_i matching transported from the base case
/// Pair{t,inf} <-> Split{t,inf} by El-equivariance: line label index ->
/// Table-1 label index.
const std::array<int, 16>& line_table1_matching(const MarkedSphere& sph);

/// Canonical Hodge field on a Table-1 bundle: the unique-up-to-scale
/// semistable determinant-zero field, in the generator scale convention.
HiggsField hodge_field(const ParabolicBundle& B);

/// Frame-normal form of a Hodge point (canonical bundle frame, canonical
/// generator scale); equality of normal forms is isomorphism.
struct HodgeNormalForm {
    ParabolicBundle bundle;
    HiggsField field;
    Table1Label label;
    friend bool operator==(const HodgeNormalForm& a, const HodgeNormalForm& b) {
        return a.bundle == b.bundle && a.field == b.field && a.label == b.label;
    }
};
HodgeNormalForm hodge_normal_form(const HiggsField& th);

} // namespace higgs5
