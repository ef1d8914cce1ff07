#pragma once

#include "higgs5/elem.hpp"

namespace higgs5 {

/// The spectral curve y^2 = x(x-1)(x-lambda)(x-t)(h2 x + h1), used for
/// branch-point bookkeeping only.
struct SpectralCurve {
    enum class Status { Smooth, Nodal, Cone };
    MarkedSphere base;
    HitchinPoint s;
    Status status;
    std::optional<P1Point> sixth_point;       // rho = -h1/h2; absent on the cone
    std::optional<Mark> node;                 // set when Nodal
    std::vector<P1Point> branch_points;       // the six branch points (with rho)
    std::vector<P1Point> normalization_branch; // marked minus rho when Nodal
};

SpectralCurve spectral_curve(const MarkedSphere& sph, const HitchinPoint& s);

/// l_p is an eigendirection of the pole-cleared constant part:
/// det [C l_p | l_p] = 0.
bool is_apparent(const HiggsField& th, Mark p);

struct NilpotentStratum {
    enum class Tag { ZeroSection, Ni, Hodge } tag;
    std::optional<Line16> line; // Ni
    std::optional<Rational> c;  // Ni: coefficient against the canonical generator
    std::optional<int> hodge_index; // Hodge: 1-based, El-matched to the lines
};

/// Places a determinant-zero mu_c-semistable field into one of the 17
/// components of the nilpotent cone.
NilpotentStratum classify_nilpotent(const HiggsField& th);

struct FiberClass {
    enum class Tag { Smooth, NodalHol, NodalApp, NodalBoth, Nilpotent } tag;
    std::optional<Mark> node;
    std::optional<NilpotentStratum> stratum;
};
const char* fiber_tag_name(FiberClass::Tag t);
const char* stratum_tag_name(NilpotentStratum::Tag t);

FiberClass classify_fiber_point(const HiggsField& th, const WeightVector& mu);

/// Canonical generator of the nilpotent line over B attached to a Table-2
/// line through B, in the generator scale convention.
HiggsField line_generator(const ParabolicBundle& B, const Line16& line);

/// lim_{c -> inf} (E, l, c theta) for theta on a nilpotent-cone line: the
/// El-matched Hodge bundle, computed through the phi_c automorphism family.
/// Returns the 1-based Hodge index.
int cstar_limit_infinity(const HiggsField& th);

/// Hodge index (1-based) of a Table-1 label under the El-transported
/// matching, and the inverse lookup.
int hodge_index_of_table1(const MarkedSphere& sph, const Table1Label& label);
Line16 line_of_hodge_index(int index);

} // namespace higgs5
