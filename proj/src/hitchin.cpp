#include "higgs5/hitchin.hpp"

#include "higgs5/laurent.hpp"

#include <cassert>
#include <climits>

namespace higgs5 {

namespace {

// the coefficients at the dominant power are constants for the families
// this artifact builds; anything else is a usage error
Rational laurent_const(const RatFunc& f) {
    if (f.is_zero()) return Rational(0);
    if (!f.is_polynomial() || f.num().degree() > 0)
        throw DomainError("direction family is not constant in x");
    return f.num().coeff(0);
}

} // namespace

Vec2Q projective_limit_at_zero(const LaurentVec& v) {
    if (v[0].is_zero() && v[1].is_zero()) throw DomainError("zero direction family");
    int k = INT_MAX;
    for (const auto& e : v)
        if (!e.is_zero()) k = std::min(k, e.min_power());
    return {laurent_const(v[0].coeff(k)), laurent_const(v[1].coeff(k))};
}

Vec2Q projective_limit_at_infinity(const LaurentVec& v) {
    if (v[0].is_zero() && v[1].is_zero()) throw DomainError("zero direction family");
    int k = INT_MIN;
    for (const auto& e : v)
        if (!e.is_zero()) k = std::max(k, e.max_power());
    return {laurent_const(v[0].coeff(k)), laurent_const(v[1].coeff(k))};
}

const char* fiber_tag_name(FiberClass::Tag t) {
    switch (t) {
        case FiberClass::Tag::Smooth: return "Smooth";
        case FiberClass::Tag::NodalHol: return "NodalHol";
        case FiberClass::Tag::NodalApp: return "NodalApp";
        case FiberClass::Tag::NodalBoth: return "NodalBoth";
        case FiberClass::Tag::Nilpotent: return "Nilpotent";
    }
    return "?";
}

const char* stratum_tag_name(NilpotentStratum::Tag t) {
    switch (t) {
        case NilpotentStratum::Tag::ZeroSection: return "ZeroSection";
        case NilpotentStratum::Tag::Ni: return "Ni";
        case NilpotentStratum::Tag::Hodge: return "Hodge";
    }
    return "?";
}

SpectralCurve spectral_curve(const MarkedSphere& sph, const HitchinPoint& s) {
    SpectralCurve out{sph, s, SpectralCurve::Status::Cone, std::nullopt, std::nullopt, {}, {}};
    std::vector<P1Point> marked;
    for (Mark m : kMarks) marked.push_back(sph.point(m));
    if (s.is_zero()) {
        out.branch_points = marked;
        return out;
    }
    P1Point rho = s.h2 == 0 ? P1Point::infinity() : P1Point(-s.h1 / s.h2);
    out.sixth_point = rho;
    out.branch_points = marked;
    out.branch_points.push_back(rho);
    auto node = sph.mark_of(rho);
    if (node) {
        out.status = SpectralCurve::Status::Nodal;
        out.node = *node;
        for (const auto& p : marked)
            if (!(p == rho)) out.normalization_branch.push_back(p);
    } else {
        out.status = SpectralCurve::Status::Smooth;
    }
    return out;
}

bool is_apparent(const HiggsField& th, Mark p) {
    Mat2Q C = constant_part(th, p);
    Vec2Q l = th.base().direction(p).vec();
    Vec2Q cl = C * l;
    return cl[0] * l[1] - cl[1] * l[0] == 0;
}

int hodge_index_of_table1(const MarkedSphere& sph, const Table1Label& label) {
    const auto& matching = line_table1_matching(sph);
    int ti = table1_index(label);
    for (int li = 0; li < 16; ++li)
        if (matching[static_cast<size_t>(li)] == ti) return li + 1;
    throw DomainError("label missing from the matching");
}

Line16 line_of_hodge_index(int index) {
    if (index < 1 || index > 16) throw DomainError("Hodge index out of range");
    return line16_labels()[static_cast<size_t>(index - 1)];
}

NilpotentStratum classify_nilpotent(const HiggsField& th) {
    if (!higgs_det(th).is_zero())
        throw DomainError("classify_nilpotent requires vanishing determinant");
    const WeightVector muc = WeightVector::central();
    if (higgs_stability(th, muc) == Stability::Unstable)
        throw DomainError("classify_nilpotent requires a mu_c-semistable field");
    const ParabolicBundle& B = th.base();
    if (th.is_zero()) {
        // pre guarantees the bundle is stable here
        assert(classify_stability(B, muc).verdict == Stability::Stable);
        return {NilpotentStratum::Tag::ZeroSection, std::nullopt, std::nullopt, std::nullopt};
    }
    if (auto label = classify_table1(B)) {
        // forces the paper's normal form up to automorphism
        (void)hodge_normal_form(th);
        return {NilpotentStratum::Tag::Hodge, std::nullopt, std::nullopt,
                hodge_index_of_table1(B.sphere(), *label)};
    }
    assert(classify_stability(B, muc).verdict == Stability::Stable);
    // the kernel line of the field identifies the Table-2 line
    InvariantLines inv = invariant_lines(th);
    assert(inv.kind == InvariantLines::Kind::One);
    const SubbundleWitness& K = *inv.line;
    Line16 line{};
    if (K.degree == 0) {
        // constant line through a coincident pair
        if (mark_count(K.incident) != 2)
            throw DomainError("nilpotent field off the 17 strata (bad pair kernel)");
        line = Line16{Line16::Kind::Pair, K.incident};
    } else if (K.degree == -1 && mark_count(K.incident) == 4) {
        line = Line16{Line16::Kind::Quad, K.incident};
    } else if (K.degree == -1 && mark_count(K.incident) == 5) {
        line = Line16{Line16::Kind::Quint, K.incident};
    } else {
        throw DomainError("nilpotent field off the 17 strata (impossible by the Sigma image)");
    }
    auto ls = lines_through(B);
    if (!ls.count(line))
        throw DomainError("kernel line is not a line through the bundle");
    return {NilpotentStratum::Tag::Ni, line, nilpotent_generator_scale(th), std::nullopt};
}

FiberClass classify_fiber_point(const HiggsField& th, const WeightVector& mu) {
    if (higgs_stability(th, mu) == Stability::Unstable)
        throw DomainError("classify_fiber_point requires a semistable field");
    HitchinPoint s = higgs_det(th);
    if (s.is_zero())
        return {FiberClass::Tag::Nilpotent, std::nullopt, classify_nilpotent(th)};
    SpectralCurve curve = spectral_curve(th.base().sphere(), s);
    if (curve.status == SpectralCurve::Status::Smooth)
        return {FiberClass::Tag::Smooth, std::nullopt, std::nullopt};
    Mark node = *curve.node;
    bool hol = residue_matrix(th, node).is_zero();
    bool app = is_apparent(th, node);
    // a nonzero residue is nilpotent with respect to l_node, so the node is
    // always holomorphic or apparent; both holds on the section intersections
    if (hol && app) return {FiberClass::Tag::NodalBoth, node, std::nullopt};
    if (hol) return {FiberClass::Tag::NodalHol, node, std::nullopt};
    assert(app);
    return {FiberClass::Tag::NodalApp, node, std::nullopt};
}

HiggsField line_generator(const ParabolicBundle& B, const Line16& line) {
    auto space = higgs_space(B);
    if (space.size() != 2) throw DomainError("line generators need a 2-dimensional field space");
    auto matches = [&](const HiggsField& th) {
        if (th.is_zero() || !higgs_det(th).is_zero()) return false;
        InvariantLines inv = invariant_lines(th);
        if (inv.kind != InvariantLines::Kind::One) return false;
        if (line.kind == Line16::Kind::Pair)
            return inv.line->degree == 0 && (inv.line->incident & line.subset) == line.subset;
        return inv.line->degree == -1 && (inv.line->incident & line.subset) == line.subset;
    };
    // det(c1 A + c2 B) = (q1(c), q2(c)) with binary quadratic forms; the
    // common projective roots cut out the nilpotent lines
    const HiggsField& thA = space[0];
    const HiggsField& thB = space[1];
    // q(c1, c2) coefficients via three evaluations
    auto quad = [&](auto pick) {
        HitchinPoint d10 = higgs_det(thA);
        HitchinPoint d01 = higgs_det(thB);
        HitchinPoint d11 = higgs_det(thA + thB);
        Rational a = pick(d10), c = pick(d01);
        Rational b = pick(d11) - a - c; // cross coefficient
        return std::array<Rational, 3>{a, b, c};  // a c1^2 + b c1 c2 + c c2^2
    };
    auto q1 = quad([](const HitchinPoint& h) { return h.h1; });
    auto q2 = quad([](const HitchinPoint& h) { return h.h2; });
    // candidate projective roots (c1 : c2)
    std::vector<Vec2Q> candidates;
    candidates.push_back({Rational(0), Rational(1)});
    // rational roots of a tau^2 + b tau + c in tau = c2/c1 for each form,
    // checked against the other form afterwards
    auto add_roots = [&](const std::array<Rational, 3>& q) {
        // q in tau: q[2] tau^2 + q[1] tau + q[0] (c1 = 1)
        if (q[2] == 0) {
            if (q[1] != 0) candidates.push_back({Rational(1), -q[0] / q[1]});
            return;
        }
        Rational disc = q[1] * q[1] - 4 * q[2] * q[0];
        if (disc < 0) return;
        Poly discp{disc};
        auto sq = discp.sqrt_exact();
        if (!sq) return;
        Rational root = sq->coeff(0);
        candidates.push_back({Rational(1), (-q[1] + root) / (2 * q[2])});
        candidates.push_back({Rational(1), (-q[1] - root) / (2 * q[2])});
    };
    add_roots(q1);
    add_roots(q2);
    for (const Vec2Q& cnd : candidates) {
        Rational ev1 = q1[0] * cnd[0] * cnd[0] + q1[1] * cnd[0] * cnd[1] + q1[2] * cnd[1] * cnd[1];
        Rational ev2 = q2[0] * cnd[0] * cnd[0] + q2[1] * cnd[0] * cnd[1] + q2[2] * cnd[1] * cnd[1];
        if (ev1 != 0 || ev2 != 0) continue;
        HiggsField th = cnd[0] * thA + cnd[1] * thB;
        if (matches(th)) return normalize_nilpotent_generator(th);
    }
    throw DomainError("no nilpotent generator for " + line.str() + " on this bundle");
}

int cstar_limit_infinity(const HiggsField& th) {
    NilpotentStratum stratum = classify_nilpotent(th);
    if (stratum.tag != NilpotentStratum::Tag::Ni)
        throw DomainError("cstar_limit_infinity expects a point of some N_i");
    if (*stratum.c == 0) throw DomainError("zero coefficient has no c -> infinity limit");
    const MarkedSphere& sph = th.base().sphere();
    // transport the line to zeta_1 = Pair{t, inf}
    int li = line16_index(*stratum.line);
    const auto& masks = elem_masks();
    const ElemMask* mask = nullptr;
    for (const ElemMask& I : masks)
        if (el_permutation(sph, ElTarget::Line16, I)[static_cast<size_t>(li)] == 0) {
            mask = &I;
            break;
        }
    assert(mask != nullptr);
    HiggsField moved = elem_even(th, *mask);
    const ParabolicBundle& B1 = moved.base();
    if (B1.d() != 0 || !(B1.direction(Mark::PT) == B1.direction(Mark::PInf)))
        throw DomainError("zeta_1 transport failed");
    // constant gauge: common pair direction -> (0,1), first other -> (1,0)
    Vec2Q common = B1.direction(Mark::PT).vec();
    Mark other = Mark::P0;
    for (Mark m : {Mark::P0, Mark::P1, Mark::PLambda})
        if (!(B1.direction(m) == B1.direction(Mark::PT))) { other = m; break; }
    Mat2Q g = Mat2Q::from_columns(B1.direction(other).vec(), common).inverse();
    ParabolicBundle Bn = apply_constant_gauge(B1, g);
    Mat2R gr = to_ratfunc(g);
    HiggsField thn = higgs_from_matrix(Bn, gr * moved.matrix_x() * gr.inverse());
    if (!thn.alpha().is_zero() || !thn.beta().is_zero())
        throw DomainError("zeta_1 field is not gamma-shaped in the pair frame");
    // phi_c = diag(1, 1/c) on c * theta: exact entrywise limit as c -> inf
    Mat2R Mx = thn.matrix_x();
    LaurentMatrix fam{CLaurent(1, Mx.a), CLaurent(2, Mx.b), CLaurent(0, Mx.c),
                      CLaurent(1, Mx.d)};
    Mat2R limit{fam.a.limit_at_infinity(), fam.b.limit_at_infinity(),
                fam.c.limit_at_infinity(), fam.d.limit_at_infinity()};
    DirectionMap limit_dirs;
    for (Mark m : kMarks) {
        Vec2Q v = Bn.direction(m).vec();
        LaurentVec lv{CLaurent(0, RatFunc(v[0])), CLaurent(-1, RatFunc(v[1]))};
        limit_dirs[static_cast<size_t>(m)] = ProjDirection(projective_limit_at_infinity(lv));
    }
    ParabolicBundle Blim(sph, 0, limit_dirs);
    HiggsField th_lim = higgs_from_matrix(Blim, limit);
    HodgeNormalForm h = hodge_normal_form(th_lim);
    // map the label back through the involutive mask
    const auto& tab_perm = el_permutation(sph, ElTarget::Table1, *mask);
    int back = tab_perm[static_cast<size_t>(table1_index(h.label))];
    return hodge_index_of_table1(sph, table1_labels()[static_cast<size_t>(back)]);
}

} // namespace higgs5
