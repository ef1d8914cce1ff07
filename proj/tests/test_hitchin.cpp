#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "higgs5/connection.hpp"
#include "higgs5/sampler.hpp"
#include "higgs5/verify.hpp"

using namespace higgs5;

namespace {

const MarkedSphere sph(Rational(2), Rational(3));
const WeightVector muc = WeightVector::central();

ProjDirection dir(int x, int y) { return ProjDirection(Rational(x), Rational(y)); }

MarkSet mk(std::initializer_list<Mark> ms) {
    MarkSet s = 0;
    for (Mark m : ms) s |= mark_bit(m);
    return s;
}

} // namespace

TEST_CASE("spectral curve classification") {
    // s = (1, 0): rho = inf, nodal there, normalization branched over 0,1,lambda,t
    SpectralCurve c1 = spectral_curve(sph, {Rational(1), Rational(0)});
    CHECK(c1.status == SpectralCurve::Status::Nodal);
    CHECK(*c1.node == Mark::PInf);
    REQUIRE(c1.normalization_branch.size() == 4);
    for (const auto& p : c1.normalization_branch) CHECK(!p.is_infinity());

    // s = (-lambda, 1): rho = lambda
    SpectralCurve c2 = spectral_curve(sph, {-sph.lambda(), Rational(1)});
    CHECK(c2.status == SpectralCurve::Status::Nodal);
    CHECK(*c2.node == Mark::PLambda);

    // lambda=2, t=3, s=(5,1): rho = -5, smooth genus 2
    SpectralCurve c3 = spectral_curve(sph, {Rational(5), Rational(1)});
    CHECK(c3.status == SpectralCurve::Status::Smooth);
    CHECK(*c3.sixth_point == P1Point(Rational(-5)));
    CHECK(c3.branch_points.size() == 6);

    SpectralCurve c4 = spectral_curve(sph, {Rational(0), Rational(0)});
    CHECK(c4.status == SpectralCurve::Status::Cone);
}

TEST_CASE("discriminant membership matches the five lines") {
    Sampler rng(3);
    auto on_lines = [&](const HitchinPoint& s) {
        return s.h1 == 0 || s.h1 + s.h2 == 0 || s.h1 + sph.lambda() * s.h2 == 0 ||
               s.h1 + sph.t() * s.h2 == 0 || s.h2 == 0;
    };
    for (int k = 0; k < 100; ++k) {
        HitchinPoint s{rng.rational(9), rng.rational(9)};
        if (s.is_zero()) continue;
        SpectralCurve c = spectral_curve(sph, s);
        CHECK((c.status == SpectralCurve::Status::Nodal) == on_lines(s));
    }
}

TEST_CASE("constant part and apparent singularities") {
    // the appconst local form at 0 with l_0 = (1,0): theta with residue
    // [[0, b],[0, 0]] at 0 is apparent there
    DirectionMap dirs;
    dirs[size_t(Mark::P0)] = dir(1, 0);
    dirs[size_t(Mark::P1)] = dir(1, 1);
    dirs[size_t(Mark::PLambda)] = dir(1, 5);
    dirs[size_t(Mark::PT)] = dir(0, 1);
    dirs[size_t(Mark::PInf)] = dir(0, 1);
    ParabolicBundle B(sph, 0, dirs);
    Poly gamma = Poly::x() * Poly::linear_root(Rational(1)) * Poly::linear_root(sph.lambda());
    HiggsField th1 = make_higgs(B, Poly(), Poly(), gamma);
    // Theta_1 at t: constant part equals the residue, l_t on the kernel line
    CHECK(constant_part(th1, Mark::PT) == Mat2Q{0, 0, 1, 0});
    CHECK(is_apparent(th1, Mark::PT));
}

TEST_CASE("generic members with invertible constant part are not apparent") {
    Sampler rng(5);
    int done = 0;
    while (done < 10) {
        ParabolicBundle B = rng.generic_chart_bundle(sph);
        auto [t1, t2] = chart_theta_pair(B);
        HiggsField th = rng.nonzero_rational(5) * t1 + rng.nonzero_rational(5) * t2;
        HitchinPoint s = higgs_det(th);
        if (s.is_zero()) continue;
        // pick a mark where theta is holomorphic? generic theta has poles
        // everywhere; instead check a mark with nonzero residue is always
        // apparent (nilpotency kills the direction)
        bool any = false;
        for (Mark m : kMarks) {
            if (residue_matrix(th, m).is_zero()) continue;
            CHECK(is_apparent(th, m));
            any = true;
        }
        if (any) ++done;
    }
}

TEST_CASE("classify_fiber_point on nodal fibers and the elem swap") {
    Sampler rng(7);
    int done = 0;
    while (done < 6) {
        ParabolicBundle B = rng.generic_chart_bundle(sph);
        auto hol = holomorphic_fields_at(B, Mark::P0);
        if (hol.size() != 1) continue;
        HiggsField th = hol[0];
        HitchinPoint s = higgs_det(th);
        if (s.is_zero()) continue;
        REQUIRE(s.h1 == 0); // holomorphic at 0 forces rho = 0
        FiberClass fc = classify_fiber_point(th, muc);
        CHECK((fc.tag == FiberClass::Tag::NodalHol || fc.tag == FiberClass::Tag::NodalBoth));
        CHECK(*fc.node == Mark::P0);
        // elem over a mask containing the node makes it apparent
        ElemMask I(mk({Mark::P0, Mark::P1}));
        HiggsField swapped = elem_even(th, I);
        FiberClass fc2 = classify_fiber_point(swapped, muc);
        if (fc.tag == FiberClass::Tag::NodalHol) CHECK(fc2.tag == FiberClass::Tag::NodalApp);
        else CHECK(fc2.tag == FiberClass::Tag::NodalBoth);
        ++done;
    }
}

TEST_CASE("solved NodalApp example: h1 = 0 with all residues nonzero") {
    Sampler rng(9);
    int done = 0;
    while (done < 5) {
        ParabolicBundle B = rng.generic_chart_bundle(sph);
        auto [t1, t2] = chart_theta_pair(B);
        // solve h1(c1, c2) = 0 through its second product factor
        // a2 = c1 t u (lambda - u) + c2 lambda v (t - v); the first factor
        // a1 = 0 is the residue at 0 itself and gives holomorphic members
        Rational u = B.direction(Mark::PLambda).y(), v = B.direction(Mark::PT).y();
        Rational c1 = sph.lambda() * v * (sph.t() - v);
        Rational c2 = -sph.t() * u * (sph.lambda() - u);
        HiggsField th = c1 * t1 + c2 * t2;
        if (th.is_zero() || higgs_det(th).is_zero()) continue;
        CHECK(higgs_det(th).h1 == 0);
        bool all_res = true;
        for (Mark m : kMarks) all_res &= !residue_matrix(th, m).is_zero();
        if (!all_res) continue;
        FiberClass fc = classify_fiber_point(th, muc);
        CHECK(fc.tag == FiberClass::Tag::NodalApp);
        CHECK(*fc.node == Mark::P0);
        ++done;
    }
}

TEST_CASE("theta = c1 theta1 + c2 theta2 generic is a smooth fiber point") {
    Sampler rng(11);
    int done = 0;
    while (done < 10) {
        ParabolicBundle B = rng.generic_chart_bundle(sph);
        auto [t1, t2] = chart_theta_pair(B);
        HiggsField th = rng.nonzero_rational(6) * t1 + rng.nonzero_rational(6) * t2;
        HitchinPoint s = higgs_det(th);
        SpectralCurve c = spectral_curve(sph, s);
        if (c.status != SpectralCurve::Status::Smooth) continue;
        CHECK(classify_fiber_point(th, muc).tag == FiberClass::Tag::Smooth);
        ++done;
    }
}

TEST_CASE("nodal Both members sit at rational eigendirections") {
    // engineer det C = -(square): scan a small grid for a bundle where the
    // holomorphic field at t has -det(theta_t) a rational square
    bool found = false;
    for (int a = 2; a <= 12 && !found; ++a) {
        for (int b = 2; b <= 12 && !found; ++b) {
            Rational u(a, 3), v(b, 5);
            ParabolicBundle B = chart_bundle(sph, u, v);
            if (classify_stability(B, muc).verdict != Stability::Stable) continue;
            std::vector<HiggsField> hol;
            try {
                hol = holomorphic_fields_at(B, Mark::PT);
            } catch (const DomainError&) {
                continue;
            }
            if (hol.size() != 1 || higgs_det(hol[0]).is_zero()) continue;
            const HiggsField& th = hol[0];
            Mat2Q C = constant_part(th, Mark::PT);
            Rational disc = -C.det();
            auto sq = Poly{disc}.sqrt_exact();
            if (!sq) continue;
            Rational mu_val = sq->coeff(0);
            if (mu_val == 0) continue;
            found = true;
            auto eigvec = [&](const Rational& ev) {
                // eigenvector of [[p, q],[r, -p]] for eigenvalue ev
                return C.b != 0 ? Vec2Q{C.b, ev - C.a} : Vec2Q{ev - C.d, C.c};
            };
            // the two eigendirections give Both, anything else gives Hol
            for (const Rational& ev : {mu_val, Rational(-mu_val)}) {
                DirectionMap dirs = B.directions();
                dirs[size_t(Mark::PT)] = ProjDirection(eigvec(ev));
                ParabolicBundle B2(sph, 0, dirs);
                HiggsField th2 = make_higgs(B2, th.alpha(), th.beta(), th.gamma());
                CHECK(classify_fiber_point(th2, muc).tag == FiberClass::Tag::NodalBoth);
            }
            DirectionMap dirs = B.directions();
            Vec2Q e1 = eigvec(mu_val), e2 = eigvec(-mu_val);
            Vec2Q off{e1[0] + e2[0], e1[1] + e2[1]}; // off both eigendirections
            dirs[size_t(Mark::PT)] = ProjDirection(off);
            ParabolicBundle B3(sph, 0, dirs);
            HiggsField th3 = make_higgs(B3, th.alpha(), th.beta(), th.gamma());
            auto fc = classify_fiber_point(th3, muc);
            CHECK(fc.tag == FiberClass::Tag::NodalHol);
        }
    }
    CHECK(found);
}

TEST_CASE("classify_nilpotent examples") {
    Sampler rng(13);
    ParabolicBundle B = rng.generic_chart_bundle(sph);
    NilpotentStratum s0 = classify_nilpotent(zero_higgs(B));
    CHECK(s0.tag == NilpotentStratum::Tag::ZeroSection);

    // pair bundle with c * theta_1-generator
    DirectionMap dirs;
    dirs[size_t(Mark::P0)] = dir(1, 0);
    dirs[size_t(Mark::P1)] = dir(1, 1);
    dirs[size_t(Mark::PLambda)] = ProjDirection(Rational(1), Rational(7, 3));
    dirs[size_t(Mark::PT)] = dir(0, 1);
    dirs[size_t(Mark::PInf)] = dir(0, 1);
    ParabolicBundle Bp(sph, 0, dirs);
    Poly gamma = Poly::x() * Poly::linear_root(Rational(1)) * Poly::linear_root(sph.lambda());
    HiggsField th1 = make_higgs(Bp, Poly(), Poly(), gamma);
    Rational c(-5, 2);
    NilpotentStratum sni = classify_nilpotent(c * th1);
    CHECK(sni.tag == NilpotentStratum::Tag::Ni);
    CHECK(*sni.line == Line16{Line16::Kind::Pair, mk({Mark::PT, Mark::PInf})});
    CHECK(*sni.c == c);
    // round trip through the canonical generator
    CHECK(*sni.c * line_generator(Bp, *sni.line) == c * th1);

    // Theta_1 classifies as the Hodge point of its Table-1 bundle
    DirectionMap hd;
    for (Mark m : {Mark::P0, Mark::P1, Mark::PLambda}) hd[size_t(m)] = dir(1, 0);
    for (Mark m : {Mark::PT, Mark::PInf}) hd[size_t(m)] = dir(0, 1);
    ParabolicBundle Bh(sph, 0, hd);
    HiggsField Theta1 = make_higgs(Bh, Poly(), Poly(), gamma);
    NilpotentStratum sh = classify_nilpotent(Theta1);
    CHECK(sh.tag == NilpotentStratum::Tag::Hodge);
    CHECK(*sh.hodge_index ==
          hodge_index_of_table1(sph, Table1Label{Table1Label::Kind::Split,
                                                 mk({Mark::PT, Mark::PInf})}));
}

TEST_CASE("cstar limit lands on the matched Hodge bundle") {
    // zeta_1 case: paper computation
    DirectionMap dirs;
    dirs[size_t(Mark::P0)] = dir(1, 0);
    dirs[size_t(Mark::P1)] = dir(1, 1);
    dirs[size_t(Mark::PLambda)] = ProjDirection(Rational(1), Rational(5, 2));
    dirs[size_t(Mark::PT)] = dir(0, 1);
    dirs[size_t(Mark::PInf)] = dir(0, 1);
    ParabolicBundle Bp(sph, 0, dirs);
    HiggsField gen = line_generator(Bp, Line16{Line16::Kind::Pair, mk({Mark::PT, Mark::PInf})});
    int idx = cstar_limit_infinity(Rational(3) * gen);
    CHECK(idx == 1); // Pair{t, inf} is zeta_1
    CHECK(line_of_hodge_index(idx) == Line16{Line16::Kind::Pair, mk({Mark::PT, Mark::PInf})});

    // intersection case u = 0: theta_j of the paper on zeta_1 and Pair{0,lambda}
    DirectionMap d0;
    d0[size_t(Mark::P0)] = dir(1, 0);
    d0[size_t(Mark::P1)] = dir(1, 1);
    d0[size_t(Mark::PLambda)] = dir(1, 0);
    d0[size_t(Mark::PT)] = dir(0, 1);
    d0[size_t(Mark::PInf)] = dir(0, 1);
    ParabolicBundle B0(sph, 0, d0);
    // theta_j = [[0, dx/(x(x-lambda))],[0, 0]]: beta = (x-1)(x-t)
    HiggsField thj = make_higgs(B0, Poly(),
                                Poly::linear_root(Rational(1)) * Poly::linear_root(sph.t()),
                                Poly());
    NilpotentStratum s = classify_nilpotent(thj);
    REQUIRE(s.tag == NilpotentStratum::Tag::Ni);
    CHECK(*s.line == Line16{Line16::Kind::Pair, mk({Mark::P0, Mark::PLambda})});
    int idxj = cstar_limit_infinity(thj);
    CHECK(line_of_hodge_index(idxj) == *s.line);

    // equivariance under a random mask
    Sampler rng(15);
    const ElemMask& I = elem_masks()[1 + rng.uint_below(15)];
    HiggsField moved = elem_even(Rational(3) * gen, I);
    int idx2 = cstar_limit_infinity(moved);
    const auto& perm = el_permutation(sph, ElTarget::Line16, I);
    CHECK(idx2 == perm[static_cast<size_t>(idx - 1)] + 1);
}
