#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "higgs5/higgs.hpp"
#include "higgs5/sampler.hpp"

using namespace higgs5;

namespace {

const MarkedSphere sph(Rational(4), Rational(5));
const WeightVector muc = WeightVector::central();

ProjDirection dir(int x, int y) { return ProjDirection(Rational(x), Rational(y)); }

/// Theta_1: the gamma-only Hodge field on the Table-1 row-1 bundle.
HiggsField theta1_hodge() {
    DirectionMap dirs;
    for (Mark m : {Mark::P0, Mark::P1, Mark::PLambda}) dirs[size_t(m)] = dir(1, 0);
    for (Mark m : {Mark::PT, Mark::PInf}) dirs[size_t(m)] = dir(0, 1);
    ParabolicBundle B(sph, 0, dirs);
    // gamma / Q = 1/(x - t): gamma = x(x-1)(x-lambda)
    Poly gamma = Poly::x() * Poly::linear_root(Rational(1)) * Poly::linear_root(sph.lambda());
    return make_higgs(B, Poly(), Poly(), gamma);
}

} // namespace

TEST_CASE("make_higgs validates the chart fields and rejects bad ones") {
    ParabolicBundle B = chart_bundle(sph, Rational(2), Rational(3));
    auto [th1, th2] = chart_theta_pair(B);
    CHECK(!th1.is_zero());
    CHECK(!th2.is_zero());
    CHECK(zero_higgs(B).is_zero());
    CHECK_NOTHROW(theta1_hodge());

    // degree overflow
    CHECK_THROWS_AS(make_higgs(B, Poly::one().shift_up(4), Poly(), Poly()), DomainError);
    // residue not nilpotent for the direction
    CHECK_THROWS_AS(make_higgs(B, Poly::one(), Poly(), Poly()), DomainError);
}

TEST_CASE("residue matrices of Theta_1") {
    HiggsField th = theta1_hodge();
    // entrywise residue oracle: gamma dx/Q = dx/(x-t)
    CHECK(residue_matrix(th, Mark::PT) == Mat2Q{0, 0, 1, 0});
    CHECK(residue_matrix(th, Mark::P0).is_zero());
    CHECK(residue_matrix(th, Mark::P1).is_zero());
    CHECK(residue_matrix(th, Mark::PLambda).is_zero());
    CHECK(residue_matrix(th, Mark::PInf) == Mat2Q{0, 0, -1, 0});
    for (Mark m : kMarks) CHECK(residue_matrix(th, m).trace() == 0);
}

TEST_CASE("nilpotent residues everywhere") {
    Sampler rng(41);
    ParabolicBundle B = rng.generic_chart_bundle(sph);
    auto [th1, th2] = chart_theta_pair(B);
    HiggsField th = rng.nonzero_rational(5) * th1 + rng.nonzero_rational(5) * th2;
    for (Mark m : kMarks) {
        Mat2Q R = residue_matrix(th, m);
        CHECK((R * R).is_zero());
    }
}

TEST_CASE("higgs_det matches the displayed products") {
    Sampler rng(42);
    for (int k = 0; k < 25; ++k) {
        MarkedSphere s = rng.sphere();
        Rational u = rng.rational(8), v = rng.rational(8);
        Rational c1 = rng.rational(8), c2 = rng.rational(8);
        ParabolicBundle B = chart_bundle(s, u, v);
        auto [th1, th2] = chart_theta_pair(B);
        HitchinPoint got = higgs_det(c1 * th1 + c2 * th2);
        CHECK(got == chart_det_formula(s, u, v, c1, c2));
    }
    CHECK(higgs_det(theta1_hodge()).is_zero());
    ParabolicBundle B = chart_bundle(sph, Rational(2), Rational(3));
    CHECK(higgs_det(zero_higgs(B)).is_zero());
}

TEST_CASE("higgs_det is quadratically homogeneous") {
    Sampler rng(43);
    ParabolicBundle B = rng.generic_chart_bundle(sph);
    auto [th1, th2] = chart_theta_pair(B);
    HiggsField th = Rational(2) * th1 + Rational(-3) * th2;
    HitchinPoint base = higgs_det(th);
    for (int k = 0; k < 10; ++k) {
        Rational c = rng.rational(9);
        HitchinPoint scaled = higgs_det(c * th);
        CHECK(scaled.h1 == c * c * base.h1);
        CHECK(scaled.h2 == c * c * base.h2);
    }
}

TEST_CASE("invariant lines") {
    ParabolicBundle B = chart_bundle(sph, Rational(2), Rational(3));
    CHECK(invariant_lines(zero_higgs(B)).kind == InvariantLines::Kind::All);

    HiggsField h = theta1_hodge();
    InvariantLines inv = invariant_lines(h);
    REQUIRE(inv.kind == InvariantLines::Kind::One);
    CHECK(inv.line->degree == 0);
    CHECK(inv.line->a.is_zero());
    CHECK(inv.line->b == Poly::one()); // the constant line (0,1)

    // det != 0 has no rational invariant line; cross-check with the
    // perfect-square oracle on alpha^2 + beta gamma
    Sampler rng(44);
    for (int k = 0; k < 20; ++k) {
        ParabolicBundle Bc = rng.generic_chart_bundle(sph);
        auto [th1, th2] = chart_theta_pair(Bc);
        HiggsField th = rng.nonzero_rational(6) * th1 + rng.nonzero_rational(6) * th2;
        if (higgs_det(th).is_zero()) continue;
        CHECK(invariant_lines(th).kind == InvariantLines::Kind::None);
        Poly D = th.alpha() * th.alpha() + th.beta() * th.gamma();
        CHECK(!D.sqrt_exact().has_value());
    }
}

TEST_CASE("returned invariant line is genuinely invariant") {
    // determinant-zero combinations exist on the pair locus u = v
    Sampler rng(45);
    int checked = 0;
    while (checked < 8) {
        Rational c = rng.rational(7);
        ParabolicBundle B = chart_bundle(sph, c, c);
        if (classify_stability(B, muc).verdict != Stability::Stable) continue;
        auto [th1, th2] = chart_theta_pair(B);
        // c1 theta_1 + c2 theta_2 with a1 = b1 = 0 degenerates on u = v:
        // scan a small set of combinations for det = 0
        bool found = false;
        for (int n = -4; n <= 4 && !found; ++n) {
            HiggsField th = Rational(1) * th1 + Rational(n) * th2;
            if (th.is_zero() || !higgs_det(th).is_zero()) continue;
            found = true;
            InvariantLines inv = invariant_lines(th);
            REQUIRE(inv.kind == InvariantLines::Kind::One);
            Mat2R M = th.matrix_x();
            Vec2R v{RatFunc(inv.line->a), RatFunc(inv.line->b)};
            Vec2R img = M * v;
            CHECK((img[0] * v[1] - img[1] * v[0]).is_zero());
            ++checked;
        }
        if (!found) ++checked; // keep the loop finite on degenerate draws
    }
}

TEST_CASE("higgs_stability examples") {
    // Theta_1 is mu_c-stable: the kernel line through l_t, l_inf has
    // Stab = 0 - 0 - 1 + 3/2 = 1/2 > 0
    HiggsField h = theta1_hodge();
    CHECK(higgs_stability(h, muc) == Stability::Stable);
    InvariantLines inv = invariant_lines(h);
    CHECK(stab_value(h.base(), muc, *inv.line) == Rational(1, 2));

    // Table-1 row-1 bundle with gamma = 0, beta != 0 is unstable
    DirectionMap dirs;
    for (Mark m : {Mark::P0, Mark::P1, Mark::PLambda}) dirs[size_t(m)] = dir(1, 0);
    for (Mark m : {Mark::PT, Mark::PInf}) dirs[size_t(m)] = dir(0, 1);
    ParabolicBundle T1(sph, 0, dirs);
    // beta / Q = 1/(x(x-1)(x-lambda)) has poles only at 0, 1, lambda
    HiggsField bad = make_higgs(T1, Poly(), Poly::linear_root(sph.t()), Poly());
    CHECK(higgs_stability(bad, muc) == Stability::Unstable);

    // zero field on a stable bundle reduces to bundle stability
    Sampler rng(46);
    ParabolicBundle B = rng.generic_chart_bundle(sph);
    CHECK(higgs_stability(zero_higgs(B), muc) == Stability::Stable);
}

TEST_CASE("higgs_space dimensions") {
    Sampler rng(47);
    // 2 on a stable chart bundle, spanning {theta_1, theta_2}
    ParabolicBundle B = rng.generic_chart_bundle(sph);
    auto basis = higgs_space(B);
    REQUIRE(basis.size() == 2);
    auto [th1, th2] = chart_theta_pair(B);
    // the paper fields must lie in the span: solve in the 12-dim coefficient
    // space by checking that det of the 2x2 coefficient pairings is nonzero
    // and both th1, th2 reproduce from the basis over Q
    auto in_span = [&](const HiggsField& th) {
        // solve th = c1 basis0 + c2 basis1 from two independent coefficient
        // probes, then verify the whole field
        auto probe = [&](const HiggsField& f, int i) -> Rational {
            const Poly* ps[3] = {&f.alpha(), &f.beta(), &f.gamma()};
            int idx = 0;
            for (const Poly* p : ps)
                for (int k = 0; k <= 5; ++k, ++idx)
                    if (idx == i) return p->coeff(k);
            return Rational(0);
        };
        // find two probe indices where the basis is independent
        for (int i = 0; i < 18; ++i)
            for (int j = i + 1; j < 18; ++j) {
                Rational det = probe(basis[0], i) * probe(basis[1], j) -
                               probe(basis[0], j) * probe(basis[1], i);
                if (det == 0) continue;
                Rational c1 = (probe(th, i) * probe(basis[1], j) -
                               probe(th, j) * probe(basis[1], i)) / det;
                Rational c2 = (probe(basis[0], i) * probe(th, j) -
                               probe(basis[0], j) * probe(th, i)) / det;
                return c1 * basis[0] + c2 * basis[1] == th;
            }
        return false;
    };
    CHECK(in_span(th1));
    CHECK(in_span(th2));

    // 3 on a Table-1 bundle, all of the shape [[0, beta],[gamma, 0]]
    DirectionMap dirs;
    for (Mark m : {Mark::P0, Mark::P1, Mark::PLambda}) dirs[size_t(m)] = dir(1, 0);
    for (Mark m : {Mark::PT, Mark::PInf}) dirs[size_t(m)] = dir(0, 1);
    ParabolicBundle T1(sph, 0, dirs);
    auto t1_basis = higgs_space(T1);
    REQUIRE(t1_basis.size() == 3);
    for (const auto& th : t1_basis) CHECK(th.alpha().is_zero());

    // 4 directions on one constant line: dimension matches the rank of the
    // nilpotency system, and the line is invariant for some member
    DirectionMap d4;
    for (Mark m : {Mark::P0, Mark::P1, Mark::PLambda, Mark::PT}) d4[size_t(m)] = dir(1, 0);
    d4[size_t(Mark::PInf)] = dir(0, 1);
    ParabolicBundle B4(sph, 0, d4);
    auto b4 = higgs_space(B4);
    CHECK(!b4.empty());
    bool found_invariant = false;
    for (const auto& th : b4) {
        if (th.is_zero()) continue;
        InvariantLines inv = invariant_lines(th);
        if (inv.kind == InvariantLines::Kind::One && inv.line->degree == 0 &&
            inv.line->a == Poly::one() && inv.line->b.is_zero())
            found_invariant = true;
    }
    CHECK(found_invariant);
}

TEST_CASE("dim higgs_space = 2 for random stable bundles") {
    Sampler rng(48);
    for (int k = 0; k < 15; ++k) {
        ParabolicBundle B = rng.generic_bundle(sph);
        CHECK(higgs_space(B).size() == 2);
    }
}

TEST_CASE("constant_part at poles and regular points") {
    HiggsField th = theta1_hodge();
    // pole at t: constant part = residue
    CHECK(constant_part(th, Mark::PT) == Mat2Q{0, 0, 1, 0});
    // regular at 0: plain evaluation of gamma/Q = 1/(x-t)
    Mat2Q c0 = constant_part(th, Mark::P0);
    CHECK(c0 == Mat2Q{0, 0, Rational(1) / (Rational(0) - sph.t()), 0});
}

TEST_CASE("generator normalization reproduces the paper scale") {
    // on the zeta_1 frame, theta_1 itself has scale 1
    DirectionMap dirs;
    dirs[size_t(Mark::P0)] = dir(1, 0);
    dirs[size_t(Mark::P1)] = dir(1, 1);
    dirs[size_t(Mark::PLambda)] = ProjDirection(Rational(1), Rational(7));
    dirs[size_t(Mark::PT)] = dir(0, 1);
    dirs[size_t(Mark::PInf)] = dir(0, 1);
    ParabolicBundle B(sph, 0, dirs);
    Poly gamma = Poly::x() * Poly::linear_root(Rational(1)) * Poly::linear_root(sph.lambda());
    HiggsField th1 = make_higgs(B, Poly(), Poly(), gamma);
    CHECK(nilpotent_generator_scale(th1) == 1);
    CHECK(nilpotent_generator_scale(Rational(-7) * th1) == -7);
    CHECK(normalize_nilpotent_generator(Rational(-7) * th1) == th1);
}
