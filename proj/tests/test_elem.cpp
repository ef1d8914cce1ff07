#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "higgs5/elem.hpp"
#include "higgs5/sampler.hpp"

using namespace higgs5;

namespace {

const MarkedSphere sph(Rational(4), Rational(5));
const WeightVector muc = WeightVector::central();

ProjDirection dir(int x, int y) { return ProjDirection(Rational(x), Rational(y)); }

MarkSet mk(std::initializer_list<Mark> ms) {
    MarkSet s = 0;
    for (Mark m : ms) s |= mark_bit(m);
    return s;
}

HiggsField theta1_hodge() {
    DirectionMap dirs;
    for (Mark m : {Mark::P0, Mark::P1, Mark::PLambda}) dirs[size_t(m)] = dir(1, 0);
    for (Mark m : {Mark::PT, Mark::PInf}) dirs[size_t(m)] = dir(0, 1);
    ParabolicBundle B(sph, 0, dirs);
    Poly gamma = Poly::x() * Poly::linear_root(Rational(1)) * Poly::linear_root(sph.lambda());
    return make_higgs(B, Poly(), Poly(), gamma);
}

} // namespace

TEST_CASE("group law is symmetric difference") {
    ElemMask a(mk({Mark::P0, Mark::P1}));
    ElemMask b(mk({Mark::P1, Mark::PLambda}));
    CHECK(group_compose(a, b) == ElemMask(mk({Mark::P0, Mark::PLambda})));
    CHECK(group_compose(a, a) == ElemMask());
    CHECK(group_compose(a, ElemMask()) == a);
    CHECK_THROWS_AS(ElemMask(mk({Mark::P0})), DomainError);
    // the 16 even masks form (Z/2Z)^4: closed, abelian, every element
    // squares to the identity
    const auto& masks = elem_masks();
    REQUIRE(masks.size() == 16);
    for (const auto& x : masks)
        for (const auto& y : masks) {
            CHECK(mark_count(group_compose(x, y).set()) % 2 == 0);
            CHECK(group_compose(x, y) == group_compose(y, x));
            CHECK(group_compose(group_compose(x, y), y) == x);
        }
}

TEST_CASE("weight transform") {
    CHECK(weight_transform(muc, ElemMask(mk({Mark::PT, Mark::PInf}))) == muc);
    std::array<Rational, 5> w{Rational(3, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4),
                              Rational(1, 4)};
    WeightVector mu(w);
    WeightVector out = weight_transform(mu, ElemMask(mk({Mark::P0, Mark::P1})));
    CHECK(out.at(Mark::P0) == Rational(1, 4));
    CHECK(out.at(Mark::P1) == Rational(3, 4));
    CHECK(out.at(Mark::PT) == Rational(1, 4));
    CHECK(weight_transform(mu, ElemMask()) == mu);
}

TEST_CASE("birkhoff factorization on assorted Laurent matrices") {
    // already-standard transitions stay put
    Mat2R T1{RatFunc(Poly::x()), RatFunc(), RatFunc(), RatFunc(Poly::one(), Poly::x())};
    auto r1 = birkhoff_factor(T1);
    CHECK(r1.d1 == 1);
    CHECK(r1.d2 == -1);
    // off-diagonal entry stays after the window clear: sections say the
    // bundle with transition [[x^2, 0],[x, x^-2]] is O(-2) (+) O(2)
    Mat2R T2{RatFunc(Poly::one().shift_up(2)), RatFunc(), RatFunc(Poly::x()),
             RatFunc(Poly::one(), Poly::one().shift_up(2))};
    auto r2 = birkhoff_factor(T2);
    CHECK(r2.d1 == 2);
    CHECK(r2.d2 == -2);
    // pivot walk: [[1, 0],[x, x^2]] has no global sections, so it must
    // split as O(-1) (+) O(-1)
    Mat2R T3{RatFunc(Poly::one()), RatFunc(), RatFunc(Poly::x()),
             RatFunc(Poly::one().shift_up(2))};
    auto r3 = birkhoff_factor(T3);
    CHECK(r3.d1 == 1);
    CHECK(r3.d2 == 1);
    // unimodular polynomial transition splits trivially: det (1+x) - x = 1
    Mat2R T4{RatFunc(Poly{Rational(1), Rational(1)}), RatFunc(Poly{Rational(1)}),
             RatFunc(Poly{Rational(0), Rational(1)}), RatFunc(Poly{Rational(1)})};
    auto r4 = birkhoff_factor(T4);
    CHECK(r4.d1 == 0);
    CHECK(r4.d2 == 0);
    // non-monomial determinant is rejected
    Mat2R T5{RatFunc(Poly::linear_root(Rational(1))), RatFunc(), RatFunc(), RatFunc::one()};
    CHECK_THROWS_AS(birkhoff_factor(T5), DomainError);
}

TEST_CASE("elem with the empty mask is the identity") {
    Sampler rng(7);
    ParabolicBundle B = rng.generic_bundle(sph);
    ParabolicBundle img = elem_even(B, ElemMask());
    CHECK(canonical_form(img) == canonical_form(B));
    HiggsField th = theta1_hodge();
    HiggsField img_th = elem_even(th, ElemMask());
    CHECK(higgs_det(img_th).is_zero());
}

TEST_CASE("elem is an involution up to isomorphism") {
    Sampler rng(9);
    for (int k = 0; k < 12; ++k) {
        ParabolicBundle B = rng.generic_bundle(sph);
        const ElemMask& I = elem_masks()[1 + rng.uint_below(15)];
        ParabolicBundle round = elem_even(elem_even(B, I), I);
        CHECK(canonical_form(round) == canonical_form(B));
    }
}

TEST_CASE("elem of Theta_1 over {t, inf} stays Table 1 with zero determinant") {
    HiggsField th = theta1_hodge();
    HiggsField img = elem_even(th, ElemMask(mk({Mark::PT, Mark::PInf})));
    CHECK(higgs_det(img).is_zero());
    auto label = classify_table1(img.base());
    REQUIRE(label.has_value());
    // and indeed the image is again a Hodge normal form
    CHECK_NOTHROW(hodge_normal_form(img));
}

TEST_CASE("functoriality: higgs_det is elem-invariant") {
    Sampler rng(11);
    for (int k = 0; k < 8; ++k) {
        ParabolicBundle B = rng.generic_chart_bundle(sph);
        auto [th1, th2] = chart_theta_pair(B);
        HiggsField th = rng.nonzero_rational(5) * th1 + rng.nonzero_rational(5) * th2;
        const ElemMask& I = elem_masks()[rng.uint_below(16)];
        CHECK(higgs_det(elem_even(th, I)) == higgs_det(th));
    }
}

TEST_CASE("stability equivariance under elem and weight transform") {
    Sampler rng(13);
    for (int k = 0; k < 10; ++k) {
        MarkedSphere s = rng.sphere();
        DirectionMap dirs;
        for (Mark m : kMarks) dirs[size_t(m)] = rng.direction(5);
        ParabolicBundle B(s, 0, dirs);
        std::array<Rational, 5> w;
        for (auto& x : w) x = Rational(static_cast<long>(rng.uint_below(5)), 4);
        WeightVector mu(w);
        const ElemMask& I = elem_masks()[rng.uint_below(16)];
        ParabolicBundle img = [&]() -> ParabolicBundle {
            try {
                return elem_even(B, I);
            } catch (const DomainError&) {
                return B; // d' >= 2 cases are outside the moduli; skip
            }
        }();
        if (img == B && !I.empty()) continue;
        CHECK(classify_stability(B, mu).verdict ==
              classify_stability(img, weight_transform(mu, I)).verdict);
    }
}

TEST_CASE("re-splitting reports d' >= 2 inputs") {
    // all five directions equal: elem over four of them leaves the moduli
    DirectionMap dirs;
    for (Mark m : kMarks) dirs[size_t(m)] = dir(1, 0);
    ParabolicBundle B(sph, 0, dirs);
    CHECK_THROWS_AS(
        elem_even(B, ElemMask(mk({Mark::P0, Mark::P1, Mark::PLambda, Mark::PT}))),
        DomainError);
}

TEST_CASE("el permutations: identity, involution, transitivity") {
    const auto& masks = elem_masks();
    for (ElTarget target : {ElTarget::Line16, ElTarget::Table1, ElTarget::Hodge16}) {
        const auto& id = el_permutation(sph, target, ElemMask());
        for (int i = 0; i < 16; ++i) CHECK(id[size_t(i)] == i);
        std::set<int> orbit;
        for (const auto& m : masks) {
            const auto& p = el_permutation(sph, target, m);
            orbit.insert(p[0]);
            for (int i = 0; i < 16; ++i) CHECK(p[size_t(p[size_t(i)])] == i);
        }
        CHECK(orbit.size() == 16);
    }
}

TEST_CASE("zeta/Theta matching is the base case transported equivariantly") {
    const auto& matching = line_table1_matching(sph);
    // base case: Pair{t,inf} (index 0) matches Split{t,inf} (index 0)
    CHECK(matching[0] == 0);
    std::set<int> image(matching.begin(), matching.end());
    CHECK(image.size() == 16);
    for (const auto& m : elem_masks()) {
        const auto& pl = el_permutation(sph, ElTarget::Line16, m);
        const auto& pt = el_permutation(sph, ElTarget::Table1, m);
        for (int i = 0; i < 16; ++i)
            CHECK(matching[size_t(pl[size_t(i)])] == pt[size_t(matching[size_t(i)])]);
    }
}

TEST_CASE("lines_through maps d = 1 bundles through a chart") {
    Sampler rng(15);
    // a generic stable d = 1 bundle lies exactly on the quint line
    for (int k = 0; k < 5; ++k) {
        DirectionMap dirs;
        for (Mark m : kMarks)
            dirs[size_t(m)] = ProjDirection(Rational(1), rng.rational(9));
        ParabolicBundle B(sph, 1, dirs);
        if (classify_stability(B, muc).verdict != Stability::Stable) continue;
        auto ls = lines_through(B);
        REQUIRE(ls.size() == 1);
        CHECK(ls.begin()->kind == Line16::Kind::Quint);
    }
}

TEST_CASE("meromorphic gauge carries its determinant divisor") {
    Sampler rng(17);
    ParabolicBundle B = rng.generic_bundle(sph);
    ElemMask I(mk({Mark::P0, Mark::PT}));
    ElemComputation comp = elem_transform(B, I);
    // det divisor: a simple zero lost at each masked finite point, balanced
    // at infinity by the twist
    auto it0 = comp.gauge.det_divisor.find(Mark::P0);
    auto itt = comp.gauge.det_divisor.find(Mark::PT);
    REQUIRE(it0 != comp.gauge.det_divisor.end());
    REQUIRE(itt != comp.gauge.det_divisor.end());
    CHECK(it0->second == -1);
    CHECK(itt->second == -1);
    int total = 0;
    for (const auto& [m, ord] : comp.gauge.det_divisor) total += ord;
    CHECK(total == 0); // principal divisor
}
