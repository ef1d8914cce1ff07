#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "higgs5/sampler.hpp"
#include "higgs5/verify.hpp"

using namespace higgs5;

namespace {

const MarkedSphere sph(Rational(2), Rational(3));

} // namespace

TEST_CASE("json round trips") {
    Sampler rng(31);
    ParabolicBundle B = rng.generic_chart_bundle(sph);
    CHECK(bundle_from_json(to_json(B)) == B);

    auto [th1, th2] = chart_theta_pair(B);
    HiggsField th = Rational(2) * th1 + Rational(-1) * th2;
    CHECK(higgs_from_json(to_json(th)) == th);

    WeightVector mu = WeightVector::central();
    CHECK(weights_from_json(to_json(mu)) == mu);

    ElemMask I(mark_bit(Mark::PT) | mark_bit(Mark::PInf));
    json jm = to_json(I);
    CHECK(jm.dump() == "[\"t\",\"inf\"]");
    CHECK(mask_from_json(jm) == I);

    EigenvalueVector nu({Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(1, 7),
                         Rational(1, 11)});
    Connection C = thm64_family(sph, nu, Rational(1), Rational(2));
    Connection C2 = connection_from_json(to_json(C));
    CHECK(C2 == C);
}

TEST_CASE("json determinism") {
    Sampler rng(33);
    ParabolicBundle B = rng.generic_chart_bundle(sph);
    CHECK(to_json(B).dump() == to_json(bundle_from_json(to_json(B))).dump());
}

TEST_CASE("malformed input raises ParseError") {
    CHECK_THROWS_AS(rational_from_json(json("1/0")), ParseError);
    CHECK_THROWS_AS(bundle_from_json(json{{"lambda", "2"}}), ParseError);
    CHECK_THROWS_AS(mask_from_json(json::array({"t"})), ParseError);
    CHECK_THROWS_AS(mask_from_json(json::array({"zap", "t"})), ParseError);
}

TEST_CASE("ratfunc strings round trip through the parser") {
    Sampler rng(35);
    for (int k = 0; k < 20; ++k) {
        Poly num{rng.rational(7), rng.rational(7), rng.nonzero_rational(7)};
        Poly den{rng.nonzero_rational(7), rng.rational(7)};
        RatFunc f(num, den);
        CHECK(RatFunc::parse(f.str()) == f);
    }
    CHECK(RatFunc::parse("0") == RatFunc::zero());
    CHECK(RatFunc::parse("x^2-1") == RatFunc(Poly{Rational(-1), Rational(0), Rational(1)}));
    CHECK(RatFunc::parse("(1)/(x)") == RatFunc(Poly::one(), Poly::x()));
    CHECK_THROWS_AS(RatFunc::parse("x^"), ParseError);
}

TEST_CASE("verify-paper self test catches a corrupted formula") {
    CheckResult good = check_det_formula(sph, 0, 10, false);
    CHECK(good.pass);
    CheckResult bad = check_det_formula(sph, 0, 10, true);
    CHECK(!bad.pass);
    CHECK(bad.details.contains("expected")); // counterexample serialized
}

TEST_CASE("verify-paper is deterministic and seed independent in outcome") {
    VerifyOptions opts;
    opts.sphere = sph;
    opts.samples = 8;
    opts.seed = 0;
    auto r1 = verify_paper(opts);
    auto r1b = verify_paper(opts);
    CHECK(verify_report(r1).dump() == verify_report(r1b).dump());
    opts.seed = 1234;
    auto r2 = verify_paper(opts);
    REQUIRE(r1.size() == r2.size());
    for (size_t i = 0; i < r1.size(); ++i) CHECK(r1[i].pass == r2[i].pass);
}
