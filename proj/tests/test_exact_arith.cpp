#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "higgs5/logform.hpp"
#include "higgs5/sampler.hpp"

using namespace higgs5;

namespace {

RatFunc one_over(const Poly& p) { return RatFunc(Poly::one(), p); }

} // namespace

TEST_CASE("rational string round trip") {
    CHECK(rat_to_string(Rational(3, 6)) == "1/2");
    CHECK(rat_to_string(Rational(-4)) == "-4");
    CHECK(rat_from_string("7/3") == Rational(7, 3));
    CHECK(rat_from_string("-7/3") == Rational(-7, 3));
    CHECK_THROWS_AS(rat_from_string("1/0"), ParseError);
    CHECK_THROWS_AS(rat_from_string("zap"), ParseError);
}

TEST_CASE("poly division and gcd") {
    Poly p{Rational(-1), Rational(0), Rational(1)}; // x^2 - 1
    Poly q{Rational(-1), Rational(1)};              // x - 1
    CHECK(p / q == Poly{Rational(1), Rational(1)});
    CHECK(Poly::gcd(p, q) == q.monic_or_zero());
    // gcd-reduction idempotence on a RatFunc
    RatFunc f(p * q, q * q * Poly{Rational(2)});
    RatFunc g(f.num(), f.den());
    CHECK(f == g);
}

TEST_CASE("residue examples") {
    Rational t(5, 3);
    // residue(dx/(x-t), t) = 1  [simple pole with unit numerator]
    CHECK(residue(one_over(Poly::linear_root(t)), P1Point(t)) == 1);

    // residue(dx/(x(x-1)), 0) = -1, frozen from the partial-fraction oracle
    // 1/(x(x-1)) = -1/x + 1/(x-1)
    RatFunc f = one_over(Poly::x() * Poly::linear_root(Rational(1)));
    RatFunc pf = -one_over(Poly::x()) + one_over(Poly::linear_root(Rational(1)));
    CHECK(f == pf); // the oracle decomposition itself
    CHECK(residue(f, P1Point(Rational(0))) == -1);
    CHECK(residue(f, P1Point(Rational(1))) == 1);

    // residue at infinity: the residues of a rational 1-form sum to zero
    CHECK(residue(f, P1Point::infinity()) == 0);

    // pole of order 2 is not logarithmic
    RatFunc g = one_over(Poly::linear_root(Rational(1)) * Poly::linear_root(Rational(1)));
    CHECK_THROWS_AS(residue(g, P1Point(Rational(1))), DomainError);
}

TEST_CASE("pole orders") {
    Rational one(1);
    RatFunc f = one_over(Poly::linear_root(one) * Poly::linear_root(one));
    CHECK(f.pole_order(P1Point(one)) == 2);
    RatFunc x3(Poly::one().shift_up(3));
    CHECK(x3.pole_order(P1Point::infinity()) == 3);
    Rational t(7, 2);
    RatFunc h(Poly::linear_root(t), Poly::linear_root(t));
    CHECK(h == RatFunc::one());
    CHECK(h.pole_order(P1Point(t)) == 0);
    // vanishing order is negative
    RatFunc v(Poly::linear_root(t) * Poly::linear_root(t));
    CHECK(v.pole_order(P1Point(t)) == -2);
}

TEST_CASE("ratfunc arithmetic examples") {
    RatFunc a = one_over(Poly::x());
    RatFunc b = one_over(Poly::linear_root(Rational(1)));
    RatFunc sum = a + b;
    CHECK(sum == RatFunc(Poly{Rational(-1), Rational(2)},
                         Poly::x() * Poly::linear_root(Rational(1))));
    CHECK((a * RatFunc::zero()).is_zero());
    CHECK(a / a == RatFunc::one());
    CHECK_THROWS_AS(a / RatFunc::zero(), DomainError);
}

TEST_CASE("residue sum is zero on random logarithmic forms") {
    Sampler rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.uint_below(4));
        std::vector<Rational> poles;
        while (static_cast<int>(poles.size()) < n) {
            Rational p = rng.rational(6);
            bool dup = false;
            for (const auto& q : poles) dup |= (q == p);
            if (!dup) poles.push_back(p);
        }
        RatFunc f;
        std::vector<P1Point> allowed;
        for (const auto& p : poles) {
            Rational c = rng.nonzero_rational(6);
            f += RatFunc(Poly(c), Poly::linear_root(p));
            allowed.push_back(P1Point(p));
        }
        allowed.push_back(P1Point::infinity());
        LogForm form(f, allowed);
        Rational total(0);
        for (const auto& p : allowed) total += form.residue_at(p);
        CHECK(total == 0);
    }
}

TEST_CASE("pole order is additive on products") {
    Sampler rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Rational p = rng.rational(5);
        auto rand_fn = [&] {
            Poly num{rng.nonzero_rational(4), rng.rational(4)};
            Poly den = Poly::linear_root(p);
            for (int k = 0; k < static_cast<int>(rng.uint_below(3)); ++k)
                den *= Poly::linear_root(p);
            return rng.uint_below(2) ? RatFunc(num, den) : RatFunc(den, num);
        };
        RatFunc f = rand_fn(), g = rand_fn();
        if (f.is_zero() || g.is_zero()) continue;
        for (P1Point q : {P1Point(p), P1Point::infinity()})
            CHECK((f * g).pole_order(q) == f.pole_order(q) + g.pole_order(q));
    }
}

TEST_CASE("substitute inverse is an involution") {
    Sampler rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        Poly num{rng.rational(5), rng.rational(5), rng.nonzero_rational(5)};
        Poly den{rng.nonzero_rational(5), rng.rational(5)};
        RatFunc f(num, den);
        CHECK(f.substitute_inverse().substitute_inverse() == f);
    }
}

TEST_CASE("logform rejects bad inputs") {
    std::vector<P1Point> allowed{P1Point(Rational(0))};
    CHECK_THROWS_AS(LogForm(RatFunc(Poly::one(), Poly::x() * Poly::x()), allowed), DomainError);
    CHECK_THROWS_AS(LogForm(one_over(Poly::linear_root(Rational(2))), allowed), DomainError);
    // c dx already has a double pole at infinity (dx = -dw/w^2)
    CHECK_THROWS_AS(LogForm(RatFunc(Poly::one()), allowed), DomainError);
    LogForm ok(one_over(Poly::x()), allowed);
    CHECK(ok.residue_at(P1Point(Rational(0))) == 1);
    CHECK(ok.residue_at(P1Point::infinity()) == -1);
    CHECK(ok.pole_order_at(P1Point::infinity()) == 1);
}
