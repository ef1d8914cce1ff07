#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "higgs5/connection.hpp"
#include "higgs5/sampler.hpp"

using namespace higgs5;

namespace {

const MarkedSphere sph(Rational(2), Rational(3));
const WeightVector muc = WeightVector::central();

EigenvalueVector nu_all(const Rational& v) { return EigenvalueVector({v, v, v, v, v}); }

EigenvalueVector nu_of(std::array<Rational, 5> v) { return EigenvalueVector(std::move(v)); }

} // namespace

TEST_CASE("is_generic") {
    // every signed sum of five halves is an odd half-integer
    CHECK(is_generic(nu_all(Rational(1, 2))));
    // +,+,+,+,- gives 3 * (1/3) = 1
    CHECK(!is_generic(nu_all(Rational(1, 3))));
    CHECK(!is_generic(nu_of({Rational(1, 2), Rational(0), Rational(1, 2), Rational(1, 2),
                             Rational(1, 2)})));
    // permutation and sign-flip invariance
    Sampler rng(3);
    for (int k = 0; k < 20; ++k) {
        std::array<Rational, 5> v;
        for (auto& x : v) x = rng.rational(7);
        EigenvalueVector nu(v);
        std::array<Rational, 5> w = v;
        std::swap(w[0], w[3]);
        w[1] = -w[1];
        CHECK(is_generic(nu) == is_generic(EigenvalueVector(w)));
    }
}

TEST_CASE("thm64 family validates and has the displayed residues") {
    EigenvalueVector nu = nu_of({Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                 Rational(1, 7), Rational(1, 11)});
    REQUIRE(is_generic(nu));
    Rational a1(2), a2(-3);
    Connection C = thm64_family(sph, nu, a1, a2);
    // residue at lambda: diag(-nu_l, nu_l) + a1 [[0,0],[-1,0]]
    Mat2Q Rl = connection_residue(C, Mark::PLambda);
    CHECK(Rl == Mat2Q{-nu.at(Mark::PLambda), 0, -a1, nu.at(Mark::PLambda)});
    // rho = -sum nu enters the residue at 0
    Rational rho(0);
    for (Mark m : kMarks) rho -= nu.at(m);
    Mat2Q R0 = connection_residue(C, Mark::P0);
    CHECK(R0 == Mat2Q{-nu.at(Mark::P0), 0, rho + a1 + a2, nu.at(Mark::P0)});
    // underlying bundle is a 3+1+1 configuration, mu_c-unstable and not
    // Table 1 (the two odd directions are not collinear)
    CHECK(classify_stability(C.base(), muc).verdict == Stability::Unstable);
    CHECK(!classify_table1(C.base()).has_value());

    // residue theorem with the infinity frame correction
    Mat2Q sum = Mat2Q::zero();
    for (Mark m : kMarks) sum = sum + connection_residue(C, m);
    CHECK(sum.is_zero());

    // non-generic nu is rejected
    CHECK_THROWS_AS(thm64_family(sph, nu_all(Rational(1, 3)), a1, a2), DomainError);
}

TEST_CASE("make_connection rejects bad data") {
    EigenvalueVector nu = nu_all(Rational(1, 2));
    Connection C = thm64_family(sph, nu, Rational(1), Rational(1));
    // wrong eigenspace: replace l_0 by the (-nu_0)-eigenvector
    DirectionMap dirs = C.base().directions();
    Mat2Q R0 = connection_residue(C, Mark::P0);
    // R0 is lower triangular with l_0 = (0,1); the other eigenvector
    Rational ev = -C.nu().at(Mark::P0);
    Vec2Q other{R0.d - ev == 0 ? Rational(1) : R0.b, ev - R0.a};
    if (other[0] == 0 && other[1] == 0) other = {Rational(1), Rational(0)};
    dirs[size_t(Mark::P0)] = ProjDirection(other);
    ParabolicBundle Bad(sph, 0, dirs);
    CHECK_THROWS_AS(make_connection(Bad, C.matrix_x(), C.nu()), DomainError);

    // A = 0 with nu != 0: residues have zero eigenvalues
    CHECK_THROWS_AS(make_connection(C.base(), Mat2R::zero(), C.nu()), DomainError);

    // pole of order 2 outside the log condition
    Mat2R A2{RatFunc(Poly::one(), Poly::x() * Poly::x()), RatFunc(), RatFunc(),
             -RatFunc(Poly::one(), Poly::x() * Poly::x())};
    CHECK_THROWS_AS(make_connection(C.base(), A2, C.nu()), DomainError);
}

TEST_CASE("prop63 family matches its displays") {
    EigenvalueVector nu = nu_of({Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                 Rational(1, 7), Rational(1, 11)});
    Rational u(4), a1(0), a2(0);
    Connection C0 = prop63_family(sph, nu, u, a1, a2);
    // nabla_0 upper-right entries: (2 nu_1 + rho)/(x-1) and 2 nu_{t1} u/(x-t1)
    Rational nt1 = nu.at(Mark::PLambda), nt2 = nu.at(Mark::PT);
    Rational rho = -(nt1 + nt2) - nu.at(Mark::P0) - nu.at(Mark::P1) - nu.at(Mark::PInf);
    RatFunc expected_b = RatFunc(Poly(2 * nu.at(Mark::P1) + rho), Poly::linear_root(Rational(1))) +
                         RatFunc(Poly(2 * nt1 * u), Poly::linear_root(sph.lambda()));
    CHECK(C0.matrix_x().b == expected_b);
    // Theta_1 entry at t1: [[-u, u^2],[-1, u]]
    Connection C1 = prop63_family(sph, nu, u, Rational(1), Rational(0));
    Mat2Q diff = connection_residue(C1, Mark::PLambda) - connection_residue(C0, Mark::PLambda);
    CHECK(diff == Mat2Q{-u, u * u, -1, u});
    // u = 0 degenerates into the 4-directions configuration
    Connection Cdeg = prop63_family(sph, nu, Rational(0), a1, a2);
    CHECK(Cdeg.base().direction(Mark::PLambda) == ProjDirection(Rational(0), Rational(1)));
}

TEST_CASE("scaled gauge limit of the thm64 family") {
    EigenvalueVector nu = nu_of({Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                 Rational(1, 7), Rational(1, 11)});
    Rational a1(5), a2(-2);
    Connection C = thm64_family(sph, nu, a1, a2);
    auto [th, proj] = scaled_gauge_limit(C, {0, 1});
    // beta = (2 nu_1 + rho) dx/(x-1), independent of a1, a2
    Rational rho(0);
    for (Mark m : kMarks) rho -= nu.at(m);
    CHECK(th.alpha().is_zero());
    CHECK(th.gamma().is_zero());
    RatFunc beta_form(th.beta(), sph.vanishing_poly());
    CHECK(beta_form == RatFunc(Poly(2 * nu.at(Mark::P1) + rho), Poly::linear_root(Rational(1))));
    // projected directions
    CHECK(proj.direction(Mark::P0) == ProjDirection(Rational(0), Rational(1)));
    CHECK(proj.direction(Mark::PLambda) == ProjDirection(Rational(0), Rational(1)));
    CHECK(proj.direction(Mark::PT) == ProjDirection(Rational(0), Rational(1)));
    CHECK(proj.direction(Mark::P1) == ProjDirection(Rational(1), Rational(0)));
    CHECK(proj.direction(Mark::PInf) == ProjDirection(Rational(1), Rational(0)));

    // identity family is flagged
    CHECK_THROWS_AS(scaled_gauge_limit(C, {0, 0}), DomainError);
    // a divergent exponent pair leaves negative powers
    CHECK_THROWS_AS(scaled_gauge_limit(C, {0, 2}), DomainError);
}

TEST_CASE("scaled gauge limit of the prop63 family depends on a1") {
    EigenvalueVector nu = nu_of({Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                 Rational(1, 7), Rational(1, 11)});
    Rational u(3), a2(4);
    Rational nt1 = nu.at(Mark::PLambda);
    Rational rho = -(nt1 + nu.at(Mark::PT)) - nu.at(Mark::P0) - nu.at(Mark::P1) -
                   nu.at(Mark::PInf);
    for (const Rational& a1 : {Rational(0), Rational(1), Rational(7, 2)}) {
        Connection C = prop63_family(sph, nu, u, a1, a2);
        auto [th, proj] = scaled_gauge_limit(C, {0, 1});
        RatFunc beta_form(th.beta(), sph.vanishing_poly());
        // coefficients read off the residues of the displayed family: the
        // t1 term carries 2 nu_{t1} u (see the ledger on the printed beta)
        RatFunc expected =
            RatFunc(Poly(2 * nu.at(Mark::P1) + rho - a1 * u), Poly::linear_root(Rational(1))) +
            RatFunc(Poly(2 * nt1 * u + a1 * u * u), Poly::linear_root(sph.lambda()));
        CHECK(beta_form == expected);
        // the affine map a1 -> coefficient pair is injective for u != 0
        CHECK(residue(beta_form, P1Point(sph.lambda())) == 2 * nt1 * u + a1 * u * u);
    }
}

TEST_CASE("pi_mu_limit covers the three computed cases") {
    EigenvalueVector nu = nu_of({Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                 Rational(1, 7), Rational(1, 11)});
    // stable bundle: (E, 0, l)
    Sampler rng(21);
    ParabolicBundle B = rng.generic_bundle(sph);
    Connection SC = fuchsian_connection(B, nu);
    PiMuLimit SL = pi_mu_limit(SC, muc);
    CHECK(SL.kind == PiMuLimit::Kind::StableBundle);
    CHECK(SL.field->is_zero());

    // thm64: the same Hodge bundle for different (a1, a2)
    Connection C1 = thm64_family(sph, nu, Rational(1), Rational(2));
    Connection C2 = thm64_family(sph, nu, Rational(-4), Rational(9));
    PiMuLimit L1 = pi_mu_limit(C1, muc);
    PiMuLimit L2 = pi_mu_limit(C2, muc);
    REQUIRE(L1.kind == PiMuLimit::Kind::HodgeLimit);
    REQUIRE(L2.kind == PiMuLimit::Kind::HodgeLimit);
    CHECK(*L1.hodge == *L2.hodge);

    // prop63 with the asymmetric weight separates a1 values
    std::array<Rational, 5> w{Rational(3, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4),
                              Rational(1, 4)};
    WeightVector mu(w);
    Connection D1 = prop63_family(sph, nu, Rational(3), Rational(0), Rational(1));
    Connection D2 = prop63_family(sph, nu, Rational(3), Rational(2), Rational(1));
    PiMuLimit M1 = pi_mu_limit(D1, mu);
    PiMuLimit M2 = pi_mu_limit(D2, mu);
    REQUIRE(M1.kind == PiMuLimit::Kind::FamilyLimit);
    REQUIRE(M2.kind == PiMuLimit::Kind::FamilyLimit);
    CHECK(higgs_stability(*M1.field, mu) == Stability::Stable);
    CHECK(!(*M1.field == *M2.field));

    // a connection that is none of these reports uncovered: an unstable
    // bundle outside the El-orbit of the families (two coincident pairs)
    // would do, but simplest is the prop63 bundle under the central weight
    // with a strictly semistable... use an asymmetric mu making the thm64
    // bundle neither stable nor family-matchable: the 3+1+1 bundle is only
    // covered through its family, so corrupting the nu data is the easiest
    // honest route; skip: uncovered is exercised in the io tests.
}

TEST_CASE("elem acts on connections and halves the masked eigenvalues") {
    EigenvalueVector nu = nu_of({Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                 Rational(1, 7), Rational(1, 11)});
    Connection C = thm64_family(sph, nu, Rational(1), Rational(2));
    ElemMask I(mark_bit(Mark::P0) | mark_bit(Mark::P1));
    Connection D = elem_even(C, I);
    // masked points: new eigenvalue pair is +-(nu - 1/2) relative to the
    // kernel direction; unmasked points keep nu up to sign conventions
    for (Mark m : {Mark::PLambda, Mark::PT, Mark::PInf})
        CHECK(D.nu().at(m) == C.nu().at(m));
    for (Mark m : {Mark::P0, Mark::P1}) {
        Rational v = D.nu().at(m);
        Rational old = C.nu().at(m);
        CHECK((v == old - Rational(1, 2) || v == Rational(1, 2) - old));
    }
    // residue theorem survives the transformation
    Mat2Q sum = Mat2Q::zero();
    for (Mark m : kMarks) sum = sum + connection_residue(D, m);
    if (D.base().d() == 0) CHECK(sum.is_zero());
    // involution up to isomorphism: eigenvalues return
    Connection back = elem_even(D, I);
    for (Mark m : kMarks)
        CHECK((back.nu().at(m) == C.nu().at(m) || back.nu().at(m) == -C.nu().at(m)));
}

TEST_CASE("fuchsian_connection residue theorem and validation") {
    Sampler rng(23);
    EigenvalueVector nu = nu_of({Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                 Rational(1, 7), Rational(1, 11)});
    for (int k = 0; k < 5; ++k) {
        ParabolicBundle B = rng.generic_bundle(sph);
        Connection C = fuchsian_connection(B, nu);
        Mat2Q sum = Mat2Q::zero();
        for (Mark m : kMarks) sum = sum + connection_residue(C, m);
        CHECK(sum.is_zero());
    }
}
