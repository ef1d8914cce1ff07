#include "higgs5/connection.hpp"

#include "higgs5/linalg.hpp"

#include <cassert>

namespace higgs5 {

bool is_generic(const EigenvalueVector& nu) {
    for (Mark m : kMarks)
        if (nu.at(m) == 0) return false;
    for (unsigned signs = 0; signs < 32; ++signs) {
        Rational s(0);
        for (Mark m : kMarks)
            s += ((signs >> static_cast<int>(m)) & 1u) ? -nu.at(m) : nu.at(m);
        if (rat_den(s) == 1) return false;
    }
    return true;
}

namespace {

Mat2R connection_matrix_w(int d, const Mat2R& A) {
    Poly x2d = Poly::one().shift_up(2 * d);
    Mat2R conj{A.a, A.b * RatFunc(x2d), A.c / RatFunc(x2d), A.d};
    Mat2R sub = substitute_inverse_entrywise(conj);
    RatFunc jac(Poly{Rational(-1)}, Poly{Rational(0), Rational(0), Rational(1)});
    RatFunc dw(Poly(Rational(d)), Poly::x());
    return {sub.a * jac + dw, sub.b * jac, sub.c * jac, sub.d * jac - dw};
}

Mat2Q connection_residue_raw(const ParabolicBundle& B, const Mat2R& A, Mark i) {
    if (i == Mark::PInf)
        return residue_entrywise(connection_matrix_w(B.d(), A), P1Point(Rational(0)));
    return residue_entrywise(A, B.sphere().point(i));
}

} // namespace

Mat2R Connection::matrix_w() const { return connection_matrix_w(base_.d(), A_); }

Mat2Q connection_residue(const Connection& C, Mark i) {
    return connection_residue_raw(C.base(), C.matrix_x(), i);
}

Connection make_connection(ParabolicBundle B, Mat2R A, EigenvalueVector nu) {
    if (!(A.a + A.d).is_zero()) throw DomainError("connection matrix is not trace free");
    Poly Q = B.sphere().vanishing_poly();
    for (const RatFunc* f : {&A.a, &A.b, &A.c, &A.d}) {
        if (f->is_zero()) continue;
        if (!f->den().divides(Q))
            throw DomainError("connection has a pole outside the divisor or of order >= 2");
    }
    Connection C(std::move(B), std::move(A), std::move(nu));
    // infinity chart: simple pole only
    Mat2R Aw = C.matrix_w();
    P1Point w0{Rational(0)};
    for (const RatFunc* f : {&Aw.a, &Aw.b, &Aw.c, &Aw.d})
        if (!f->is_zero() && f->pole_order(w0) > 1)
            throw DomainError("connection has a pole of order >= 2 at inf");
    for (Mark m : kMarks) {
        Mat2Q R = connection_residue(C, m);
        const Rational& v = C.nu().at(m);
        if (R.trace() != 0) throw DomainError("residue is not trace free");
        if (R.det() != -v * v)
            throw DomainError(std::string("residue eigenvalues differ from +-nu at ") +
                              mark_name(m));
        Vec2Q l = C.base().direction(m).vec();
        Vec2Q rl = R * l;
        if (rl[0] != v * l[0] || rl[1] != v * l[1])
            throw DomainError(std::string("direction is not the nu-eigenspace at ") +
                              mark_name(m));
    }
    return C;
}

Connection elem_even(const Connection& C, const ElemMask& I) {
    ElemComputation comp = elem_transform(C.base(), I);
    const Mat2R& G = comp.gauge_x;
    Mat2R Ginv = G.inverse();
    Mat2R A = G * C.matrix_x() * Ginv - derivative_entrywise(G) * Ginv;
    A.a += comp.conn_twist;
    A.d += comp.conn_twist;
    // eigenvalues move by the twist; recompute them from the residues as the
    // Rayleigh quotients of the transported eigendirections
    std::array<Rational, 5> nu;
    for (Mark m : kMarks) {
        Mat2Q R = connection_residue_raw(comp.bundle, A, m);
        Vec2Q l = comp.bundle.direction(m).vec();
        Vec2Q rl = R * l;
        nu[static_cast<size_t>(m)] = l[0] != 0 ? rl[0] / l[0] : rl[1] / l[1];
    }
    return make_connection(comp.bundle, A, EigenvalueVector(nu));
}

namespace {

RatFunc pole(const Rational& p) { return RatFunc(Poly::one(), Poly::linear_root(p)); }

ParabolicBundle thm64_bundle(const MarkedSphere& sph) {
    DirectionMap dirs;
    dirs[size_t(Mark::P0)] = ProjDirection(Rational(0), Rational(1));
    dirs[size_t(Mark::PLambda)] = ProjDirection(Rational(0), Rational(1));
    dirs[size_t(Mark::PT)] = ProjDirection(Rational(0), Rational(1));
    dirs[size_t(Mark::P1)] = ProjDirection(Rational(1), Rational(1));
    dirs[size_t(Mark::PInf)] = ProjDirection(Rational(1), Rational(0));
    return ParabolicBundle(sph, 0, dirs);
}

ParabolicBundle prop63_bundle(const MarkedSphere& sph, const Rational& u) {
    DirectionMap dirs;
    dirs[size_t(Mark::PLambda)] = ProjDirection(u, Rational(1));
    dirs[size_t(Mark::PT)] = ProjDirection(Rational(0), Rational(1));
    dirs[size_t(Mark::P0)] = ProjDirection(Rational(0), Rational(1));
    dirs[size_t(Mark::P1)] = ProjDirection(Rational(1), Rational(1));
    dirs[size_t(Mark::PInf)] = ProjDirection(Rational(1), Rational(0));
    return ParabolicBundle(sph, 0, dirs);
}

Mat2R thm64_matrix(const MarkedSphere& sph, const EigenvalueVector& nu, const Rational& a1,
                   const Rational& a2) {
    Rational rho(0);
    for (Mark m : kMarks) rho -= nu.at(m);
    Rational n0 = nu.at(Mark::P0), n1 = nu.at(Mark::P1);
    Rational nl = nu.at(Mark::PLambda), nt = nu.at(Mark::PT);
    Mat2R A = Mat2R::zero();
    auto add = [&](const Mat2Q& M, const RatFunc& f) {
        A = A + Mat2R{RatFunc(M.a) * f, RatFunc(M.b) * f, RatFunc(M.c) * f, RatFunc(M.d) * f};
    };
    add({-n0, Rational(0), rho, n0}, pole(Rational(0)));
    add({-n1 - rho, 2 * n1 + rho, -rho, n1 + rho}, pole(Rational(1)));
    add({-nl, Rational(0), Rational(0), nl}, pole(sph.lambda()));
    add({-nt, Rational(0), Rational(0), nt}, pole(sph.t()));
    // theta_1, theta_2 of the proof
    add({Rational(0), Rational(0), a1, Rational(0)}, pole(Rational(0)));
    add({Rational(0), Rational(0), -a1, Rational(0)}, pole(sph.lambda()));
    add({Rational(0), Rational(0), a2, Rational(0)}, pole(Rational(0)));
    add({Rational(0), Rational(0), -a2, Rational(0)}, pole(sph.t()));
    return A;
}

Mat2R prop63_matrix(const MarkedSphere& sph, const EigenvalueVector& nu, const Rational& u,
                    const Rational& a1, const Rational& a2) {
    // slots: t1 = lambda, t2 = t, t3 = 0, t4 = 1, t5 = inf
    Rational nt1 = nu.at(Mark::PLambda), nt2 = nu.at(Mark::PT);
    Rational n0 = nu.at(Mark::P0), n1 = nu.at(Mark::P1), ninf = nu.at(Mark::PInf);
    Rational rho = -(nt1 + nt2) - n0 - n1 - ninf;
    Mat2R A = Mat2R::zero();
    auto add = [&](const Mat2Q& M, const RatFunc& f) {
        A = A + Mat2R{RatFunc(M.a) * f, RatFunc(M.b) * f, RatFunc(M.c) * f, RatFunc(M.d) * f};
    };
    add({-n0, Rational(0), rho, n0}, pole(Rational(0)));
    add({-n1 - rho, 2 * n1 + rho, -rho, n1 + rho}, pole(Rational(1)));
    add({-nt1, 2 * nt1 * u, Rational(0), nt1}, pole(sph.lambda()));
    add({-nt2, Rational(0), Rational(0), nt2}, pole(sph.t()));
    // Theta_1 (u-dependent) and Theta_2
    add({Rational(0), Rational(0), a1 * (1 - u), Rational(0)}, pole(Rational(0)));
    add({a1 * u, -a1 * u, a1 * u, -a1 * u}, pole(Rational(1)));
    add({-a1 * u, a1 * u * u, -a1, a1 * u}, pole(sph.lambda()));
    add({Rational(0), Rational(0), a2, Rational(0)}, pole(Rational(0)));
    add({Rational(0), Rational(0), -a2, Rational(0)}, pole(sph.t()));
    return A;
}

} // namespace

Connection thm64_family(const MarkedSphere& sph, const EigenvalueVector& nu, const Rational& a1,
                        const Rational& a2) {
    if (!is_generic(nu)) throw DomainError("thm64_family requires a generic eigenvalue vector");
    Mat2R A = thm64_matrix(sph, nu, a1, a2);
    // the displayed normal form puts l_inf on the (-nu_inf)-eigenspace
    std::array<Rational, 5> actual = nu.raw();
    actual[static_cast<size_t>(Mark::PInf)] = -nu.at(Mark::PInf);
    return make_connection(thm64_bundle(sph), A, EigenvalueVector(actual));
}

Connection prop63_family(const MarkedSphere& sph, const EigenvalueVector& nu, const Rational& u,
                         const Rational& a1, const Rational& a2) {
    if (!is_generic(nu)) throw DomainError("prop63_family requires a generic eigenvalue vector");
    Mat2R A = prop63_matrix(sph, nu, u, a1, a2);
    std::array<Rational, 5> actual = nu.raw();
    actual[static_cast<size_t>(Mark::PInf)] = -nu.at(Mark::PInf);
    return make_connection(prop63_bundle(sph, u), A, EigenvalueVector(actual));
}

Connection fuchsian_connection(const ParabolicBundle& B, const EigenvalueVector& nu) {
    if (B.d() != 0) throw DomainError("fuchsian_connection builds d = 0 connections only");
    // unknowns: (a_i, b_i, c_i) per finite mark, A_i = [[a, b],[c, -a]]
    // equations: (A_i - nu_i) l_i = 0 at the finite marks, and the residue
    // at infinity -sum A_i has l_inf as its nu_inf-eigenvector
    const std::array<Mark, 4> finite = {Mark::P0, Mark::P1, Mark::PLambda, Mark::PT};
    size_t cols = 12;
    QMatrix rows;
    std::vector<Rational> rhs;
    auto eig_rows = [&](size_t base, const Vec2Q& l, const Rational& v) {
        // a l0 + b l1 = v l0 ; c l0 - a l1 = v l1
        std::vector<Rational> r1(cols, Rational(0)), r2(cols, Rational(0));
        r1[base] = l[0];
        r1[base + 1] = l[1];
        r2[base] = -l[1];
        r2[base + 2] = l[0];
        rows.push_back(std::move(r1));
        rhs.push_back(v * l[0]);
        rows.push_back(std::move(r2));
        rhs.push_back(v * l[1]);
    };
    for (size_t k = 0; k < finite.size(); ++k)
        eig_rows(3 * k, B.direction(finite[k]).vec(), nu.at(finite[k]));
    {
        // residue at infinity: R = -(A_0 + A_1 + A_lambda + A_t)
        Vec2Q l = B.direction(Mark::PInf).vec();
        std::vector<Rational> r1(cols, Rational(0)), r2(cols, Rational(0));
        for (size_t k = 0; k < finite.size(); ++k) {
            r1[3 * k] = -l[0];
            r1[3 * k + 1] = -l[1];
            r2[3 * k] = l[1];
            r2[3 * k + 2] = -l[0];
        }
        rows.push_back(std::move(r1));
        rhs.push_back(nu.at(Mark::PInf) * l[0]);
        rows.push_back(std::move(r2));
        rhs.push_back(nu.at(Mark::PInf) * l[1]);
    }
    auto sol = solve(rows, rhs);
    if (!sol) throw DomainError("no connection with the requested eigenvalue data");
    Mat2R A = Mat2R::zero();
    for (size_t k = 0; k < finite.size(); ++k) {
        Mat2Q M{(*sol)[3 * k], (*sol)[3 * k + 1], (*sol)[3 * k + 2], -(*sol)[3 * k]};
        RatFunc f = pole(B.sphere().point(finite[k]).value());
        A = A + Mat2R{RatFunc(M.a) * f, RatFunc(M.b) * f, RatFunc(M.c) * f, RatFunc(M.d) * f};
    }
    return make_connection(B, A, nu);
}

std::pair<HiggsField, ParabolicBundle> scaled_gauge_limit(const Connection& C,
                                                          std::pair<int, int> exponents) {
    auto [k1, k2] = exponents;
    if (k1 == k2)
        throw DomainError("divergent family: the d-part of c nabla has no limit "
                          "under a homothety gauge");
    // F(c) = c g_c A g_c^{-1}, g_c = diag(c^k1, c^k2)
    const Mat2R& A = C.matrix_x();
    LaurentMatrix F{CLaurent(1, A.a), CLaurent(1 + k1 - k2, A.b), CLaurent(1 + k2 - k1, A.c),
                    CLaurent(1, A.d)};
    Mat2R limit{F.a.limit_at_zero(), F.b.limit_at_zero(), F.c.limit_at_zero(),
                F.d.limit_at_zero()};
    DirectionMap dirs;
    for (Mark m : kMarks) {
        Vec2Q v = C.base().direction(m).vec();
        LaurentVec lv{CLaurent(k1, RatFunc(v[0])), CLaurent(k2, RatFunc(v[1]))};
        dirs[static_cast<size_t>(m)] = ProjDirection(projective_limit_at_zero(lv));
    }
    ParabolicBundle proj(C.base().sphere(), C.base().d(), dirs);
    HiggsField th = higgs_from_matrix(proj, limit);
    return {std::move(th), std::move(proj)};
}

namespace {

struct FamilyMatch {
    enum class Kind { Thm64, Prop63 } kind;
    Connection normalized; // constant-gauged into the displayed frame
    Rational u;            // Prop63 only
};

/// Constant gauge of a connection (no derivative term).
Connection apply_constant_gauge(const Connection& C, const Mat2Q& g) {
    Mat2R gr = to_ratfunc(g);
    Mat2R A = gr * C.matrix_x() * gr.inverse();
    ParabolicBundle B = apply_constant_gauge(C.base(), g);
    return make_connection(std::move(B), std::move(A), C.nu());
}

std::optional<Mat2Q> normalizing_gauge_for(const ParabolicBundle& B, Mark common_rep) {
    // common -> (0,1), l_inf -> (1,0), l_1 -> (1,1)
    const auto& li = B.direction(Mark::PInf);
    const auto& l1 = B.direction(Mark::P1);
    const auto& lc = B.direction(common_rep);
    if (li == l1 || li == lc || l1 == lc) return std::nullopt;
    Mat2Q M = Mat2Q::from_columns(li.vec(), lc.vec());
    Mat2Q Minv = M.inverse();
    Vec2Q w = Minv * l1.vec();
    if (w[0] == 0 || w[1] == 0) return std::nullopt;
    return Mat2Q::diag(Rational(1) / w[0], Rational(1) / w[1]) * Minv;
}

std::optional<FamilyMatch> match_thm64(const Connection& C) {
    const ParabolicBundle& B = C.base();
    if (B.d() != 0) return std::nullopt;
    const ProjDirection& c0 = B.direction(Mark::P0);
    if (!(B.direction(Mark::PLambda) == c0) || !(B.direction(Mark::PT) == c0))
        return std::nullopt;
    auto g = normalizing_gauge_for(B, Mark::P0);
    if (!g) return std::nullopt;
    Connection N = apply_constant_gauge(C, *g);
    // extract the family parameters and verify the displayed shape
    std::array<Rational, 5> nud = N.nu().raw();
    nud[static_cast<size_t>(Mark::PInf)] = -nud[static_cast<size_t>(Mark::PInf)];
    EigenvalueVector nu_display{nud};
    const MarkedSphere& sph = B.sphere();
    Mat2R base0 = thm64_matrix(sph, nu_display, Rational(0), Rational(0));
    Mat2R E = N.matrix_x() - base0;
    Rational a1 = -residue(E.c, P1Point(sph.lambda()));
    Rational a2 = -residue(E.c, P1Point(sph.t()));
    if (!(N.matrix_x() == thm64_matrix(sph, nu_display, a1, a2))) return std::nullopt;
    return FamilyMatch{FamilyMatch::Kind::Thm64, std::move(N), Rational(0)};
}

std::optional<FamilyMatch> match_prop63(const Connection& C) {
    const ParabolicBundle& B = C.base();
    if (B.d() != 0) return std::nullopt;
    const ProjDirection& c0 = B.direction(Mark::P0);
    if (!(B.direction(Mark::PT) == c0)) return std::nullopt;
    if (B.direction(Mark::PLambda) == c0) return std::nullopt; // that is the thm64 shape
    auto g = normalizing_gauge_for(B, Mark::P0);
    if (!g) return std::nullopt;
    Connection N = apply_constant_gauge(C, *g);
    // l_lambda must be (u, 1) with u != 0
    const ProjDirection& ll = N.base().direction(Mark::PLambda);
    if (ll.y() == 0) return std::nullopt;
    Rational u = ll.x() / ll.y();
    if (u == 0) return std::nullopt;
    std::array<Rational, 5> nud = N.nu().raw();
    nud[static_cast<size_t>(Mark::PInf)] = -nud[static_cast<size_t>(Mark::PInf)];
    EigenvalueVector nu_display{nud};
    const MarkedSphere& sph = B.sphere();
    Mat2R base0 = prop63_matrix(sph, nu_display, u, Rational(0), Rational(0));
    Mat2R E = N.matrix_x() - base0;
    Rational a1 = -residue(E.c, P1Point(sph.lambda()));
    Rational a2 = -residue(E.c, P1Point(sph.t()));
    if (!(N.matrix_x() == prop63_matrix(sph, nu_display, u, a1, a2))) return std::nullopt;
    return FamilyMatch{FamilyMatch::Kind::Prop63, std::move(N), u};
}

} // namespace

PiMuLimit pi_mu_limit(const Connection& C, const WeightVector& mu) {
    if (classify_stability(C.base(), mu).verdict == Stability::Stable) {
        HiggsField zero = zero_higgs(C.base());
        return {PiMuLimit::Kind::StableBundle, std::move(zero), std::nullopt};
    }
    for (const ElemMask& I : elem_masks()) {
        Connection moved = I.empty() ? C : elem_even(C, I);
        std::optional<FamilyMatch> match = match_thm64(moved);
        if (!match) match = match_prop63(moved);
        if (!match) continue;
        auto [limit_field, proj] = scaled_gauge_limit(match->normalized, {0, 1});
        // transport the limit back through the involutive mask
        HiggsField back = I.empty() ? limit_field : elem_even(limit_field, I);
        if (match->kind == FamilyMatch::Kind::Thm64) {
            HodgeNormalForm h = hodge_normal_form(back);
            HiggsField canon = h.field;
            return {PiMuLimit::Kind::HodgeLimit, std::move(canon), std::move(h)};
        }
        // family case: normalize by the torus of the projected bundle
        HiggsField norm = normalize_nilpotent_generator(back);
        return {PiMuLimit::Kind::FamilyLimit, std::move(norm), std::nullopt};
    }
    return {PiMuLimit::Kind::Uncovered, std::nullopt, std::nullopt};
}

} // namespace higgs5
