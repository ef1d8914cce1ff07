#include "higgs5/higgs.hpp"

#include "higgs5/linalg.hpp"

#include <cassert>
#include <climits>

namespace higgs5 {

namespace {

/// [[ab, -a^2], [b^2, -ab]] for a direction (a, b): the traceless rank-one
/// matrices with kernel and image equal to the direction, in the scale
/// convention that reproduces the paper's theta_1.
Mat2Q nilpotent_aligned(const ProjDirection& l) {
    Rational a = l.x(), b = l.y();
    return {a * b, -a * a, b * b, -a * b};
}

void validate_field(const ParabolicBundle& B, const Poly& alpha, const Poly& beta,
                    const Poly& gamma, const HiggsField& th) {
    int d = B.d();
    if (d > 1) throw DomainError("Higgs fields live on bundles with d in {0,1}");
    if (alpha.degree() > 3) throw DomainError("deg alpha exceeds 3");
    if (beta.degree() > 3 - 2 * d) throw DomainError("deg beta exceeds 3-2d");
    if (gamma.degree() > 3 + 2 * d) throw DomainError("deg gamma exceeds 3+2d");
    for (Mark m : kMarks) {
        Mat2Q R = residue_matrix(th, m);
        const ProjDirection& l = B.direction(m);
        Vec2Q rl = R * l.vec();
        if (rl[0] != 0 || rl[1] != 0)
            throw DomainError(std::string("residue not nilpotent for the direction at ") +
                              mark_name(m));
        // trace-free + R l = 0 forces im R inside l; keep the cheap assert
        assert(l.contains({R.a, R.c}) && l.contains({R.b, R.d}));
    }
}

} // namespace

HiggsField make_higgs(ParabolicBundle B, Poly alpha, Poly beta, Poly gamma) {
    HiggsField th(std::move(B), std::move(alpha), std::move(beta), std::move(gamma));
    validate_field(th.base(), th.alpha(), th.beta(), th.gamma(), th);
    return th;
}

Mat2R HiggsField::matrix_x() const {
    RatFunc q(Poly::one(), base_.sphere().vanishing_poly());
    return {RatFunc(alpha_) * q, RatFunc(beta_) * q, RatFunc(gamma_) * q,
            RatFunc(-alpha_) * q};
}

Mat2R HiggsField::matrix_w() const {
    // T M T^{-1} with T = diag(x^d, x^-d), then substitute x = 1/w and
    // multiply by dx/dw = -1/w^2.
    int d = base_.d();
    Poly Q = base_.sphere().vanishing_poly();
    Poly x2d = Poly::one().shift_up(2 * d);
    Mat2R conj = {RatFunc(alpha_, Q), RatFunc(beta_ * x2d, Q), RatFunc(gamma_, Q * x2d),
                  RatFunc(-alpha_, Q)};
    Mat2R sub = substitute_inverse_entrywise(conj);
    RatFunc jac(Poly{Rational(-1)}, Poly{Rational(0), Rational(0), Rational(1)});
    return {sub.a * jac, sub.b * jac, sub.c * jac, sub.d * jac};
}

HiggsField operator*(const Rational& c, const HiggsField& th) {
    return make_higgs(th.base(), Poly(c) * th.alpha_, Poly(c) * th.beta_, Poly(c) * th.gamma_);
}

HiggsField operator+(const HiggsField& a, const HiggsField& b) {
    if (!(a.base_ == b.base_)) throw DomainError("adding Higgs fields on different bundles");
    return make_higgs(a.base_, a.alpha_ + b.alpha_, a.beta_ + b.beta_, a.gamma_ + b.gamma_);
}

Mat2Q residue_matrix(const HiggsField& th, Mark i) {
    if (i == Mark::PInf) return residue_entrywise(th.matrix_w(), P1Point(Rational(0)));
    return residue_entrywise(th.matrix_x(), th.base().sphere().point(i));
}

Mat2Q constant_part(const HiggsField& th, Mark i) {
    Mat2R M = i == Mark::PInf ? th.matrix_w() : th.matrix_x();
    Rational p = i == Mark::PInf ? Rational(0) : th.base().sphere().point(i).value();
    P1Point pp{p};
    int order = 0;
    for (const RatFunc* f : {&M.a, &M.b, &M.c, &M.d})
        if (!f->is_zero()) order = std::max(order, f->pole_order(pp));
    if (order > 1) throw DomainError("pole of order >= 2 in a Higgs field"); // cannot happen
    if (order == 1) return residue_entrywise(M, pp);
    return eval_entrywise(M, p);
}

HitchinPoint higgs_det(const HiggsField& th) {
    Poly P = -(th.alpha() * th.alpha()) - th.beta() * th.gamma();
    if (P.is_zero()) return {Rational(0), Rational(0)};
    Poly Q = th.base().sphere().vanishing_poly();
    auto [quot, rem] = Poly::divmod(P, Q);
    if (!rem.is_zero() || quot.degree() > 1)
        throw DomainError("determinant numerator fails to reduce; invalid field");
    return {quot.coeff(0), quot.coeff(1)};
}

InvariantLines invariant_lines(const HiggsField& th) {
    if (th.is_zero()) return {InvariantLines::Kind::All, std::nullopt};
    HitchinPoint s = higgs_det(th);
    if (!s.is_zero()) return {InvariantLines::Kind::None, std::nullopt};
    // nilpotent over the function field: the saturated kernel is the unique
    // invariant line; (beta, -alpha) spans it unless both vanish
    Poly a = th.beta(), b = -th.alpha();
    if (a.is_zero() && b.is_zero()) {
        a = Poly();
        b = Poly::one(); // field is gamma-only, kernel (0,1)
    }
    // saturate to a subbundle witness of the correct degree
    Poly g = Poly::gcd(a, b);
    if (g.degree() > 0) {
        a = a / g;
        b = b / g;
    }
    int d = th.base().d();
    int da = a.is_zero() ? INT_MIN : a.degree();
    int db = b.is_zero() ? INT_MIN : b.degree();
    int e = std::min(da == INT_MIN ? INT_MAX : -d - da, db == INT_MIN ? INT_MAX : d - db);
    SubbundleWitness w{e, a, b, 0};
    w.incident = witness_incidence(th.base(), w);
    // direct check: theta maps the line into itself
    Mat2R M = th.matrix_x();
    Vec2R v{RatFunc(a), RatFunc(b)};
    Vec2R img = M * v;
    RatFunc wedge = img[0] * RatFunc(b) - img[1] * RatFunc(a);
    assert(wedge.is_zero());
    return {InvariantLines::Kind::One, std::move(w)};
}

Stability higgs_stability(const HiggsField& th, const WeightVector& mu) {
    InvariantLines inv = invariant_lines(th);
    switch (inv.kind) {
        case InvariantLines::Kind::All:
            return classify_stability(th.base(), mu).verdict;
        case InvariantLines::Kind::None:
            return Stability::Stable;
        case InvariantLines::Kind::One: {
            Rational v = stab_value(th.base(), mu, *inv.line);
            if (v > 0) return Stability::Stable;
            if (v < 0) return Stability::Unstable;
            return Stability::StrictlySemistable;
        }
    }
    throw DomainError("unreachable");
}

std::array<Mat2Q, 5> monomial_field_residues(const ParabolicBundle& B, int slot, int power) {
    Poly alpha, beta, gamma;
    Poly mono = Poly::one().shift_up(power);
    if (slot == 0) alpha = mono;
    else if (slot == 1) beta = mono;
    else gamma = mono;
    // unvalidated monomial field, only used to read residues
    HiggsField raw(ParabolicBundle(B), std::move(alpha), std::move(beta), std::move(gamma));
    std::array<Mat2Q, 5> out;
    for (Mark m : kMarks) out[static_cast<size_t>(m)] = residue_matrix(raw, m);
    return out;
}

std::vector<HiggsField> higgs_space(const ParabolicBundle& B) {
    int d = B.d();
    if (d > 1) throw DomainError("higgs_space requires d in {0,1}");
    int na = 4, nb = 4 - 2 * d, ng = 4 + 2 * d;
    size_t cols = static_cast<size_t>(na + nb + ng);
    // residue contribution of each basis monomial at each mark
    std::vector<std::array<Mat2Q, 5>> basis_res(cols);
    for (size_t k = 0; k < cols; ++k) {
        int ki = static_cast<int>(k);
        if (ki < na) basis_res[k] = monomial_field_residues(B, 0, ki);
        else if (ki < na + nb) basis_res[k] = monomial_field_residues(B, 1, ki - na);
        else basis_res[k] = monomial_field_residues(B, 2, ki - na - nb);
    }
    QMatrix rows;
    for (Mark m : kMarks) {
        const ProjDirection& l = B.direction(m);
        for (int comp = 0; comp < 2; ++comp) {
            std::vector<Rational> row(cols, Rational(0));
            for (size_t k = 0; k < cols; ++k) {
                Vec2Q rl = basis_res[k][static_cast<size_t>(m)] * l.vec();
                row[k] = rl[static_cast<size_t>(comp)];
            }
            rows.push_back(std::move(row));
        }
    }
    std::vector<HiggsField> out;
    for (const auto& v : nullspace(rows, cols)) {
        std::vector<Rational> ca(v.begin(), v.begin() + na);
        std::vector<Rational> cb(v.begin() + na, v.begin() + na + nb);
        std::vector<Rational> cg(v.begin() + na + nb, v.end());
        out.push_back(make_higgs(B, Poly(std::move(ca)), Poly(std::move(cb)), Poly(std::move(cg))));
    }
    return out;
}

std::pair<HiggsField, HiggsField> chart_theta_pair(const ParabolicBundle& B) {
    if (B.d() != 0) throw DomainError("chart fields require the d = 0 normalized chart");
    const ProjDirection& ll = B.direction(Mark::PLambda);
    const ProjDirection& lt = B.direction(Mark::PT);
    if (!(B.direction(Mark::P0) == ProjDirection(Rational(1), Rational(0))) ||
        !(B.direction(Mark::P1) == ProjDirection(Rational(1), Rational(1))) ||
        !(B.direction(Mark::PInf) == ProjDirection(Rational(0), Rational(1))) || ll.x() == 0 ||
        lt.x() == 0)
        throw DomainError("bundle is not in normalized chart form");
    Rational u = ll.y(), v = lt.y();
    const Rational& lam = B.sphere().lambda();
    const Rational& t = B.sphere().t();
    Poly X = Poly::x();
    auto lin = [](const Rational& r) { return Poly::linear_root(r); };
    // theta_1 over the common denominator x(x-1)(x-lambda)(x-t)
    Poly a1 = Poly(u * (lam - 1)) * X * lin(t);
    Poly b1 = Poly{lam * (1 - u), u - lam} * lin(t);
    Poly g1 = Poly(u) * Poly{lam - u, u - 1} * X * lin(t);
    // theta_2: swap (u, lambda) -> (v, t)
    Poly a2 = Poly(v * (t - 1)) * X * lin(lam);
    Poly b2 = Poly{t * (1 - v), v - t} * lin(lam);
    Poly g2 = Poly(v) * Poly{t - v, v - 1} * X * lin(lam);
    return {make_higgs(B, a1, b1, g1), make_higgs(B, a2, b2, g2)};
}

HitchinPoint chart_det_formula(const MarkedSphere& sph, const Rational& u, const Rational& v,
                               const Rational& c1, const Rational& c2) {
    const Rational& lam = sph.lambda();
    const Rational& t = sph.t();
    Rational a1 = c1 * (1 - u) + c2 * (1 - v);
    Rational a2 = c1 * t * u * (lam - u) + c2 * lam * v * (t - v);
    Rational b1 = c1 * u * (u - 1) + c2 * v * (v - 1);
    Rational b2 = c1 * (lam - u) + c2 * (t - v);
    return {a1 * a2, b1 * b2};
}

Rational nilpotent_generator_scale(const HiggsField& th) {
    for (Mark m : kMarks) {
        Mat2Q R = residue_matrix(th, m);
        if (R.is_zero()) continue;
        Mat2Q N = nilpotent_aligned(th.base().direction(m));
        for (auto [r, n] : {std::pair{R.a, N.a}, {R.b, N.b}, {R.c, N.c}, {R.d, N.d}})
            if (n != 0) return r / n;
    }
    // residue-free fields (the all-on-O(-1) Hodge form): first nonzero
    // constant-part entry in mark order
    for (Mark m : kMarks) {
        Mat2Q C = constant_part(th, m);
        for (const Rational& e : {C.a, C.b, C.c, C.d})
            if (e != 0) return e;
    }
    throw DomainError("zero field has no generator normalization");
}

HiggsField normalize_nilpotent_generator(const HiggsField& th) {
    Rational k = nilpotent_generator_scale(th);
    return (Rational(1) / k) * th;
}

} // namespace higgs5
