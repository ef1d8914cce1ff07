#include "higgs5/elem.hpp"

#include "higgs5/sampler.hpp"

#include <cassert>
#include <mutex>

namespace higgs5 {

const std::vector<ElemMask>& elem_masks() {
    static const std::vector<ElemMask> masks = [] {
        std::vector<ElemMask> out;
        for (MarkSet s = 0; s <= 0x1f; ++s)
            if (mark_count(s) % 2 == 0) out.push_back(ElemMask(s));
        return out;
    }();
    return masks;
}

int elem_mask_index(const ElemMask& m) {
    const auto& ms = elem_masks();
    for (size_t i = 0; i < ms.size(); ++i)
        if (ms[i] == m) return static_cast<int>(i);
    throw DomainError("odd mask");
}

WeightVector weight_transform(const WeightVector& mu, const ElemMask& I) {
    std::array<Rational, 5> w;
    for (Mark m : kMarks)
        w[static_cast<size_t>(m)] = I.contains(m) ? Rational(1) - mu.at(m) : mu.at(m);
    return WeightVector(w);
}

namespace {

/// Column basis completing a direction to a frame: [l | perp].
Mat2Q frame_from_direction(const ProjDirection& l) {
    Vec2Q v = l.vec();
    Vec2Q perp = (v[0] == 0) ? Vec2Q{Rational(1), Rational(0)} : Vec2Q{Rational(0), Rational(1)};
    return Mat2Q::from_columns(v, perp);
}

RatFunc monomial(int k) {
    if (k >= 0) return RatFunc(Poly::one().shift_up(k));
    return RatFunc(Poly::one(), Poly::one().shift_up(-k));
}

/// Laurent helpers on RatFunc entries whose denominators are powers of x.
bool is_x_power(const Poly& p) { return p.is_monomial() && p.lead() == 1; }

struct LaurentEntry {
    Poly num;
    int shift; // entry = num * x^{-shift}
};

LaurentEntry laurent_entry(const RatFunc& f) {
    if (f.is_zero()) return {Poly(), 0};
    if (!is_x_power(f.den())) throw DomainError("transition matrix is not Laurent");
    return {f.num(), f.den().degree()};
}

} // namespace

BirkhoffResult birkhoff_factor(const Mat2R& T) {
    // Shift to a polynomial matrix x^s T, remembering s.
    std::array<LaurentEntry, 4> entries = {laurent_entry(T.a), laurent_entry(T.b),
                                           laurent_entry(T.c), laurent_entry(T.d)};
    int s = 0;
    for (const auto& e : entries)
        if (!e.num.is_zero()) s = std::max(s, e.shift - e.num.valuation());
    auto lift = [&](const LaurentEntry& e) {
        if (e.num.is_zero()) return Poly();
        int k = s - e.shift;
        return k >= 0 ? e.num.shift_up(k) : e.num.shift_down(-k);
    };
    Mat2<Poly> A{lift(entries[0]), lift(entries[1]), lift(entries[2]), lift(entries[3])};
    Poly detA = A.det();
    if (detA.is_zero() || !detA.is_monomial())
        throw DomainError("transition determinant is not a monomial");

    Mat2<Poly> U = Mat2<Poly>::identity();  // accumulates column ops (in x)
    Mat2<Poly> V = Mat2<Poly>::identity();  // accumulates row ops (in w)

    auto col_op = [&](int dst, int src, const Poly& f) {
        // col_dst += f * col_src
        if (dst == 0) {
            A.a += f * A.b;
            A.c += f * A.d;
            U.a += f * U.b;
            U.c += f * U.d;
        } else {
            A.b += f * A.a;
            A.d += f * A.c;
            U.b += f * U.a;
            U.d += f * U.c;
        }
        (void)src;
    };
    auto col_swap = [&] {
        std::swap(A.a, A.b);
        std::swap(A.c, A.d);
        std::swap(U.a, U.b);
        std::swap(U.c, U.d);
    };
    auto col_scale = [&](int col, const Rational& c) {
        if (col == 0) {
            A.a = A.a * c;
            A.c = A.c * c;
            U.a = U.a * c;
            U.c = U.c * c;
        } else {
            A.b = A.b * c;
            A.d = A.d * c;
            U.b = U.b * c;
            U.d = U.d * c;
        }
    };
    auto row_swap = [&] {
        std::swap(A.a, A.c);
        std::swap(A.b, A.d);
        std::swap(V.a, V.c);
        std::swap(V.b, V.d);
    };

    // Generic 2x2 column transform [[u, -b/g],[v, a/g]] zeroing A12.
    auto triangularize = [&] {
        if (!A.b.is_zero()) {
            if (A.a.is_zero()) col_swap();
            else {
                auto [g, u, v] = Poly::xgcd(A.a, A.b);
                Poly ca = A.a / g, cb = A.b / g;
                Mat2<Poly> C{u, -cb, v, ca};
                assert((C.det() - Poly::one()).is_zero());
                A = A * C;
                U = U * C;
            }
        }
        assert(A.b.is_zero());
        // diagonal entries divide the monomial determinant
        assert(A.a.is_monomial() && A.d.is_monomial());
        col_scale(0, Rational(1) / A.a.lead());
        col_scale(1, Rational(1) / A.d.lead());
    };

    for (int guard = 0; guard < 200; ++guard) {
        triangularize();
        int i = A.a.degree(), j = A.d.degree();
        // clear the (2,1) entry outside the exponent window (i, j): terms of
        // degree >= j via column ops, terms of degree <= i via row ops; when
        // i >= j - 1 that empties the entry completely
        Poly p = A.c;
        if (!p.is_zero()) {
            Poly high;
            for (int k = j; k <= p.degree(); ++k)
                high += Poly(p.coeff(k)).shift_up(k - j);
            if (!high.is_zero()) col_op(0, 1, -high);
            p = A.c;
            Poly low, r_w;
            for (int k = 0; k <= std::min(i, p.degree()); ++k) {
                low += Poly(p.coeff(k)).shift_up(k);
                r_w += Poly(p.coeff(k)).shift_up(i - k); // w^{i-k}
            }
            if (!low.is_zero()) {
                A.c -= low; // row1 = (x^i, 0), so only this entry changes
                // V <- [[1,0],[-r_w,1]] * V
                V.c = V.c - r_w * V.a;
                V.d = V.d - r_w * V.b;
            }
        }
        if (A.c.is_zero()) break; // diag(x^i, x^j) up to ordering
        // pivot step: the remaining terms sit strictly inside (i, j); using
        // the lowest one as a new pivot shrinks the exponent gap
        Poly p2 = A.c;
        int m = p2.valuation();
        assert(m > i && m < j);
        Rational c = Rational(1) / p2.coeff(m);
        // row1 -= c x^{i-m} row2
        Poly w_mult = Poly(c).shift_up(m - i); // as polynomial in w
        A.a = A.a - (p2 * c).shift_down(m - i);
        A.b = A.b - Poly(c).shift_up(i + j - m); // A.d = x^j monic
        // V <- [[1, -w_mult],[0,1]] * V
        V.a = V.a - w_mult * V.c;
        V.b = V.b - w_mult * V.d;
    }
    if (!A.b.is_zero() || !A.c.is_zero() || !A.a.is_monomial() || !A.d.is_monomial())
        throw DomainError("Birkhoff reduction failed to converge");
    col_scale(0, Rational(1) / A.a.lead());
    col_scale(1, Rational(1) / A.d.lead());
    int d1 = A.a.degree() - s;
    int d2 = A.d.degree() - s;
    if (d1 < d2) {
        row_swap();
        col_swap();
        std::swap(d1, d2);
    }
    BirkhoffResult res{U, V, d1, d2};
    // verify: V T U == diag(x^{d1}, x^{d2}) with V read in w = 1/x
    Mat2R Vx = res.V_w.map([](const Poly& q) {
        RatFunc f(q);
        return f.substitute_inverse();
    });
    Mat2R Ux = res.U.map([](const Poly& q) { return RatFunc(q); });
    Mat2R prod = Vx * T * Ux;
    if (!(prod == Mat2R{monomial(d1), RatFunc(), RatFunc(), monomial(d2)}))
        throw DomainError("Birkhoff verification failed");
    Poly du = res.U.det();
    if (du.is_zero() || du.degree() != 0) throw DomainError("U is not unimodular");
    Poly dv = res.V_w.det();
    if (dv.is_zero() || dv.degree() != 0) throw DomainError("V is not unimodular");
    return res;
}

ElemComputation elem_transform(const ParabolicBundle& B, const ElemMask& I) {
    const MarkedSphere& sph = B.sphere();
    const int d = B.d();
    Mat2R T_cur = Mat2R{monomial(d), RatFunc(), RatFunc(), monomial(-d)};
    Mat2R G_x = Mat2R::identity();
    std::array<Vec2Q, 5> dirs;
    for (Mark m : kMarks) dirs[static_cast<size_t>(m)] = B.direction(m).vec();
    RatFunc conn_twist;

    // local modification at each finite point of the mask
    for (Mark m : kMarks) {
        if (m == Mark::PInf || !I.contains(m)) continue;
        Rational p = sph.point(m).value();
        Mat2Q P = frame_from_direction(ProjDirection(dirs[static_cast<size_t>(m)]));
        // inclusion matrix A(x) = P diag(1, x - p) P^{-1}
        Mat2R Am = to_ratfunc(P) * Mat2R::diag(RatFunc::one(), RatFunc(Poly::linear_root(p))) *
                   to_ratfunc(P.inverse());
        if (p != 0) {
            // matching w-side column reduction keeps the transition Laurent
            Mat2Q Tp = eval_entrywise(T_cur, p);
            Mat2Q Q = frame_from_direction(ProjDirection(Tp * dirs[static_cast<size_t>(m)]));
            // B(w) = Q diag(1, w - 1/p) Q^{-1}, written in x
            RatFunc wfun(Poly::one(), Poly::x());
            RatFunc wshift = wfun - RatFunc(Rational(1) / p);
            Mat2R Bm = to_ratfunc(Q) * Mat2R::diag(RatFunc::one(), wshift) * to_ratfunc(Q.inverse());
            T_cur = Bm.inverse() * T_cur * Am;
            // transport the direction at infinity through the w-side change
            Mat2Q B0 = Q * Mat2Q::diag(Rational(1), -Rational(1) / p) * Q.inverse();
            dirs[static_cast<size_t>(Mark::PInf)] =
                B0.inverse() * dirs[static_cast<size_t>(Mark::PInf)];
        } else {
            T_cur = T_cur * Am;
        }
        // transport finite directions; the modified point gets ker alpha
        for (Mark n : kMarks) {
            if (n == Mark::PInf || n == m) continue;
            Rational q = sph.point(n).value();
            dirs[static_cast<size_t>(n)] = eval_entrywise(Am, q).inverse() * dirs[static_cast<size_t>(n)];
        }
        dirs[static_cast<size_t>(m)] = {P.b, P.d};
        G_x = Am.inverse() * G_x;
        conn_twist -= RatFunc(Rational(1, 2)) * RatFunc(Poly::one(), Poly::linear_root(p));
    }
    // modification at infinity acts on the w-side only
    if (I.contains(Mark::PInf)) {
        Mat2Q P = frame_from_direction(ProjDirection(dirs[static_cast<size_t>(Mark::PInf)]));
        RatFunc wfun(Poly::one(), Poly::x());
        Mat2R Bm = to_ratfunc(P) * Mat2R::diag(RatFunc::one(), wfun) * to_ratfunc(P.inverse());
        T_cur = Bm.inverse() * T_cur;
        dirs[static_cast<size_t>(Mark::PInf)] = {P.b, P.d};
    }
    // twist back to determinant O: multiply the transition by w^{|I|/2}
    int half = mark_count(I.set()) / 2;
    T_cur = monomial(-half) * T_cur;

    BirkhoffResult bk = birkhoff_factor(T_cur);
    if (bk.d1 + bk.d2 != 0) throw DomainError("twist bookkeeping failed");
    int new_d = bk.d1;
    Mat2<Poly> Uadj{bk.U.d, -bk.U.b, -bk.U.c, bk.U.a};
    Rational udet_inv = Rational(1) / bk.U.det().coeff(0);
    Mat2R Uinv = Uadj.map([&](const Poly& q) { return RatFunc(q * udet_inv); });

    DirectionMap out_dirs;
    for (Mark m : kMarks) {
        if (m == Mark::PInf) {
            Mat2Q V0 = bk.V_w.map([](const Poly& q) { return q.coeff(0); });
            out_dirs[static_cast<size_t>(m)] = ProjDirection(V0 * dirs[static_cast<size_t>(m)]);
        } else {
            Rational p = sph.point(m).value();
            out_dirs[static_cast<size_t>(m)] =
                ProjDirection(eval_entrywise(Uinv, p) * dirs[static_cast<size_t>(m)]);
        }
    }
    if (new_d >= 2)
        throw DomainError("elementary transformation left the moduli (d' = " +
                          std::to_string(new_d) + ")");
    ParabolicBundle image(sph, new_d, out_dirs);

    Mat2R gauge_total = Uinv * G_x;
    // determinant divisor: one zero lost at each finite masked point, the
    // rest of the degree sits at infinity
    MeromorphicGauge gauge{gauge_total, {}};
    RatFunc det = gauge_total.det();
    if (det.is_zero()) throw DomainError("degenerate elem gauge");
    int inf_ord = -det.pole_order(P1Point::infinity());
    for (Mark m : kMarks) {
        if (m == Mark::PInf) continue;
        Rational p = sph.point(m).value();
        int ord = -det.pole_order(P1Point(p));
        if (ord != 0) gauge.det_divisor[m] = ord;
        Poly lin = Poly::linear_root(p);
        while (ord > 0) { det = det / RatFunc(lin); --ord; }
        while (ord < 0) { det = det * RatFunc(lin); ++ord; }
    }
    if (inf_ord != 0) gauge.det_divisor[Mark::PInf] = inf_ord;
    if (!det.is_polynomial() || det.num().degree() != 0)
        throw DomainError("gauge determinant has zeros off the marked points");

    return ElemComputation{std::move(image), new_d, std::move(gauge_total), std::move(gauge),
                           std::move(conn_twist)};
}

ParabolicBundle elem_even(const ParabolicBundle& B, const ElemMask& I) {
    return elem_transform(B, I).bundle;
}

HiggsField higgs_from_matrix(const ParabolicBundle& B, const Mat2R& M) {
    Poly Q = B.sphere().vanishing_poly();
    RatFunc qf{Q};
    auto clear = [&](const RatFunc& f) {
        RatFunc num = f * qf;
        if (!num.is_polynomial()) throw DomainError("matrix entry not compatible with the divisor");
        return num.num();
    };
    Poly alpha = clear(M.a), beta = clear(M.b), gamma = clear(M.c), delta = clear(M.d);
    if (!(alpha + delta).is_zero()) throw DomainError("matrix is not traceless");
    return make_higgs(B, std::move(alpha), std::move(beta), std::move(gamma));
}

HiggsField elem_even(const HiggsField& th, const ElemMask& I) {
    ElemComputation c = elem_transform(th.base(), I);
    Mat2R M = c.gauge_x * th.matrix_x() * c.gauge_x.inverse();
    return higgs_from_matrix(c.bundle, M);
}

// ---------------------------------------------------------------------------
// El-action on the three 16-element label sets.

namespace {

ParabolicBundle line_representative(const MarkedSphere& sph, const Line16& label, Sampler& rng) {
    const WeightVector muc = WeightVector::central();
    for (int attempt = 0; attempt < 200; ++attempt) {
        if (label.kind == Line16::Kind::Pair) {
            DirectionMap dirs;
            ProjDirection common = rng.direction(12);
            for (Mark m : kMarks)
                dirs[static_cast<size_t>(m)] =
                    mark_in(label.subset, m) ? common : rng.direction(12);
            ParabolicBundle B(sph, 0, dirs);
            if (classify_stability(B, muc).verdict != Stability::Stable) continue;
            auto ls = lines_through_d0(B);
            if (ls.size() == 1 && *ls.begin() == label) return B;
        } else if (label.kind == Line16::Kind::Quad) {
            Poly a{rng.rational(9), rng.nonzero_rational(9)};
            Poly b{rng.rational(9), rng.nonzero_rational(9)};
            SubbundleWitness w{-1, a, b, 0};
            if (!Poly::gcd(a, b).is_zero() && Poly::gcd(a, b).degree() > 0) continue;
            DirectionMap dirs;
            bool bad = false;
            for (Mark m : kMarks) {
                Vec2Q v;
                if (mark_in(label.subset, m))
                    v = m == Mark::PInf ? w.fiber_at_inf(0) : w.fiber_at(sph.point(m).value());
                else v = rng.direction(12).vec();
                if (v[0] == 0 && v[1] == 0) { bad = true; break; }
                dirs[static_cast<size_t>(m)] = ProjDirection(v);
            }
            if (bad) continue;
            ParabolicBundle B(sph, 0, dirs);
            if (classify_stability(B, muc).verdict != Stability::Stable) continue;
            auto ls = lines_through_d0(B);
            if (ls.size() == 1 && *ls.begin() == label) return B;
        } else {
            DirectionMap dirs;
            for (Mark m : kMarks)
                dirs[static_cast<size_t>(m)] = ProjDirection(Rational(1), rng.rational(12));
            ParabolicBundle B(sph, 1, dirs);
            if (classify_stability(B, muc).verdict != Stability::Stable) continue;
            return B;
        }
    }
    throw DomainError("failed to build a generic representative of " + label.str());
}

ParabolicBundle table1_representative(const MarkedSphere& sph, const Table1Label& label,
                                      Sampler& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        DirectionMap dirs;
        if (label.kind == Table1Label::Kind::Split) {
            ProjDirection d1 = rng.direction(9), d2 = rng.direction(9);
            if (d1 == d2) continue;
            for (Mark m : kMarks)
                dirs[static_cast<size_t>(m)] = mark_in(label.subset, m) ? d2 : d1;
            ParabolicBundle B(sph, 0, dirs);
            if (classify_table1(B) == std::optional<Table1Label>(label)) return B;
        } else if (label.kind == Table1Label::Kind::OneOnPlus) {
            Poly a{rng.nonzero_rational(9)};
            Poly b{rng.rational(9), rng.rational(9), rng.nonzero_rational(9)};
            SubbundleWitness w{-1, a, b, 0};
            bool bad = false;
            for (Mark m : kMarks) {
                if (mark_in(label.subset, m)) {
                    dirs[static_cast<size_t>(m)] = ProjDirection(Rational(0), Rational(1));
                    continue;
                }
                Vec2Q v = m == Mark::PInf ? w.fiber_at_inf(1) : w.fiber_at(sph.point(m).value());
                if (v[0] == 0 && v[1] == 0) { bad = true; break; }
                dirs[static_cast<size_t>(m)] = ProjDirection(v);
            }
            if (bad) continue;
            ParabolicBundle B(sph, 1, dirs);
            if (classify_table1(B) == std::optional<Table1Label>(label)) return B;
        } else {
            Poly a{rng.nonzero_rational(9)};
            Poly b{rng.rational(9), rng.rational(9), rng.nonzero_rational(9)};
            SubbundleWitness w{-1, a, b, 0};
            bool bad = false;
            for (Mark m : kMarks) {
                Vec2Q v = m == Mark::PInf ? w.fiber_at_inf(1) : w.fiber_at(sph.point(m).value());
                if (v[0] == 0 && v[1] == 0) { bad = true; break; }
                dirs[static_cast<size_t>(m)] = ProjDirection(v);
            }
            if (bad) continue;
            ParabolicBundle B(sph, 1, dirs);
            if (classify_table1(B) == std::optional<Table1Label>(label)) return B;
        }
    }
    throw DomainError("failed to build a Table-1 representative of " + label.str());
}

/// Classify the image of a generic line representative. A stable d = 1
/// image lies on the quint curve (no other membership is generic).
Line16 classify_line_image(const ParabolicBundle& B) {
    if (B.d() == 1) {
        if (classify_stability(B, WeightVector::central()).verdict != Stability::Stable)
            throw DomainError("non-stable line image");
        return Line16{Line16::Kind::Quint, 0x1f};
    }
    auto ls = lines_through_d0(B);
    if (ls.size() != 1) throw DomainError("line image is not generic");
    return *ls.begin();
}

struct ElTables {
    // [mask][label] -> image label
    std::array<std::array<int, 16>, 16> line;
    std::array<std::array<int, 16>, 16> table1;
    std::array<std::array<int, 16>, 16> hodge;
    std::array<int, 16> matching; // line index -> table1 index
};

ElTables build_tables(const MarkedSphere& sph) {
    ElTables tables{};
    uint64_t seed = 0x5eed;
    Sampler rng(seed);
    const auto& masks = elem_masks();
    // Line16
    for (int li = 0; li < 16; ++li) {
        const Line16& label = line16_labels()[static_cast<size_t>(li)];
        for (int mi = 0; mi < 16; ++mi) {
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 20)
                    throw DomainError("el_permutation: no generic representative for " +
                                      label.str());
                try {
                    ParabolicBundle rep = line_representative(sph, label, rng);
                    ParabolicBundle img = elem_even(rep, masks[static_cast<size_t>(mi)]);
                    tables.line[static_cast<size_t>(mi)][static_cast<size_t>(li)] =
                        line16_index(classify_line_image(img));
                    break;
                } catch (const DomainError&) {
                    if (attempt >= 19) throw;
                }
            }
        }
    }
    // Table1 and Hodge16 (the Hodge action is carried by the same bundles,
    // with the canonical field transported alongside)
    for (int ti = 0; ti < 16; ++ti) {
        const Table1Label& label = table1_labels()[static_cast<size_t>(ti)];
        for (int mi = 0; mi < 16; ++mi) {
            for (int attempt = 0;; ++attempt) {
                if (attempt >= 20)
                    throw DomainError("el_permutation: no Table-1 representative for " +
                                      label.str());
                try {
                    ParabolicBundle rep = table1_representative(sph, label, rng);
                    const ElemMask& mask = masks[static_cast<size_t>(mi)];
                    ParabolicBundle img = elem_even(rep, mask);
                    auto img_label = classify_table1(img);
                    if (!img_label) throw DomainError("Table-1 image left Table 1");
                    tables.table1[static_cast<size_t>(mi)][static_cast<size_t>(ti)] =
                        table1_index(*img_label);
                    // Hodge: transport the canonical field and re-identify
                    HiggsField theta = hodge_field(rep);
                    HiggsField img_theta = elem_even(theta, mask);
                    if (!higgs_det(img_theta).is_zero())
                        throw DomainError("Hodge image determinant moved off zero");
                    auto img_label2 = classify_table1(img_theta.base());
                    if (!img_label2 || !(*img_label2 == *img_label))
                        throw DomainError("Hodge image mismatch");
                    tables.hodge[static_cast<size_t>(mi)][static_cast<size_t>(ti)] =
                        table1_index(*img_label2);
                    break;
                } catch (const DomainError&) {
                    if (attempt >= 19) throw;
                }
            }
        }
    }
    // sanity: each mask acts bijectively and as an involution
    for (int mi = 0; mi < 16; ++mi) {
        for (const auto* perm : {&tables.line[static_cast<size_t>(mi)],
                                 &tables.table1[static_cast<size_t>(mi)],
                                 &tables.hodge[static_cast<size_t>(mi)]}) {
            std::array<bool, 16> seen{};
            for (int v : *perm) {
                if (v < 0 || v >= 16 || seen[static_cast<size_t>(v)])
                    throw DomainError("el_permutation is not a bijection");
                seen[static_cast<size_t>(v)] = true;
            }
            for (int li = 0; li < 16; ++li)
                if ((*perm)[static_cast<size_t>((*perm)[static_cast<size_t>(li)])] != li)
                    throw DomainError("el_permutation is not an involution");
        }
    }
    // matching: transport the base case Pair{t,inf} <-> Split{t,inf}
    for (int li = 0; li < 16; ++li) {
        int mi = -1;
        for (int k = 0; k < 16; ++k)
            if (tables.line[static_cast<size_t>(k)][0] == li) {
                mi = k;
                break;
            }
        if (mi < 0) throw DomainError("El does not act transitively on the lines");
        tables.matching[static_cast<size_t>(li)] = tables.table1[static_cast<size_t>(mi)][0];
    }
    return tables;
}

const ElTables& tables_for(const MarkedSphere& sph) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::string>, ElTables> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(rat_to_string(sph.lambda()), rat_to_string(sph.t()));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_tables(sph)).first;
    return it->second;
}

} // namespace

const std::array<int, 16>& el_permutation(const MarkedSphere& sph, ElTarget target,
                                          const ElemMask& I) {
    const ElTables& t = tables_for(sph);
    size_t mi = static_cast<size_t>(elem_mask_index(I));
    switch (target) {
        case ElTarget::Line16: return t.line[mi];
        case ElTarget::Table1: return t.table1[mi];
        case ElTarget::Hodge16: return t.hodge[mi];
    }
    throw DomainError("bad target");
}

const std::array<int, 16>& line_table1_matching(const MarkedSphere& sph) {
    return tables_for(sph).matching;
}

std::set<Line16> lines_through(const ParabolicBundle& B) {
    auto rep = classify_stability(B, WeightVector::central());
    if (rep.verdict == Stability::Unstable)
        throw DomainError("lines_through requires a mu_c-stable bundle");
    if (rep.verdict == Stability::StrictlySemistable)
        throw DomainError("lines_through rejects strictly semistable bundles");
    if (B.d() == 0) return lines_through_d0(B);
    if (B.d() != 1) throw DomainError("bundle outside the moduli");
    // move to a d = 0 chart by the first even pair that lands there
    for (const ElemMask& I : elem_masks()) {
        if (mark_count(I.set()) != 2) continue;
        ParabolicBundle img = elem_even(B, I);
        if (img.d() != 0) continue;
        std::set<Line16> img_lines = lines_through_d0(img);
        const auto& perm = el_permutation(B.sphere(), ElTarget::Line16, I);
        std::set<Line16> out;
        for (const Line16& l : img_lines)
            out.insert(line16_labels()[static_cast<size_t>(perm[static_cast<size_t>(
                line16_index(l))])]);
        return out;
    }
    throw DomainError("no even pair moves the bundle to a d = 0 chart");
}

// ---------------------------------------------------------------------------
// Hodge fields.

HiggsField hodge_field(const ParabolicBundle& B) {
    auto label = classify_table1(B);
    if (!label) throw DomainError("hodge_field requires a Table-1 bundle");
    const MarkedSphere& sph = B.sphere();
    Poly Q = sph.vanishing_poly();
    if (label->kind == Table1Label::Kind::Split) {
        // constant gauge to the split frame: majority direction -> (1,0),
        // pair direction -> (0,1)
        Mark pair_mark = Mark::P0;
        for (Mark m : kMarks)
            if (mark_in(label->subset, m)) { pair_mark = m; break; }
        Mark major_mark = Mark::P0;
        for (Mark m : kMarks)
            if (!mark_in(label->subset, m)) { major_mark = m; break; }
        Mat2Q g = Mat2Q::from_columns(B.direction(major_mark).vec(),
                                      B.direction(pair_mark).vec())
                      .inverse();
        // gamma-only field with poles at the two pair points
        Poly gamma = Q;
        for (Mark m : kMarks) {
            if (!mark_in(label->subset, m) || m == Mark::PInf) continue;
            gamma = gamma / Poly::linear_root(sph.point(m).value());
        }
        // in the split frame theta = [[0,0],[gamma,0]] dx / Q; pull back
        Mat2R M{RatFunc(), RatFunc(), RatFunc(gamma, Q), RatFunc()};
        Mat2R gr = to_ratfunc(g);
        HiggsField th = higgs_from_matrix(B, gr.inverse() * M * gr);
        return normalize_nilpotent_generator(th);
    }
    // d = 1 rows: shear the 4- or 5-point O(-1) onto the first factor
    MarkSet rest = label->kind == Table1Label::Kind::OneOnPlus ? (0x1f & ~label->subset) : 0x1f;
    auto w = subline_max(B, rest);
    if (!w || w->degree != -1 || w->a.degree() > 0)
        throw DomainError("Table-1 d=1 bundle lost its O(-1)");
    Poly shear = w->b * (Rational(-1) / w->a.coeff(0));
    // sheared directions: rest marks on (1,0); fields in the sheared frame
    Poly beta, gamma;
    if (label->kind == Table1Label::Kind::OneOnPlus) {
        Mark u = Mark::P0;
        for (Mark m : kMarks)
            if (mark_in(label->subset, m)) { u = m; break; }
        // beta = x - u (constant when u = inf), deg <= 1 = 3 - 2d
        beta = u == Mark::PInf ? Poly::one() : Poly::linear_root(sph.point(u).value());
    } else {
        gamma = Q; // gamma/Q = 1: deg 4 <= 5 = 3 + 2d
    }
    Mat2R M{RatFunc(), RatFunc(beta, Q), RatFunc(gamma, Q), RatFunc()};
    // undo the shear: theta_orig = S^{-1} M S with S = [[1,0],[shear,1]]
    Mat2R S{RatFunc::one(), RatFunc(), RatFunc(shear), RatFunc::one()};
    HiggsField th = higgs_from_matrix(B, S.inverse() * M * S);
    return normalize_nilpotent_generator(th);
}

HodgeNormalForm hodge_normal_form(const HiggsField& th) {
    auto label = classify_table1(th.base());
    if (!label) throw DomainError("not a Hodge point: bundle is not in Table 1");
    if (!higgs_det(th).is_zero() || th.is_zero())
        throw DomainError("not a Hodge point: field is zero or has nonzero determinant");
    HiggsField expected = hodge_field(th.base());
    Rational scale = nilpotent_generator_scale(th);
    HiggsField normalized = (Rational(1) / scale) * th;
    if (!(normalized == expected))
        throw DomainError("field is not the Hodge normal form on its Table-1 bundle");
    ParabolicBundle canon = canonical_form(th.base());
    return HodgeNormalForm{canon, hodge_field(canon), *label};
}

} // namespace higgs5
