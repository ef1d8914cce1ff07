#include "higgs5/bundle.hpp"

#include "higgs5/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <map>
#include <sstream>

namespace higgs5 {

Mark mark_from_name(const std::string& s) {
    for (Mark m : kMarks)
        if (s == mark_name(m)) return m;
    throw ParseError("unknown marked point name: " + s);
}

std::string mark_set_str(MarkSet s) {
    std::string out = "{";
    bool first = true;
    for (Mark m : kMarks) {
        if (!mark_in(s, m)) continue;
        if (!first) out += ",";
        out += mark_name(m);
        first = false;
    }
    return out + "}";
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::StrictlySemistable: return "StrictlySemistable";
        case Stability::Unstable: return "Unstable";
    }
    return "?";
}

std::string Line16::str() const {
    switch (kind) {
        case Kind::Pair: return "Pair" + mark_set_str(subset);
        case Kind::Quad: return "Quad" + mark_set_str(subset);
        case Kind::Quint: return "Quint";
    }
    return "?";
}

std::string Table1Label::str() const {
    switch (kind) {
        case Kind::Split: return "Split" + mark_set_str(subset);
        case Kind::OneOnPlus: return "OneOnPlus" + mark_set_str(subset);
        case Kind::AllOnMinus: return "AllOnMinus";
    }
    return "?";
}

namespace {

constexpr MarkSet kAllMarks = 0x1f;
const MarkSet kZeta1Pair = mark_bit(Mark::PT) | mark_bit(Mark::PInf);

std::vector<MarkSet> subsets_of_size(int k) {
    std::vector<MarkSet> out;
    for (MarkSet s = 0; s <= kAllMarks; ++s)
        if (mark_count(s) == k) out.push_back(s);
    return out;
}

} // namespace

const std::vector<Line16>& line16_labels() {
    static const std::vector<Line16> labels = [] {
        std::vector<Line16> out;
        out.push_back({Line16::Kind::Pair, kZeta1Pair});
        for (MarkSet s : subsets_of_size(2))
            if (s != kZeta1Pair) out.push_back({Line16::Kind::Pair, s});
        for (MarkSet s : subsets_of_size(4)) out.push_back({Line16::Kind::Quad, s});
        out.push_back({Line16::Kind::Quint, kAllMarks});
        return out;
    }();
    return labels;
}

int line16_index(const Line16& l) {
    const auto& ls = line16_labels();
    for (size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == l) return static_cast<int>(i);
    throw DomainError("not a Table-2 line label: " + l.str());
}

const std::vector<Table1Label>& table1_labels() {
    static const std::vector<Table1Label> labels = [] {
        std::vector<Table1Label> out;
        out.push_back({Table1Label::Kind::Split, kZeta1Pair});
        for (MarkSet s : subsets_of_size(2))
            if (s != kZeta1Pair) out.push_back({Table1Label::Kind::Split, s});
        for (Mark m : kMarks) out.push_back({Table1Label::Kind::OneOnPlus, mark_bit(m)});
        out.push_back({Table1Label::Kind::AllOnMinus, 0});
        return out;
    }();
    return labels;
}

int table1_index(const Table1Label& l) {
    const auto& ls = table1_labels();
    for (size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == l) return static_cast<int>(i);
    throw DomainError("not a Table-1 label: " + l.str());
}

namespace {

struct IncidenceSystem {
    // unknowns: na coefficients of a then nb coefficients of b
    int na = 0, nb = 0;
    QMatrix rows;
};

IncidenceSystem incidence_system(const ParabolicBundle& B, MarkSet S, int e) {
    int d = B.d();
    IncidenceSystem sys;
    sys.na = std::max(0, -d - e + 1);
    sys.nb = std::max(0, d - e + 1);
    size_t cols = static_cast<size_t>(sys.na + sys.nb);
    const MarkedSphere& sph = B.sphere();
    for (Mark m : kMarks) {
        if (!mark_in(S, m)) continue;
        const ProjDirection& l = B.direction(m);
        std::vector<Rational> row(cols, Rational(0));
        if (m == Mark::PInf) {
            // w-frame fiber of O(e) -> O(-d)(+)O(d): top coefficients at the
            // degree bounds; incidence a_top * l.y - b_top * l.x = 0
            if (sys.na > 0) row[static_cast<size_t>(sys.na - 1)] = l.y();
            if (sys.nb > 0) row[cols - 1] = -l.x();
        } else {
            Rational p = sph.point(m).value();
            Rational pw(1);
            for (int k = 0; k < sys.na; ++k) {
                row[static_cast<size_t>(k)] = pw * l.y();
                pw *= p;
            }
            pw = 1;
            for (int k = 0; k < sys.nb; ++k) {
                row[static_cast<size_t>(sys.na + k)] = -(pw * l.x());
                pw *= p;
            }
        }
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

std::pair<Poly, Poly> unpack_solution(const IncidenceSystem& sys,
                                      const std::vector<Rational>& v) {
    std::vector<Rational> ca(v.begin(), v.begin() + sys.na);
    std::vector<Rational> cb(v.begin() + sys.na, v.end());
    return {Poly(std::move(ca)), Poly(std::move(cb))};
}

/// Saturate a raw incidence solution: clear gcd, absorb slack at inf,
/// recompute the true incidence set.
SubbundleWitness saturate(const ParabolicBundle& B, Poly a, Poly b, int e) {
    if (a.is_zero() && b.is_zero()) throw DomainError("zero subbundle witness");
    Poly g = Poly::gcd(a, b);
    if (g.degree() > 0 || (!g.is_zero() && g.lead() != 1)) {
        a = a / g;
        b = b / g;
        e += g.degree();
    }
    int d = B.d();
    int slack_a = a.is_zero() ? INT_MAX : (-d - e) - a.degree();
    int slack_b = b.is_zero() ? INT_MAX : (d - e) - b.degree();
    int slack = std::min(slack_a, slack_b);
    assert(slack >= 0);
    e += slack;
    SubbundleWitness w{e, std::move(a), std::move(b), 0};
    w.incident = witness_incidence(B, w);
    return w;
}

} // namespace

MarkSet witness_incidence(const ParabolicBundle& B, const SubbundleWitness& w) {
    MarkSet inc = 0;
    for (Mark m : kMarks) {
        Vec2Q v = m == Mark::PInf ? w.fiber_at_inf(B.d())
                                  : w.fiber_at(B.sphere().point(m).value());
        if (v[0] == 0 && v[1] == 0) continue; // saturated witnesses never hit this
        if (B.direction(m).contains(v)) inc |= mark_bit(m);
    }
    return inc;
}

bool incidence_solvable(const ParabolicBundle& B, MarkSet S, int e) {
    IncidenceSystem sys = incidence_system(B, S, e);
    size_t cols = static_cast<size_t>(sys.na + sys.nb);
    if (cols == 0) return false;
    return !nullspace(sys.rows, cols).empty();
}

std::optional<SubbundleWitness> subline_max(const ParabolicBundle& B, MarkSet S) {
    const int d = B.d();
    for (int e = d; e >= -3; --e) {
        IncidenceSystem sys = incidence_system(B, S, e);
        size_t cols = static_cast<size_t>(sys.na + sys.nb);
        if (cols == 0) continue;
        auto basis = nullspace(sys.rows, cols);
        if (basis.empty()) continue;
        // Search the solution space for a saturated element of degree
        // exactly e whose incidence genuinely contains S. Start with the
        // moment-curve sweep, then widen to an integer box.
        auto try_vec = [&](const std::vector<Rational>& v) -> std::optional<SubbundleWitness> {
            auto [a, b] = unpack_solution(sys, v);
            if (a.is_zero() && b.is_zero()) return std::nullopt;
            SubbundleWitness w = saturate(B, a, b, e);
            if (w.degree != e) return std::nullopt;
            if ((w.incident & S) != S) return std::nullopt;
            return w;
        };
        size_t k = basis.size();
        for (int n = 0; n <= 16; ++n) {
            std::vector<Rational> v(cols, Rational(0));
            Rational pw(1);
            for (size_t j = 0; j < k; ++j) {
                for (size_t c = 0; c < cols; ++c) v[c] += pw * basis[j][c];
                pw *= n + 1;
            }
            if (auto w = try_vec(v)) return w;
        }
        if (k >= 2) {
            for (int bound = 1; bound <= 8; bound *= 2) {
                std::vector<int> idx(k, -bound);
                while (true) {
                    std::vector<Rational> v(cols, Rational(0));
                    for (size_t j = 0; j < k; ++j)
                        for (size_t c = 0; c < cols; ++c) v[c] += Rational(idx[j]) * basis[j][c];
                    if (auto w = try_vec(v)) return w;
                    size_t j = 0;
                    while (j < k && idx[j] == bound) idx[j++] = -bound;
                    if (j == k) break;
                    ++idx[j];
                }
            }
        }
        // No saturated representative of degree e; a genuine line through S
        // has lower degree, keep searching.
    }
    return std::nullopt;
}

Rational stab_value(const ParabolicBundle& B, const WeightVector& mu,
                    const SubbundleWitness& L) {
    // Validate the witness shape and claimed incidence.
    int d = B.d();
    if (L.a.is_zero() && L.b.is_zero()) throw DomainError("empty witness");
    if (!L.a.is_zero() && L.a.degree() > -d - L.degree)
        throw DomainError("witness degree bound violated (a)");
    if (!L.b.is_zero() && L.b.degree() > d - L.degree)
        throw DomainError("witness degree bound violated (b)");
    if (witness_incidence(B, L) != L.incident)
        throw DomainError("witness not incident as claimed");
    Rational v = Rational(-2 * L.degree);
    for (Mark m : kMarks) {
        if (mark_in(L.incident, m)) v -= mu.at(m);
        else v += mu.at(m);
    }
    return v;
}

StabilityReport classify_stability_cutoff(const ParabolicBundle& B, const WeightVector& mu,
                                          int min_degree) {
    const int d = B.d();
    const Rational total = mu.total();
    bool have = false;
    Rational best(0);
    MarkSet bestS = 0;
    int bestE = 0;
    for (MarkSet S = 0; S <= 0x1f; ++S) {
        Rational sw(0);
        for (Mark m : kMarks)
            if (mark_in(S, m)) sw += mu.at(m);
        for (int e = d; e >= min_degree; --e) {
            if (!incidence_solvable(B, S, e)) continue;
            Rational val = Rational(-2 * e) + total - 2 * sw;
            if (!have || val < best) {
                best = val;
                bestS = S;
                bestE = e;
                have = true;
            }
            break; // lower degrees for the same S only increase the value
        }
    }
    assert(have); // S = empty set is always solvable at e = d
    IncidenceSystem sys = incidence_system(B, bestS, bestE);
    auto basis = nullspace(sys.rows, static_cast<size_t>(sys.na + sys.nb));
    auto [a, b] = unpack_solution(sys, basis.front());
    SubbundleWitness w = saturate(B, a, b, bestE);
    Rational actual = stab_value(B, mu, w);
    // saturation can only sharpen the bound; the minimum is attained exactly
    assert(actual == best);
    Stability verdict = best > 0   ? Stability::Stable
                        : best < 0 ? Stability::Unstable
                                   : Stability::StrictlySemistable;
    return {verdict, best, std::move(w)};
}

StabilityReport classify_stability(const ParabolicBundle& B, const WeightVector& mu) {
    // Below degree -3, Stab >= 6 - sum(mu) > 0 can never destabilize.
    return classify_stability_cutoff(B, mu, -3);
}

std::set<Line16> lines_through_d0(const ParabolicBundle& B) {
    if (B.d() != 0) throw DomainError("lines_through_d0 requires d = 0");
    std::set<Line16> out;
    for (MarkSet s : subsets_of_size(2)) {
        Mark i = Mark::P0, j = Mark::P0;
        bool first = true;
        for (Mark m : kMarks)
            if (mark_in(s, m)) {
                if (first) i = m, first = false;
                else j = m;
            }
        if (B.direction(i) == B.direction(j)) out.insert({Line16::Kind::Pair, s});
    }
    for (MarkSet s : subsets_of_size(4)) {
        auto w = subline_max(B, s);
        if (w && w->degree == -1) out.insert({Line16::Kind::Quad, s});
    }
    auto w = subline_max(B, kAllMarks);
    if (w && w->degree == -1) out.insert({Line16::Kind::Quint, kAllMarks});
    return out;
}

std::optional<Table1Label> classify_table1(const ParabolicBundle& B) {
    if (B.d() == 0) {
        std::map<ProjDirection, MarkSet> groups;
        for (Mark m : kMarks) groups[B.direction(m)] |= mark_bit(m);
        if (groups.size() != 2) return std::nullopt;
        auto it = groups.begin();
        MarkSet s1 = it->second;
        MarkSet s2 = std::next(it)->second;
        if (mark_count(s1) == 2 && mark_count(s2) == 3)
            return Table1Label{Table1Label::Kind::Split, s1};
        if (mark_count(s1) == 3 && mark_count(s2) == 2)
            return Table1Label{Table1Label::Kind::Split, s2};
        return std::nullopt;
    }
    if (B.d() == 1) {
        const ProjDirection on_plus(Rational(0), Rational(1));
        MarkSet plus = 0;
        for (Mark m : kMarks)
            if (B.direction(m) == on_plus) plus |= mark_bit(m);
        if (mark_count(plus) == 0) {
            auto w = subline_max(B, kAllMarks);
            if (w && w->degree == -1) return Table1Label{Table1Label::Kind::AllOnMinus, 0};
            return std::nullopt;
        }
        if (mark_count(plus) == 1) {
            auto w = subline_max(B, kAllMarks & ~plus);
            if (w && w->degree == -1) return Table1Label{Table1Label::Kind::OneOnPlus, plus};
            return std::nullopt;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

ParabolicBundle apply_constant_gauge(const ParabolicBundle& B, const Mat2Q& g) {
    if (B.d() != 0) throw DomainError("constant gauge requires d = 0");
    if (g.det() == 0) throw DomainError("singular gauge");
    DirectionMap dirs;
    for (Mark m : kMarks) dirs[static_cast<size_t>(m)] = ProjDirection(g * B.direction(m).vec());
    return ParabolicBundle(B.sphere(), 0, dirs);
}

namespace {

/// Gauge sending v1 -> (1,0), v2 -> (0,1), v3 -> (1,1); the three directions
/// must be pairwise distinct.
Mat2Q normalizing_gauge(const Vec2Q& v1, const Vec2Q& v2, const Vec2Q& v3) {
    Mat2Q M = Mat2Q::from_columns(v1, v2);
    Mat2Q Minv = M.inverse();
    Vec2Q w = Minv * v3;
    if (w[0] == 0 || w[1] == 0) throw DomainError("directions not in general position");
    return Mat2Q::diag(Rational(1) / w[0], Rational(1) / w[1]) * Minv;
}

} // namespace

std::optional<ChartForm> to_normalized_chart(const ParabolicBundle& B) {
    if (B.d() != 0) return std::nullopt;
    const auto& l0 = B.direction(Mark::P0);
    const auto& l1 = B.direction(Mark::P1);
    const auto& li = B.direction(Mark::PInf);
    if (l0 == l1 || l0 == li || l1 == li) return std::nullopt;
    Mat2Q g = normalizing_gauge(l0.vec(), li.vec(), l1.vec());
    ParabolicBundle nb = apply_constant_gauge(B, g);
    const auto& ll = nb.direction(Mark::PLambda);
    const auto& lt = nb.direction(Mark::PT);
    if (ll.x() == 0 || lt.x() == 0) return std::nullopt;
    return ChartForm{nb, ll.y(), lt.y()};
}

ParabolicBundle chart_bundle(const MarkedSphere& sph, const Rational& u, const Rational& v) {
    DirectionMap dirs;
    dirs[size_t(Mark::P0)] = ProjDirection(Rational(1), Rational(0));
    dirs[size_t(Mark::P1)] = ProjDirection(Rational(1), Rational(1));
    dirs[size_t(Mark::PLambda)] = ProjDirection(Rational(1), u);
    dirs[size_t(Mark::PT)] = ProjDirection(Rational(1), v);
    dirs[size_t(Mark::PInf)] = ProjDirection(Rational(0), Rational(1));
    return ParabolicBundle(sph, 0, dirs);
}

Mat2Q canonical_gauge_d0(const ParabolicBundle& B) {
    if (B.d() != 0) throw DomainError("canonical_gauge_d0 requires d = 0");
    std::vector<ProjDirection> distinct;
    for (Mark m : kMarks) {
        const auto& dir = B.direction(m);
        if (std::find(distinct.begin(), distinct.end(), dir) == distinct.end())
            distinct.push_back(dir);
        if (distinct.size() == 3) break;
    }
    if (distinct.size() >= 3)
        return normalizing_gauge(distinct[0].vec(), distinct[1].vec(), distinct[2].vec());
    if (distinct.size() == 2)
        return Mat2Q::from_columns(distinct[0].vec(), distinct[1].vec()).inverse();
    Vec2Q v1 = distinct[0].vec();
    Vec2Q v2 = v1[0] != 0 ? Vec2Q{Rational(0), Rational(1)} : Vec2Q{Rational(1), Rational(0)};
    return Mat2Q::from_columns(v1, v2).inverse();
}

ParabolicBundle canonical_form(const ParabolicBundle& B) {
    const MarkedSphere& sph = B.sphere();
    if (B.d() == 0) return apply_constant_gauge(B, canonical_gauge_d0(B));
    // d >= 1: automorphisms are lower triangular [[s, 0], [q(x), s']] with
    // deg q <= 2d (top coefficient of q acts at inf). Zero out the off-factor
    // slopes at up to 2d+1 marks, then scale the first remaining nonzero to 1.
    const int d = B.d();
    const ProjDirection plus_fiber(Rational(0), Rational(1));
    std::vector<Mark> off;
    for (Mark m : kMarks)
        if (B.direction(m) != plus_fiber) off.push_back(m);
    // rows of the interpolation system for q = q_0 + ... + q_{2d} x^{2d}
    size_t nq = static_cast<size_t>(2 * d + 1);
    auto q_row = [&](Mark m) {
        std::vector<Rational> row(nq, Rational(0));
        if (m == Mark::PInf) row[nq - 1] = 1; // top coefficient acts at inf
        else {
            Rational p = sph.point(m).value(), pw(1);
            for (size_t k = 0; k < nq; ++k) {
                row[k] = pw;
                pw *= p;
            }
        }
        return row;
    };
    size_t zeros = std::min(off.size(), nq);
    QMatrix sys;
    std::vector<Rational> rhs;
    for (size_t i = 0; i < zeros; ++i) {
        sys.push_back(q_row(off[i]));
        rhs.push_back(-B.direction(off[i]).y()); // directions are (1, y)
    }
    std::vector<Rational> qc(nq, Rational(0));
    if (!sys.empty()) {
        auto sol = solve(sys, rhs);
        assert(sol);
        qc = *sol;
    }
    Poly q{std::vector<Rational>(qc)};
    auto sheared_y = [&](Mark m) {
        Rational y = B.direction(m).y();
        if (m == Mark::PInf) return y + q.coeff(2 * d);
        return y + q.eval(sph.point(m).value());
    };
    Rational scale(1);
    for (size_t i = zeros; i < off.size(); ++i) {
        Rational y = sheared_y(off[i]);
        if (y != 0) {
            scale = Rational(1) / y;
            break;
        }
    }
    DirectionMap dirs;
    for (Mark m : kMarks) {
        if (B.direction(m) == plus_fiber) dirs[size_t(m)] = plus_fiber;
        else dirs[size_t(m)] = ProjDirection(Rational(1), scale * sheared_y(m));
    }
    return ParabolicBundle(sph, d, dirs);
}

} // namespace higgs5
