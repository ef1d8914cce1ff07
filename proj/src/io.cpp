#include "higgs5/io.hpp"

namespace higgs5 {

const json& require_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

namespace {

std::string require_string(const json& j, const char* what) {
    if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

} // namespace

json to_json(const Rational& r) { return rat_to_string(r); }

Rational rational_from_json(const json& j) {
    return rat_from_string(require_string(j, "rational"));
}

json to_json(const Poly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(rat_to_string(c));
    return out;
}

Poly poly_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be a coefficient list");
    std::vector<Rational> cs;
    for (const auto& c : j) cs.push_back(rational_from_json(c));
    return Poly(std::move(cs));
}

json to_json(const MarkedSphere& s) {
    return json{{"lambda", to_json(s.lambda())}, {"t", to_json(s.t())}};
}

MarkedSphere sphere_from_json(const json& j) {
    return MarkedSphere(rational_from_json(require_field(j, "lambda")),
                        rational_from_json(require_field(j, "t")));
}

json to_json(const ParabolicBundle& B) {
    json dirs = json::object();
    for (Mark m : kMarks) {
        const auto& d = B.direction(m);
        dirs[mark_name(m)] = json::array({rat_to_string(d.x()), rat_to_string(d.y())});
    }
    return json{{"lambda", to_json(B.sphere().lambda())},
                {"t", to_json(B.sphere().t())},
                {"d", B.d()},
                {"directions", dirs}};
}

ParabolicBundle bundle_from_json(const json& j) {
    MarkedSphere sph = sphere_from_json(j);
    const json& dj = require_field(j, "d");
    if (!dj.is_number_integer()) throw ParseError("\"d\" must be an integer");
    int d = dj.get<int>();
    const json& dirs = require_field(j, "directions");
    DirectionMap dm;
    for (Mark m : kMarks) {
        const json& v = require_field(dirs, mark_name(m));
        if (!v.is_array() || v.size() != 2)
            throw ParseError("direction must be a 2-element array");
        dm[static_cast<size_t>(m)] =
            ProjDirection(rational_from_json(v[0]), rational_from_json(v[1]));
    }
    return ParabolicBundle(std::move(sph), d, dm);
}

json to_json(const WeightVector& mu) {
    json out = json::object();
    for (Mark m : kMarks) out[mark_name(m)] = to_json(mu.at(m));
    return out;
}

WeightVector weights_from_json(const json& j) {
    std::array<Rational, 5> w;
    for (Mark m : kMarks)
        w[static_cast<size_t>(m)] = rational_from_json(require_field(j, mark_name(m)));
    return WeightVector(w);
}

json to_json(const HiggsField& th) {
    return json{{"bundle", to_json(th.base())},
                {"alpha", to_json(th.alpha())},
                {"beta", to_json(th.beta())},
                {"gamma", to_json(th.gamma())}};
}

HiggsField higgs_from_json(const json& j) {
    ParabolicBundle B = bundle_from_json(require_field(j, "bundle"));
    try {
        return make_higgs(std::move(B), poly_from_json(require_field(j, "alpha")),
                          poly_from_json(require_field(j, "beta")),
                          poly_from_json(require_field(j, "gamma")));
    } catch (const DomainError& e) {
        throw; // domain errors keep their type; the CLI maps them to exit 1
    }
}

json to_json(const ElemMask& m) {
    json out = json::array();
    for (Mark k : kMarks)
        if (m.contains(k)) out.push_back(mark_name(k));
    return out;
}

ElemMask mask_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("mask must be a list of point names");
    MarkSet s = 0;
    for (const auto& v : j) s |= mark_bit(mark_from_name(require_string(v, "mask entry")));
    if (mark_count(s) % 2 != 0) throw ParseError("mask must have even cardinality");
    return ElemMask(s);
}

json to_json(const HitchinPoint& h) {
    return json{{"h1", to_json(h.h1)}, {"h2", to_json(h.h2)}};
}

HitchinPoint hitchin_from_json(const json& j) {
    return {rational_from_json(require_field(j, "h1")),
            rational_from_json(require_field(j, "h2"))};
}

namespace {

json mark_set_json(MarkSet s) {
    json out = json::array();
    for (Mark m : kMarks)
        if (mark_in(s, m)) out.push_back(mark_name(m));
    return out;
}

} // namespace

json to_json(const Line16& l) {
    switch (l.kind) {
        case Line16::Kind::Pair: return json{{"kind", "pair"}, {"points", mark_set_json(l.subset)}};
        case Line16::Kind::Quad: return json{{"kind", "quad"}, {"points", mark_set_json(l.subset)}};
        case Line16::Kind::Quint: return json{{"kind", "quint"}};
    }
    throw DomainError("bad line label");
}

json to_json(const Table1Label& l) {
    switch (l.kind) {
        case Table1Label::Kind::Split:
            return json{{"kind", "split"}, {"pair", mark_set_json(l.subset)}};
        case Table1Label::Kind::OneOnPlus:
            return json{{"kind", "one_on_plus"}, {"point", mark_set_json(l.subset)[0]}};
        case Table1Label::Kind::AllOnMinus: return json{{"kind", "all_on_minus"}};
    }
    throw DomainError("bad Table-1 label");
}

json to_json(const SubbundleWitness& w) {
    return json{{"degree", w.degree},
                {"a", to_json(w.a)},
                {"b", to_json(w.b)},
                {"incident", mark_set_json(w.incident)}};
}

json to_json(const StabilityReport& r) {
    return json{{"verdict", stability_name(r.verdict)},
                {"min_stab", to_json(r.min_stab)},
                {"worst", to_json(r.worst)}};
}

json to_json(const SpectralCurve& c) {
    json out{{"h1", to_json(c.s.h1)}, {"h2", to_json(c.s.h2)}};
    switch (c.status) {
        case SpectralCurve::Status::Smooth: out["status"] = "Smooth"; break;
        case SpectralCurve::Status::Nodal: out["status"] = "Nodal"; break;
        case SpectralCurve::Status::Cone: out["status"] = "Cone"; break;
    }
    if (c.sixth_point) out["rho"] = c.sixth_point->str();
    if (c.node) out["node"] = mark_name(*c.node);
    json br = json::array();
    for (const auto& p : c.branch_points) br.push_back(p.str());
    out["branch_points"] = br;
    if (!c.normalization_branch.empty()) {
        json nb = json::array();
        for (const auto& p : c.normalization_branch) nb.push_back(p.str());
        out["normalization_branch"] = nb;
    }
    return out;
}

json to_json(const NilpotentStratum& s) {
    json out{{"tag", stratum_tag_name(s.tag)}};
    if (s.line) out["line"] = to_json(*s.line);
    if (s.c) out["c"] = to_json(*s.c);
    if (s.hodge_index) out["hodge_index"] = *s.hodge_index;
    return out;
}

json to_json(const FiberClass& f) {
    json out{{"tag", fiber_tag_name(f.tag)}};
    if (f.node) out["node"] = mark_name(*f.node);
    if (f.stratum) out["stratum"] = to_json(*f.stratum);
    return out;
}

json to_json(const HodgeNormalForm& h) {
    return json{{"bundle", to_json(h.bundle)},
                {"field", to_json(h.field)},
                {"label", to_json(h.label)}};
}

json to_json(const EigenvalueVector& nu) {
    json out = json::object();
    for (Mark m : kMarks) out[mark_name(m)] = to_json(nu.at(m));
    return out;
}

EigenvalueVector eigenvalues_from_json(const json& j) {
    std::array<Rational, 5> v;
    for (Mark m : kMarks)
        v[static_cast<size_t>(m)] = rational_from_json(require_field(j, mark_name(m)));
    return EigenvalueVector(v);
}

json to_json(const Connection& C) {
    const Mat2R& A = C.matrix_x();
    json rows = json::array();
    rows.push_back(json::array({A.a.str(), A.b.str()}));
    rows.push_back(json::array({A.c.str(), A.d.str()}));
    return json{{"bundle", to_json(C.base())}, {"A", rows}, {"nu", to_json(C.nu())}};
}

Connection connection_from_json(const json& j) {
    ParabolicBundle B = bundle_from_json(require_field(j, "bundle"));
    const json& rows = require_field(j, "A");
    if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() || rows[0].size() != 2 ||
        !rows[1].is_array() || rows[1].size() != 2)
        throw ParseError("\"A\" must be a 2x2 array of rational-function strings");
    Mat2R A{RatFunc::parse(require_string(rows[0][0], "matrix entry")),
            RatFunc::parse(require_string(rows[0][1], "matrix entry")),
            RatFunc::parse(require_string(rows[1][0], "matrix entry")),
            RatFunc::parse(require_string(rows[1][1], "matrix entry"))};
    EigenvalueVector nu = eigenvalues_from_json(require_field(j, "nu"));
    return make_connection(std::move(B), std::move(A), std::move(nu));
}

json to_json(const PiMuLimit& l) {
    switch (l.kind) {
        case PiMuLimit::Kind::StableBundle:
            return json{{"kind", "stable_bundle"}, {"higgs", to_json(*l.field)}};
        case PiMuLimit::Kind::HodgeLimit:
            return json{{"kind", "hodge"}, {"higgs", to_json(*l.field)},
                        {"hodge", to_json(*l.hodge)}};
        case PiMuLimit::Kind::FamilyLimit:
            return json{{"kind", "family"}, {"higgs", to_json(*l.field)}};
        case PiMuLimit::Kind::Uncovered: return json{{"kind", "uncovered"}};
    }
    throw DomainError("bad limit kind");
}

} // namespace higgs5
