// pybind11 bindings: the main operations, JSON-dict in / JSON-dict out,
// mirroring the CLI payload schemas.

#include "higgs5/verify.hpp"

#include <pybind11/pybind11.h>

namespace py = pybind11;
using namespace higgs5;

namespace {

json from_py(const py::object& obj) {
    py::module_ pyjson = py::module_::import("json");
    std::string text = py::cast<std::string>(pyjson.attr("dumps")(obj));
    return json::parse(text);
}

py::object to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

WeightVector weights_or_central(const json& payload) {
    return payload.contains("mu") ? weights_from_json(payload.at("mu"))
                                  : WeightVector::central();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact rank-2 parabolic Higgs bundle computations on P^1 minus five points";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<ParseError>(m, "MalformedInput");

    m.def("stability", [](const py::dict& payload) {
        json p = from_py(payload);
        ParabolicBundle B = bundle_from_json(require_field(p, "bundle"));
        return to_py(to_json(classify_stability(B, weights_or_central(p))));
    }, "classify a parabolic bundle against every line subbundle");

    m.def("higgs_det", [](const py::dict& higgs) {
        return to_py(to_json(higgs_det(higgs_from_json(from_py(higgs)))));
    }, "exact Hitchin coordinates (h1, h2) of a Higgs field");

    m.def("higgs_space", [](const py::dict& bundle) {
        json fields = json::array();
        for (const auto& th : higgs_space(bundle_from_json(from_py(bundle))))
            fields.push_back(to_json(th));
        return to_py(json{{"dimension", fields.size()}, {"basis", fields}});
    }, "echelonized basis of the nilpotent-compatible field space");

    m.def("elem", [](const py::dict& payload) {
        json p = from_py(payload);
        ElemMask I = mask_from_json(require_field(p, "mask"));
        if (p.contains("higgs"))
            return to_py(to_json(elem_even(higgs_from_json(p.at("higgs")), I)));
        if (p.contains("connection"))
            return to_py(to_json(elem_even(connection_from_json(p.at("connection")), I)));
        return to_py(to_json(elem_even(bundle_from_json(require_field(p, "bundle")), I)));
    }, "elementary transformation over an even mask");

    m.def("lines", [](const py::dict& bundle) {
        json out = json::array();
        for (const auto& l : lines_through(bundle_from_json(from_py(bundle))))
            out.push_back(to_json(l));
        return to_py(out);
    }, "Table-2 line labels through a stable bundle");

    m.def("fiber", [](const py::dict& payload) {
        json p = from_py(payload);
        HiggsField th = higgs_from_json(p.contains("higgs") ? p.at("higgs") : p);
        return to_py(to_json(classify_fiber_point(th, weights_or_central(p))));
    }, "Hitchin fiber classification of a Higgs field");

    m.def("nilpotent", [](const py::dict& higgs) {
        return to_py(to_json(classify_nilpotent(higgs_from_json(from_py(higgs)))));
    }, "stratum of the nilpotent cone");

    m.def("limit", [](const py::dict& payload) {
        json p = from_py(payload);
        Connection C = connection_from_json(p.contains("connection") ? p.at("connection") : p);
        return to_py(to_json(pi_mu_limit(C, weights_or_central(p))));
    }, "pi_mu limit of a logarithmic connection");

    m.def("sweep", [](const py::dict& sphere, const py::list& h1s, const py::list& h2s) {
        MarkedSphere sph = sphere_from_json(from_py(sphere));
        json rows = json::array();
        for (const auto& a : h1s)
            for (const auto& b : h2s) {
                HitchinPoint s{rat_from_string(py::cast<std::string>(py::str(a))),
                               rat_from_string(py::cast<std::string>(py::str(b)))};
                SpectralCurve c = spectral_curve(sph, s);
                const char* status = c.status == SpectralCurve::Status::Smooth  ? "Smooth"
                                     : c.status == SpectralCurve::Status::Nodal ? "Nodal"
                                                                                : "Cone";
                rows.push_back(json{{"h1", rat_to_string(s.h1)},
                                    {"h2", rat_to_string(s.h2)},
                                    {"rho", c.sixth_point ? c.sixth_point->str() : "-"},
                                    {"status", status}});
            }
        return to_py(rows);
    }, "spectral-curve classification over a grid of Hitchin points");

    m.def("verify_paper", [](const std::string& lambda, const std::string& t, uint64_t seed,
                             int samples) {
        VerifyOptions opts;
        opts.sphere = MarkedSphere(rat_from_string(lambda), rat_from_string(t));
        opts.seed = seed;
        opts.samples = samples;
        return to_py(verify_report(verify_paper(opts)));
    }, py::arg("lambda_") = "2", py::arg("t") = "3", py::arg("seed") = 0,
       py::arg("samples") = 100, "re-derive the checkable claims");

    m.def("thm64_family", [](const py::dict& sphere, const py::dict& nu, const std::string& a1,
                             const std::string& a2) {
        json s = from_py(sphere);
        Connection C = thm64_family(sphere_from_json(s), eigenvalues_from_json(from_py(nu)),
                                    rat_from_string(a1), rat_from_string(a2));
        return to_py(to_json(C));
    }, "the explicit flat family on the three-fold coincident bundle");
}
