// higgs5: exact computations with rank-2 parabolic Higgs bundles on the
// five-punctured projective line. JSON in, JSON/CSV out.

#include "higgs5/verify.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

using namespace higgs5;

namespace {

json read_input(const std::string& path) {
    std::string text;
    if (path == "-" || path.empty()) {
        std::string line;
        while (std::getline(std::cin, line)) text += line + "\n";
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open input file: " + path);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("input is not valid JSON");
    return j;
}

void emit(const json& result) { std::cout << result.dump(2) << "\n"; }

json ok_report(json result) {
    return json{{"status", "ok"}, {"result", std::move(result)}, {"diagnostics", json::array()}};
}

struct GridRange {
    Rational lo, hi;
    int steps;
};

GridRange parse_range(const std::string& spec) {
    auto c1 = spec.find(':');
    auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("grid range must be min:max:steps");
    GridRange r;
    r.lo = rat_from_string(spec.substr(0, c1));
    r.hi = rat_from_string(spec.substr(c1 + 1, c2 - c1 - 1));
    try {
        r.steps = std::stoi(spec.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ParseError("grid steps must be an integer");
    }
    if (r.steps < 1) throw ParseError("empty grid");
    return r;
}

Rational grid_value(const GridRange& r, int i) {
    if (r.steps == 1) return r.lo;
    return r.lo + (r.hi - r.lo) * Rational(i, r.steps - 1);
}

int env_default(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        return fallback;
    }
}

void run_sweep(const MarkedSphere& sph, const GridRange& r1, const GridRange& r2, int jobs,
               std::ostream& out) {
    const int total = r1.steps * r2.steps;
    std::vector<std::string> rows(static_cast<size_t>(total));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= total) return;
            int i = idx / r2.steps, j = idx % r2.steps;
            HitchinPoint s{grid_value(r1, i), grid_value(r2, j)};
            SpectralCurve c = spectral_curve(sph, s);
            const char* status = c.status == SpectralCurve::Status::Smooth  ? "Smooth"
                                 : c.status == SpectralCurve::Status::Nodal ? "Nodal"
                                                                            : "Cone";
            std::string rho = c.sixth_point ? c.sixth_point->str() : "-";
            rows[static_cast<size_t>(idx)] =
                rat_to_string(s.h1) + "," + rat_to_string(s.h2) + "," + rho + "," + status;
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    out << "h1,h2,rho,status\n";
    for (const auto& row : rows) out << row << "\n";
}

int dispatch(const std::string& command, const json& payload, uint64_t seed, int samples,
             bool corrupt_h1) {
    if (command == "stability") {
        ParabolicBundle B = bundle_from_json(require_field(payload, "bundle"));
        WeightVector mu = payload.contains("mu") ? weights_from_json(payload.at("mu"))
                                                 : WeightVector::central();
        if (payload.contains("higgs")) {
            HiggsField th = higgs_from_json(payload.at("higgs"));
            emit(ok_report(json{{"higgs", stability_name(higgs_stability(th, mu))}}));
            return 0;
        }
        emit(ok_report(to_json(classify_stability(B, mu))));
        return 0;
    }
    if (command == "higgs-det") {
        HiggsField th = higgs_from_json(payload);
        emit(ok_report(to_json(higgs_det(th))));
        return 0;
    }
    if (command == "higgs-space") {
        ParabolicBundle B = bundle_from_json(payload.contains("bundle")
                                                 ? payload.at("bundle")
                                                 : payload);
        json fields = json::array();
        for (const auto& th : higgs_space(B)) fields.push_back(to_json(th));
        emit(ok_report(json{{"dimension", fields.size()}, {"basis", fields}}));
        return 0;
    }
    if (command == "elem") {
        ElemMask I = mask_from_json(require_field(payload, "mask"));
        if (payload.contains("higgs")) {
            HiggsField th = elem_even(higgs_from_json(payload.at("higgs")), I);
            json out = to_json(th);
            out["det"] = to_json(higgs_det(th));
            if (auto label = classify_table1(th.base())) out["table1"] = to_json(*label);
            emit(ok_report(out));
            return 0;
        }
        if (payload.contains("connection")) {
            Connection C = elem_even(connection_from_json(payload.at("connection")), I);
            emit(ok_report(to_json(C)));
            return 0;
        }
        ParabolicBundle B = elem_even(bundle_from_json(require_field(payload, "bundle")), I);
        emit(ok_report(to_json(B)));
        return 0;
    }
    if (command == "lines") {
        ParabolicBundle B = bundle_from_json(payload.contains("bundle") ? payload.at("bundle")
                                                                        : payload);
        json lines = json::array();
        for (const auto& l : lines_through(B)) lines.push_back(to_json(l));
        emit(ok_report(json{{"lines", lines}}));
        return 0;
    }
    if (command == "fiber") {
        HiggsField th = higgs_from_json(payload.contains("higgs") ? payload.at("higgs") : payload);
        WeightVector mu = payload.contains("mu") ? weights_from_json(payload.at("mu"))
                                                 : WeightVector::central();
        json out = to_json(classify_fiber_point(th, mu));
        out["spectral"] = to_json(spectral_curve(th.base().sphere(), higgs_det(th)));
        emit(ok_report(out));
        return 0;
    }
    if (command == "nilpotent") {
        HiggsField th = higgs_from_json(payload.contains("higgs") ? payload.at("higgs") : payload);
        emit(ok_report(to_json(classify_nilpotent(th))));
        return 0;
    }
    if (command == "limit") {
        Connection C = connection_from_json(payload.contains("connection")
                                                ? payload.at("connection")
                                                : payload);
        WeightVector mu = payload.contains("mu") ? weights_from_json(payload.at("mu"))
                                                 : WeightVector::central();
        emit(ok_report(to_json(pi_mu_limit(C, mu))));
        return 0;
    }
    if (command == "verify-paper") {
        VerifyOptions opts;
        if (payload.contains("lambda") && payload.contains("t"))
            opts.sphere = sphere_from_json(payload);
        opts.seed = seed;
        opts.samples = samples;
        opts.corrupt_h1 = corrupt_h1;
        auto checks = verify_paper(opts);
        json report = verify_report(checks);
        emit(report);
        return report["status"] == "ok" ? 0 : 1;
    }
    throw ParseError("unknown command: " + command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rank-2 parabolic Higgs bundle computations on P^1 minus five points"};
    app.require_subcommand(0, 1);

    std::string input = "-";
    uint64_t seed = static_cast<uint64_t>(env_default("HIGGS5_SEED", 0));
    int samples = env_default("HIGGS5_SAMPLES", 100);
    int jobs = env_default("HIGGS5_JOBS", 1);
    std::string lambda_str = "2", t_str = "3";
    std::string grid_spec;
    bool corrupt_h1 = false;

    app.add_option("--seed", seed, "random seed for sampled checks (env HIGGS5_SEED)");
    app.add_option("--samples", samples, "sample count for randomized checks (env HIGGS5_SAMPLES)");
    app.add_option("--jobs", jobs, "worker threads for sweeps (env HIGGS5_JOBS)");

    std::vector<std::string> json_commands = {"stability", "higgs-det", "higgs-space", "elem",
                                              "lines",     "fiber",     "nilpotent",  "limit"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : json_commands) {
        CLI::App* sub = app.add_subcommand(name, "JSON payload operation");
        sub->add_option("--input", input, "payload file, or - for stdin");
        subs[name] = sub;
    }
    CLI::App* verify = app.add_subcommand("verify-paper", "re-derive the checkable claims");
    verify->add_option("--lambda", lambda_str, "marked point lambda");
    verify->add_option("--t", t_str, "marked point t");
    verify->add_flag("--selftest-corrupt-h1", corrupt_h1,
                     "fixture: corrupt the reference h1 product");

    CLI::App* sweep = app.add_subcommand("sweep", "classify spectral curves over a grid");
    sweep->add_option("--lambda", lambda_str, "marked point lambda");
    sweep->add_option("--t", t_str, "marked point t");
    sweep->add_option("--grid", grid_spec, "h1min:h1max:steps,h2min:h2max:steps")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            MarkedSphere sph(rat_from_string(lambda_str), rat_from_string(t_str));
            auto comma = grid_spec.find(',');
            if (comma == std::string::npos) throw ParseError("grid needs two ranges");
            GridRange r1 = parse_range(grid_spec.substr(0, comma));
            GridRange r2 = parse_range(grid_spec.substr(comma + 1));
            run_sweep(sph, r1, r2, jobs, std::cout);
            return 0;
        }
        if (verify->parsed()) {
            json payload{{"lambda", lambda_str}, {"t", t_str}};
            return dispatch("verify-paper", payload, seed, samples, corrupt_h1);
        }
        for (const auto& [name, sub] : subs) {
            if (sub->parsed()) return dispatch(name, read_input(input), seed, samples, false);
        }
        std::cout << app.help() << "\n";
        return 0;
    } catch (const ParseError& e) {
        emit(json{{"status", "error"},
                  {"kind", "malformed_input"},
                  {"diagnostics", json::array({e.what()})}});
        return 2;
    } catch (const DomainError& e) {
        emit(json{{"status", "error"},
                  {"kind", "domain_error"},
                  {"diagnostics", json::array({e.what()})}});
        return 1;
    }
}
