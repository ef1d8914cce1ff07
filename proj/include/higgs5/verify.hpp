#pragma once

#include "higgs5/io.hpp"

namespace higgs5 {

struct CheckResult {
    std::string name;
    bool pass;
    json details; // counterexample on failure, short stats on success
};

struct VerifyOptions {
    MarkedSphere sphere{Rational(2), Rational(3)};
    uint64_t seed = 0;
    int samples = 100;
    // test fixture: corrupt the reference h1 product to exercise the
    // failure-reporting path
    bool corrupt_h1 = false;
};

/// Runs the paper-derived checks; deterministic for a fixed (options, seed).
std::vector<CheckResult> verify_paper(const VerifyOptions& opts);

json verify_report(const std::vector<CheckResult>& checks);

// Individual checks (exposed for the acceptance suite).
CheckResult check_group_table();
CheckResult check_orbits(const MarkedSphere& sph);
CheckResult check_det_formula(const MarkedSphere& sph, uint64_t seed, int samples,
                              bool corrupt_h1 = false);
CheckResult check_discriminant(const MarkedSphere& sph, uint64_t seed, int per_locus);
CheckResult check_elem_involution(const MarkedSphere& sph, uint64_t seed, int samples);
CheckResult check_nilpotent_strata(const MarkedSphere& sph, uint64_t seed, int samples);
CheckResult check_nodal_fibers(const MarkedSphere& sph, uint64_t seed, int fibers);
CheckResult check_foliation_limits(const MarkedSphere& sph, uint64_t seed, int samples);
CheckResult check_residue_sums(uint64_t seed, int samples);
CheckResult check_stability_oracle(uint64_t seed, int samples);
CheckResult check_unstable_locus(const MarkedSphere& sph, uint64_t seed);

/// Fields holomorphic at a node: nilpotent at every mark and with vanishing
/// residue at the node (used to sample nodal Hitchin fibers).
std::vector<HiggsField> holomorphic_fields_at(const ParabolicBundle& B, Mark node);

} // namespace higgs5
