#pragma once

#include "higgs5/connection.hpp"

#include <json.hpp>

namespace higgs5 {

// JSON conventions: rationals as "p/q" strings, the point at infinity as
// "inf", polynomials as coefficient lists (lowest degree first), directions
// as 2-element arrays. nlohmann::json with std::map keys keeps output
// deterministic.
using json = nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Poly& p);
Poly poly_from_json(const json& j);

json to_json(const MarkedSphere& s);
MarkedSphere sphere_from_json(const json& j);

json to_json(const ParabolicBundle& B);
ParabolicBundle bundle_from_json(const json& j);

json to_json(const WeightVector& mu);
WeightVector weights_from_json(const json& j);

json to_json(const HiggsField& th);
HiggsField higgs_from_json(const json& j);

json to_json(const ElemMask& m);
ElemMask mask_from_json(const json& j);

json to_json(const HitchinPoint& h);
HitchinPoint hitchin_from_json(const json& j);

json to_json(const Line16& l);
json to_json(const Table1Label& l);
json to_json(const SubbundleWitness& w);
json to_json(const StabilityReport& r);
json to_json(const SpectralCurve& c);
json to_json(const NilpotentStratum& s);
json to_json(const FiberClass& f);
json to_json(const HodgeNormalForm& h);

json to_json(const EigenvalueVector& nu);
EigenvalueVector eigenvalues_from_json(const json& j);

json to_json(const Connection& C);
Connection connection_from_json(const json& j);

json to_json(const PiMuLimit& l);

/// Schema helpers that raise ParseError with a useful message.
const json& require_field(const json& j, const char* key);

} // namespace higgs5
