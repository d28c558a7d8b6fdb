#pragma once

#include <json.hpp>

#include "density.hpp"
#include "dual.hpp"
#include "moebius.hpp"
#include "polynomial.hpp"
#include "systems.hpp"
#include "validation.hpp"

// Rationals always cross the boundary as "num/den" strings.
namespace mdl {

using json = nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Polynomial& p);  // coefficient strings, lowest degree first
Polynomial polynomial_from_json(const json& j);

json to_json(const MoebiusMap& m);  // {"n0":"1","n1":"5","d0":"3","d1":"6"}
MoebiusMap map_from_json(const json& j);

json to_json(const SystemSpec& s);  // {"p1":"1/3","p2":"2/3","beta":"1","type":"+-+"}
SystemSpec spec_from_json(const json& j);

json to_json(const ProjPoint& p);  // "inf" at infinity
json to_json(const ProjInterval& iv);  // {"lo":"3/2","hi":"inf"}; "-inf" for a lower ray end
ProjInterval interval_from_json(const json& j);

json to_json(const DualCandidate& c);
DualCandidate candidate_from_json(const json& j);

// {"num":[...],"den":[...],"normalizable":bool,"norm":"0.0299..."}; norm is
// null when the density has infinite mass.
json density_to_json(const RationalFunction& f, const std::optional<double>& norm);
RationalFunction density_from_json(const json& j);

json to_json(const ValidationReport& r);

std::string format_decimal(double v);

}  // namespace mdl
