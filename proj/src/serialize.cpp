#include "serialize.hpp"

#include <cstdio>

#include "error.hpp"

namespace mdl {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::InvalidArgument, std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

ProjPoint point_from_json(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "inf" || s == "-inf") return ProjPoint::infinity();
  return ProjPoint(Rational::parse(s));
}

}  // namespace

std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::InvalidArgument, "rational must be a string like \"-3/7\"");
}

json to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(c.str());
  return out;
}

Polynomial polynomial_from_json(const json& j) {
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return Polynomial(std::move(c));
}

json to_json(const MoebiusMap& m) {
  return {{"n0", m.n0().str()}, {"n1", m.n1().str()}, {"d0", m.d0().str()}, {"d1", m.d1().str()}};
}

MoebiusMap map_from_json(const json& j) {
  return MoebiusMap::make(rational_from_json(field(j, "n0")), rational_from_json(field(j, "n1")),
                          rational_from_json(field(j, "d0")), rational_from_json(field(j, "d1")));
}

json to_json(const SystemSpec& s) {
  json out = {{"p1", s.p1.str()}, {"p2", s.p2.str()}, {"beta", s.beta.str()}, {"type", s.type.str()}};
  if (s.allow_out_of_range) out["allow_out_of_range"] = true;
  return out;
}

SystemSpec spec_from_json(const json& j) {
  SystemSpec s;
  s.p1 = rational_from_json(field(j, "p1"));
  s.p2 = rational_from_json(field(j, "p2"));
  s.beta = rational_from_json(field(j, "beta"));
  s.type = TypeVector::parse(field(j, "type").get<std::string>());
  s.allow_out_of_range = j.value("allow_out_of_range", false);
  return s;
}

json to_json(const ProjPoint& p) { return p.str(); }

json to_json(const ProjInterval& iv) {
  return {{"lo", iv.lo.is_infinite() ? "-inf" : iv.lo.str()}, {"hi", iv.hi.str()},
          {"kernel_regular", iv.kernel_regular}};
}

ProjInterval interval_from_json(const json& j) {
  return {point_from_json(field(j, "lo")), point_from_json(field(j, "hi")),
          j.value("kernel_regular", true)};
}

json to_json(const DualCandidate& c) {
  json out = {{"A", c.A.str()}, {"B", c.B.str()}, {"D", c.D.str()}, {"degenerate", c.degenerate}};
  out["M"] = c.M ? to_json(*c.M) : json(nullptr);
  out["interval"] = c.interval ? to_json(*c.interval) : json(nullptr);
  return out;
}

DualCandidate candidate_from_json(const json& j) {
  DualCandidate c;
  c.A = rational_from_json(field(j, "A"));
  c.B = rational_from_json(field(j, "B"));
  c.D = rational_from_json(field(j, "D"));
  c.degenerate = j.value("degenerate", false);
  if (j.contains("M") && !j.at("M").is_null()) c.M = map_from_json(j.at("M"));
  if (j.contains("interval") && !j.at("interval").is_null()) c.interval = interval_from_json(j.at("interval"));
  return c;
}

json density_to_json(const RationalFunction& f, const std::optional<double>& norm) {
  json out = {{"num", to_json(f.num())}, {"den", to_json(f.den())}, {"normalizable", norm.has_value()}};
  out["norm"] = norm ? json(format_decimal(*norm)) : json(nullptr);
  out["display"] = f.str();
  return out;
}

RationalFunction density_from_json(const json& j) {
  return {polynomial_from_json(field(j, "num")), polynomial_from_json(field(j, "den"))};
}

json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"pass", r.pass()}, {"checks", checks}};
}

}  // namespace mdl
