#include "systems.hpp"

#include <algorithm>

#include "error.hpp"

namespace mdl {

namespace {

char sign_char(Orientation o) { return o == Orientation::Increasing ? '+' : '-'; }

Orientation parse_sign(char c) {
  if (c == '+') return Orientation::Increasing;
  if (c == '-') return Orientation::Decreasing;
  throw Error(ErrorCode::InvalidArgument, std::string("type sign must be '+' or '-', got '") + c + "'");
}

bool beta_admissible(const Rational& beta) { return beta > Rational(-1) && beta <= Rational(2); }

}  // namespace

TypeVector TypeVector::parse(std::string_view text) {
  if (text.size() != 3)
    throw Error(ErrorCode::InvalidArgument, "type must be three characters from {+,-}, got '" +
                                                std::string(text) + "'");
  return {parse_sign(text[0]), parse_sign(text[1]), parse_sign(text[2])};
}

std::array<TypeVector, 8> TypeVector::all() {
  std::array<TypeVector, 8> out;
  for (int k = 0; k < 8; ++k) {
    out[static_cast<std::size_t>(k)] = {
        (k & 4) ? Orientation::Decreasing : Orientation::Increasing,
        (k & 2) ? Orientation::Decreasing : Orientation::Increasing,
        (k & 1) ? Orientation::Decreasing : Orientation::Increasing};
  }
  return out;
}

std::string TypeVector::str() const { return {sign_char(alpha), sign_char(beta), sign_char(gamma)}; }

void check_spec(const SystemSpec& spec) {
  if (!(Rational(0) < spec.p1 && spec.p1 < spec.p2 && spec.p2 < Rational(1)))
    throw Error(ErrorCode::InvalidSpec, "partition: need 0 < p1 < p2 < 1");
  if (!(spec.beta > Rational(-1)))
    throw Error(ErrorCode::InvalidSpec, "beta: denominator 1+beta*x vanishes on [0,1] unless beta > -1");
  if (!spec.allow_out_of_range && !beta_admissible(spec.beta))
    throw Error(ErrorCode::InvalidSpec, "beta: outside (-1, 2] (set the override to explore)");
}

BranchSet build_branches(const SystemSpec& spec) {
  check_spec(spec);
  const Rational& p1 = spec.p1;
  const Rational& p2 = spec.p2;
  const Rational& b = spec.beta;
  const Rational w = p2 - p1;

  BranchSet out{
      {Cell{0, p1}, Cell{p1, p2}, Cell{p2, 1}},
      spec.type.alpha == Orientation::Increasing ? MoebiusMap::make(-p1 * p1, p1, w, 0)
                                                 : MoebiusMap::make(p1 * p2, -p1, w, 0),
      spec.type.beta == Orientation::Increasing ? MoebiusMap::make(p1, w + p2 * b, 1, b)
                                                : MoebiusMap::make(p2, -w + p1 * b, 1, b),
      spec.type.gamma == Orientation::Increasing
          ? MoebiusMap::make(p2 * p2 - p1, 1 - p2, w, 0)
          : MoebiusMap::make(p2 * (1 - p1), -(1 - p2), w, 0),
  };
  return out;
}

JumpSystem build_jump(const BranchSet& br) {
  return {br.cells, compose(br.inv_alpha, br.inv_beta), br.inv_beta,
          compose(br.inv_gamma, br.inv_beta)};
}

JumpSystem build_jump(const SystemSpec& spec) { return build_jump(build_branches(spec)); }

ValidationReport validate_system(const SystemSpec& spec) {
  ValidationReport report;
  const bool partition_ok = Rational(0) < spec.p1 && spec.p1 < spec.p2 && spec.p2 < Rational(1);
  report.add("partition", partition_ok, "0 < p1 < p2 < 1");
  if (!(spec.beta > Rational(-1))) {
    const Rational pole = -spec.beta.inverse();
    report.add("denominator", false, "denominator vanishes at x=" + pole.str());
  } else {
    report.add("denominator", true, "1+beta*x > 0 on [0,1]");
  }
  report.add("beta range", spec.allow_out_of_range || beta_admissible(spec.beta),
             spec.allow_out_of_range ? "override set" : "-1 < beta <= 2");
  if (!report.pass()) return report;

  const BranchSet br = build_branches(spec);
  struct Entry {
    const char* name;
    const MoebiusMap* map;
    Cell domain;
    Cell image;
    Orientation declared;
  };
  const Entry entries[] = {
      {"inv_alpha", &br.inv_alpha, br.cells[1], br.cells[0], spec.type.alpha},
      {"inv_beta", &br.inv_beta, Cell{0, 1}, br.cells[1], spec.type.beta},
      {"inv_gamma", &br.inv_gamma, br.cells[1], br.cells[2], spec.type.gamma},
  };
  for (const auto& e : entries) {
    const MoebiusMap& v = *e.map;
    const ProjPoint at_lo = v(ProjPoint(e.domain.lo));
    const ProjPoint at_hi = v(ProjPoint(e.domain.hi));
    const bool increasing = e.declared == Orientation::Increasing;
    const ProjPoint want_lo = increasing ? e.image.lo : e.image.hi;
    const ProjPoint want_hi = increasing ? e.image.hi : e.image.lo;
    report.add(std::string(e.name) + " endpoints", at_lo == want_lo && at_hi == want_hi,
               e.domain.lo.str() + "->" + at_lo.str() + ", " + e.domain.hi.str() + "->" + at_hi.str());
    report.add(std::string(e.name) + " monotonicity", v.is_increasing() == increasing,
               std::string("determinant sign ") + (v.is_increasing() ? "+" : "-") + ", declared " +
                   (increasing ? "+" : "-"));
    const Rational den_lo = v.d0() + v.d1() * e.domain.lo;
    const Rational den_hi = v.d0() + v.d1() * e.domain.hi;
    report.add(std::string(e.name) + " denominator", den_lo.sign() > 0 && den_hi.sign() > 0,
               "denominator at domain ends: " + den_lo.str() + ", " + den_hi.str());
  }
  return report;
}

ReflectedSpec reflect_system(const SystemSpec& spec) {
  if (spec.beta == Rational(-1)) throw Error(ErrorCode::InvalidSpec, "beta = -1 has no reflection");
  ReflectedSpec out;
  out.spec = spec;
  out.spec.p1 = 1 - spec.p2;
  out.spec.p2 = 1 - spec.p1;
  out.spec.type = spec.type.reversed();
  out.spec.beta = -spec.beta / (1 + spec.beta);
  out.out_of_range = !beta_admissible(out.spec.beta);
  if (out.out_of_range) out.spec.allow_out_of_range = true;
  return out;
}

namespace {

int cell_index(const Rational& p1, const Rational& p2, const Rational& x) {
  if (x < p1) return 0;
  if (x < p2) return 1;
  return 2;
}

Rational apply_forward(const BranchSet& br, int cell, const Rational& x) {
  const MoebiusMap* inv = cell == 0 ? &br.inv_alpha : (cell == 1 ? &br.inv_beta : &br.inv_gamma);
  return invert(*inv)(ProjPoint(x)).value();
}

}  // namespace

Rational forward_map(const SystemSpec& spec, MapKind which, const Rational& x) {
  if (x < Rational(0) || x > Rational(1)) throw Error(ErrorCode::Domain, "x outside [0,1]: " + x.str());
  const BranchSet br = build_branches(spec);
  const int cell = cell_index(spec.p1, spec.p2, x);
  Rational y = apply_forward(br, cell, x);
  if (which == MapKind::S && cell != 1) y = apply_forward(br, cell_index(spec.p1, spec.p2, y), y);
  return y;
}

ForwardStepper::ForwardStepper(const SystemSpec& spec, MapKind which)
    : which_(which), p1_(spec.p1.to_double()), p2_(spec.p2.to_double()) {
  const BranchSet br = build_branches(spec);
  const MoebiusMap* inv[] = {&br.inv_alpha, &br.inv_beta, &br.inv_gamma};
  for (std::size_t k = 0; k < 3; ++k) {
    const MoebiusMap f = invert(*inv[k]);
    forward_[k] = {f.n0().to_double(), f.n1().to_double(), f.d0().to_double(), f.d1().to_double()};
  }
}

double ForwardStepper::step_t(double x) const {
  const std::size_t cell = x < p1_ ? 0 : (x < p2_ ? 1 : 2);
  return forward_[cell](x);
}

double ForwardStepper::operator()(double x, bool& clamped) const {
  auto clamp = [&clamped](double y) {
    if (y < 0.0 || y > 1.0 || y != y) {
      clamped = true;
      return y != y ? 0.0 : std::clamp(y, 0.0, 1.0);
    }
    return y;
  };
  clamped = false;
  const bool middle = x >= p1_ && x < p2_;
  double y = clamp(step_t(x));
  if (which_ == MapKind::S && !middle) y = clamp(step_t(y));
  return y;
}

}  // namespace mdl
