#include "density.hpp"

#include "error.hpp"

namespace mdl {

RationalDensity::RationalDensity(RationalFunction rf) : rf_(std::move(rf)) {
  const Rational zero(0), one(1);
  if (rf_.is_zero()) throw Error(ErrorCode::Domain, "density is identically zero");
  if (count_real_roots(rf_.den(), zero, one) > 0)
    throw Error(ErrorCode::Domain, "density has a pole in (0,1): " + rf_.str());
  if (count_real_roots(rf_.num(), zero, one) > 0)
    throw Error(ErrorCode::Domain, "density vanishes in (0,1): " + rf_.str());
  if (rf_(Rational(1, 2)).sign() <= 0)
    throw Error(ErrorCode::Domain, "density is negative on (0,1): " + rf_.str());
}

double PiecewiseDensity::operator()(double x) const {
  const double a = p1.to_double(), b = p2.to_double();
  const std::size_t cell = x < a ? 0 : (x < b ? 1 : 2);
  return pieces[cell](x);
}

bool piecewise_equal(const PiecewiseDensity& a, const PiecewiseDensity& b) {
  if (a.p1 != b.p1 || a.p2 != b.p2) return false;
  for (std::size_t k = 0; k < 3; ++k)
    if (!rf_equal(a.pieces[k], b.pieces[k])) return false;
  return true;
}

namespace {

RationalFunction pullback(const RationalFunction& h, const MoebiusMap& v) {
  return rf_compose_moebius(h, v) * jacobian(v);
}

}  // namespace

RationalFunction transfer_jump(const RationalFunction& h, const JumpSystem& js) {
  RationalFunction acc;
  for (const auto& v : js.branches()) acc = acc + pullback(h, v);
  return acc;
}

RationalFunction invariance_residual(const RationalFunction& h, const JumpSystem& js) {
  return transfer_jump(h, js) - h;
}

RationalDensity theorem1_density(const TypeVector& type, const Rational& beta) {
  const auto inc = Orientation::Increasing;
  if (type.alpha != inc || type.gamma != inc)
    throw Error(ErrorCode::InvalidArgument, "no natural dual for type " + type.str());
  const Rational b3 = 3 * beta;
  const Polynomial one(Rational(1));
  if (type.beta == inc)
    return RationalDensity({one, Polynomial::linear(2 - beta, b3) * Polynomial::linear(2, b3)});
  return RationalDensity({one, Polynomial::linear(4 + beta, b3) * Polynomial::linear(4, b3)});
}

PiecewiseDensity lift_density(const RationalFunction& h, const SystemSpec& spec) {
  const BranchSet br = build_branches(spec);
  if (!invariance_residual(h, build_jump(br)).is_zero())
    throw Error(ErrorCode::InvalidArgument, "input not S-invariant");
  // V_α and V_γ land in the outer cells, where g = h.
  const RationalFunction middle = h + pullback(h, br.inv_alpha) + pullback(h, br.inv_gamma);
  return {spec.p1, spec.p2, {h, middle, h}};
}

PiecewiseDensity transfer_base(const PiecewiseDensity& g, const SystemSpec& spec) {
  const BranchSet br = build_branches(spec);
  const RationalFunction from_middle = pullback(g.pieces[1], br.inv_beta);
  const RationalFunction middle =
      from_middle + pullback(g.pieces[0], br.inv_alpha) + pullback(g.pieces[2], br.inv_gamma);
  return {g.p1, g.p2, {from_middle, middle, from_middle}};
}

}  // namespace mdl
