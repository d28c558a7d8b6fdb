#pragma once

#include <array>

#include "rational_function.hpp"
#include "systems.hpp"

namespace mdl {

// Rational function that is strictly positive on (0,1) with no pole there.
// Poles at 0 or 1 are allowed (the measure may then be infinite).
class RationalDensity {
 public:
  // Throws ErrorCode::Domain when the function has a zero or pole in (0,1)
  // or is negative there.
  explicit RationalDensity(RationalFunction rf);

  const RationalFunction& rf() const { return rf_; }
  double operator()(double x) const { return rf_(x); }

 private:
  RationalFunction rf_;
};

// Per-cell densities on [0,p1], [p1,p2], [p2,1].
struct PiecewiseDensity {
  Rational p1, p2;
  std::array<RationalFunction, 3> pieces;

  double operator()(double x) const;
};

bool piecewise_equal(const PiecewiseDensity& a, const PiecewiseDensity& b);

// (L h)(x) = Σ_i h(V_i x)·|V_i'(x)| over the three jump branches.
RationalFunction transfer_jump(const RationalFunction& h, const JumpSystem& js);
// L h − h; the zero function iff h is invariant for S.
RationalFunction invariance_residual(const RationalFunction& h, const JumpSystem& js);

// Closed forms for the two self-dual types:
//   [+,+,+]: 1/((2 − β + 3βx)(2 + 3βx))
//   [+,−,+]: 1/((4 + β + 3βx)(4 + 3βx))
// Throws ErrorCode::InvalidArgument "no natural dual" for other types.
RationalDensity theorem1_density(const TypeVector& type, const Rational& beta);

// T-invariant density g from an S-invariant h: g = h on the outer cells and
// g = h + h(V_α x)ω_α(x) + h(V_γ x)ω_γ(x) on the middle cell. Throws
// ErrorCode::InvalidArgument "input not S-invariant" otherwise.
PiecewiseDensity lift_density(const RationalFunction& h, const SystemSpec& spec);

// Transfer operator of T applied piecewise.
PiecewiseDensity transfer_base(const PiecewiseDensity& g, const SystemSpec& spec);

}  // namespace mdl
