#pragma once

#include <array>
#include <optional>
#include <vector>

#include "moebius.hpp"
#include "polynomial.hpp"
#include "rational_function.hpp"
#include "systems.hpp"
#include "validation.hpp"

namespace mdl {

// cA·A + cB·B + cD·D = 0: the symmetry condition on M·V for the symmetric
// M = [[D, B], [B, A]], i.e. M(x) = (B + D x)/(A + B x).
struct SymmetryRow {
  Rational a, b, d;
  friend bool operator==(const SymmetryRow&, const SymmetryRow&) = default;
};

SymmetryRow symmetry_row(const MoebiusMap& v);

enum class BranchScaling {
  Canonical,     // primitive integer quadruples (MoebiusMap's own form)
  UnitConstant,  // every branch rescaled to d0 = 1; rows are affine in beta
};

// Determinant of the rows (αβ, β, γβ).
Rational det_system(const JumpSystem& js, BranchScaling scaling = BranchScaling::Canonical);

// DET as a polynomial in beta under BranchScaling::UnitConstant, recovered
// by interpolation at 7 admissible nodes and re-checked at 3 more.
Polynomial det_polynomial(const Rational& p1, const Rational& p2, const TypeVector& type);

// Interval of the projective line. An infinite `lo` means −∞ and an
// infinite `hi` means +∞.
struct ProjInterval {
  ProjPoint lo;
  ProjPoint hi;
  // 1 + x·y ≠ 0 for all x in [0,1], y in the interval.
  bool kernel_regular = true;

  bool is_ray() const { return lo.is_infinite() || hi.is_infinite(); }
  bool contains_interior(const Rational& y) const;
  friend bool operator==(const ProjInterval&, const ProjInterval&) = default;
};

// Image of `iv` under `m`; nullopt when m has its pole inside the open
// interval (the image wraps through infinity).
std::optional<ProjInterval> image_of_interval(const MoebiusMap& m, const ProjInterval& iv);

// B* = m([0,1]). Throws ErrorCode::Domain "image not an interval" when the
// pole of m is interior to (0,1).
ProjInterval dual_interval(const MoebiusMap& m);

struct DualCandidate {
  Rational A, B, D;
  std::optional<MoebiusMap> M;  // empty when A·D − B² = 0
  std::optional<ProjInterval> interval;
  bool degenerate = false;
};

// Nullspace of the symmetry rows. nullopt when DET ≠ 0. Throws
// ErrorCode::Internal "underdetermined system" when the rank is ≤ 1.
std::optional<DualCandidate> solve_dual(const JumpSystem& js);

// Candidate from the nullspace of the first independent pair of rows,
// regardless of DET. Used to show that rank-3 systems admit no dual.
DualCandidate force_dual_candidate(const JumpSystem& js);

struct DualValidation {
  ValidationReport report;
  std::vector<ProjInterval> images;  // one per branch, in branch order
};

DualValidation validate_dual(const JumpSystem& js, const DualCandidate& cand);

// Smallest point fixed by all three maps (finite before infinity).
std::optional<ProjPoint> common_fixed_point(const std::array<MoebiusMap, 3>& maps);

// ∫_iv dy/(1+xy)²: (σ−ρ)/((1+ρx)(1+σx)) or 1/(x(1+ρx)) for [ρ, ∞).
RationalFunction density_from_interval(const ProjInterval& iv);

// 1/(1+τx)². Throws ErrorCode::Domain when 1+τx vanishes on [0,1].
RationalFunction fixed_point_density(const Rational& tau);

// Rational point (1/(t²−t+1), t/(t²−t+1)) of p1² + p2² − p1·p2 − p1 = 0.
// Throws ErrorCode::InvalidArgument for t ≤ 1.
std::pair<Rational, Rational> conic_point(const Rational& t);
Rational conic_residual(const Rational& p1, const Rational& p2);

}  // namespace mdl
