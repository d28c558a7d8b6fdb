#pragma once

#include <array>
#include <string>
#include <string_view>

#include "moebius.hpp"
#include "rational.hpp"
#include "validation.hpp"

namespace mdl {

enum class Orientation : int { Increasing = 1, Decreasing = -1 };

// Orientation signs [ε_α, ε_β, ε_γ] of the three branches of T.
struct TypeVector {
  Orientation alpha = Orientation::Increasing;
  Orientation beta = Orientation::Increasing;
  Orientation gamma = Orientation::Increasing;

  // "+-+" style, exactly three characters from {+, -}.
  static TypeVector parse(std::string_view text);
  static std::array<TypeVector, 8> all();

  std::string str() const;
  TypeVector reversed() const { return {gamma, beta, alpha}; }

  friend bool operator==(const TypeVector&, const TypeVector&) = default;
};

// Full parameterization of T: partition 0 < p1 < p2 < 1, middle-branch
// parameter beta in (−1, 2] (unless the override is set) and the type.
struct SystemSpec {
  Rational p1{1, 3};
  Rational p2{2, 3};
  Rational beta{0};
  TypeVector type;
  bool allow_out_of_range = false;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

// Throws ErrorCode::InvalidSpec naming the violated assumption.
void check_spec(const SystemSpec& spec);

struct Cell {
  Rational lo, hi;
};

// Inverse branches of T. inv_alpha: [p1,p2] → [0,p1], inv_beta: [0,1] → [p1,p2],
// inv_gamma: [p1,p2] → [p2,1].
struct BranchSet {
  std::array<Cell, 3> cells;
  MoebiusMap inv_alpha, inv_beta, inv_gamma;
};

// Inverse branches of the jump transformation S, each mapping [0,1] onto
// its cell.
struct JumpSystem {
  std::array<Cell, 3> cells;
  MoebiusMap inv_ab, inv_b, inv_gb;

  std::array<MoebiusMap, 3> branches() const { return {inv_ab, inv_b, inv_gb}; }
};

BranchSet build_branches(const SystemSpec& spec);
JumpSystem build_jump(const SystemSpec& spec);
JumpSystem build_jump(const BranchSet& branches);

ValidationReport validate_system(const SystemSpec& spec);

struct ReflectedSpec {
  SystemSpec spec;
  bool out_of_range = false;  // β′ outside (−1, 2]
};

// ψ-conjugate system: partition (1−p2, 1−p1), reversed type,
// β′ = −β/(1+β).
ReflectedSpec reflect_system(const SystemSpec& spec);

enum class MapKind { T, S };

// Cells are right-closed at the partition points: p1 belongs to the middle
// cell, p2 to the right cell. Throws ErrorCode::Domain outside [0,1].
Rational forward_map(const SystemSpec& spec, MapKind which, const Rational& x);

// Floating-point forward dynamics with precomputed coefficients.
class ForwardStepper {
 public:
  ForwardStepper(const SystemSpec& spec, MapKind which);

  // Applies one step; never leaves [0,1]. Sets `clamped` when rounding
  // pushed the raw image outside and it had to be clamped.
  double operator()(double x, bool& clamped) const;

  double p1() const { return p1_; }
  double p2() const { return p2_; }

 private:
  double step_t(double x) const;

  struct Affine {
    double n0, n1, d0, d1;
    double operator()(double x) const { return (n0 + n1 * x) / (d0 + d1 * x); }
  };
  MapKind which_;
  double p1_, p2_;
  std::array<Affine, 3> forward_;
};

}  // namespace mdl
