#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"
#include "rational_function.hpp"

namespace mdl {

// A point of the projective line: a rational number or infinity.
class ProjPoint {
 public:
  ProjPoint(Rational value) : value_(std::move(value)) {}  // NOLINT: implicit by intent
  static ProjPoint infinity() { return ProjPoint(); }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const;
  std::string str() const { return is_infinite() ? "inf" : value_->str(); }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  ProjPoint() = default;
  std::optional<Rational> value_;
};

// x ↦ (n0 + n1·x)/(d0 + d1·x), stored as the matrix [[n1, n0], [d1, d0]]
// scaled to primitive integers with d0 > 0, or d0 = 0 and d1 > 0.
// Composition is matrix multiplication and the dual map is the transpose.
class MoebiusMap {
 public:
  MoebiusMap() : q_{Rational(0), Rational(1), Rational(1), Rational(0)} {}  // identity

  // Throws ErrorCode::InvalidArgument "degenerate map" when n1·d0 = n0·d1.
  static MoebiusMap make(const Rational& n0, const Rational& n1, const Rational& d0,
                         const Rational& d1);
  static MoebiusMap identity();
  // ψ(x) = 1 − x
  static MoebiusMap reflection();

  const Rational& n0() const { return q_[0]; }
  const Rational& n1() const { return q_[1]; }
  const Rational& d0() const { return q_[2]; }
  const Rational& d1() const { return q_[3]; }

  Rational determinant() const { return n1() * d0() - n0() * d1(); }
  bool is_linear() const { return d1().is_zero(); }
  bool is_identity() const { return *this == identity(); }
  bool is_increasing() const { return determinant().sign() > 0; }

  ProjPoint operator()(const ProjPoint& x) const;
  double operator()(double x) const;

  // "(1+5x)/(3+6x)", "x/(1+2x)", "(-1+3x)/3"
  std::string str() const;

  friend bool operator==(const MoebiusMap&, const MoebiusMap&) = default;

 private:
  explicit MoebiusMap(std::array<Rational, 4> q) : q_(std::move(q)) {}
  std::array<Rational, 4> q_;
};

// f ∘ g
MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);
MoebiusMap invert(const MoebiusMap& f);
// Map of the transposed matrix: (n0, n1, d0, d1) ↦ (d1, n1, d0, n0).
MoebiusMap transpose_dual(const MoebiusMap& f);
// |f'(x)| = |n1·d0 − n0·d1| / (d0 + d1·x)²
RationalFunction jacobian(const MoebiusMap& f);
// ψ ∘ f ∘ ψ with ψ(x) = 1 − x.
MoebiusMap conjugate_reflect(const MoebiusMap& f);

RationalFunction rf_compose_moebius(const RationalFunction& h, const MoebiusMap& v);

// Fixed points of a non-identity map. Rational points are listed with
// multiplicity (ascending, infinity last). When the fixed-point quadratic
// d1·x² + (d0 − n1)·x − n0 has irrational roots, `points` holds no finite
// entry and `irreducible_quadratic` holds that quadratic.
struct FixedPoints {
  std::vector<ProjPoint> points;
  std::optional<Polynomial> irreducible_quadratic;
};
FixedPoints fixed_points(const MoebiusMap& f);

}  // namespace mdl
