#pragma once

#include <optional>
#include <string>

#include "polynomial.hpp"

namespace mdl {

// Quotient of polynomials in canonical form: gcd(num, den) is constant,
// all coefficients are integers with overall content 1, and den has a
// positive leading coefficient. Two equal functions therefore have equal
// representations; rf_equal still decides equality by cross-multiplication.
class RationalFunction {
 public:
  RationalFunction() : den_(Rational(1)) {}
  RationalFunction(Rational constant) : RationalFunction(Polynomial(std::move(constant))) {}  // NOLINT
  RationalFunction(Polynomial num);  // NOLINT: implicit by intent
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // Throws ErrorCode::Domain at a pole.
  Rational operator()(const Rational& x) const;
  double operator()(double x) const { return num_(x) / den_(x); }

  std::string str() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a) {
    return RationalFunction(-a.num_, a.den_);
  }

 private:
  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

// True iff num_f·den_g − num_g·den_f is the zero polynomial.
bool rf_equal(const RationalFunction& f, const RationalFunction& g);

// If f = c·g for a nonzero rational constant c, returns c.
std::optional<Rational> proportionality_constant(const RationalFunction& f, const RationalFunction& g);

// x ↦ h((n0 + n1 x)/(d0 + d1 x)), reduced. The caller guarantees that the
// substituted map is nondegenerate.
RationalFunction substitute_fractional_linear(const RationalFunction& h, const Rational& n0,
                                              const Rational& n1, const Rational& d0,
                                              const Rational& d1);

}  // namespace mdl
