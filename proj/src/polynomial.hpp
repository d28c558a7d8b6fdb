#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace mdl {

// Dense univariate polynomial over the rationals, lowest degree first.
// Trailing zero coefficients are always stripped; the zero polynomial has
// no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational constant);  // NOLINT: implicit by intent
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial x();
  static Polynomial linear(Rational c0, Rational c1) { return Polynomial({std::move(c0), std::move(c1)}); }
  static Polynomial monomial(Rational c, std::size_t k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  std::span<const Rational> coefficients() const { return c_; }
  // Coefficient of x^k; zero beyond the degree.
  Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  // p(x + shift)
  Polynomial shifted(const Rational& shift) const;
  // Smallest positive rational multiple with integer coefficients of gcd 1
  // and positive leading coefficient.
  Polynomial primitive() const;

  std::string str(char var = 'x') const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned exponent) const;

 private:
  void trim();

  std::vector<Rational> c_;
};

// Quotient and remainder; throws on division by the zero polynomial.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// (g, s, t) with s·a + t·b = g = gcd(a, b), g monic.
struct Bezout {
  Polynomial g, s, t;
};
Bezout extended_gcd(const Polynomial& a, const Polynomial& b);

// Unique polynomial of degree < n through n points with distinct abscissae.
Polynomial poly_interpolate(std::span<const std::pair<Rational, Rational>> points);

struct RationalRoot {
  Rational value;
  int multiplicity;
};

// All rational roots with multiplicity, ascending. The zero polynomial has
// no well-defined root set and is rejected.
std::vector<RationalRoot> rational_roots(const Polynomial& p);

// Number of distinct real roots in the open interval (lo, hi), exact (Sturm).
int count_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi);

}  // namespace mdl
