#pragma once

#include <optional>
#include <vector>

#include "density.hpp"
#include "rational_function.hpp"

namespace mdl {

// Closed-form antiderivative of a rational function over [lo, hi] via
// exact partial fractions at the rational poles. A remaining irreducible
// quadratic factor is integrated with log/atan; higher-degree irreducible
// factors fall back to quadrature (closed_form() is then false).
class Antiderivative {
 public:
  // nullopt when a pole sits at lo or hi (non-integrable: the reduced
  // numerator cannot cancel it). Throws ErrorCode::Domain for a pole inside.
  static std::optional<Antiderivative> build(const RationalFunction& f, const Rational& lo,
                                             const Rational& hi);

  // ∫_lo^x f
  double operator()(double x) const;
  double total() const { return (*this)(hi_); }
  bool closed_form() const { return !numeric_rest_.has_value(); }

 private:
  struct PoleTerm {
    double root;
    std::vector<double> coeffs;  // coeffs[k-1] multiplies (x − root)^(−k)
  };
  struct QuadraticTerm {
    double p, q;    // x² + p x + q
    double b1, b0;  // numerator b1 x + b0
  };

  double lo_ = 0, hi_ = 1;
  Polynomial poly_part_;  // antiderivative of the polynomial quotient
  std::vector<PoleTerm> poles_;
  std::optional<QuadraticTerm> quadratic_;
  std::optional<RationalFunction> numeric_rest_;
};

struct IntegralResult {
  std::optional<double> value;  // nullopt: infinite mass
  double quadrature = 0;        // adaptive Gauss-Kronrod cross-check
  bool closed_form = true;
  bool agrees = true;           // |value − quadrature| ≤ 1e−10·|value|
};

IntegralResult integrate(const RationalFunction& f, const Rational& lo, const Rational& hi);

// Total mass on [lo, hi], nullopt when infinite. Pieces of a piecewise
// density are integrated over their cells intersected with [lo, hi].
std::optional<double> normalize(const RationalDensity& d, const Rational& lo = 0,
                                const Rational& hi = 1);
std::optional<double> normalize(const PiecewiseDensity& d, const Rational& lo = 0,
                                const Rational& hi = 1);

// F(x) = ∫_lo^x d / ∫_lo^hi d for a normalizable density. Throws
// ErrorCode::NotNormalizable otherwise.
class Cdf {
 public:
  static Cdf of(const RationalDensity& d, const Rational& lo = 0, const Rational& hi = 1);
  static Cdf of(const PiecewiseDensity& d, const Rational& lo = 0, const Rational& hi = 1);

  double operator()(double x) const;
  double norm() const { return norm_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  struct Segment {
    double lo, hi, mass_before;
    Antiderivative f;
  };
  std::vector<Segment> segments_;
  double lo_ = 0, hi_ = 1, norm_ = 1;
};

}  // namespace mdl
