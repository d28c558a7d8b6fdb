#include "rational_function.hpp"

#include <algorithm>

#include "error.hpp"

namespace mdl {

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(Rational(1)) {
  canonicalize();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero denominator polynomial");
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  mpz_class den_lcm = 1;
  for (const auto* p : {&num_, &den_})
    for (const auto& c : p->coefficients()) den_lcm = lcm(den_lcm, c.denominator());
  mpz_class content = 0;
  for (const auto* p : {&num_, &den_})
    for (const auto& c : p->coefficients())
      content = gcd(content, c.numerator() * (den_lcm / c.denominator()));
  Rational scale{mpq_class(den_lcm, content)};
  if (den_.leading().sign() < 0) scale = -scale;
  num_ *= scale;
  den_ *= scale;
}

Rational RationalFunction::operator()(const Rational& x) const {
  const Rational d = den_(x);
  if (d.is_zero()) throw Error(ErrorCode::Domain, "pole at x = " + x.str());
  return num_(x) / d;
}

std::string RationalFunction::str() const {
  auto wrap = [](const Polynomial& p) {
    const std::string s = p.str();
    const auto nonzero = std::count_if(p.coefficients().begin(), p.coefficients().end(),
                                       [](const Rational& c) { return !c.is_zero(); });
    return nonzero > 1 ? "(" + s + ")" : s;
  };
  if (den_.degree() == 0 && den_[0] == Rational(1)) return num_.str();
  return wrap(num_) + "/" + wrap(den_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorCode::Domain, "division by the zero function");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

bool rf_equal(const RationalFunction& f, const RationalFunction& g) {
  if (f.num() == g.num() && f.den() == g.den()) return true;
  return (f.num() * g.den() - g.num() * f.den()).is_zero();
}

std::optional<Rational> proportionality_constant(const RationalFunction& f,
                                                 const RationalFunction& g) {
  if (f.is_zero() || g.is_zero()) return std::nullopt;
  // f/g is constant iff its reduced numerator and denominator are constants.
  const RationalFunction q = f / g;
  if (q.num().degree() != 0 || q.den().degree() != 0) return std::nullopt;
  return q.num()[0] / q.den()[0];
}

RationalFunction substitute_fractional_linear(const RationalFunction& h, const Rational& n0,
                                              const Rational& n1, const Rational& d0,
                                              const Rational& d1) {
  // Homogenize: p((a+bx)/(c+dx)) · (c+dx)^m = Σ p_k (a+bx)^k (c+dx)^(m−k).
  const Polynomial top = Polynomial::linear(n0, n1);
  const Polynomial bottom = Polynomial::linear(d0, d1);
  const int m = std::max(h.num().degree(), h.den().degree());
  auto homogenize = [&](const Polynomial& p) {
    Polynomial acc;
    for (int k = 0; k <= p.degree(); ++k)
      acc += p[static_cast<std::size_t>(k)] * top.pow(static_cast<unsigned>(k)) *
             bottom.pow(static_cast<unsigned>(m - k));
    return acc;
  };
  return {homogenize(h.num()), homogenize(h.den())};
}

}  // namespace mdl
