#include "moebius.hpp"

#include "error.hpp"

namespace mdl {

const Rational& ProjPoint::value() const {
  if (!value_) throw Error(ErrorCode::Domain, "point at infinity has no finite value");
  return *value_;
}

MoebiusMap MoebiusMap::make(const Rational& n0, const Rational& n1, const Rational& d0,
                            const Rational& d1) {
  if ((n1 * d0 - n0 * d1).is_zero()) throw Error(ErrorCode::InvalidArgument, "degenerate map");
  std::array<Rational, 4> q{n0, n1, d0, d1};
  mpz_class den_lcm = 1;
  for (const auto& c : q) den_lcm = lcm(den_lcm, c.denominator());
  mpz_class content = 0;
  for (const auto& c : q) content = gcd(content, c.numerator() * (den_lcm / c.denominator()));
  Rational scale{mpq_class(den_lcm, content)};
  if (d0.sign() < 0 || (d0.is_zero() && d1.sign() < 0)) scale = -scale;
  for (auto& c : q) c *= scale;
  return MoebiusMap(std::move(q));
}

MoebiusMap MoebiusMap::identity() { return make(0, 1, 1, 0); }

MoebiusMap MoebiusMap::reflection() { return make(1, -1, 1, 0); }

ProjPoint MoebiusMap::operator()(const ProjPoint& x) const {
  if (x.is_infinite()) {
    if (d1().is_zero()) return ProjPoint::infinity();
    return ProjPoint(n1() / d1());
  }
  const Rational den = d0() + d1() * x.value();
  if (den.is_zero()) return ProjPoint::infinity();
  return ProjPoint((n0() + n1() * x.value()) / den);
}

double MoebiusMap::operator()(double x) const {
  return (n0().to_double() + n1().to_double() * x) / (d0().to_double() + d1().to_double() * x);
}

std::string MoebiusMap::str() const {
  const Polynomial top = Polynomial::linear(n0(), n1());
  const Polynomial bottom = Polynomial::linear(d0(), d1());
  auto wrap = [](const Polynomial& p) {
    const bool two_terms = !p[0].is_zero() && !p[1].is_zero();
    return two_terms ? "(" + p.str() + ")" : p.str();
  };
  if (bottom == Polynomial(Rational(1))) return top.str();
  return wrap(top) + "/" + wrap(bottom);
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  // [[f.n1, f.n0], [f.d1, f.d0]] · [[g.n1, g.n0], [g.d1, g.d0]]
  return MoebiusMap::make(f.n1() * g.n0() + f.n0() * g.d0(), f.n1() * g.n1() + f.n0() * g.d1(),
                          f.d1() * g.n0() + f.d0() * g.d0(), f.d1() * g.n1() + f.d0() * g.d1());
}

MoebiusMap invert(const MoebiusMap& f) { return MoebiusMap::make(-f.n0(), f.d0(), f.n1(), -f.d1()); }

MoebiusMap transpose_dual(const MoebiusMap& f) {
  return MoebiusMap::make(f.d1(), f.n1(), f.d0(), f.n0());
}

RationalFunction jacobian(const MoebiusMap& f) {
  const Polynomial den = Polynomial::linear(f.d0(), f.d1());
  return {Polynomial(f.determinant().abs()), den * den};
}

MoebiusMap conjugate_reflect(const MoebiusMap& f) {
  const MoebiusMap psi = MoebiusMap::reflection();
  return compose(psi, compose(f, psi));
}

RationalFunction rf_compose_moebius(const RationalFunction& h, const MoebiusMap& v) {
  return substitute_fractional_linear(h, v.n0(), v.n1(), v.d0(), v.d1());
}

FixedPoints fixed_points(const MoebiusMap& f) {
  if (f.is_identity()) throw Error(ErrorCode::InvalidArgument, "all points fixed");
  FixedPoints out;
  // x = (n0 + n1 x)/(d0 + d1 x)  ⇔  d1 x² + (d0 − n1) x − n0 = 0
  const Polynomial q({-f.n0(), f.d0() - f.n1(), f.d1()});
  int finite_count = 0;
  if (q.degree() >= 1) {
    for (const auto& root : rational_roots(q)) {
      for (int k = 0; k < root.multiplicity; ++k) out.points.emplace_back(root.value);
      finite_count += root.multiplicity;
    }
    if (finite_count == 0 && q.degree() == 2) out.irreducible_quadratic = q;
  }
  // The quadratic drops degree when infinity is fixed (d1 = 0).
  if (f.d1().is_zero()) {
    const int at_infinity = 2 - std::max(q.degree(), 0);
    for (int k = 0; k < at_infinity; ++k) out.points.push_back(ProjPoint::infinity());
  }
  return out;
}

}  // namespace mdl
