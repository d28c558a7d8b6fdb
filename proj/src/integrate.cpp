#include "integrate.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"

namespace mdl {

namespace {

std::vector<double> to_doubles(const Polynomial& p) {
  std::vector<double> c;
  for (int k = 0; k <= p.degree(); ++k) c.push_back(p[static_cast<std::size_t>(k)].to_double());
  return c;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double quadrature(const RationalFunction& f, double lo, double hi) {
  const auto num = to_doubles(f.num()), den = to_doubles(f.den());
  auto g = [&](double x) { return horner(num, x) / horner(den, x); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, lo, hi, 15, 1e-14);
}

Polynomial integral_of(const Polynomial& p) {
  std::vector<Rational> c(static_cast<std::size_t>(p.degree() + 2));
  for (int k = 0; k <= p.degree(); ++k)
    c[static_cast<std::size_t>(k + 1)] = p[static_cast<std::size_t>(k)] / Rational(k + 1);
  return Polynomial(std::move(c));
}

// Taylor coefficients e_0..e_{n-1} of a(t)/l(t) at t = 0, l(0) ≠ 0.
std::vector<Rational> series_quotient(const Polynomial& a, const Polynomial& l, int n) {
  std::vector<Rational> e(static_cast<std::size_t>(n));
  const Rational l0_inv = l[0].inverse();
  for (int j = 0; j < n; ++j) {
    Rational acc = a[static_cast<std::size_t>(j)];
    for (int i = 1; i <= j; ++i) acc -= l[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j - i)];
    e[static_cast<std::size_t>(j)] = acc * l0_inv;
  }
  return e;
}

}  // namespace

std::optional<Antiderivative> Antiderivative::build(const RationalFunction& f, const Rational& lo,
                                                    const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "empty integration domain");
  Antiderivative out;
  out.lo_ = lo.to_double();
  out.hi_ = hi.to_double();
  if (f.is_zero()) return out;

  const Polynomial& num = f.num();
  const Polynomial& den = f.den();
  const auto roots = den.degree() >= 1 ? rational_roots(den) : std::vector<RationalRoot>{};
  for (const auto& r : roots) {
    if (lo < r.value && r.value < hi)
      throw Error(ErrorCode::Domain, "pole inside the integration domain at x = " + r.value.str());
    if (r.value == lo || r.value == hi) return std::nullopt;
  }

  Polynomial linear_part(Rational(1));  // monic product of (x − r)^m
  for (const auto& r : roots)
    linear_part = linear_part * Polynomial::linear(-r.value, 1).pow(static_cast<unsigned>(r.multiplicity));
  Polynomial rest = divmod(den, linear_part).first;  // c·F
  const Rational c = rest.leading();
  rest = rest.monic();
  if (rest.degree() >= 1 && count_real_roots(rest, lo, hi) > 0)
    throw Error(ErrorCode::Domain, "pole inside the integration domain");

  auto [quot, rem] = divmod(num, den);
  out.poly_part_ = integral_of(quot);
  rem *= c.inverse();

  // rem / (L·F) = A/L + B/F with A·F + B·L = rem.
  Polynomial a_part = rem, b_part;
  if (rest.degree() >= 1) {
    const Bezout bz = extended_gcd(rest, linear_part);
    a_part = linear_part.degree() >= 1 ? divmod(rem * bz.s, linear_part).second : Polynomial();
    b_part = divmod(rem - a_part * rest, linear_part).first;
  }

  for (const auto& r : roots) {
    const Polynomial factor = Polynomial::linear(-r.value, 1).pow(static_cast<unsigned>(r.multiplicity));
    const Polynomial others = divmod(linear_part, factor).first;
    const auto e = series_quotient(a_part.shifted(r.value), others.shifted(r.value), r.multiplicity);
    PoleTerm term{r.value.to_double(), {}};
    for (int k = 1; k <= r.multiplicity; ++k)
      term.coeffs.push_back(e[static_cast<std::size_t>(r.multiplicity - k)].to_double());
    out.poles_.push_back(std::move(term));
  }

  if (rest.degree() == 2) {
    out.quadratic_ = QuadraticTerm{rest[1].to_double(), rest[0].to_double(), b_part[1].to_double(),
                                   b_part[0].to_double()};
  } else if (rest.degree() > 2) {
    out.numeric_rest_ = RationalFunction(b_part, rest);
  }
  return out;
}

double Antiderivative::operator()(double x) const {
  double acc = poly_part_(x) - poly_part_(lo_);
  for (const auto& t : poles_) {
    const double u = x - t.root, u0 = lo_ - t.root;
    acc += t.coeffs[0] * std::log(std::abs(u / u0));
    for (std::size_t k = 2; k <= t.coeffs.size(); ++k) {
      const double e = 1.0 - static_cast<double>(k);
      acc += t.coeffs[k - 1] * (std::pow(u, e) - std::pow(u0, e)) / e;
    }
  }
  if (quadratic_) {
    const auto& qt = *quadratic_;
    auto quad = [&](double z) { return z * z + qt.p * z + qt.q; };
    const double disc = qt.p * qt.p - 4 * qt.q;
    const double lin = qt.b0 - qt.b1 * qt.p / 2;
    acc += qt.b1 / 2 * std::log(std::abs(quad(x) / quad(lo_)));
    if (disc < 0) {
      const double s = std::sqrt(-disc);
      acc += lin * 2 / s * (std::atan((2 * x + qt.p) / s) - std::atan((2 * lo_ + qt.p) / s));
    } else {
      const double s = std::sqrt(disc);
      auto ratio = [&](double z) { return std::abs((2 * z + qt.p - s) / (2 * z + qt.p + s)); };
      acc += lin / s * std::log(ratio(x) / ratio(lo_));
    }
  }
  if (numeric_rest_ && x != lo_) acc += quadrature(*numeric_rest_, lo_, x);
  return acc;
}

IntegralResult integrate(const RationalFunction& f, const Rational& lo, const Rational& hi) {
  IntegralResult out;
  const auto anti = Antiderivative::build(f, lo, hi);
  if (!anti) {
    out.quadrature = std::numeric_limits<double>::infinity();
    out.agrees = true;
    return out;
  }
  out.value = anti->total();
  out.closed_form = anti->closed_form();
  out.quadrature = quadrature(f, lo.to_double(), hi.to_double());
  out.agrees = std::abs(*out.value - out.quadrature) <= 1e-10 * std::max(std::abs(*out.value), 1e-300);
  return out;
}

namespace {

struct Piece {
  const RationalFunction* f;
  Rational lo, hi;
};

std::vector<Piece> pieces_within(const PiecewiseDensity& d, const Rational& lo, const Rational& hi) {
  const Rational bounds[] = {0, d.p1, d.p2, 1};
  std::vector<Piece> out;
  for (std::size_t k = 0; k < 3; ++k) {
    const Rational a = std::max(bounds[k], lo);
    const Rational b = std::min(bounds[k + 1], hi);
    if (a < b) out.push_back({&d.pieces[k], a, b});
  }
  return out;
}

}  // namespace

std::optional<double> normalize(const RationalDensity& d, const Rational& lo, const Rational& hi) {
  return integrate(d.rf(), lo, hi).value;
}

std::optional<double> normalize(const PiecewiseDensity& d, const Rational& lo, const Rational& hi) {
  double total = 0;
  for (const auto& p : pieces_within(d, lo, hi)) {
    const auto v = integrate(*p.f, p.lo, p.hi).value;
    if (!v) return std::nullopt;
    total += *v;
  }
  return total;
}

Cdf Cdf::of(const RationalDensity& d, const Rational& lo, const Rational& hi) {
  auto anti = Antiderivative::build(d.rf(), lo, hi);
  if (!anti) throw Error(ErrorCode::NotNormalizable, "density is not integrable on [" + lo.str() + "," + hi.str() + "]");
  Cdf out;
  out.lo_ = lo.to_double();
  out.hi_ = hi.to_double();
  out.norm_ = anti->total();
  out.segments_.push_back({out.lo_, out.hi_, 0.0, std::move(*anti)});
  return out;
}

Cdf Cdf::of(const PiecewiseDensity& d, const Rational& lo, const Rational& hi) {
  Cdf out;
  out.lo_ = lo.to_double();
  out.hi_ = hi.to_double();
  double mass = 0;
  for (const auto& p : pieces_within(d, lo, hi)) {
    auto anti = Antiderivative::build(*p.f, p.lo, p.hi);
    if (!anti) throw Error(ErrorCode::NotNormalizable, "density is not integrable on [" + p.lo.str() + "," + p.hi.str() + "]");
    const double m = anti->total();
    out.segments_.push_back({p.lo.to_double(), p.hi.to_double(), mass, std::move(*anti)});
    mass += m;
  }
  out.norm_ = mass;
  return out;
}

double Cdf::operator()(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                                   [](double v, const Segment& s) { return v < s.lo; });
  const Segment& seg = *std::prev(it);
  return std::clamp((seg.mass_before + seg.f(std::min(x, seg.hi))) / norm_, 0.0, 1.0);
}

}  // namespace mdl
