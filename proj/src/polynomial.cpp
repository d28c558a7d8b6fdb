#include "polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace mdl {

Polynomial::Polynomial(Rational constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Polynomial Polynomial::x() { return Polynomial({Rational(0), Rational(1)}); }

Polynomial Polynomial::monomial(Rational c, std::size_t k) {
  std::vector<Rational> v(k + 1);
  v[k] = std::move(c);
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

Polynomial Polynomial::shifted(const Rational& shift) const {
  // Horner in the polynomial ring: p(x + s) = (...(c_n (x+s) + c_{n-1})(x+s) ...)
  const Polynomial xs = linear(shift, Rational(1));
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * xs + Polynomial(*it);
  return acc;
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  mpz_class den_lcm = 1;
  for (const auto& c : c_) den_lcm = lcm(den_lcm, c.denominator());
  mpz_class num_gcd = 0;
  for (const auto& c : c_) num_gcd = gcd(num_gcd, c.numerator() * (den_lcm / c.denominator()));
  Rational scale{mpq_class(den_lcm, num_gcd)};
  if (leading().sign() < 0) scale = -scale;
  return *this * scale;
}

std::string Polynomial::str(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (c.is_zero()) continue;
    std::string mag = c.abs().str();
    if (k > 0 && mag == "1") mag.clear();
    std::string term = mag;
    if (k >= 1) term += var;
    if (k >= 2) term += "^" + std::to_string(k);
    if (c.sign() < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    out += term;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial r(Rational(1));
  for (unsigned k = 0; k < exponent; ++k) r = r * *this;
  return r;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::Domain, "polynomial division by zero");
  Polynomial q, r = a;
  const Rational lead_inv = b.leading().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    const Polynomial t = Polynomial::monomial(r.leading() * lead_inv, shift);
    q += t;
    r -= t * b;
  }
  return {q, r};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Bezout extended_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  Polynomial s0(Rational(1)), s1, t0, t1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Rational inv = r0.leading().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

Polynomial poly_interpolate(std::span<const std::pair<Rational, Rational>> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "interpolation needs at least one node");
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i].first == points[j].first) throw Error(ErrorCode::InvalidArgument, "duplicate node");

  // Newton divided differences, evaluated back into monomial form.
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);

  Polynomial result(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;)
    result = result * Polynomial::linear(-points[i].first, Rational(1)) + Polynomial(dd[i]);
  return result;
}

namespace {

std::vector<Polynomial> sturm_chain(const Polynomial& sf) {
  std::vector<Polynomial> seq{sf, sf.derivative()};
  while (seq.back().degree() > 0) {
    Polynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : seq) {
    const int s = p(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Distinct roots in (lo, hi].
int sturm_count(const std::vector<Polynomial>& seq, const Rational& lo, const Rational& hi) {
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

Polynomial square_free(const Polynomial& p) { return divmod(p, gcd(p, p.derivative())).first; }

}  // namespace

std::vector<RationalRoot> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no finite root set");
  std::vector<RationalRoot> roots;
  Polynomial work = p.primitive();

  int zero_mult = 0;
  while (!work.is_zero() && work[0].is_zero()) {
    work = divmod(work, Polynomial::x()).first;
    ++zero_mult;
  }
  if (zero_mult > 0) roots.push_back({Rational(0), zero_mult});

  if (work.degree() >= 1) {
    // A reduced root k/q of a primitive integer polynomial has q | a_n, so it
    // is the only candidate k/a_n in an isolating interval narrower than 1/|a_n|.
    const Polynomial sf = square_free(work).primitive();
    const auto seq = sturm_chain(sf);
    const Rational an = sf.leading().abs();
    const Rational min_width = an.inverse();
    Rational bound(1);
    for (int k = 0; k < sf.degree(); ++k) bound = std::max(bound, 1 + sf[static_cast<std::size_t>(k)].abs() / an);

    std::vector<Rational> found;
    std::vector<std::pair<Rational, Rational>> pending{{-bound, bound}};
    while (!pending.empty()) {
      auto [lo, hi] = pending.back();
      pending.pop_back();
      const int n = sturm_count(seq, lo, hi);
      if (n == 0) continue;
      if (n == 1 && hi - lo < min_width) {
        const mpq_class scaled = (hi * an).raw();
        const mpz_class k = scaled.get_num() / scaled.get_den();  // floor for positive den
        for (const mpz_class& cand : {mpz_class(k), mpz_class(k - 1)}) {
          const Rational r = Rational(mpq_class(cand)) / an;
          if (lo < r && r <= hi && sf(r).is_zero()) found.push_back(r);
        }
        continue;
      }
      const Rational mid = (lo + hi) / 2;
      pending.emplace_back(lo, mid);
      pending.emplace_back(mid, hi);
    }

    for (const auto& r : found) {
      int mult = 0;
      const Polynomial factor = Polynomial::linear(-r, Rational(1));
      for (;;) {
        auto [q, rem] = divmod(work, factor);
        if (!rem.is_zero()) break;
        work = std::move(q);
        ++mult;
      }
      roots.push_back({r, mult});
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return roots;
}

int count_real_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no finite root set");
  if (p.degree() < 1 || !(lo < hi)) return 0;
  // Square-free part keeps the Sturm chain well defined at repeated roots.
  const Polynomial sf = square_free(p);
  int count = sturm_count(sturm_chain(sf), lo, hi);
  if (sf(hi).is_zero()) --count;
  return count;
}

}  // namespace mdl
