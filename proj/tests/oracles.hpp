#pragma once

// Test-only reference computations. None of these call into the code paths
// they are used to check: interpolation is checked against a Vandermonde
// solve, integrals against adaptive Simpson, the exact transfer operator
// against a direct floating-point sum over branches.

#include <cmath>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "moebius.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace oracle {

using mdl::Rational;

// Solves the Vandermonde system V c = y by Gauss-Jordan elimination.
inline std::vector<Rational> vandermonde_solve(const std::vector<std::pair<Rational, Rational>>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    Rational p(1);
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = p;
      p *= pts[i].first;
    }
    m[i][n] = pts[i].second;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col].is_zero()) ++piv;
    std::swap(m[piv], m[col]);
    const Rational inv = m[col][col].inverse();
    for (auto& v : m[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rational> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = m[i][n];
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return c;
}

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                      double fb, double whole, double eps, int depth) {
  const double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * eps)
    return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}
}  // namespace detail

// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b, double eps = 1e-14) {
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return detail::simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), eps, 50);
}

// Σ h(V x)·|V'(x)| evaluated pointwise in double precision from the raw
// quadruples.
inline double transfer(const std::function<double(double)>& h, const std::vector<mdl::MoebiusMap>& branches,
                       double x) {
  double acc = 0;
  for (const auto& v : branches) {
    const double n0 = v.n0().to_double(), n1 = v.n1().to_double();
    const double d0 = v.d0().to_double(), d1 = v.d1().to_double();
    const double den = d0 + d1 * x;
    acc += h((n0 + n1 * x) / den) * std::abs(n1 * d0 - n0 * d1) / (den * den);
  }
  return acc;
}

// Small random rationals for property tests.
class RationalGen {
 public:
  explicit RationalGen(unsigned seed) : rng_(seed) {}

  Rational any(long max_num = 20, long max_den = 12) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    return Rational(num(rng_), den(rng_));
  }
  // Uniform-ish rational strictly inside (lo, hi).
  Rational between(const Rational& lo, const Rational& hi, long grid = 97) {
    std::uniform_int_distribution<long> k(1, grid - 1);
    return lo + (hi - lo) * Rational(k(rng_), grid);
  }
  mdl::MoebiusMap map() {
    for (;;) {
      const Rational a = any(), b = any(), c = any(), d = any();
      if (!(b * c - a * d).is_zero()) return mdl::MoebiusMap::make(a, b, c, d);
    }
  }
  mdl::Polynomial poly(int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng_) + 1));
    for (auto& v : c) v = any();
    return mdl::Polynomial(std::move(c));
  }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace oracle
