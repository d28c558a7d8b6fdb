#include "dual.hpp"

#include <algorithm>

#include "error.hpp"

namespace mdl {

namespace {

using Vec3 = std::array<Rational, 3>;

Vec3 as_vec(const SymmetryRow& r) { return {r.a, r.b, r.d}; }

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

bool is_zero(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

Rational dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

std::array<SymmetryRow, 3> rows_of(const JumpSystem& js, BranchScaling scaling) {
  std::array<SymmetryRow, 3> rows;
  const auto branches = js.branches();
  for (std::size_t k = 0; k < 3; ++k) {
    SymmetryRow r = symmetry_row(branches[k]);
    if (scaling == BranchScaling::UnitConstant) {
      const Rational s = branches[k].d0().inverse();
      r = {r.a * s, r.b * s, r.d * s};
    }
    rows[k] = r;
  }
  return rows;
}

// Primitive integers, first nonzero coordinate positive.
Vec3 canonical_direction(Vec3 v) {
  mpz_class den_lcm = 1;
  for (const auto& c : v) den_lcm = lcm(den_lcm, c.denominator());
  mpz_class content = 0;
  for (const auto& c : v) content = gcd(content, c.numerator() * (den_lcm / c.denominator()));
  Rational scale{mpq_class(den_lcm, content)};
  const auto first = std::find_if(v.begin(), v.end(), [](const Rational& c) { return !c.is_zero(); });
  if (first->sign() < 0) scale = -scale;
  for (auto& c : v) c *= scale;
  return v;
}

DualCandidate candidate_from(const Vec3& dir) {
  const Vec3 v = canonical_direction(dir);
  DualCandidate c{v[0], v[1], v[2], std::nullopt, std::nullopt, false};
  if ((c.A * c.D - c.B * c.B).is_zero()) {
    c.degenerate = true;
    return c;
  }
  c.M = MoebiusMap::make(c.B, c.D, c.A, c.B);
  try {
    c.interval = dual_interval(*c.M);
  } catch (const Error&) {
    // pole of M inside (0,1): no interval, validate_dual reports it
  }
  return c;
}

// Strict order on the extended line for finite-or-±∞ endpoints.
bool lo_less(const ProjPoint& a, const ProjPoint& b) {
  // lower endpoints: infinity means −∞
  if (a.is_infinite()) return !b.is_infinite();
  if (b.is_infinite()) return false;
  return a.value() < b.value();
}

bool kernel_regular(const ProjPoint& lo, const ProjPoint& hi) {
  // 1 + x y is bilinear, so its sign on [0,1] × [lo,hi] is decided at the
  // corners; the x = 0 corners give 1. A −∞ end always crosses zero.
  if (lo.is_infinite()) return false;
  if (!(lo.value() > Rational(-1))) return false;
  return hi.is_infinite() || hi.value() > Rational(-1);
}

ProjInterval make_interval(ProjPoint lo, ProjPoint hi) {
  const bool ok = kernel_regular(lo, hi);
  return {std::move(lo), std::move(hi), ok};
}

// A point strictly inside the interval.
Rational interior_point(const ProjInterval& iv) {
  if (iv.lo.is_infinite() && iv.hi.is_infinite()) return 0;
  if (iv.lo.is_infinite()) return iv.hi.value() - 1;
  if (iv.hi.is_infinite()) return iv.lo.value() + 1;
  return (iv.lo.value() + iv.hi.value()) / 2;
}

}  // namespace

SymmetryRow symmetry_row(const MoebiusMap& v) { return {v.d1(), v.n1() - v.d0(), -v.n0()}; }

Rational det_system(const JumpSystem& js, BranchScaling scaling) {
  const auto rows = rows_of(js, scaling);
  return dot(as_vec(rows[0]), cross(as_vec(rows[1]), as_vec(rows[2])));
}

Polynomial det_polynomial(const Rational& p1, const Rational& p2, const TypeVector& type) {
  SystemSpec spec{p1, p2, 0, type, true};
  auto sample = [&](const Rational& beta) {
    spec.beta = beta;
    return det_system(build_jump(spec), BranchScaling::UnitConstant);
  };
  const Rational nodes[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                            Rational(-1, 2), Rational(1, 3), Rational(-1, 3)};
  std::vector<std::pair<Rational, Rational>> points;
  for (const auto& b : nodes) points.emplace_back(b, sample(b));
  Polynomial p = poly_interpolate(points);
  for (const auto& b : {Rational(1, 4), Rational(5, 4), Rational(-3, 4)}) {
    if (p(b) != sample(b))
      throw Error(ErrorCode::Internal, "determinant interpolant failed re-check at beta=" + b.str());
  }
  return p;
}

bool ProjInterval::contains_interior(const Rational& y) const {
  const bool above = lo.is_infinite() || lo.value() < y;
  const bool below = hi.is_infinite() || y < hi.value();
  return above && below;
}

std::optional<ProjInterval> image_of_interval(const MoebiusMap& m, const ProjInterval& iv) {
  if (!m.d1().is_zero()) {
    const Rational pole = -m.d0() / m.d1();
    if (iv.contains_interior(pole)) return std::nullopt;
  }
  // Endpoints: a ±∞ end is the projective point at infinity.
  const ProjPoint a = m(iv.lo);
  const ProjPoint b = m(iv.hi);
  const ProjPoint mid = m(ProjPoint(interior_point(iv)));
  if (a.is_infinite() && b.is_infinite()) return std::nullopt;  // only possible for degenerate input
  if (a.is_infinite() || b.is_infinite()) {
    const ProjPoint& finite = a.is_infinite() ? b : a;
    if (mid.value() > finite.value()) return make_interval(finite, ProjPoint::infinity());
    return make_interval(ProjPoint::infinity(), finite);
  }
  if (a.value() < b.value()) return make_interval(a, b);
  return make_interval(b, a);
}

ProjInterval dual_interval(const MoebiusMap& m) {
  const auto iv = image_of_interval(m, make_interval(ProjPoint(0), ProjPoint(1)));
  if (!iv) throw Error(ErrorCode::Domain, "image not an interval");
  return *iv;
}

std::optional<DualCandidate> solve_dual(const JumpSystem& js) {
  if (!det_system(js).is_zero()) return std::nullopt;
  const auto rows = rows_of(js, BranchScaling::Canonical);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const Vec3 n = cross(as_vec(rows[i]), as_vec(rows[j]));
      if (!is_zero(n)) return candidate_from(n);
    }
  throw Error(ErrorCode::Internal, "underdetermined system");
}

DualCandidate force_dual_candidate(const JumpSystem& js) {
  const auto rows = rows_of(js, BranchScaling::Canonical);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const Vec3 n = cross(as_vec(rows[i]), as_vec(rows[j]));
      if (!is_zero(n)) return candidate_from(n);
    }
  throw Error(ErrorCode::Internal, "underdetermined system");
}

DualValidation validate_dual(const JumpSystem& js, const DualCandidate& cand) {
  DualValidation out;
  auto& rep = out.report;
  rep.add("nondegenerate M", cand.M.has_value(), "A*D - B^2 = " + (cand.A * cand.D - cand.B * cand.B).str());
  if (!cand.M) return out;
  const MoebiusMap& M = *cand.M;

  const auto branches = js.branches();
  const char* names[] = {"ab", "b", "gb"};
  for (std::size_t k = 0; k < 3; ++k) {
    const SymmetryRow r = symmetry_row(branches[k]);
    const Rational residual = r.a * cand.A + r.b * cand.B + r.d * cand.D;
    rep.add(std::string("row ") + names[k], residual.is_zero(), "residual " + residual.str());
    const bool conj = compose(M, branches[k]) == compose(transpose_dual(branches[k]), M);
    rep.add(std::string("conjugacy ") + names[k], conj, "M o V = V* o M");
  }

  rep.add("interval", cand.interval.has_value(), cand.interval ? "" : "image not an interval");
  if (!cand.interval) return out;
  const ProjInterval& bstar = *cand.interval;
  rep.add("kernel", bstar.kernel_regular, "1 + x*y != 0 on [0,1] x B*");

  bool all_images = true;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto img = image_of_interval(transpose_dual(branches[k]), bstar);
    if (!img) {
      rep.add(std::string("image ") + names[k], false, "dual branch has its pole inside B*");
      all_images = false;
      continue;
    }
    out.images.push_back(*img);
  }
  if (!all_images) return out;

  std::vector<ProjInterval> sorted = out.images;
  std::sort(sorted.begin(), sorted.end(),
            [](const ProjInterval& a, const ProjInterval& b) { return lo_less(a.lo, b.lo); });
  bool tiles = sorted.front().lo == bstar.lo && sorted.back().hi == bstar.hi;
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) tiles = tiles && sorted[k].hi == sorted[k + 1].lo;
  std::string detail;
  for (const auto& iv : sorted) detail += "[" + iv.lo.str() + "," + iv.hi.str() + "] ";
  rep.add("tiling", tiles, detail + "tile [" + bstar.lo.str() + "," + bstar.hi.str() + "]");
  return out;
}

std::optional<ProjPoint> common_fixed_point(const std::array<MoebiusMap, 3>& maps) {
  std::vector<ProjPoint> common = fixed_points(maps[0]).points;
  for (std::size_t k = 1; k < 3; ++k) {
    const auto pts = fixed_points(maps[k]).points;
    std::erase_if(common, [&](const ProjPoint& p) { return std::find(pts.begin(), pts.end(), p) == pts.end(); });
  }
  // fixed_points lists finite points ascending, infinity last
  if (common.empty()) return std::nullopt;
  return common.front();
}

RationalFunction density_from_interval(const ProjInterval& iv) {
  if (iv.lo.is_infinite()) throw Error(ErrorCode::Domain, "kernel 1+xy vanishes on a ray to -inf");
  const Rational& rho = iv.lo.value();
  if (iv.hi.is_infinite()) {
    return {Polynomial(Rational(1)), Polynomial::x() * Polynomial::linear(1, rho)};
  }
  const Rational& sigma = iv.hi.value();
  if (!(rho < sigma)) throw Error(ErrorCode::InvalidArgument, "degenerate interval");
  return {Polynomial(sigma - rho), Polynomial::linear(1, rho) * Polynomial::linear(1, sigma)};
}

RationalFunction fixed_point_density(const Rational& tau) {
  if (!(tau > Rational(-1))) throw Error(ErrorCode::Domain, "1 + tau*x vanishes on [0,1]");
  const Polynomial base = Polynomial::linear(1, tau);
  return {Polynomial(Rational(1)), base * base};
}

std::pair<Rational, Rational> conic_point(const Rational& t) {
  if (!(t > Rational(1))) throw Error(ErrorCode::InvalidArgument, "outside valid parameter range");
  const Rational scale = (t * t - t + 1).inverse();
  return {scale, t * scale};
}

Rational conic_residual(const Rational& p1, const Rational& p2) {
  return p1 * p1 + p2 * p2 - p1 * p2 - p1;
}

}  // namespace mdl
