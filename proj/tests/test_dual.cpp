#include <gtest/gtest.h>

#include <cmath>

#include "dual.hpp"
#include "error.hpp"
#include "oracles.hpp"

using mdl::MoebiusMap;
using mdl::Polynomial;
using mdl::ProjInterval;
using mdl::ProjPoint;
using mdl::Rational;
using mdl::SystemSpec;
using mdl::TypeVector;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

mdl::JumpSystem jump(const Rational& p1, const Rational& p2, const Rational& beta, const char* type) {
  return mdl::build_jump(SystemSpec{p1, p2, beta, TypeVector::parse(type)});
}
mdl::JumpSystem jump(const char* beta, const char* type) { return jump(q("1/3"), q("2/3"), q(beta), type); }

Polynomial poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(std::move(v));
}

// Cofactor expansion of the 3×3 matrix of rows built directly from raw
// quadruples (n0, n1, d0, d1) each multiplied by its own scale.
Rational det3(const std::array<std::array<Rational, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Rational oracle_det(const mdl::JumpSystem& js, const std::array<Rational, 3>& scale) {
  std::array<std::array<Rational, 3>, 3> m;
  const auto br = js.branches();
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& v = br[k];
    m[k] = {scale[k] * v.d1(), scale[k] * (v.n1() - v.d0()), -scale[k] * v.n0()};
  }
  return det3(m);
}

// (a, b, d) proportional to (x, y, z) with a nonzero constant.
bool proportional(const Rational& a, const Rational& b, const Rational& d, const Rational& x, const Rational& y,
                  const Rational& z) {
  return a * y == b * x && a * z == d * x && b * z == d * y && !(a.is_zero() && b.is_zero() && d.is_zero());
}

ProjInterval bounded(const char* lo, const char* hi) { return {ProjPoint(q(lo)), ProjPoint(q(hi))}; }

const std::array<const char*, 6> kNoDualTypes{"++-", "+--", "-++", "-+-", "--+", "---"};

}  // namespace

TEST(SymmetryRow, Examples) {
  for (const char* b : {"1/2", "1", "2"}) {
    const Rational beta = q(b);
    // (0, 1+β, 3, 3β) → (3β, β−2, 0)
    const auto ab = mdl::symmetry_row(MoebiusMap::make(0, 1 + beta, 3, 3 * beta));
    EXPECT_TRUE(proportional(ab.a, ab.b, ab.d, 3 * beta, beta - 2, 0)) << b;
    const auto js = jump(b, "+++");
    const auto r = mdl::symmetry_row(js.inv_gb);
    // proportional to (3β, 3β−2, −2)
    EXPECT_TRUE(proportional(r.a, r.b, r.d, 3 * beta, 3 * beta - 2, -2));
  }
  // already primitive at β = 1: (0, 2, 3, 3)
  EXPECT_EQ(mdl::symmetry_row(MoebiusMap::make(0, 2, 3, 3)), (mdl::SymmetryRow{3, -1, 0}));
  EXPECT_EQ(mdl::symmetry_row(MoebiusMap::identity()), (mdl::SymmetryRow{0, 0, 0}));
}

TEST(DetSystem, Examples) {
  EXPECT_TRUE(mdl::det_system(jump("1", "+++")).is_zero());
  const Rational d = mdl::det_system(jump("1", "++-"));
  EXPECT_FALSE(d.is_zero());
  EXPECT_EQ(d, Rational(-12));  // canonical scaling, recorded value
  EXPECT_TRUE(mdl::det_system(jump(q("1/7"), q("3/7"), 1, "+-+")).is_zero());
}

TEST(DetSystem, MatchesCofactorOracleUnderRandomScaling) {
  oracle::RationalGen gen(31);
  for (int i = 0; i < 100; ++i) {
    const Rational p1 = gen.between(0, 1, 17);
    const Rational p2 = gen.between(p1, 1, 13);
    const auto all = TypeVector::all();
    const auto js = mdl::build_jump(
        SystemSpec{p1, p2, gen.between(-1, 2, 30), all[std::size_t(i % 8)]});
    std::array<Rational, 3> s;
    for (auto& c : s) {
      do c = gen.any(9, 7);
      while (c.is_zero());
    }
    const Rational base = mdl::det_system(js);
    EXPECT_EQ(oracle_det(js, {1, 1, 1}), base);
    EXPECT_EQ(oracle_det(js, s), s[0] * s[1] * s[2] * base);
    EXPECT_EQ(oracle_det(js, s).is_zero(), base.is_zero());
  }
}

TEST(DetSystem, UnitConstantScalingKeepsVerdict) {
  for (const auto& t : TypeVector::all())
    for (const char* b : {"-1/2", "1/2", "1", "2"}) {
      const auto js = jump(b, t.str().c_str());
      EXPECT_EQ(mdl::det_system(js).is_zero(), mdl::det_system(js, mdl::BranchScaling::UnitConstant).is_zero());
    }
}

TEST(DetPolynomial, SelfDualAtThirdsIsZero) {
  EXPECT_TRUE(mdl::det_polynomial(q("1/3"), q("2/3"), TypeVector::parse("+++")).is_zero());
  EXPECT_TRUE(mdl::det_polynomial(q("1/3"), q("2/3"), TypeVector::parse("+-+")).is_zero());
}

TEST(DetPolynomial, OffConicIsMultipleOfBetaSquaredPlusBeta) {
  const Polynomial d = mdl::det_polynomial(q("1/2"), q("3/4"), TypeVector::parse("+++"));
  ASSERT_EQ(d.degree(), 2);
  const auto [quot, rem] = mdl::divmod(d, poly({0, 1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(quot.degree(), 0);
  EXPECT_EQ(mdl::conic_residual(q("1/2"), q("3/4")), q("-1/16"));
}

TEST(DetPolynomial, AgreesWithSamplesAtFreshNodes) {
  for (const auto& t : TypeVector::all()) {
    const Polynomial d = mdl::det_polynomial(q("2/5"), q("4/5"), t);
    EXPECT_LE(d.degree(), 3);
    for (const char* b : {"-2/3", "1/5", "7/4"}) {
      const auto js = jump(q("2/5"), q("4/5"), q(b), t.str().c_str());
      EXPECT_EQ(d(q(b)), mdl::det_system(js, mdl::BranchScaling::UnitConstant)) << t.str();
    }
  }
}

TEST(DetPolynomial, NoDualTypesHaveNoAdmissibleRoot) {
  for (const char* t : kNoDualTypes) {
    const Polynomial d = mdl::det_polynomial(q("1/3"), q("2/3"), TypeVector::parse(t));
    ASSERT_FALSE(d.is_zero()) << t;
    for (const auto& r : mdl::rational_roots(d)) {
      const bool admissible = (r.value > Rational(-1) && r.value < Rational(0)) ||
                              (r.value > Rational(0) && r.value <= Rational(2));
      EXPECT_FALSE(admissible) << t << " root " << r.value.str();
    }
    // no irrational root either
    EXPECT_EQ(mdl::count_real_roots(d, -1, 0), 0) << t;
    EXPECT_EQ(mdl::count_real_roots(d, 0, 2), 0) << t;
    EXPECT_FALSE(d(Rational(2)).is_zero()) << t;
  }
}

TEST(SolveDual, SelfDualTypesMatchClosedForm) {
  for (const char* b : {"-1/2", "1/2", "1", "3/2", "2"}) {
    const Rational beta = q(b);
    const auto c1 = mdl::solve_dual(jump(b, "+++"));
    ASSERT_TRUE(c1.has_value());
    EXPECT_TRUE(proportional(c1->A, c1->B, c1->D, 2 - beta, 3 * beta, 3 * beta * beta)) << b;
    const auto c2 = mdl::solve_dual(jump(b, "+-+"));
    ASSERT_TRUE(c2.has_value());
    EXPECT_TRUE(proportional(c2->A, c2->B, c2->D, 4 + beta, 3 * beta, 3 * beta * beta)) << b;
    EXPECT_FALSE(c1->degenerate);
  }
}

TEST(SolveDual, CanonicalScaling) {
  const auto c = mdl::solve_dual(jump("1", "+++"));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->A, Rational(1));
  EXPECT_EQ(c->B, Rational(3));
  EXPECT_EQ(c->D, Rational(3));
  const auto neg = mdl::solve_dual(jump("-1/2", "+++"));
  // (5/2, −3/2, 3/4) scaled to primitive integers with first entry positive
  EXPECT_EQ(neg->A, Rational(10));
  EXPECT_EQ(neg->B, Rational(-6));
  EXPECT_EQ(neg->D, Rational(3));
}

TEST(SolveDual, BetaZeroIsDegenerate) {
  const auto c = mdl::solve_dual(jump("0", "+++"));
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(c->degenerate);
  EXPECT_FALSE(c->M.has_value());
  EXPECT_TRUE(proportional(c->A, c->B, c->D, 1, 0, 0));
}

TEST(SolveDual, NoneWhenDeterminantNonzero) {
  for (const char* t : kNoDualTypes) EXPECT_FALSE(mdl::solve_dual(jump("1", t)).has_value()) << t;
}

TEST(SolveDual, AnnihilatesRowsAndConjugates) {
  oracle::RationalGen gen(32);
  for (int i = 0; i < 40; ++i) {
    Rational beta = gen.between(-1, 2, 40);
    if (beta.is_zero()) beta = q("1/3");
    for (const char* t : {"+++", "+-+"}) {
      const auto js = jump(q("1/3"), q("2/3"), beta, t);
      const auto c = mdl::solve_dual(js);
      ASSERT_TRUE(c.has_value() && c->M.has_value());
      for (const auto& v : js.branches()) {
        const auto r = mdl::symmetry_row(v);
        EXPECT_TRUE((r.a * c->A + r.b * c->B + r.d * c->D).is_zero());
        EXPECT_EQ(mdl::compose(*c->M, v), mdl::compose(mdl::transpose_dual(v), *c->M));
      }
    }
  }
}

TEST(DualInterval, Examples) {
  EXPECT_EQ(mdl::dual_interval(MoebiusMap::make(3, 3, 1, 3)), bounded("3/2", "3"));
  const ProjInterval ray = mdl::dual_interval(MoebiusMap::make(1, 2, 0, 1));
  EXPECT_EQ(ray.lo, ProjPoint(3));
  EXPECT_TRUE(ray.hi.is_infinite());
  EXPECT_TRUE(ray.is_ray());
  EXPECT_EQ(mdl::dual_interval(MoebiusMap::identity()), bounded("0", "1"));
}

TEST(DualInterval, PoleInsideIsRejected) {
  try {
    mdl::dual_interval(MoebiusMap::make(1, 0, 1, -2));  // pole at 1/2
    FAIL() << "expected an error";
  } catch (const mdl::Error& e) {
    EXPECT_STREQ(e.what(), "image not an interval");
  }
}

TEST(DualInterval, KernelCondition) {
  // [−3, −2]: 1 + x y vanishes at x = 1/2, y = −2
  const ProjInterval iv = mdl::dual_interval(MoebiusMap::make(-2, -1, 1, 0));
  EXPECT_FALSE(iv.kernel_regular);
  EXPECT_TRUE(mdl::dual_interval(MoebiusMap::make(3, 3, 1, 3)).kernel_regular);
}

TEST(ValidateDual, BoundedCaseImages) {
  const auto js = jump("1", "+++");
  const auto c = mdl::solve_dual(js);
  const auto v = mdl::validate_dual(js, *c);
  EXPECT_TRUE(v.report.pass());
  ASSERT_EQ(v.images.size(), 3u);
  EXPECT_EQ(v.images[0], bounded("2", "3"));
  EXPECT_EQ(v.images[1], bounded("5/3", "2"));
  EXPECT_EQ(v.images[2], bounded("3/2", "5/3"));
  EXPECT_EQ(mdl::transpose_dual(js.inv_ab), MoebiusMap::make(3, 2, 3, 0));
}

TEST(ValidateDual, RayCase) {
  const auto js = jump("2", "+++");
  const auto c = mdl::solve_dual(js);
  ASSERT_TRUE(c.has_value() && c->interval.has_value());
  EXPECT_TRUE(c->interval->is_ray());
  const auto v = mdl::validate_dual(js, *c);
  EXPECT_TRUE(v.report.pass()) << (v.report.first_failure() ? v.report.first_failure()->name : "");
  ASSERT_EQ(v.images.size(), 3u);
  int rays = 0;
  for (const auto& iv : v.images) rays += iv.is_ray();
  EXPECT_EQ(rays, 1);
}

TEST(ValidateDual, ForcedCandidateFails) {
  const auto js = jump("1", "++-");
  const auto c = mdl::force_dual_candidate(js);
  EXPECT_EQ(c.A, Rational(1));
  EXPECT_EQ(c.B, Rational(3));
  EXPECT_EQ(c.D, Rational(3));
  const auto v = mdl::validate_dual(js, c);
  EXPECT_FALSE(v.report.pass());
}

TEST(ValidateDual, DegenerateCandidateFails) {
  const auto js = jump("0", "+++");
  const auto v = mdl::validate_dual(js, *mdl::solve_dual(js));
  ASSERT_FALSE(v.report.pass());
  EXPECT_EQ(v.report.first_failure()->name, "nondegenerate M");
}

TEST(ValidateDual, AllSelfDualSystemsPass) {
  for (const char* t : {"+++", "+-+"})
    for (const char* b : {"-1/2", "1/2", "1", "3/2", "2"}) {
      const auto js = jump(b, t);
      const auto v = mdl::validate_dual(js, *mdl::solve_dual(js));
      EXPECT_TRUE(v.report.pass()) << t << " " << b;
    }
}

TEST(CommonFixedPoint, LinearDualsFixZero) {
  const auto js = jump("0", "+-+");
  std::array<MoebiusMap, 3> duals;
  const auto br = js.branches();
  for (std::size_t k = 0; k < 3; ++k) {
    ASSERT_TRUE(br[k].is_linear());
    duals[k] = mdl::transpose_dual(br[k]);
  }
  EXPECT_EQ(mdl::common_fixed_point(duals), ProjPoint(0));
}

TEST(CommonFixedPoint, NoneForCurvedSystem) {
  const auto js = jump("1", "+++");
  const auto br = js.branches();
  EXPECT_FALSE(mdl::common_fixed_point({mdl::transpose_dual(br[0]), mdl::transpose_dual(br[1]),
                                        mdl::transpose_dual(br[2])})
                   .has_value());
}

TEST(CommonFixedPoint, RepeatedMapGivesSmallerPoint) {
  // 2/(x − 1): x² − x − 2 = 0 → {−1, 2}
  const MoebiusMap f = MoebiusMap::make(2, 0, -1, 1);
  EXPECT_EQ(mdl::common_fixed_point({f, f, f}), ProjPoint(-1));
}

TEST(DensityFromInterval, Examples) {
  EXPECT_TRUE(mdl::rf_equal(mdl::density_from_interval(bounded("3/2", "3")),
                            mdl::RationalFunction(poly({3}), poly({2, 3}) * poly({1, 3}))));
  EXPECT_TRUE(mdl::rf_equal(mdl::density_from_interval({ProjPoint(3), ProjPoint::infinity()}),
                            mdl::RationalFunction(poly({1}), poly({0, 1}) * poly({1, 3}))));
  EXPECT_TRUE(mdl::rf_equal(mdl::density_from_interval(bounded("0", "1")), mdl::RationalFunction(poly({1}), poly({1, 1}))));
  EXPECT_THROW(mdl::density_from_interval(bounded("1", "1")), mdl::Error);
}

TEST(DensityFromInterval, MatchesKernelQuadrature) {
  oracle::RationalGen gen(33);
  for (int i = 0; i < 5; ++i) {
    const Rational lo = gen.between(0, 3, 31);
    const Rational hi = gen.between(lo, 4, 29);
    const auto f = mdl::density_from_interval({ProjPoint(lo), ProjPoint(hi)});
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double ref = oracle::integrate([x](double y) { return 1 / ((1 + x * y) * (1 + x * y)); },
                                           lo.to_double(), hi.to_double());
      EXPECT_NEAR(f(x), ref, 1e-10 * std::abs(ref));
    }
  }
}

TEST(FixedPointDensity, Examples) {
  EXPECT_TRUE(mdl::rf_equal(mdl::fixed_point_density(0), mdl::RationalFunction(poly({1}))));
  EXPECT_TRUE(mdl::rf_equal(mdl::fixed_point_density(1), mdl::RationalFunction(poly({1}), poly({1, 2, 1}))));
  EXPECT_TRUE(mdl::rf_equal(mdl::fixed_point_density(2), mdl::RationalFunction(poly({1}), poly({1, 4, 4}))));
  EXPECT_THROW(mdl::fixed_point_density(-1), mdl::Error);
  EXPECT_THROW(mdl::fixed_point_density(-3), mdl::Error);
}

TEST(Conic, Points) {
  EXPECT_EQ(mdl::conic_point(2), std::make_pair(q("1/3"), q("2/3")));
  EXPECT_EQ(mdl::conic_point(3), std::make_pair(q("1/7"), q("3/7")));
  EXPECT_EQ(mdl::conic_point(q("3/2")), std::make_pair(q("4/7"), q("6/7")));
  try {
    mdl::conic_point(1);
    FAIL() << "expected an error";
  } catch (const mdl::Error& e) {
    EXPECT_STREQ(e.what(), "outside valid parameter range");
  }
}

TEST(Conic, PointsLieOnConicInsideSquare) {
  oracle::RationalGen gen(34);
  for (int i = 0; i < 100; ++i) {
    const Rational t = 1 + gen.between(0, 20, 211);
    const auto [p1, p2] = mdl::conic_point(t);
    EXPECT_TRUE(mdl::conic_residual(p1, p2).is_zero());
    EXPECT_TRUE(Rational(0) < p1 && p1 < p2 && p2 < Rational(1));
  }
}

TEST(Conic, Residual) {
  EXPECT_EQ(mdl::conic_residual(q("1/3"), q("2/3")), Rational(0));
  EXPECT_EQ(mdl::conic_residual(q("1/2"), q("1/2")), q("-1/4"));
  EXPECT_EQ(mdl::conic_residual(0, 0), Rational(0));
}

TEST(DetPolynomial, FactorsThroughConicForSelfDualTypes) {
  oracle::RationalGen gen(35);
  const Polynomial bb = poly({0, 1, 1});
  for (int i = 0; i < 10; ++i) {
    const Rational p1 = gen.between(0, 1, 19);
    const Rational p2 = gen.between(p1, 1, 17);
    const Rational c = mdl::conic_residual(p1, p2);
    for (const char* t : {"+++", "+-+"}) {
      const Polynomial d = mdl::det_polynomial(p1, p2, TypeVector::parse(t));
      if (c.is_zero()) {
        EXPECT_TRUE(d.is_zero());
        continue;
      }
      ASSERT_EQ(d.degree(), 2) << t;
      const Rational k = d[2] / c;
      EXPECT_FALSE(k.is_zero());
      EXPECT_EQ(d, Polynomial(k * c) * bb) << t << " p=" << p1.str() << "," << p2.str();
    }
  }
}

// DET vanishes on the whole conic, but the candidate M can still have its pole
// inside (0,1); then there is no dual interval.
TEST(Conic, ZeroDeterminantWithoutDualInterval) {
  const SystemSpec s{q("4/7"), q("6/7"), 1, TypeVector::parse("+++")};
  const auto js = mdl::build_jump(s);
  EXPECT_TRUE(mdl::det_system(js).is_zero());
  const auto c = mdl::solve_dual(js);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->A, Rational(1));
  EXPECT_EQ(c->B, Rational(-7));
  EXPECT_EQ(c->D, Rational(0));
  ASSERT_TRUE(c->M.has_value());
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_EQ(mdl::compose(*c->M, js.branches()[k]), mdl::compose(mdl::transpose_dual(js.branches()[k]), *c->M));
  EXPECT_FALSE(c->interval.has_value());
  EXPECT_THROW(mdl::dual_interval(*c->M), mdl::Error);
  EXPECT_FALSE(mdl::validate_dual(js, *c).report.pass());

  const SystemSpec other{q("4/7"), q("6/7"), 1, TypeVector::parse("+-+")};
  const auto js2 = mdl::build_jump(other);
  EXPECT_TRUE(mdl::validate_dual(js2, *mdl::solve_dual(js2)).report.pass());
}
