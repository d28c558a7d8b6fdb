#include "simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <random>

#include "dual.hpp"
#include "error.hpp"

namespace mdl {

void check_config(const OrbitConfig& cfg) {
  if (cfg.iterations <= cfg.burn_in)
    throw Error(ErrorCode::InvalidArgument, "iterations must exceed burn-in");
  if (cfg.bins < 10) throw Error(ErrorCode::InvalidArgument, "need at least 10 bins");
  if (cfg.x0 && !(*cfg.x0 >= 0.0 && *cfg.x0 <= 1.0))
    throw Error(ErrorCode::Domain, "x0 outside [0,1]");
}

Orbit run_orbit(const OrbitConfig& cfg) {
  check_config(cfg);
  const ForwardStepper step(cfg.spec, cfg.map);
  Orbit orbit;
  if (cfg.x0) {
    orbit.x0 = *cfg.x0;
  } else {
    std::mt19937_64 rng(cfg.seed);
    orbit.x0 = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  }
  orbit.samples.reserve(cfg.iterations - cfg.burn_in);
  double x = orbit.x0;
  for (std::uint64_t i = 0; i < cfg.iterations; ++i) {
    bool clamped = false;
    x = step(x, clamped);
    if (clamped) ++orbit.escapes;
    if (i < 64 && x == orbit.x0) orbit.boundary_orbit = true;
    if (i >= cfg.burn_in) orbit.samples.push_back(x);
  }
  return orbit;
}

bool has_indifferent_fixed_point(const SystemSpec& spec) {
  const JumpSystem js = build_jump(spec);
  for (const auto& v : js.branches()) {
    if (v.is_identity()) continue;
    for (const auto& p : fixed_points(v).points) {
      if (p.is_infinite()) continue;
      const Rational& t = p.value();
      if (t < Rational(0) || t > Rational(1)) continue;
      if (jacobian(v)(t) == Rational(1)) return true;
    }
  }
  return false;
}

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  // Compare both one-sided limits at each distinct sample value; the left
  // limit of cdf is taken one ulp below, which matters only for step cdfs.
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double x = sorted[i];
    const double left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    d = std::max({d, std::abs(static_cast<double>(i) / n - left),
                  std::abs(static_cast<double>(j) / n - cdf(x))});
    i = j;
  }
  return d;
}

HistogramReport histogram(std::span<const double> samples, std::size_t bins, double lo, double hi,
                          const std::function<double(double)>* cdf) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "no samples");
  if (bins == 0 || !(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bad histogram range");
  HistogramReport rep;
  rep.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) rep.edges[k] = lo + width * static_cast<double>(k);
  rep.edges[bins] = hi;

  std::vector<std::uint64_t> counts(bins, 0);
  std::uint64_t kept = 0;
  for (double x : samples) {
    if (x < lo || x > hi) {
      ++rep.outside_domain;
      continue;
    }
    const auto k = std::min(bins - 1, static_cast<std::size_t>((x - lo) / width));
    ++counts[k];
    ++kept;
  }
  if (kept == 0) throw Error(ErrorCode::InvalidArgument, "no samples inside the histogram range");
  rep.empirical.resize(bins);
  for (std::size_t k = 0; k < bins; ++k)
    rep.empirical[k] = static_cast<double>(counts[k]) / static_cast<double>(kept);

  if (cdf) {
    std::vector<double> mass(bins);
    for (std::size_t k = 0; k < bins; ++k) mass[k] = (*cdf)(rep.edges[k + 1]) - (*cdf)(rep.edges[k]);
    rep.analytic = std::move(mass);
    std::vector<double> inside;
    inside.reserve(kept);
    for (double x : samples)
      if (x >= lo && x <= hi) inside.push_back(x);
    rep.ks = ks_distance(inside, *cdf);
  }
  return rep;
}

void write_histogram_csv(const HistogramReport& report, std::ostream& out) {
  out << "bin_lo,bin_hi,empirical,analytic\n";
  out << std::setprecision(12);
  for (std::size_t k = 0; k < report.empirical.size(); ++k) {
    out << report.edges[k] << ',' << report.edges[k + 1] << ',' << report.empirical[k] << ',';
    if (report.analytic) out << (*report.analytic)[k];
    out << '\n';
  }
}

}  // namespace mdl
