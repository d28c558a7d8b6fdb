#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "systems.hpp"

namespace mdl {

struct OrbitConfig {
  SystemSpec spec;
  MapKind map = MapKind::S;
  std::optional<double> x0;  // drawn from `seed` when empty
  std::uint64_t iterations = 1'000'000;
  std::uint64_t burn_in = 1'000;
  std::uint64_t seed = 42;
  std::size_t bins = 50;
};

// Throws ErrorCode::InvalidArgument when iterations ≤ burn_in or bins < 10.
void check_config(const OrbitConfig& cfg);

struct Orbit {
  double x0 = 0;
  std::vector<double> samples;  // iterates after burn-in
  std::uint64_t escapes = 0;    // images clamped back into [0,1]
  bool boundary_orbit = false;  // x0 returned to itself exactly (periodic in floating point)
};

Orbit run_orbit(const OrbitConfig& cfg);

// True when some jump branch has a rational fixed point in [0,1] with
// |slope| = 1, e.g. 0 at beta = 2 for type +++. Orbits then linger near it.
bool has_indifferent_fixed_point(const SystemSpec& spec);

// One-sample Kolmogorov–Smirnov statistic sup |F_n − F|.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

struct HistogramReport {
  std::vector<double> edges;
  std::vector<double> empirical;
  std::optional<std::vector<double>> analytic;
  std::optional<double> ks;
  std::uint64_t escapes = 0;
  std::uint64_t outside_domain = 0;  // samples dropped by a restricted domain
  bool slow_mixing = false;
};

// Equal-width bins on [lo, hi]; samples outside are dropped and counted.
// Analytic bin masses come from `cdf` differences when supplied.
HistogramReport histogram(std::span<const double> samples, std::size_t bins, double lo, double hi,
                          const std::function<double(double)>* cdf = nullptr);

// "bin_lo,bin_hi,empirical,analytic" with 12 significant digits; the
// analytic column is empty without a reference density.
void write_histogram_csv(const HistogramReport& report, std::ostream& out);

}  // namespace mdl
