#pragma once

#include <optional>
#include <string>
#include <vector>

#include "density.hpp"
#include "dual.hpp"
#include "integrate.hpp"
#include "serialize.hpp"
#include "simulate.hpp"
#include "systems.hpp"

namespace mdl {

enum class DualStatus {
  Found,       // natural dual validated, h from ∫_{B*} dy/(1+xy)²
  Degenerate,  // DET = 0 but M is singular; h from the duals' common fixed point
  None,        // DET ≠ 0
  Invalid,     // DET = 0 but the candidate failed validation
};

const char* to_string(DualStatus s);

// The density pipeline shared by analyze and verify.
struct DensityDerivation {
  JumpSystem jump;
  Rational det;
  DualStatus status = DualStatus::None;
  std::string reason;
  std::optional<DualCandidate> candidate;
  std::optional<DualValidation> dual_validation;
  std::optional<ProjPoint> common_fixed;
  std::optional<RationalFunction> h;
  std::optional<RationalFunction> residual;
  std::optional<PiecewiseDensity> g;
  bool lift_fixed = false;

  bool density_found() const { return status == DualStatus::Found || status == DualStatus::Degenerate; }
};

DensityDerivation derive_density(const SystemSpec& spec);

struct AnalyzeReport {
  SystemSpec spec;
  ValidationReport system_validation;
  BranchSet branches;
  std::array<SymmetryRow, 3> rows;
  Polynomial det_poly;
  Rational conic;
  DensityDerivation derivation;
  std::optional<double> h_norm;
  std::optional<double> g_norm;
  bool slow_mixing = false;
};

AnalyzeReport analyze(const SystemSpec& spec);
json to_json(const AnalyzeReport& r);
std::string to_text(const AnalyzeReport& r);

struct DetScanReport {
  Rational p1, p2;
  TypeVector type;
  Polynomial det;
  std::vector<RationalRoot> roots;             // empty when identically zero
  std::vector<RationalRoot> admissible_roots;  // roots in (−1, 0) ∪ (0, 2]
};

DetScanReport detscan(const Rational& p1, const Rational& p2, const TypeVector& type);
json to_json(const DetScanReport& r);

struct ConicTable {
  struct Entry {
    Rational t, p1, p2, residual;
  };
  std::vector<Entry> entries;  // sorted by t, duplicates removed
  std::vector<std::string> warnings;
};

ConicTable conic_table(std::vector<Rational> ts);
// t = a/b for 1 < a/b ≤ t_max and 1 ≤ b ≤ den_max.
std::vector<Rational> conic_parameters(const Rational& t_max, unsigned den_max);
json to_json(const ConicTable& t);

struct VerifyReport {
  bool pass = false;
  std::string message;
  DensityDerivation derivation;
  std::optional<bool> normalizable;
};

VerifyReport verify(const SystemSpec& spec);
json to_json(const VerifyReport& r);

struct SimulationRequest {
  OrbitConfig orbit;
  std::optional<Rational> restrict_lo;  // compare on [restrict_lo, 1]
  double ks_threshold = 0.02;
  unsigned seeds = 1;
};

struct SimulationSummary {
  struct Run {
    std::uint64_t seed;
    double x0;
    std::optional<double> ks;
    std::uint64_t escapes;
    bool boundary_orbit;
  };
  std::vector<Run> runs;
  HistogramReport histogram;  // of the first run
  std::optional<double> norm;
  bool analytic = false;
  bool slow_mixing = false;
  bool pass = true;
  double domain_lo = 0;
};

// Throws ErrorCode::NotNormalizable when the reference density has infinite
// mass on the comparison domain.
SimulationSummary simulate(const SimulationRequest& req);
json to_json(const SimulationSummary& s, const SimulationRequest& req);

// Writes through a temporary file and renames it into place.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace mdl
