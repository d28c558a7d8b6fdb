#include "report.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "error.hpp"

namespace mdl {

const char* to_string(DualStatus s) {
  switch (s) {
    case DualStatus::Found: return "found";
    case DualStatus::Degenerate: return "degenerate";
    case DualStatus::None: return "none";
    case DualStatus::Invalid: return "invalid";
  }
  return "?";
}

namespace {

void attach_density(DensityDerivation& d, const SystemSpec& spec, RationalFunction h) {
  d.residual = invariance_residual(h, d.jump);
  d.h = std::move(h);
  if (!d.residual->is_zero()) return;
  d.g = lift_density(*d.h, spec);
  d.lift_fixed = piecewise_equal(transfer_base(*d.g, spec), *d.g);
}

}  // namespace

DensityDerivation derive_density(const SystemSpec& spec) {
  DensityDerivation d;
  d.jump = build_jump(spec);
  d.det = det_system(d.jump);
  if (!d.det.is_zero()) {
    d.status = DualStatus::None;
    d.reason = "DET != 0";
    return d;
  }
  d.candidate = solve_dual(d.jump);
  if (d.candidate->degenerate) {
    auto duals = d.jump.branches();
    for (auto& v : duals) v = transpose_dual(v);
    d.common_fixed = common_fixed_point(duals);
    if (!d.common_fixed || d.common_fixed->is_infinite() || !(d.common_fixed->value() > Rational(-1))) {
      d.status = DualStatus::Invalid;
      d.reason = "M is singular and the dual branches share no usable fixed point";
      return d;
    }
    attach_density(d, spec, fixed_point_density(d.common_fixed->value()));
    d.status = d.residual->is_zero() ? DualStatus::Degenerate : DualStatus::Invalid;
    d.reason = d.residual->is_zero() ? "M singular; density from the common fixed point of the dual branches"
                                     : "common-fixed-point density is not invariant";
    return d;
  }
  d.dual_validation = validate_dual(d.jump, *d.candidate);
  if (!d.dual_validation->report.pass()) {
    d.status = DualStatus::Invalid;
    d.reason = "dual validation failed: " + d.dual_validation->report.first_failure()->name;
    return d;
  }
  attach_density(d, spec, density_from_interval(*d.candidate->interval));
  d.status = d.residual->is_zero() ? DualStatus::Found : DualStatus::Invalid;
  d.reason = d.residual->is_zero() ? "natural dual" : "dual density is not invariant";
  return d;
}

AnalyzeReport analyze(const SystemSpec& spec) {
  check_spec(spec);
  AnalyzeReport r;
  r.spec = spec;
  r.system_validation = validate_system(spec);
  r.branches = build_branches(spec);
  const auto jump = build_jump(r.branches);
  const auto branches = jump.branches();
  for (std::size_t k = 0; k < 3; ++k) r.rows[k] = symmetry_row(branches[k]);
  r.det_poly = det_polynomial(spec.p1, spec.p2, spec.type);
  r.conic = conic_residual(spec.p1, spec.p2);
  r.derivation = derive_density(spec);
  if (r.derivation.h && r.derivation.residual->is_zero()) {
    r.h_norm = integrate(*r.derivation.h, 0, 1).value;
    if (r.derivation.g) r.g_norm = normalize(*r.derivation.g);
  }
  r.slow_mixing = has_indifferent_fixed_point(spec);
  return r;
}

namespace {

// "3A - 4B - D", zero terms omitted.
std::string format_row(const SymmetryRow& row) {
  std::string out;
  const std::pair<const Rational*, char> terms[] = {{&row.a, 'A'}, {&row.b, 'B'}, {&row.d, 'D'}};
  for (const auto& [c, name] : terms) {
    if (c->is_zero()) continue;
    const Rational mag = c->abs();
    if (out.empty())
      out += c->sign() < 0 ? "-" : "";
    else
      out += c->sign() < 0 ? " - " : " + ";
    if (mag != Rational(1)) out += mag.str();
    out += name;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

namespace {

json rows_json(const std::array<SymmetryRow, 3>& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back({row.a.str(), row.b.str(), row.d.str()});
  return out;
}

json branch_json(const MoebiusMap& m) { return {{"display", m.str()}, {"map", to_json(m)}}; }

json lift_json(const PiecewiseDensity& g) {
  json pieces = json::array();
  for (const auto& p : g.pieces) pieces.push_back({{"num", to_json(p.num())}, {"den", to_json(p.den())}, {"display", p.str()}});
  return {{"breakpoints", {g.p1.str(), g.p2.str()}}, {"pieces", pieces}};
}

}  // namespace

json to_json(const AnalyzeReport& r) {
  const auto& d = r.derivation;
  json out;
  out["spec"] = to_json(r.spec);
  out["branches"] = {
      {"T", {{"alpha", branch_json(r.branches.inv_alpha)},
             {"beta", branch_json(r.branches.inv_beta)},
             {"gamma", branch_json(r.branches.inv_gamma)}}},
      {"S", {{"alpha_beta", branch_json(d.jump.inv_ab)},
             {"beta", branch_json(d.jump.inv_b)},
             {"gamma_beta", branch_json(d.jump.inv_gb)}}},
  };
  out["symmetry_rows"] = rows_json(r.rows);
  out["det"] = d.det.str();
  out["det_polynomial"] = to_json(r.det_poly);
  out["det_polynomial_display"] = r.det_poly.str('b');
  out["conic_residual"] = r.conic.str();
  out["dual"] = {{"status", to_string(d.status)}, {"reason", d.reason}};
  out["dual"]["candidate"] = d.candidate ? to_json(*d.candidate) : json(nullptr);
  out["dual"]["common_fixed_point"] = d.common_fixed ? to_json(*d.common_fixed) : json(nullptr);
  if (d.dual_validation) {
    json images = json::array();
    for (const auto& iv : d.dual_validation->images) images.push_back(to_json(iv));
    out["dual"]["images"] = images;
  }
  out["density"] = d.h ? density_to_json(*d.h, r.h_norm) : json(nullptr);
  out["lift"] = d.g ? lift_json(*d.g) : json(nullptr);
  out["lift_norm"] = r.g_norm ? json(format_decimal(*r.g_norm)) : json(nullptr);
  out["validation"] = {
      {"system", to_json(r.system_validation)},
      {"dual", d.dual_validation ? to_json(d.dual_validation->report) : json(nullptr)},
      {"invariance", d.residual ? json(d.residual->is_zero()) : json(nullptr)},
      {"lift_fixed", d.g ? json(d.lift_fixed) : json(nullptr)},
  };
  out["slow_mixing"] = r.slow_mixing;
  return out;
}

std::string to_text(const AnalyzeReport& r) {
  const auto& d = r.derivation;
  std::ostringstream os;
  os << "system: p1=" << r.spec.p1.str() << " p2=" << r.spec.p2.str() << " beta=" << r.spec.beta.str()
     << " type=" << r.spec.type.str() << "\n";
  os << "T inverse branches: " << r.branches.inv_alpha.str() << ", " << r.branches.inv_beta.str() << ", "
     << r.branches.inv_gamma.str() << "\n";
  os << "S inverse branches: " << d.jump.inv_ab.str() << ", " << d.jump.inv_b.str() << ", "
     << d.jump.inv_gb.str() << "\n";
  for (std::size_t k = 0; k < 3; ++k)
    os << "row " << k << ": " << format_row(r.rows[k]) << " = 0\n";
  os << "DET: " << d.det.str() << "\n";
  os << "DET(beta): " << r.det_poly.str('b') << "\n";
  os << "conic residual: " << r.conic.str() << "\n";
  os << "dual: " << to_string(d.status) << " (" << d.reason << ")\n";
  if (d.candidate) {
    os << "(A,B,D) = (" << d.candidate->A.str() << ", " << d.candidate->B.str() << ", " << d.candidate->D.str() << ")\n";
    if (d.candidate->M) os << "M: " << d.candidate->M->str() << "\n";
    if (d.candidate->interval)
      os << "B*: [" << d.candidate->interval->lo.str() << ", " << d.candidate->interval->hi.str() << "]\n";
  }
  if (d.h) {
    os << "h(x) = " << d.h->str() << "\n";
    os << "h normalization: " << (r.h_norm ? format_decimal(*r.h_norm) : std::string("non-normalizable")) << "\n";
  }
  if (d.g)
    os << "g pieces: " << d.g->pieces[0].str() << " | " << d.g->pieces[1].str() << " | " << d.g->pieces[2].str() << "\n";
  if (r.slow_mixing) os << "note: indifferent fixed point, orbits mix slowly\n";
  return os.str();
}

DetScanReport detscan(const Rational& p1, const Rational& p2, const TypeVector& type) {
  if (!(Rational(0) < p1 && p1 < p2 && p2 < Rational(1)))
    throw Error(ErrorCode::InvalidSpec, "partition: need 0 < p1 < p2 < 1");
  DetScanReport r;
  r.p1 = p1;
  r.p2 = p2;
  r.type = type;
  r.det = det_polynomial(p1, p2, type);
  if (r.det.is_zero()) return r;
  r.roots = rational_roots(r.det);
  for (const auto& root : r.roots)
    if (root.value > Rational(-1) && root.value <= Rational(2) && !root.value.is_zero())
      r.admissible_roots.push_back(root);
  return r;
}

json to_json(const DetScanReport& r) {
  auto roots_json = [](const std::vector<RationalRoot>& roots) {
    json a = json::array();
    for (const auto& root : roots) a.push_back({{"value", root.value.str()}, {"multiplicity", root.multiplicity}});
    return a;
  };
  return {{"p1", r.p1.str()},
          {"p2", r.p2.str()},
          {"type", r.type.str()},
          {"det_polynomial", to_json(r.det)},
          {"display", r.det.str('b')},
          {"identically_zero", r.det.is_zero()},
          {"roots", roots_json(r.roots)},
          {"admissible_roots", roots_json(r.admissible_roots)},
          {"conic_residual", conic_residual(r.p1, r.p2).str()}};
}

ConicTable conic_table(std::vector<Rational> ts) {
  ConicTable table;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (const auto& t : ts) {
    if (!(t > Rational(1))) {
      table.warnings.push_back("skipped t=" + t.str() + ": need t > 1");
      continue;
    }
    const auto [p1, p2] = conic_point(t);
    table.entries.push_back({t, p1, p2, conic_residual(p1, p2)});
  }
  return table;
}

std::vector<Rational> conic_parameters(const Rational& t_max, unsigned den_max) {
  std::set<Rational> ts;
  for (unsigned b = 1; b <= std::max(den_max, 1u); ++b)
    for (long a = static_cast<long>(b) + 1; Rational(a, static_cast<long>(b)) <= t_max; ++a)
      ts.insert(Rational(a, static_cast<long>(b)));
  return {ts.begin(), ts.end()};
}

json to_json(const ConicTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries)
    entries.push_back({{"t", e.t.str()}, {"p1", e.p1.str()}, {"p2", e.p2.str()}, {"residual", e.residual.str()}});
  return {{"entries", entries}, {"warnings", t.warnings}};
}

VerifyReport verify(const SystemSpec& spec) {
  check_spec(spec);
  VerifyReport r;
  r.derivation = derive_density(spec);
  const auto& d = r.derivation;
  if (!d.h) {
    r.message = "no candidate density (" + d.reason + ")";
    return r;
  }
  if (!d.residual->is_zero()) {
    r.message = "invariance residual: " + d.residual->str();
    return r;
  }
  if (d.status == DualStatus::Found && !d.dual_validation->report.pass()) {
    r.message = "dual validation failed";
    return r;
  }
  if (!d.lift_fixed) {
    r.message = "lifted density is not fixed by the transfer operator of T";
    return r;
  }
  r.normalizable = integrate(*d.h, 0, 1).value.has_value();
  r.pass = true;
  r.message = *r.normalizable ? "ok" : "ok (non-normalizable: infinite invariant measure)";
  return r;
}

json to_json(const VerifyReport& r) {
  const auto& d = r.derivation;
  json out = {{"pass", r.pass}, {"message", r.message}, {"dual", to_string(d.status)}};
  out["residual"] = d.residual ? json(d.residual->str()) : json(nullptr);
  out["density"] = d.h ? json(d.h->str()) : json(nullptr);
  out["dual_validation"] = d.dual_validation ? to_json(d.dual_validation->report) : json(nullptr);
  out["lift_fixed"] = d.g ? json(d.lift_fixed) : json(nullptr);
  out["normalizable"] = r.normalizable ? json(*r.normalizable) : json(nullptr);
  return out;
}

namespace {

std::function<double(double)> reference_cdf(const SimulationRequest& req, std::optional<double>& norm) {
  const auto& spec = req.orbit.spec;
  const auto d = derive_density(spec);
  if (!d.density_found()) return {};
  const Rational lo = req.restrict_lo.value_or(Rational(0));
  auto cdf = std::make_shared<Cdf>(req.orbit.map == MapKind::S ? Cdf::of(RationalDensity(*d.h), lo, 1)
                                                               : Cdf::of(*d.g, lo, 1));
  norm = cdf->norm();
  return [cdf](double x) { return (*cdf)(x); };
}

}  // namespace

SimulationSummary simulate(const SimulationRequest& req) {
  check_config(req.orbit);
  if (req.restrict_lo && !(Rational(0) <= *req.restrict_lo && *req.restrict_lo < Rational(1)))
    throw Error(ErrorCode::InvalidArgument, "restricted domain must start in [0,1)");
  SimulationSummary s;
  const auto cdf = reference_cdf(req, s.norm);
  s.analytic = static_cast<bool>(cdf);
  s.slow_mixing = has_indifferent_fixed_point(req.orbit.spec);
  s.domain_lo = req.restrict_lo ? req.restrict_lo->to_double() : 0.0;

  const unsigned n = std::max(req.seeds, 1u);
  std::vector<std::future<std::pair<Orbit, HistogramReport>>> jobs;
  for (unsigned k = 0; k < n; ++k) {
    OrbitConfig cfg = req.orbit;
    cfg.seed += k;
    jobs.push_back(std::async(n > 1 ? std::launch::async : std::launch::deferred, [cfg, &cdf, &s] {
      Orbit orbit = run_orbit(cfg);
      HistogramReport h = histogram(orbit.samples, cfg.bins, s.domain_lo, 1.0, cdf ? &cdf : nullptr);
      orbit.samples.clear();
      return std::make_pair(std::move(orbit), std::move(h));
    }));
  }
  for (unsigned k = 0; k < n; ++k) {
    auto [orbit, hist] = jobs[k].get();
    hist.escapes = orbit.escapes;
    hist.slow_mixing = s.slow_mixing;
    s.runs.push_back({req.orbit.seed + k, orbit.x0, hist.ks, orbit.escapes, orbit.boundary_orbit});
    if (hist.ks && *hist.ks >= req.ks_threshold) s.pass = false;
    if (k == 0) s.histogram = std::move(hist);
  }
  return s;
}

json to_json(const SimulationSummary& s, const SimulationRequest& req) {
  json runs = json::array();
  for (const auto& r : s.runs)
    runs.push_back({{"seed", r.seed},
                    {"x0", r.x0},
                    {"ks", r.ks ? json(*r.ks) : json(nullptr)},
                    {"escapes", r.escapes},
                    {"boundary_orbit", r.boundary_orbit}});
  return {{"spec", to_json(req.orbit.spec)},
          {"map", req.orbit.map == MapKind::S ? "S" : "T"},
          {"iterations", req.orbit.iterations},
          {"burn_in", req.orbit.burn_in},
          {"bins", req.orbit.bins},
          {"domain", {format_decimal(s.domain_lo), "1"}},
          {"analytic", s.analytic},
          {"norm", s.norm ? json(format_decimal(*s.norm)) : json(nullptr)},
          {"ks_threshold", req.ks_threshold},
          {"runs", runs},
          {"slow_mixing", s.slow_mixing},
          {"pass", s.pass},
          {"verdict", s.analytic ? (s.pass ? "consistent with the analytic density" : "KS distance above threshold")
                                 : "no analytic density; empirical histogram only"}};
}

void write_file_atomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp);
    out << contents;
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mdl
