// Command-line front end. Talks to the library only through mdl/mdl.h.
//
//   mdl analyze  --p1 1/3 --p2 2/3 --beta 1 --type +-+ [--out json|text]
//   mdl detscan  --p1 1/3 --p2 2/3 --type ---
//   mdl conic    --t-list 2,3,3/2 | --t-max 5 [--t-den-max 2]
//   mdl verify   --p1 1/3 --p2 2/3 --beta 2 --type +++
//   mdl simulate --map S --beta 1 --type +-+ --iters 1000000 --out hist.csv
//
// Exit codes: 0 dual found / pass, 1 verify failed, 2 usage or invalid
// input, 3 no dual, 4 KS distance above threshold.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "mdl/mdl.h"

namespace {

constexpr int kExitUsage = 2;

struct SpecFlags {
  std::string p1 = "1/3";
  std::string p2 = "2/3";
  std::string beta;
  std::string type;
  bool allow_out_of_range = false;

  void attach(CLI::App* cmd, bool with_beta = true) {
    cmd->add_option("--p1", p1, "left partition point (rational)")->capture_default_str();
    cmd->add_option("--p2", p2, "right partition point (rational)")->capture_default_str();
    if (with_beta) {
      cmd->add_option("--beta", beta, "middle-branch parameter (rational)")->required();
      cmd->add_flag("--allow-out-of-range", allow_out_of_range, "admit beta outside (-1, 2]");
    }
    cmd->add_option("--type", type, "orientation signs, e.g. +-+")->required();
  }
};

using SystemPtr = std::unique_ptr<mdl_system, decltype(&mdl_system_destroy)>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { mdl_string_free(s); }
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("mdl");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("MDL_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
  }
}

int fail(mdl_status status, const char* context) {
  spdlog::error("{}: {}", context, mdl_last_error());
  std::cerr << "error: " << context << ": " << mdl_last_error() << "\n";
  return status == MDL_OK ? 0 : kExitUsage;
}

std::optional<SystemPtr> make_system(const SpecFlags& f) {
  mdl_system* raw = nullptr;
  const mdl_status st = mdl_system_create(f.p1.c_str(), f.p2.c_str(), f.beta.c_str(), f.type.c_str(),
                                          f.allow_out_of_range ? 1 : 0, &raw);
  if (st != MDL_OK) {
    fail(st, "invalid system");
    return std::nullopt;
  }
  spdlog::debug("system p1={} p2={} beta={} type={}", f.p1, f.p2, f.beta, f.type);
  return SystemPtr(raw, &mdl_system_destroy);
}

// Maps library statuses onto the documented exit codes.
int exit_code(mdl_status st) {
  switch (st) {
    case MDL_OK: return 0;
    case MDL_VERIFY_FAILED: return 1;
    case MDL_NO_DUAL: return 3;
    case MDL_KS_FAILED: return 4;
    default: return kExitUsage;
  }
}

int run_analyze(const SpecFlags& f, const std::string& format) {
  auto sys = make_system(f);
  if (!sys) return kExitUsage;
  OwnedString out;
  const mdl_status st = mdl_analyze(sys->get(), format == "text" ? MDL_FORMAT_TEXT : MDL_FORMAT_JSON, &out.s);
  if (st != MDL_OK && st != MDL_NO_DUAL) return fail(st, "analyze");
  std::cout << out.s << (format == "text" ? "" : "\n");
  spdlog::info("analyze finished with status {}", static_cast<int>(st));
  return exit_code(st);
}

int run_detscan(const SpecFlags& f) {
  OwnedString out;
  const mdl_status st = mdl_detscan(f.p1.c_str(), f.p2.c_str(), f.type.c_str(), &out.s);
  if (st != MDL_OK) return fail(st, "detscan");
  std::cout << out.s << "\n";
  return 0;
}

int run_conic(const std::vector<std::string>& t_list, const std::string& t_max, unsigned den_max) {
  OwnedString out;
  mdl_status st;
  if (!t_list.empty()) {
    std::vector<const char*> ptrs;
    for (const auto& t : t_list) ptrs.push_back(t.c_str());
    st = mdl_conic(ptrs.data(), ptrs.size(), &out.s);
  } else {
    st = mdl_conic_range(t_max.c_str(), den_max, &out.s);
  }
  if (st != MDL_OK) return fail(st, "conic");
  std::cout << out.s << "\n";
  return 0;
}

int run_verify(const SpecFlags& f) {
  auto sys = make_system(f);
  if (!sys) return kExitUsage;
  OwnedString out;
  const mdl_status st = mdl_verify(sys->get(), &out.s);
  if (st != MDL_OK && st != MDL_VERIFY_FAILED) return fail(st, "verify");
  std::cout << out.s << "\n";
  return exit_code(st);
}

struct SimFlags {
  std::string map = "S";
  std::uint64_t iters = 1000000;
  std::uint64_t burn_in = 1000;
  std::uint32_t bins = 50;
  std::uint64_t seed = 42;
  std::optional<double> x0;
  std::string out;
  double ks_threshold = 0.02;
  std::string restrict_domain;
  std::uint32_t seeds = 1;
};

int run_simulate(const SpecFlags& f, const SimFlags& s) {
  auto sys = make_system(f);
  if (!sys) return kExitUsage;
  mdl_sim_config cfg = mdl_sim_config_default();
  cfg.map = s.map == "T" ? MDL_MAP_T : MDL_MAP_S;
  cfg.iterations = s.iters;
  cfg.burn_in = s.burn_in;
  cfg.bins = s.bins;
  cfg.seed = s.seed;
  cfg.has_x0 = s.x0.has_value() ? 1 : 0;
  cfg.x0 = s.x0.value_or(0.0);
  cfg.ks_threshold = s.ks_threshold;
  cfg.restrict_lo = s.restrict_domain.empty() ? nullptr : s.restrict_domain.c_str();
  cfg.seeds = s.seeds;

  OwnedString summary;
  double ks = -1.0;
  const mdl_status st = mdl_simulate(sys->get(), &cfg, s.out.empty() ? nullptr : s.out.c_str(), &summary.s, &ks);
  if (st == MDL_NOT_NORMALIZABLE) {
    std::cerr << "error: " << mdl_last_error()
              << "\nthe invariant measure is infinite on [0,1]; pass --restrict-domain EPS to compare on [EPS,1]\n";
    return kExitUsage;
  }
  if (st != MDL_OK && st != MDL_KS_FAILED) return fail(st, "simulate");
  std::cout << summary.s << "\n";
  if (ks >= 0) std::cerr << "KS distance: " << ks << "\n";
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Natural duals and invariant densities of piecewise Moebius maps with two linear branches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mdl_version()));

  SpecFlags analyze_spec, detscan_spec, verify_spec, sim_spec;
  std::string format = "json";
  auto* analyze = app.add_subcommand("analyze", "branches, determinant, dual and density report");
  analyze_spec.attach(analyze);
  analyze->add_option("--out", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  auto* detscan = app.add_subcommand("detscan", "determinant as a polynomial in beta, with rational roots");
  detscan_spec.attach(detscan, false);

  std::vector<std::string> t_list;
  std::string t_max;
  unsigned t_den_max = 1;
  auto* conic = app.add_subcommand("conic", "rational partitions admitting a natural dual");
  auto* t_list_opt = conic->add_option("--t-list", t_list, "parameters t > 1")->delimiter(',');
  auto* t_max_opt = conic->add_option("--t-max", t_max, "all t = a/b in (1, t-max]");
  conic->add_option("--t-den-max", t_den_max, "largest denominator b for --t-max")->capture_default_str();
  t_list_opt->excludes(t_max_opt);
  conic->require_option(1);

  auto* verify = app.add_subcommand("verify", "exact invariance and dual checks");
  verify_spec.attach(verify);

  SimFlags sim;
  auto* simulate = app.add_subcommand("simulate", "orbit histogram against the analytic density");
  sim_spec.attach(simulate);
  simulate->add_option("--map", sim.map, "T or S")->check(CLI::IsMember({"T", "S"}))->capture_default_str();
  simulate->add_option("--iters", sim.iters, "iterations including burn-in")->capture_default_str();
  simulate->add_option("--burn-in", sim.burn_in, "discarded leading iterates")->capture_default_str();
  simulate->add_option("--bins", sim.bins, "histogram bins (>= 10)")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "seed for the random start point")->capture_default_str();
  simulate->add_option("--x0", sim.x0, "start point in [0,1]");
  simulate->add_option("--out", sim.out, "histogram CSV path");
  simulate->add_option("--ks-threshold", sim.ks_threshold, "pass threshold")->capture_default_str();
  simulate->add_option("--restrict-domain", sim.restrict_domain, "compare on [EPS,1] (rational EPS)");
  simulate->add_option("--seeds", sim.seeds, "independent runs with seeds seed..seed+N-1")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (analyze->parsed()) return run_analyze(analyze_spec, format);
  if (detscan->parsed()) return run_detscan(detscan_spec);
  if (conic->parsed()) return run_conic(t_list, t_max, t_den_max);
  if (verify->parsed()) return run_verify(verify_spec);
  if (simulate->parsed()) return run_simulate(sim_spec, sim);
  return kExitUsage;
}
