#include "mdl/mdl.h"

#include <cstring>
#include <sstream>
#include <string>

#include "error.hpp"
#include "report.hpp"

struct mdl_system {
  mdl::SystemSpec spec;
};

namespace {

thread_local std::string last_error;

mdl_status status_of(mdl::ErrorCode code) {
  switch (code) {
    case mdl::ErrorCode::InvalidArgument:
    case mdl::ErrorCode::InvalidSpec: return MDL_INVALID_ARGUMENT;
    case mdl::ErrorCode::Domain: return MDL_DOMAIN_ERROR;
    case mdl::ErrorCode::NotNormalizable: return MDL_NOT_NORMALIZABLE;
    case mdl::ErrorCode::Internal: return MDL_INTERNAL_ERROR;
  }
  return MDL_INTERNAL_ERROR;
}

template <class F>
mdl_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const mdl::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return MDL_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MDL_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return MDL_INTERNAL_ERROR;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw mdl::Error(mdl::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* mdl_version(void) { return "1.0.0"; }

const char* mdl_last_error(void) { return last_error.c_str(); }

void mdl_string_free(char* s) { delete[] s; }

mdl_status mdl_system_create(const char* p1, const char* p2, const char* beta, const char* type,
                             int allow_out_of_range, mdl_system** out) {
  return guarded([&] {
    require(p1, "p1");
    require(p2, "p2");
    require(beta, "beta");
    require(type, "type");
    require(out, "out");
    mdl::SystemSpec spec{mdl::Rational::parse(p1), mdl::Rational::parse(p2), mdl::Rational::parse(beta),
                         mdl::TypeVector::parse(type), allow_out_of_range != 0};
    mdl::check_spec(spec);
    *out = new mdl_system{spec};
    return MDL_OK;
  });
}

mdl_status mdl_system_from_json(const char* json, mdl_system** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    auto spec = mdl::spec_from_json(nlohmann::json::parse(json));
    mdl::check_spec(spec);
    *out = new mdl_system{spec};
    return MDL_OK;
  });
}

mdl_status mdl_system_to_json(const mdl_system* sys, char** out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    *out = dup_string(mdl::to_json(sys->spec).dump());
    return MDL_OK;
  });
}

void mdl_system_destroy(mdl_system* sys) { delete sys; }

mdl_status mdl_system_reflect(const mdl_system* sys, mdl_system** out, int* out_of_range) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    const auto r = mdl::reflect_system(sys->spec);
    *out = new mdl_system{r.spec};
    if (out_of_range) *out_of_range = r.out_of_range ? 1 : 0;
    return MDL_OK;
  });
}

mdl_status mdl_forward_map(const mdl_system* sys, mdl_map_kind which, double x, double* out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    if (!(x >= 0.0 && x <= 1.0)) throw mdl::Error(mdl::ErrorCode::Domain, "x outside [0,1]");
    const mdl::ForwardStepper step(sys->spec, which == MDL_MAP_S ? mdl::MapKind::S : mdl::MapKind::T);
    bool clamped = false;
    *out = step(x, clamped);
    return MDL_OK;
  });
}

mdl_status mdl_det_system(const mdl_system* sys, char** out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    *out = dup_string(mdl::det_system(mdl::build_jump(sys->spec)).str());
    return MDL_OK;
  });
}

mdl_status mdl_analyze(const mdl_system* sys, mdl_format format, char** out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    const auto report = mdl::analyze(sys->spec);
    *out = dup_string(format == MDL_FORMAT_TEXT ? mdl::to_text(report) : mdl::to_json(report).dump(2));
    return report.derivation.density_found() ? MDL_OK : MDL_NO_DUAL;
  });
}

mdl_status mdl_detscan(const char* p1, const char* p2, const char* type, char** out_json) {
  return guarded([&] {
    require(p1, "p1");
    require(p2, "p2");
    require(type, "type");
    require(out_json, "out");
    const auto r = mdl::detscan(mdl::Rational::parse(p1), mdl::Rational::parse(p2), mdl::TypeVector::parse(type));
    *out_json = dup_string(mdl::to_json(r).dump(2));
    return MDL_OK;
  });
}

mdl_status mdl_conic(const char* const* t_values, size_t count, char** out_json) {
  return guarded([&] {
    require(out_json, "out");
    if (count > 0) require(t_values, "t_values");
    std::vector<mdl::Rational> ts;
    for (size_t k = 0; k < count; ++k) {
      require(t_values[k], "t value");
      ts.push_back(mdl::Rational::parse(t_values[k]));
    }
    *out_json = dup_string(mdl::to_json(mdl::conic_table(std::move(ts))).dump(2));
    return MDL_OK;
  });
}

mdl_status mdl_conic_range(const char* t_max, unsigned den_max, char** out_json) {
  return guarded([&] {
    require(t_max, "t_max");
    require(out_json, "out");
    const auto ts = mdl::conic_parameters(mdl::Rational::parse(t_max), den_max);
    *out_json = dup_string(mdl::to_json(mdl::conic_table(ts)).dump(2));
    return MDL_OK;
  });
}

mdl_status mdl_verify(const mdl_system* sys, char** out_json) {
  return guarded([&] {
    require(sys, "system");
    require(out_json, "out");
    const auto r = mdl::verify(sys->spec);
    *out_json = dup_string(mdl::to_json(r).dump(2));
    return r.pass ? MDL_OK : MDL_VERIFY_FAILED;
  });
}

mdl_sim_config mdl_sim_config_default(void) {
  mdl_sim_config c{};
  c.map = MDL_MAP_S;
  c.iterations = 1000000;
  c.burn_in = 1000;
  c.bins = 50;
  c.seed = 42;
  c.has_x0 = 0;
  c.x0 = 0.0;
  c.ks_threshold = 0.02;
  c.restrict_lo = nullptr;
  c.seeds = 1;
  return c;
}

mdl_status mdl_simulate(const mdl_system* sys, const mdl_sim_config* cfg, const char* csv_path,
                        char** summary_json, double* ks_out) {
  return guarded([&] {
    require(sys, "system");
    require(cfg, "config");
    mdl::SimulationRequest req;
    req.orbit.spec = sys->spec;
    req.orbit.map = cfg->map == MDL_MAP_T ? mdl::MapKind::T : mdl::MapKind::S;
    req.orbit.iterations = cfg->iterations;
    req.orbit.burn_in = cfg->burn_in;
    req.orbit.bins = cfg->bins;
    req.orbit.seed = cfg->seed;
    if (cfg->has_x0) req.orbit.x0 = cfg->x0;
    req.ks_threshold = cfg->ks_threshold;
    if (cfg->restrict_lo) req.restrict_lo = mdl::Rational::parse(cfg->restrict_lo);
    req.seeds = cfg->seeds;

    const auto summary = mdl::simulate(req);
    if (csv_path) {
      std::ostringstream csv;
      mdl::write_histogram_csv(summary.histogram, csv);
      mdl::write_file_atomically(csv_path, csv.str());
    }
    if (summary_json) *summary_json = dup_string(mdl::to_json(summary, req).dump(2));
    if (ks_out) {
      double worst = -1.0;
      for (const auto& r : summary.runs)
        if (r.ks) worst = std::max(worst, *r.ks);
      *ks_out = worst;
    }
    return summary.pass ? MDL_OK : MDL_KS_FAILED;
  });
}

}  // extern "C"
