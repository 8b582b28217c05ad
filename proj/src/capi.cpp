#include "spinbath.h"

#include <cstring>
#include <exception>
#include <string>

#include "spinbath/config.hpp"
#include "spinbath/io.hpp"
#include "spinbath/molecule.hpp"
#include "spinbath/scenario.hpp"

using namespace spinbath;

namespace {

thread_local std::string g_last_error;

spb_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::config: return SPB_ERR_CONFIG;
    case ErrorCode::engine: return SPB_ERR_ENGINE;
    case ErrorCode::numeric: return SPB_ERR_NUMERIC;
    case ErrorCode::io: return SPB_ERR_IO;
    default: return SPB_ERR_INVALID;
  }
}

template <typename Fn>
spb_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SPB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPB_ERR_INVALID;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct spb_scenario {
  ScenarioConfig config;
  RunOptions opts;
};

struct spb_molecule {
  Molecule molecule;
};

extern "C" {

const char* spb_version(void) { return "0.1.0"; }

const char* spb_last_error(void) { return g_last_error.c_str(); }

void spb_string_free(char* s) { delete[] s; }

spb_status spb_scenario_open(const char* name_or_path, spb_scenario** out) {
  if (!name_or_path || !out) {
    g_last_error = "null argument";
    return SPB_ERR_INVALID;
  }
  *out = nullptr;
  return guarded([&] {
    auto* handle = new spb_scenario{resolve_scenario(name_or_path), {}};
    *out = handle;
  });
}

void spb_scenario_close(spb_scenario* s) { delete s; }

spb_status spb_scenario_set_seed(spb_scenario* s, uint64_t seed) {
  if (!s) {
    g_last_error = "null scenario";
    return SPB_ERR_INVALID;
  }
  s->opts.seed = seed;
  return SPB_OK;
}

spb_status spb_scenario_set_traj(spb_scenario* s, uint64_t n_traj) {
  if (!s || n_traj == 0) {
    g_last_error = "trajectory count must be positive";
    return SPB_ERR_INVALID;
  }
  s->opts.n_traj = static_cast<long>(n_traj);
  return SPB_OK;
}

spb_status spb_scenario_set_outputs(spb_scenario* s, const char* csv_list) {
  if (!s || !csv_list) {
    g_last_error = "null argument";
    return SPB_ERR_INVALID;
  }
  return guarded([&] {
    std::vector<Output> outputs;
    for (const std::string& tok : split_list(csv_list))
      outputs.push_back(parse_output(tok));
    if (outputs.empty())
      fail(ErrorCode::config, "empty output list");
    s->opts.outputs = std::move(outputs);
  });
}

spb_status spb_scenario_run(spb_scenario* s, const char* outdir,
                            char** manifest_json) {
  if (!s || !outdir) {
    g_last_error = "null argument";
    return SPB_ERR_INVALID;
  }
  return guarded([&] {
    RunOptions opts = s->opts;
    opts.outdir = outdir;
    const RunManifest manifest = run_scenario(s->config, opts);
    if (manifest_json) *manifest_json = dup_string(manifest.to_json());
  });
}

spb_status spb_scenario_list(char** out) {
  if (!out) {
    g_last_error = "null argument";
    return SPB_ERR_INVALID;
  }
  return guarded([&] { *out = dup_string(list_scenarios_text()); });
}

spb_status spb_molecule_open(const char* name_or_path, spb_molecule** out) {
  if (!name_or_path || !out) {
    g_last_error = "null argument";
    return SPB_ERR_INVALID;
  }
  *out = nullptr;
  return guarded([&] {
    const std::string ref = name_or_path;
    Molecule m;
    if (ref.find('/') != std::string::npos ||
        (ref.size() > 4 && ref.substr(ref.size() - 4) == ".mol"))
      m = load_molecule_file(ref);
    else
      m = registry_get(ref);
    *out = new spb_molecule{std::move(m)};
  });
}

void spb_molecule_close(spb_molecule* m) { delete m; }

int spb_molecule_site_count(const spb_molecule* m) {
  return m ? m->molecule.n_sites() : -1;
}

int spb_molecule_active_count(const spb_molecule* m) {
  return m ? static_cast<int>(m->molecule.active_sites().size()) : -1;
}

const char* spb_molecule_name(const spb_molecule* m) {
  return m ? m->molecule.name.c_str() : nullptr;
}

spb_status spb_compare_files(const char* file_a, const char* file_b,
                             double tol, int* pass, double* max_dev,
                             char** report) {
  if (!file_a || !file_b) {
    g_last_error = "null argument";
    return SPB_ERR_INVALID;
  }
  return guarded([&] {
    const CompareReport rep = compare_files(file_a, file_b, tol);
    if (pass) *pass = rep.pass ? 1 : 0;
    if (max_dev) {
      double dev = 0.0;
      for (const ColumnReport& c : rep.columns)
        dev = std::max(dev, c.max_abs_dev);
      *max_dev = dev;
    }
    if (report) *report = dup_string(rep.to_text());
  });
}

}  // extern "C"
