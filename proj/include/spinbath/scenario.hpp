#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinbath/channels.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/io.hpp"

namespace spinbath {

enum class Engine { unitary, lindblad, reset_mc, factorized };
enum class Output { fid, spectrum, channel, blp, otoc, lightcone };

std::string engine_name(Engine e);
std::string output_name(Output o);
Engine parse_engine(const std::string& s);
Output parse_output(const std::string& s);

struct PulseStep {
  double beta = 0.0;
  double phi = 0.0;
  std::vector<std::string> targets;  // site labels
};

struct PrepSpec {
  enum class Type { thermal, line_selected };
  Type type = Type::thermal;
  std::string select;  // selector site label for line_selected
};

struct OTOCSpec {
  std::string w_site, v_site;
  PauliAxis w_axis = PauliAxis::z;
  PauliAxis v_axis = PauliAxis::z;
};

struct LightconeSpec {
  std::string source;  // defaults to the system site
  PauliAxis source_axis = PauliAxis::x;
  PauliAxis probe_axis = PauliAxis::z;
  double eps = 0.01;
};

/// Parsed description of one runnable experiment.
struct ScenarioConfig {
  std::string name;
  std::string molecule;  // registry name or path to a .mol file
  Engine engine = Engine::unitary;
  Frame frame = Frame::weak;
  PrepSpec prep;
  std::vector<PulseStep> pulses;
  TimeGrid grid;
  std::map<std::string, double> reset_override;  // label -> rate, 1/s
  std::vector<Output> outputs;
  std::uint64_t seed = 1;
  long n_traj = 100000;
  std::optional<OTOCSpec> otoc;
  std::optional<LightconeSpec> lightcone;
  double budget_s = 120.0;
  std::string provenance;
  bool qualitative = false;
  std::string source_text;  // the exact text this config was parsed from
};

ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin);
ScenarioConfig load_scenario_file(const std::string& path);

/// Built-in scenario registry, stable order.
const std::vector<ScenarioConfig>& scenario_registry();
ScenarioConfig scenario_get(const std::string& name);
/// Resolves a name or a config-file path.
ScenarioConfig resolve_scenario(const std::string& name_or_path);
std::string list_scenarios_text();

struct RunOptions {
  std::string outdir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<long> n_traj;
  std::optional<std::vector<Output>> outputs;
};

struct RunManifest {
  std::string scenario;
  std::string molecule;
  std::string engine;
  std::string code_version;
  std::uint64_t seed = 0;
  long n_traj = 0;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
  std::string config_text;

  std::string to_json() const;
};

/// Executes preparation, evolution, and the requested observables; writes
/// one file per output plus <name>-manifest.json under opts.outdir.
RunManifest run_scenario(const ScenarioConfig& config, const RunOptions& opts);

/// Recomputes the digests recorded in a manifest against the files next
/// to it; true when everything matches.
bool verify_run_manifest(const std::string& manifest_path);

}  // namespace spinbath
