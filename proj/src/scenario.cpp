#include "spinbath/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "spinbath/config.hpp"

namespace spinbath {

namespace {
constexpr const char* kVersion = "0.1.0";
}

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::unitary: return "unitary";
    case Engine::lindblad: return "lindblad";
    case Engine::reset_mc: return "reset-mc";
    default: return "factorized";
  }
}

Engine parse_engine(const std::string& s) {
  if (s == "unitary") return Engine::unitary;
  if (s == "lindblad") return Engine::lindblad;
  if (s == "reset-mc") return Engine::reset_mc;
  if (s == "factorized") return Engine::factorized;
  fail(ErrorCode::config, "unknown engine '" + s + "'");
}

std::string output_name(Output o) {
  switch (o) {
    case Output::fid: return "fid";
    case Output::spectrum: return "spectrum";
    case Output::channel: return "channel";
    case Output::blp: return "blp";
    case Output::otoc: return "otoc";
    default: return "lightcone";
  }
}

Output parse_output(const std::string& s) {
  if (s == "fid") return Output::fid;
  if (s == "spectrum") return Output::spectrum;
  if (s == "channel") return Output::channel;
  if (s == "blp") return Output::blp;
  if (s == "otoc") return Output::otoc;
  if (s == "lightcone") return Output::lightcone;
  fail(ErrorCode::config, "unknown output '" + s + "'");
}

namespace {

PauliAxis parse_axis(const std::string& s) {
  if (s == "x") return PauliAxis::x;
  if (s == "y") return PauliAxis::y;
  if (s == "z") return PauliAxis::z;
  fail(ErrorCode::config, "unknown Pauli axis '" + s + "'");
}

Frame parse_frame(const std::string& s) {
  if (s == "weak") return Frame::weak;
  if (s == "lab") return Frame::lab;
  fail(ErrorCode::config, "unknown frame '" + s + "'");
}

bool parse_bool(const std::string& s, const std::string& context) {
  if (s == "true") return true;
  if (s == "false") return false;
  fail(ErrorCode::config, context + ": expected true/false, got '" + s + "'");
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text,
                                   const std::string& origin) {
  const ConfigDoc doc = parse_config_text(text, origin);
  ScenarioConfig cfg;
  cfg.source_text = text;

  const ConfigSection& head = doc.require("scenario");
  cfg.name = head.get("name");
  cfg.molecule = head.get("molecule");
  cfg.engine = parse_engine(head.get("engine"));
  cfg.frame = parse_frame(head.get_or("frame", "weak"));
  for (const std::string& tok : split_list(head.get_or("outputs", "fid")))
    cfg.outputs.push_back(parse_output(tok));
  cfg.seed = head.get_u64_or("seed", 1);
  cfg.n_traj = head.get_long_or("n_traj", 100000);
  cfg.budget_s = head.get_double_or("budget_s", 120.0);
  cfg.provenance = head.get_or("provenance", "");
  cfg.qualitative = parse_bool(head.get_or("qualitative", "false"), cfg.name);
  if (cfg.n_traj < 1) fail(ErrorCode::config, cfg.name + ": n_traj must be >= 1");

  const ConfigSection& grid = doc.require("grid");
  cfg.grid = TimeGrid::make(grid.get_double("t0_s"), grid.get_double("t1_s"),
                            static_cast<int>(grid.get_long("steps")));

  if (const ConfigSection* prep = doc.find("prep")) {
    const std::string type = prep->get_or("type", "thermal");
    if (type == "thermal") {
      cfg.prep.type = PrepSpec::Type::thermal;
    } else if (type == "line-selected") {
      cfg.prep.type = PrepSpec::Type::line_selected;
      cfg.prep.select = prep->get("select");
    } else {
      fail(ErrorCode::config, cfg.name + ": unknown prep type '" + type + "'");
    }
  }

  for (const ConfigSection* pulse : doc.all("pulse")) {
    PulseStep step;
    step.beta = pulse->get_double("beta_rad");
    step.phi = pulse->get_double("phi_rad");
    step.targets = split_list(pulse->get("targets"));
    if (step.targets.empty())
      fail(ErrorCode::config, cfg.name + ": pulse without targets");
    cfg.pulses.push_back(std::move(step));
  }

  if (const ConfigSection* reset = doc.find("reset")) {
    for (const auto& [label, value] : reset->kv) {
      const double rate = parse_double(value, cfg.name + " reset " + label);
      if (rate < 0) fail(ErrorCode::config, cfg.name + ": negative reset rate");
      cfg.reset_override[label] = rate;
    }
  }

  if (const ConfigSection* o = doc.find("otoc")) {
    OTOCSpec spec;
    spec.w_site = o->get("w_site");
    spec.v_site = o->get("v_site");
    spec.w_axis = parse_axis(o->get_or("w_axis", "z"));
    spec.v_axis = parse_axis(o->get_or("v_axis", "z"));
    cfg.otoc = spec;
  }

  if (const ConfigSection* l = doc.find("lightcone")) {
    LightconeSpec spec;
    spec.source = l->get_or("source", "");
    spec.source_axis = parse_axis(l->get_or("source_axis", "x"));
    spec.probe_axis = parse_axis(l->get_or("probe_axis", "z"));
    spec.eps = l->get_double_or("eps", 0.01);
    cfg.lightcone = spec;
  }

  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  return parse_scenario_text(read_text_file(path), path);
}

// Texts live in registry_scenarios.cpp.
const std::vector<std::pair<std::string, std::string>>& builtin_scenarios();

const std::vector<ScenarioConfig>& scenario_registry() {
  static const std::vector<ScenarioConfig> configs = [] {
    std::vector<ScenarioConfig> out;
    for (const auto& [name, text] : builtin_scenarios()) {
      out.push_back(parse_scenario_text(text, "builtin:" + name));
      if (out.back().name != name)
        fail(ErrorCode::config, "registry name mismatch for " + name);
    }
    return out;
  }();
  return configs;
}

ScenarioConfig scenario_get(const std::string& name) {
  for (const ScenarioConfig& cfg : scenario_registry())
    if (cfg.name == name) return cfg;
  fail(ErrorCode::config, "unknown scenario '" + name + "'");
}

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
  if (name_or_path.find('/') != std::string::npos ||
      (name_or_path.size() > 5 &&
       name_or_path.substr(name_or_path.size() - 5) == ".conf"))
    return load_scenario_file(name_or_path);
  return scenario_get(name_or_path);
}

std::string list_scenarios_text() {
  std::ostringstream out;
  size_t w_name = 4, w_engine = 6, w_mol = 8;
  for (const ScenarioConfig& c : scenario_registry()) {
    w_name = std::max(w_name, c.name.size());
    w_engine = std::max(w_engine, engine_name(c.engine).size());
    w_mol = std::max(w_mol, c.molecule.size());
  }
  auto pad = [](const std::string& s, size_t w) {
    return s + std::string(w - s.size() + 2, ' ');
  };
  out << pad("name", w_name) << pad("engine", w_engine)
      << pad("molecule", w_mol) << pad("budget_s", 8) << "notes\n";
  for (const ScenarioConfig& c : scenario_registry()) {
    std::string notes = c.provenance;
    if (c.qualitative) notes = "[qualitative] " + notes;
    std::ostringstream budget;
    budget << c.budget_s;
    out << pad(c.name, w_name) << pad(engine_name(c.engine), w_engine)
        << pad(c.molecule, w_mol) << pad(budget.str(), 8) << notes << "\n";
  }
  return out.str();
}

namespace {

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm_utc;
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

Molecule resolve_molecule(const std::string& ref) {
  if (ref.find('/') != std::string::npos ||
      (ref.size() > 4 && ref.substr(ref.size() - 4) == ".mol"))
    return load_molecule_file(ref);
  return registry_get(ref);
}

bool wants(const std::vector<Output>& outputs, Output o) {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

Matrix single_site_diag(double p0, double p1) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = p0;
  m(1, 1) = p1;
  return m;
}

/// Per-active-site 2x2 factors of the prepared product state.
std::vector<Matrix> prep_factors(const Molecule& m, const ScenarioConfig& cfg) {
  const std::vector<int> act = m.active_sites();
  std::vector<Matrix> f(act.size(), 0.5 * identity2());
  const int sys = m.active_index(m.system_site);
  f[static_cast<size_t>(sys)] = single_site_diag(1.0, 0.0);
  if (cfg.prep.type == PrepSpec::Type::line_selected) {
    const int sel = m.active_index(m.site_by_label(cfg.prep.select));
    if (sel < 0) fail(ErrorCode::config, cfg.name + ": selector site decoupled");
    f[static_cast<size_t>(sel)] = single_site_diag(0.0, 1.0);
  }
  for (const PulseStep& ps : cfg.pulses) {
    const Matrix gate = rotation_gate(ps.beta, ps.phi);
    for (const std::string& label : ps.targets) {
      const int idx = m.active_index(m.site_by_label(label));
      if (idx < 0)
        fail(ErrorCode::config, cfg.name + ": pulse target " + label +
                                    " is decoupled");
      f[static_cast<size_t>(idx)] = gate * f[static_cast<size_t>(idx)] *
                                    gate.adjoint();
    }
  }
  return f;
}

DensityMatrix assemble_product(const Molecule& m,
                               const std::vector<Matrix>& factors) {
  Matrix acc = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) acc = kron(acc, factors[i]);
  std::vector<std::string> labels;
  for (int s : m.active_sites())
    labels.push_back(m.sites[static_cast<size_t>(s)].label);
  return DensityMatrix::make_unchecked(SpinSpace::make(std::move(labels)),
                                       std::move(acc));
}

std::vector<LindbladTerm> reset_lindblad_terms(const Molecule& m,
                                               const SpinSpace& space) {
  // Equal-weight raising/lowering jumps at rate/2 reproduce a Poisson
  // reset to the fair +-z mixture.
  std::vector<LindbladTerm> terms;
  Matrix sp = Matrix::Zero(2, 2);
  sp(0, 1) = 1.0;
  Matrix sm = sp.adjoint();
  const std::vector<int> act = m.active_sites();
  for (size_t i = 0; i < act.size(); ++i) {
    if (act[i] == m.system_site) continue;
    const double rate = m.sites[static_cast<size_t>(act[i])].reset_rate;
    if (rate <= 0) continue;
    terms.push_back(LindbladTerm::fixed(embed(sp, static_cast<int>(i), space),
                                        0.5 * rate));
    terms.push_back(LindbladTerm::fixed(embed(sm, static_cast<int>(i), space),
                                        0.5 * rate));
  }
  return terms;
}

struct FactorizedSpec {
  std::vector<double> j;
  ResetModel reset{{}, {}};
};

FactorizedSpec factorized_spec(const Molecule& m) {
  // Ancilla-ancilla zz couplings commute with every term the system spin
  // sees under the diagonal Hamiltonian and drop out of its reduced
  // dynamics, so only the system-ancilla couplings enter the kernel.
  FactorizedSpec spec;
  for (int s : m.active_sites()) {
    if (s == m.system_site) continue;
    const double j = m.couplings.get(m.system_site, s);
    if (j == 0.0) continue;
    spec.j.push_back(j);
    spec.reset.rates.push_back(m.sites[static_cast<size_t>(s)].reset_rate);
    spec.reset.p_up.push_back(0.5);
  }
  return spec;
}

void require_standard_prep(const ScenarioConfig& cfg, const Molecule& m) {
  const std::string& sys_label =
      m.sites[static_cast<size_t>(m.system_site)].label;
  const bool ok =
      cfg.prep.type == PrepSpec::Type::thermal && cfg.pulses.size() == 1 &&
      std::abs(cfg.pulses[0].beta - M_PI / 2) < 1e-12 &&
      std::abs(cfg.pulses[0].phi - M_PI / 2) < 1e-12 &&
      cfg.pulses[0].targets == std::vector<std::string>{sys_label};
  if (!ok)
    fail(ErrorCode::engine,
         cfg.name + ": the factorized engine requires the standard "
                    "thermal + pi/2 system preparation");
}

SuperMap dephasing_map(Complex g, double t) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = std::conj(g);  // |1><0| component
  m(2, 2) = g;             // |0><1| component
  m(3, 3) = 1.0;
  return SuperMap{std::move(m), t, 2};
}

std::vector<DensityMatrix> tomography_inputs() {
  SpinSpace one = SpinSpace::make(1);
  auto state = [&](const Matrix& m) {
    return DensityMatrix::make_unchecked(one, m);
  };
  Matrix plus(2, 2), plus_i(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  plus_i << 0.5, Complex{0, -0.5}, Complex{0, 0.5}, 0.5;
  return {state(single_site_diag(1, 0)), state(single_site_diag(0, 1)),
          state(plus), state(plus_i)};
}

}  // namespace

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["molecule"] = molecule;
  j["engine"] = engine;
  j["code_version"] = code_version;
  j["seed"] = seed;
  j["n_traj"] = n_traj;
  j["started_utc"] = started_utc;
  j["finished_utc"] = finished_utc;
  j["warnings"] = warnings;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& [path, digest] : outputs)
    files.push_back({{"file", path}, {"fnv1a64", digest}});
  j["outputs"] = files;
  j["config"] = config_text;
  return j.dump(2) + "\n";
}

RunManifest run_scenario(const ScenarioConfig& config, const RunOptions& opts) {
  RunManifest manifest;
  manifest.started_utc = now_utc();
  manifest.scenario = config.name;
  manifest.code_version = kVersion;
  manifest.config_text = config.source_text;
  manifest.engine = engine_name(config.engine);
  manifest.seed = opts.seed.value_or(config.seed);
  manifest.n_traj = opts.n_traj.value_or(config.n_traj);
  const std::vector<Output> outputs = opts.outputs.value_or(config.outputs);
  if (outputs.empty()) fail(ErrorCode::config, config.name + ": no outputs");

  Molecule mol = resolve_molecule(config.molecule);
  for (const auto& [label, rate] : config.reset_override)
    mol.sites[static_cast<size_t>(mol.site_by_label(label))].reset_rate = rate;
  mol.finalize();
  manifest.molecule = mol.name;
  manifest.warnings = mol.weak_coupling_warnings;

  const TimeGrid& grid = config.grid;
  const int sys_idx = mol.active_index(mol.system_site);
  const double sys_rate =
      mol.sites[static_cast<size_t>(mol.system_site)].reset_rate;
  if (sys_rate > 0 && config.engine != Engine::unitary)
    manifest.warnings.push_back(
        mol.name + ": system reset rate " + format_g17(sys_rate) +
        " /s is outside the dephasing model and ignored by the engine");

  const bool needs_fid =
      wants(outputs, Output::fid) || wants(outputs, Output::spectrum);
  const bool needs_channel =
      wants(outputs, Output::channel) || wants(outputs, Output::blp);

  FIDRecord fid_record;
  std::vector<SuperMap> maps;

  if (needs_fid || needs_channel) {
    FIDMeta meta{config.name, engine_name(config.engine), manifest.seed};
    if (config.engine == Engine::factorized) {
      if (config.frame != Frame::weak)
        fail(ErrorCode::engine,
             config.name + ": factorized engine runs in the weak frame only");
      require_standard_prep(config, mol);
      const FactorizedSpec spec = factorized_spec(mol);
      fid_record = evolve_factorized(spec.j, spec.reset, grid);
      fid_record.meta = meta;
    } else {
      const std::vector<Matrix> factors = prep_factors(mol, config);
      const DensityMatrix state0 = assemble_product(mol, factors);
      const Operator h = config.frame == Frame::lab ? hamiltonian_lab(mol)
                                                    : hamiltonian_weak(mol);
      auto run_reduced = [&](const DensityMatrix& full0) {
        switch (config.engine) {
          case Engine::unitary:
            return evolve_unitary_reduced(full0, h, grid, {sys_idx});
          case Engine::lindblad:
            return evolve_lindblad_reduced(
                full0, h, reset_lindblad_terms(mol, h.space), grid, {sys_idx});
          default:
            return evolve_reset_mc(full0, h, sys_idx,
                                   ResetModel::from_molecule(mol), grid,
                                   manifest.n_traj, manifest.seed);
        }
      };
      const std::vector<DensityMatrix> reduced = run_reduced(state0);
      fid_record = fid(reduced, grid, meta);

      if (needs_channel) {
        if (config.engine == Engine::reset_mc) {
          // The sampled phase ensemble is independent of the system state,
          // so the run's own coherence ratio is the exact sampled channel.
          const Complex s0 = fid_record.s[0];
          if (std::abs(s0) < 1e-12)
            fail(ErrorCode::config,
                 config.name + ": channel output needs nonzero S(0)");
          for (int k = 0; k < grid.points(); ++k)
            maps.push_back(dephasing_map(
                fid_record.s[static_cast<size_t>(k)] / s0, grid.t(k)));
        } else {
          const std::vector<DensityMatrix> inputs = tomography_inputs();
          std::vector<std::vector<DensityMatrix>> trajectories;
          for (const DensityMatrix& in : inputs) {
            std::vector<Matrix> f = factors;
            f[static_cast<size_t>(sys_idx)] = in.entries;
            trajectories.push_back(run_reduced(assemble_product(mol, f)));
          }
          maps = tomograph(inputs, trajectories, grid);
        }
      }
    }
    if (config.engine == Engine::factorized && needs_channel) {
      const Complex s0 = fid_record.s[0];
      for (int k = 0; k < grid.points(); ++k)
        maps.push_back(
            dephasing_map(fid_record.s[static_cast<size_t>(k)] / s0, grid.t(k)));
    }
  }

  namespace fs = std::filesystem;
  fs::create_directories(opts.outdir);
  auto emit = [&](const std::string& suffix, const std::string& content) {
    const std::string filename = config.name + "-" + suffix;
    write_text_file((fs::path(opts.outdir) / filename).string(), content);
    manifest.outputs.emplace_back(filename, fnv1a64_hex(content));
  };

  for (const Output o : outputs) {
    switch (o) {
      case Output::fid:
        emit("fid.csv", fid_csv(fid_record));
        break;
      case Output::spectrum:
        emit("spectrum.csv", spectrum_csv(spectrum(fid_record)));
        break;
      case Output::channel:
        emit("channel.json", channel_json(maps));
        break;
      case Output::blp: {
        const BLPResult blp = blp_measure(maps, antipodal_pair_grid(62));
        if (blp.nyquist_warning)
          manifest.warnings.push_back(
              config.name +
              ": BLP increments alternate at the grid scale; refine the grid");
        emit("blp.csv", blp_csv(grid, blp));
        emit("blp.json", blp_summary_json(blp));
        break;
      }
      case Output::otoc: {
        if (!config.otoc)
          fail(ErrorCode::config, config.name + ": otoc output needs [otoc]");
        const Operator h = config.frame == Frame::lab ? hamiltonian_lab(mol)
                                                      : hamiltonian_weak(mol);
        auto pauli = [](PauliAxis a) -> const Matrix& {
          return a == PauliAxis::x ? pauli_x()
                                   : (a == PauliAxis::y ? pauli_y() : pauli_z());
        };
        const Operator w =
            embed(pauli(config.otoc->w_axis),
                  mol.active_index(mol.site_by_label(config.otoc->w_site)),
                  h.space);
        const Operator v =
            embed(pauli(config.otoc->v_axis),
                  mol.active_index(mol.site_by_label(config.otoc->v_site)),
                  h.space);
        std::vector<OTOCResult> rows;
        for (int k = 0; k < grid.points(); ++k)
          rows.push_back(otoc(h, w, v, grid.t(k) - grid.t0));
        emit("otoc.csv", otoc_csv(grid, rows));
        break;
      }
      case Output::lightcone: {
        if (!config.lightcone)
          fail(ErrorCode::config,
               config.name + ": lightcone output needs [lightcone]");
        const int source = config.lightcone->source.empty()
                               ? mol.system_site
                               : mol.site_by_label(config.lightcone->source);
        const std::vector<ArrivalRow> rows =
            lightcone(mol, source, config.lightcone->source_axis,
                      config.lightcone->probe_axis, mol.active_sites(), grid,
                      config.lightcone->eps, config.frame);
        emit("lightcone.csv", lightcone_csv(mol, rows));
        break;
      }
    }
  }

  manifest.finished_utc = now_utc();
  const std::string mpath =
      (fs::path(opts.outdir) / (config.name + "-manifest.json")).string();
  write_text_file(mpath, manifest.to_json());
  return manifest;
}

bool verify_run_manifest(const std::string& manifest_path) {
  const nlohmann::json j = nlohmann::json::parse(read_text_file(manifest_path));
  const std::filesystem::path dir =
      std::filesystem::path(manifest_path).parent_path();
  for (const auto& entry : j.at("outputs")) {
    const std::string file = entry.at("file").get<std::string>();
    const std::string digest = entry.at("fnv1a64").get<std::string>();
    std::string content;
    try {
      content = read_text_file((dir / file).string());
    } catch (const Error&) {
      return false;
    }
    if (fnv1a64_hex(content) != digest) return false;
  }
  return true;
}

}  // namespace spinbath
