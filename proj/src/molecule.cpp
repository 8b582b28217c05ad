#include "spinbath/molecule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spinbath/config.hpp"

namespace spinbath {

void CouplingTable::set(int j, int k, double value) {
  if (j == k) fail(ErrorCode::invalid_argument, "coupling requires j != k");
  if (j < 0 || k < 0) fail(ErrorCode::invalid_argument, "negative site index");
  auto key = std::minmax(j, k);
  if (value == 0.0)
    j_.erase({key.first, key.second});
  else
    j_[{key.first, key.second}] = value;
}

double CouplingTable::get(int j, int k) const {
  if (j == k) return 0.0;
  auto key = std::minmax(j, k);
  auto it = j_.find({key.first, key.second});
  return it == j_.end() ? 0.0 : it->second;
}

std::vector<int> Molecule::active_sites() const {
  std::vector<int> out;
  for (int i = 0; i < n_sites(); ++i)
    if (!decoupled[static_cast<size_t>(i)]) out.push_back(i);
  return out;
}

int Molecule::active_index(int site) const {
  int pos = 0;
  for (int i = 0; i < n_sites(); ++i) {
    if (decoupled[static_cast<size_t>(i)]) continue;
    if (i == site) return pos;
    ++pos;
  }
  return -1;
}

int Molecule::site_by_label(const std::string& label) const {
  for (int i = 0; i < n_sites(); ++i)
    if (sites[static_cast<size_t>(i)].label == label) return i;
  fail(ErrorCode::config, name + ": no site labeled '" + label + "'");
}

double species_base_frequency(const std::string& species) {
  // Reference Larmor frequencies at 11.74 T, MHz. Only inter-species
  // separations matter; magnitudes are used (gyromagnetic signs dropped).
  struct Entry { const char* species; double mhz; };
  static const Entry table[] = {
      {"H1", 500.13}, {"C13", 125.77}, {"Si29", 99.36},
      {"F19", 470.59}, {"N15", 50.69}, {"P31", 202.45},
  };
  for (const auto& e : table)
    if (species == e.species) return e.mhz * 1e6 * kTwoPi;
  return 0.0;
}

void Molecule::finalize() {
  if (sites.empty()) fail(ErrorCode::config, name + ": no sites");
  if (decoupled.empty()) decoupled.assign(sites.size(), false);
  if (decoupled.size() != sites.size())
    fail(ErrorCode::config, name + ": decoupled mask size mismatch");
  if (system_site < 0 || system_site >= n_sites())
    fail(ErrorCode::config, name + ": system site out of range");
  if (decoupled[static_cast<size_t>(system_site)])
    fail(ErrorCode::config, name + ": system site is decoupled");
  for (const auto& s : sites)
    if (s.reset_rate < 0)
      fail(ErrorCode::config, name + ": negative reset rate on " + s.label);

  weak_coupling_warnings.clear();
  for (const auto& [pair, j] : couplings.entries()) {
    auto [a, b] = pair;
    if (b >= n_sites())
      fail(ErrorCode::config, name + ": coupling references missing site");
    if (decoupled[static_cast<size_t>(a)] || decoupled[static_cast<size_t>(b)])
      continue;
    const SpinSite& sa = sites[static_cast<size_t>(a)];
    const SpinSite& sb = sites[static_cast<size_t>(b)];
    const double wa = species_base_frequency(sa.species) + sa.omega0;
    const double wb = species_base_frequency(sb.species) + sb.omega0;
    if (std::abs(wa - wb) <= 10.0 * std::abs(j)) {
      std::ostringstream msg;
      msg << name << ": pair (" << sa.label << "," << sb.label
          << ") violates the weak-coupling condition |dw| > 10|J|";
      weak_coupling_warnings.push_back(msg.str());
    }
  }
}

namespace {

SpinSpace active_space(const Molecule& m) {
  std::vector<std::string> labels;
  for (int s : m.active_sites())
    labels.push_back(m.sites[static_cast<size_t>(s)].label);
  return SpinSpace::make(std::move(labels));
}

}  // namespace

Operator hamiltonian_lab(const Molecule& m) {
  const std::vector<int> act = m.active_sites();
  SpinSpace space = active_space(m);
  Matrix h = Matrix::Zero(space.dim, space.dim);
  for (size_t i = 0; i < act.size(); ++i) {
    const double w0 = m.sites[static_cast<size_t>(act[i])].omega0;
    if (w0 != 0.0)
      h += 0.5 * w0 * embed(pauli_z(), static_cast<int>(i), space).entries;
  }
  for (size_t i = 0; i < act.size(); ++i)
    for (size_t k = i + 1; k < act.size(); ++k) {
      const double j = m.couplings.get(act[i], act[k]);
      if (j == 0.0) continue;
      const Matrix xx = embed(pauli_x(), static_cast<int>(i), space).entries *
                        embed(pauli_x(), static_cast<int>(k), space).entries;
      const Matrix yy = embed(pauli_y(), static_cast<int>(i), space).entries *
                        embed(pauli_y(), static_cast<int>(k), space).entries;
      const Matrix zz = embed(pauli_z(), static_cast<int>(i), space).entries *
                        embed(pauli_z(), static_cast<int>(k), space).entries;
      h += (j / 4.0) * (xx + yy + zz);
    }
  return Operator(std::move(space), std::move(h));
}

Operator hamiltonian_weak(const Molecule& m) {
  const std::vector<int> act = m.active_sites();
  SpinSpace space = active_space(m);
  Matrix h = Matrix::Zero(space.dim, space.dim);
  for (long idx = 0; idx < space.dim; ++idx) {
    double e = 0.0;
    for (size_t i = 0; i < act.size(); ++i)
      for (size_t k = i + 1; k < act.size(); ++k) {
        const double j = m.couplings.get(act[i], act[k]);
        if (j == 0.0) continue;
        const double zi = space.bit(idx, static_cast<int>(i)) == 0 ? 1.0 : -1.0;
        const double zk = space.bit(idx, static_cast<int>(k)) == 0 ? 1.0 : -1.0;
        e += (j / 4.0) * zi * zk;
      }
    h(idx, idx) = e;
  }
  return Operator(std::move(space), std::move(h));
}

DensityMatrix thermal_state(const Molecule& m) {
  const std::vector<int> act = m.active_sites();
  std::vector<double> eps(act.size(), 0.0);
  for (size_t i = 0; i < act.size(); ++i)
    if (act[i] == m.system_site) eps[i] = 1.0;
  return thermal_state(m, eps);
}

DensityMatrix thermal_state(const Molecule& m,
                            const std::vector<double>& eps_active) {
  SpinSpace space = active_space(m);
  if (eps_active.size() != static_cast<size_t>(space.n_sites))
    fail(ErrorCode::invalid_argument, "thermal_state: polarization vector size");
  Matrix rho = Matrix::Zero(space.dim, space.dim);
  const double norm = 1.0 / static_cast<double>(space.dim);
  for (long idx = 0; idx < space.dim; ++idx) {
    double v = 1.0;
    for (int i = 0; i < space.n_sites; ++i)
      v += eps_active[static_cast<size_t>(i)] *
           (space.bit(idx, i) == 0 ? 1.0 : -1.0);
    rho(idx, idx) = v * norm;
  }
  return DensityMatrix::make(std::move(space), std::move(rho));
}

DensityMatrix line_selected_state(const Molecule& m, int select_site) {
  SpinSpace space = active_space(m);
  const int si = m.active_index(m.system_site);
  const int ci = m.active_index(select_site);
  if (ci < 0)
    fail(ErrorCode::invalid_argument, "line selection on a decoupled site");
  if (ci == si)
    fail(ErrorCode::invalid_argument, "line selection on the system site");
  Matrix rho = Matrix::Zero(space.dim, space.dim);
  const double mixed = 1.0 / static_cast<double>(space.dim / 4);
  for (long idx = 0; idx < space.dim; ++idx) {
    if (space.bit(idx, si) != 0) continue;  // system in |0><0|
    if (space.bit(idx, ci) != 1) continue;  // selector in |1><1|
    rho(idx, idx) = mixed;
  }
  return DensityMatrix::make(std::move(space), std::move(rho));
}

Matrix rotation_gate(double beta, double phi) {
  Matrix axis = std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y();
  return std::cos(beta / 2.0) * identity2() -
         kImag * std::sin(beta / 2.0) * axis;
}

DensityMatrix apply_pulse(const DensityMatrix& rho, const Molecule& m,
                          const PulseSpec& p) {
  const std::vector<int> act = m.active_sites();
  if (rho.space.n_sites != static_cast<int>(act.size()))
    fail(ErrorCode::invalid_argument, "apply_pulse: state/molecule mismatch");
  Matrix r = Matrix::Identity(rho.space.dim, rho.space.dim);
  const Matrix gate = rotation_gate(p.beta, p.phi);
  for (int target : p.targets) {
    const int i = m.active_index(target);
    if (target < 0 || target >= m.n_sites() || i < 0)
      fail(ErrorCode::invalid_argument,
           "pulse target " + std::to_string(target) + " decoupled or out of range");
    r = embed(gate, i, rho.space).entries * r;
  }
  Matrix out = r * rho.entries * r.adjoint();
  return DensityMatrix::make_unchecked(rho.space, std::move(out));
}

DensityMatrix selective_pulse(const DensityMatrix& rho, const Molecule& m,
                              int site, double beta, double phi) {
  PulseSpec p;
  p.beta = beta;
  p.phi = phi;
  p.targets = {site};
  return apply_pulse(rho, m, p);
}

Molecule parse_molecule_text(const std::string& text,
                             const std::string& fallback_name) {
  ConfigDoc doc = parse_config_text(text, fallback_name);
  Molecule m;
  const ConfigSection& head = doc.require("molecule");
  m.name = head.get_or("name", fallback_name);

  const ConfigSection& sites = doc.require("sites");
  for (const auto& row : sites.rows) {
    if (row.size() != 4)
      fail(ErrorCode::config,
           m.name + ": [sites] row needs 'label species omega0_hz t1_s'");
    SpinSite s;
    s.label = row[0];
    s.species = row[1];
    s.omega0 = kTwoPi * parse_double(row[2], m.name + " omega0_hz");
    const double t1 = parse_double(row[3], m.name + " t1_s");
    if (t1 < 0) fail(ErrorCode::config, m.name + ": negative t1_s");
    s.reset_rate = t1 == 0.0 ? 0.0 : 1.0 / t1;
    m.sites.push_back(std::move(s));
  }

  m.decoupled.assign(m.sites.size(), false);
  m.system_site = m.site_by_label(head.get("system"));
  if (head.has("decoupled"))
    for (const auto& label : split_list(head.get("decoupled")))
      m.decoupled[static_cast<size_t>(m.site_by_label(label))] = true;

  if (const ConfigSection* cpl = doc.find("couplings")) {
    for (const auto& row : cpl->rows) {
      if (row.size() != 3)
        fail(ErrorCode::config,
             m.name + ": [couplings] row needs 'site_a site_b j_hz'");
      const int a = m.site_by_label(row[0]);
      const int b = m.site_by_label(row[1]);
      m.couplings.set(a, b, kTwoPi * parse_double(row[2], m.name + " j_hz"));
    }
  }

  m.finalize();
  return m;
}

Molecule load_molecule_file(const std::string& path) {
  std::string base = path;
  size_t slash = base.find_last_of('/');
  if (slash != std::string::npos) base.erase(0, slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string::npos) base.erase(dot);
  return parse_molecule_text(read_text_file(path), base);
}

// Built-in definitions live in registry_molecules.cpp.
const std::vector<std::pair<std::string, std::string>>& builtin_molecules();

Molecule registry_get(const std::string& name) {
  if (const char* dir = std::getenv("SPINBATH_MOLECULES")) {
    const std::string path = std::string(dir) + "/" + name + ".mol";
    std::ifstream probe(path);
    if (probe.good()) return load_molecule_file(path);
  }
  for (const auto& [n, text] : builtin_molecules())
    if (n == name) return parse_molecule_text(text, n);
  fail(ErrorCode::config, "unknown molecule '" + name + "'");
}

std::vector<std::string> molecule_registry_names() {
  std::vector<std::string> out;
  for (const auto& [n, text] : builtin_molecules()) out.push_back(n);
  return out;
}

}  // namespace spinbath
