#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinbath/qcore.hpp"

namespace spinbath {

/// One spin-1/2 nucleus. omega0 is the chemical-shift offset in the
/// species' own rotating frame, rad/s. reset_rate = 1/T1 (0 = no reset).
struct SpinSite {
  std::string label;
  std::string species;  // e.g. "H1", "C13", "Si29"
  double omega0 = 0.0;
  double reset_rate = 0.0;
};

/// Symmetric J-coupling table, rad/s; absent entries are zero.
class CouplingTable {
 public:
  void set(int j, int k, double value);
  double get(int j, int k) const;
  const std::map<std::pair<int, int>, double>& entries() const { return j_; }

 private:
  std::map<std::pair<int, int>, double> j_;  // keyed with first < second
};

struct PulseSpec {
  double beta = 0.0;  // rotation angle, rad
  double phi = 0.0;   // phase from the x-axis, rad
  std::vector<int> targets;  // original site indices
};

struct Molecule {
  std::string name;
  std::vector<SpinSite> sites;
  CouplingTable couplings;
  int system_site = 0;
  std::vector<bool> decoupled;  // sized like sites
  std::vector<std::string> weak_coupling_warnings;

  int n_sites() const { return static_cast<int>(sites.size()); }
  /// Non-decoupled sites, ascending original index.
  std::vector<int> active_sites() const;
  /// Position of an original site within active_sites(), or -1.
  int active_index(int site) const;
  int site_by_label(const std::string& label) const;

  /// Checks structural invariants and records weak-coupling warnings
  /// (|omega_lab_j - omega_lab_k| <= 10|J| for a coupled pair).
  void finalize();
};

/// Base Larmor frequency (rad/s, at the reference field) for known
/// species; 0 for unknown species, which makes the weak-coupling check
/// fall back to the stored offsets alone.
double species_base_frequency(const std::string& species);

/// H = sum_j w0_j sz_j/2 + sum_{j<k} J_jk (sx sx + sy sy + sz sz)_jk / 4
/// over active sites.
Operator hamiltonian_lab(const Molecule& m);

/// Weak-coupling (secular) form: H = sum_{j<k} J_jk sz_j sz_k / 4 over
/// active sites; diagonal in the computational basis.
Operator hamiltonian_weak(const Molecule& m);

/// rho_th = (I/2)^n + sum_j eps_j sz_j / 2^n over active sites.
/// Default polarization: 1 on the system site, 0 elsewhere.
DensityMatrix thermal_state(const Molecule& m);
DensityMatrix thermal_state(const Molecule& m,
                            const std::vector<double>& eps_active);

/// State after a line-selective experiment before the read-out pulse:
/// diag(1,0) on the system site, diag(0,1) on select_site, I/2 elsewhere.
DensityMatrix line_selected_state(const Molecule& m, int select_site);

/// Single-site rotation matrix R(beta, phi) = exp(-i beta (cos phi sx +
/// sin phi sy)/2).
Matrix rotation_gate(double beta, double phi);

/// Applies R(beta,phi) on every target site: rho -> R rho R^dag.
DensityMatrix apply_pulse(const DensityMatrix& rho, const Molecule& m,
                          const PulseSpec& p);

/// Ideal soft pulse: apply_pulse restricted to one site.
DensityMatrix selective_pulse(const DensityMatrix& rho, const Molecule& m,
                              int site, double beta, double phi);

/// Built-in molecule registry (chloroform, tms*, dss*, transcrotonic*, ...).
/// A directory named by SPINBATH_MOLECULES overrides/extends it with
/// <name>.mol files.
Molecule registry_get(const std::string& name);
std::vector<std::string> molecule_registry_names();
Molecule load_molecule_file(const std::string& path);
Molecule parse_molecule_text(const std::string& text,
                             const std::string& fallback_name);

}  // namespace spinbath
