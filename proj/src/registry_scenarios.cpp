#include <string>
#include <utility>
#include <vector>

namespace spinbath {

// Built-in experiment descriptions, in listing order. Angles are rad;
// 1.5707963267948966 is pi/2.
const std::vector<std::pair<std::string, std::string>>& builtin_scenarios() {
  static const std::vector<std::pair<std::string, std::string>> defs = {
      {"chloroform", R"(
[scenario]
name = chloroform
molecule = chloroform
engine = unitary
outputs = fid, spectrum
budget_s = 10
provenance = heteronuclear two-spin FID; cosine decay-revival with a 215 Hz doublet

[grid]
t0_s = 0.0
t1_s = 0.05
steps = 2000

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = c
)"},
      {"chloroform-reset", R"(
[scenario]
name = chloroform-reset
molecule = chloroform-reset
engine = lindblad
outputs = fid
budget_s = 60
provenance = two-spin collision model with a resetting ancilla, Lindblad route

[grid]
t0_s = 0.0
t1_s = 0.05
steps = 499

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = c
)"},
      {"chloroform-reset-mc", R"(
[scenario]
name = chloroform-reset-mc
molecule = chloroform-reset
engine = reset-mc
outputs = fid
seed = 7
n_traj = 100000
budget_s = 60
provenance = two-spin collision model with a resetting ancilla, telegraph Monte Carlo route

[grid]
t0_s = 0.0
t1_s = 0.05
steps = 499

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = c
)"},
      {"tms-pure", R"(
[scenario]
name = tms-pure
molecule = tms
engine = factorized
outputs = fid, spectrum
budget_s = 10
provenance = undoped TMS; repeated information backflow with ten-plus FID revivals

[grid]
t0_s = 0.0
t1_s = 1.6
steps = 3200

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = si
)"},
      {"tms-19mM", R"(
[scenario]
name = tms-19mM
molecule = tms-19mM
engine = factorized
outputs = fid
budget_s = 30
provenance = 19 mM doping; a single weak revival survives near the crossover

[grid]
t0_s = 0.0
t1_s = 0.5
steps = 2000

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = si
)"},
      {"tms-40mM", R"(
[scenario]
name = tms-40mM
molecule = tms-40mM
engine = factorized
outputs = fid
budget_s = 30
provenance = 40 mM doping; Markovian side of the crossover, no visible revival

[grid]
t0_s = 0.0
t1_s = 0.5
steps = 2000

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = si
)"},
      {"dss-decoupled", R"(
[scenario]
name = dss-decoupled
molecule = dss-decoupled
engine = unitary
outputs = fid
budget_s = 10
provenance = DSS with decoupled hydrogens; the isolated silicon FID stays constant in this model

[grid]
t0_s = 0.0
t1_s = 1.0
steps = 1000

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = si
)"},
      {"dss-full", R"(
[scenario]
name = dss-full
molecule = dss
engine = factorized
outputs = fid
budget_s = 30
qualitative = true
provenance = DSS with all spins active; fast collapse then a small revival near 0.3 s

[grid]
t0_s = 0.0
t1_s = 0.6
steps = 2400

[prep]
type = thermal

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = si
)"},
      {"transcrotonic-decoupled", R"(
[scenario]
name = transcrotonic-decoupled
molecule = transcrotonic-decoupled
engine = unitary
outputs = fid, spectrum
budget_s = 60
provenance = carbon-only network after a line-selective soft pulse; large revivals

[grid]
t0_s = 0.0
t1_s = 1.5
steps = 3000

[prep]
type = line-selected
select = c2

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = c1
)"},
      {"transcrotonic-full", R"(
[scenario]
name = transcrotonic-full
molecule = transcrotonic
engine = unitary
outputs = fid, spectrum
budget_s = 60
qualitative = true
provenance = full nine-spin network; more environment freedom, smaller revivals

[grid]
t0_s = 0.0
t1_s = 1.5
steps = 3000

[prep]
type = line-selected
select = c2

[pulse]
beta_rad = 1.5707963267948966
phi_rad = 1.5707963267948966
targets = c1
)"},
      {"otoc-chain3", R"(
[scenario]
name = otoc-chain3
molecule = chain3
engine = unitary
frame = lab
outputs = otoc
budget_s = 30
provenance = operator-spreading correlator across a three-site chain

[grid]
t0_s = 0.0
t1_s = 0.4
steps = 400

[otoc]
w_site = a
w_axis = x
v_site = c
v_axis = z
)"},
      {"lightcone-chain6", R"(
[scenario]
name = lightcone-chain6
molecule = chain6
engine = unitary
frame = lab
outputs = lightcone
budget_s = 60
provenance = commutator-norm light cone on a six-site chain

[grid]
t0_s = 0.0
t1_s = 0.25
steps = 500

[lightcone]
source = s0
source_axis = x
probe_axis = z
eps = 0.01
)"},
  };
  return defs;
}

}  // namespace spinbath
