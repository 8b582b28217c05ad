#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinbath/molecule.hpp"
#include "spinbath/qcore.hpp"

namespace spinbath {

/// Inclusive uniform grid of steps+1 points on [t0, t1].
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  int steps = 0;

  static TimeGrid make(double t0, double t1, int steps);
  int points() const { return steps + 1; }
  double dt() const { return (t1 - t0) / steps; }
  double t(int k) const { return t0 + dt() * k; }
};

/// One dissipator gamma (A rho A^dag - {A^dag A, rho}/2). The fixed branch
/// requires gamma >= 0; a time-dependent rate may go negative.
struct LindbladTerm {
  Operator a;
  double gamma = 0.0;
  std::function<double(double)> gamma_t;  // set => time-dependent branch

  static LindbladTerm fixed(Operator a, double gamma);
  static LindbladTerm time_dependent(Operator a,
                                     std::function<double(double)> gamma_t);
  double rate(double t) const { return gamma_t ? gamma_t(t) : gamma; }
};

/// Poisson reset channel per active site: at rate `rates[i]` the spin is
/// replaced by +z with probability p_up[i] (default 1/2), independent of
/// history. The system site's own rate is outside this model and ignored
/// by the engines.
struct ResetModel {
  std::vector<double> rates;
  std::vector<double> p_up;

  static ResetModel none(int n_sites);
  static ResetModel from_molecule(const Molecule& m);
  void validate() const;
};

struct FIDMeta {
  std::string scenario;
  std::string engine;
  std::uint64_t seed = 0;
};

/// Complex FID S(t) = Tr((sx + i sy) rho_1(t)) with the trace distance
/// D(rho_1(t), I/2) per point.
struct FIDRecord {
  TimeGrid grid;
  std::vector<Complex> s;
  std::vector<double> trace_dist;
  FIDMeta meta;
};

using StateObserver =
    std::function<void(int k, double t, const DensityMatrix& rho)>;

/// rho(t_k) = U_k rho0 U_k^dag, U_k = exp(-i h (t_k - t0)). Recomputed
/// from rho0 at every point, so round-off does not accumulate.
void evolve_unitary(const DensityMatrix& rho0, const Operator& h,
                    const TimeGrid& grid, const StateObserver& observe);
std::vector<DensityMatrix> evolve_unitary_reduced(const DensityMatrix& rho0,
                                                  const Operator& h,
                                                  const TimeGrid& grid,
                                                  const std::vector<int>& keep);

struct LindbladOptions {
  double step_tol = 1e-9;        // per-step max-abs truncation error
  double trace_drift_tol = 1e-10;  // per-step trace deviation
  double positivity_floor = -1e-6;  // checked at grid points
};

struct LindbladDiagnostics {
  // Times where a time-dependent rate changed sign, per term.
  std::vector<std::vector<double>> gamma_sign_changes;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/// Integrates drho/dt = -i[h,rho] + sum_i gamma_i (A rho A^dag -
/// {A^dag A, rho}/2) with an adaptive embedded Runge-Kutta 5(4) pair,
/// Hermitizing after each accepted step.
void evolve_lindblad(const DensityMatrix& rho0, const Operator& h,
                     const std::vector<LindbladTerm>& terms,
                     const TimeGrid& grid, const StateObserver& observe,
                     const LindbladOptions& opts = {},
                     LindbladDiagnostics* diag = nullptr);
std::vector<DensityMatrix> evolve_lindblad_reduced(
    const DensityMatrix& rho0, const Operator& h,
    const std::vector<LindbladTerm>& terms, const TimeGrid& grid,
    const std::vector<int>& keep, const LindbladOptions& opts = {});

/// Telegraph Monte Carlo for the diagonal (sz sz) Hamiltonian form: each
/// non-system spin is a classical +-1 telegraph reset at Poisson times;
/// the system coherence accumulates phase sum_k J_k z_k(t)/2. Returns the
/// trajectory of the reduced system state averaged over n_traj samples.
/// Deterministic in (seed, n_traj) regardless of execution order;
/// trajectory i uses an RNG derived from seed ^ i.
std::vector<DensityMatrix> evolve_reset_mc(const DensityMatrix& rho0,
                                           const Operator& h_weak,
                                           int system_index,
                                           const ResetModel& reset,
                                           const TimeGrid& grid, long n_traj,
                                           std::uint64_t seed);

/// Exact dephasing factor of one telegraph ancilla with coupling j and
/// fair resets at Poisson rate `rate`: the solution of
///   f' = -i(j/2) m,  m' = -i(j/2) f - rate m,  f(0)=1, m(0)=0,
/// which reduces to cos(j t / 2) at rate 0.
double telegraph_kernel(double j, double rate, double t);

/// S(t) = prod_k f_k(t) for mutually uncoupled, initially maximally mixed
/// ancillas; exact, no sampling noise. j and reset rates are per ancilla.
FIDRecord evolve_factorized(const std::vector<double>& j_per_ancilla,
                            const ResetModel& reset, const TimeGrid& grid);

/// FID from a trajectory of single-spin reduced states.
FIDRecord fid(const std::vector<DensityMatrix>& reduced, const TimeGrid& grid,
              FIDMeta meta = {});

struct SpectrumRow {
  double freq_hz;
  Complex amp;
};

/// Discrete Fourier transform of S(t), amplitudes normalized by 1/N,
/// rows sorted by ascending frequency in Hz.
std::vector<SpectrumRow> spectrum(const FIDRecord& f);

struct OTOCResult {
  Complex f;            // <W_tau^dag V^dag W_tau V>
  Complex f_two_path;   // <O_B^dag O_F>, must agree with f
  double comm_sq;       // <|[W_tau, V]|^2> = 2 (1 - Re f)
  bool non_unitary_warning = false;
};

/// Out-of-time-order correlator at delay tau; expectation defaults to the
/// maximally mixed state.
OTOCResult otoc(const Operator& h, const Operator& w, const Operator& v,
                double tau, const DensityMatrix* state = nullptr);

enum class Frame { lab, weak };

struct ArrivalRow {
  int site;            // original site index
  int distance;        // graph distance from the source
  double arrival_t;    // first grid time with norm > eps; NaN if never
  std::vector<double> norms;  // ||[O1(t), O2]|| per grid point
};

enum class PauliAxis { x, y, z };

/// Commutator-norm light cone: O1 = sigma_axis at source, O2 = sigma_axis
/// at each probe, evolving O1 in the Heisenberg picture under the chosen
/// frame's Hamiltonian.
std::vector<ArrivalRow> lightcone(const Molecule& m, int source_site,
                                  PauliAxis source_axis, PauliAxis probe_axis,
                                  const std::vector<int>& probe_sites,
                                  const TimeGrid& grid, double eps = 0.01,
                                  Frame frame = Frame::lab);

/// Revivals per the |S| threshold rule: a local maximum above `rise`
/// counted only after |S| has dropped below `floor` since the last count.
int count_revivals(const std::vector<Complex>& s, double rise = 0.02,
                   double floor = 0.01);

/// |S| at the first local maximum after the first local minimum;
/// 0 when |S| decays without any rebound.
double first_revival_amplitude(const std::vector<Complex>& s);

}  // namespace spinbath
