#pragma once

#include <array>
#include <vector>

#include "spinbath/dynamics.hpp"
#include "spinbath/qcore.hpp"

namespace spinbath {

/// Column-major vectorization: vec(A rho B) = (B^T (x) A) vec(rho).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, long dim);

/// Linear map on vectorized density matrices at one instant.
struct SuperMap {
  Matrix m;       // dim^2 x dim^2
  double t = 0.0;
  long dim = 0;

  Matrix apply(const Matrix& rho) const;
  static SuperMap identity(long dim, double t = 0.0);
  /// rho -> u rho u^dag.
  static SuperMap conjugation(const Matrix& u, double t = 0.0);
  /// Qubit map (x, y, z) -> (fx x, fy y, fz z) in Bloch coordinates.
  static SuperMap bloch_scaling(double fx, double fy, double fz, double t = 0.0);
  /// Leaves Tr invariant on a Hermitian basis within tol.
  bool trace_preserving(double tol = 1e-10) const;
};

/// Operator-sum representation; trace preservation is the
/// sum_i K_i^dag K_i = I convention.
struct KrausChannel {
  std::vector<Matrix> kraus_ops;
  double t = 0.0;
  long dim = 0;

  Matrix apply(const Matrix& rho) const;
  /// ||sum K^dag K - I||_max.
  double completeness_defect() const;
};

struct DivisibilityVerdict {
  double s = 0.0;
  double t = 0.0;
  bool defined = true;  // false when phi_s is numerically singular
  bool p_divisible = false;
  bool cp_divisible = false;
  double min_choi_eig = 0.0;
  double min_output_eig = 0.0;
  double condition_number = 0.0;
};

/// Weighted state pair whose distinguishability ||phi(Delta)|| drives the
/// BLP measure; Delta = p rho1 - (1-p) rho2.
struct StatePair {
  double p = 0.5;
  DensityMatrix rho1, rho2;

  Matrix delta() const;
};

StatePair make_state_pair(double p, DensityMatrix rho1, DensityMatrix rho2);

/// Reconstructs the supermap trajectory from reduced trajectories of a
/// spanning input set (dim^2 linearly independent initial states).
std::vector<SuperMap> tomograph(
    const std::vector<DensityMatrix>& inputs,
    const std::vector<std::vector<DensityMatrix>>& trajectories,
    const TimeGrid& grid);

/// Choi matrix C = sum_ij |i><j| (x) Phi(|i><j|); CP iff C >= 0.
Matrix choi_matrix(const SuperMap& map);

/// Raised by to_kraus when the Choi matrix has an eigenvalue below the CP
/// tolerance, as happens for the intermediate maps of non-Markovian
/// dynamics.
class NotCompletelyPositive : public Error {
 public:
  NotCompletelyPositive(double min_eig, const std::string& what)
      : Error(ErrorCode::numeric, what), min_choi_eig(min_eig) {}
  double min_choi_eig;
};

KrausChannel to_kraus(const SuperMap& map, double cp_tol = 1e-9,
                      double weight_cutoff = 1e-10);

struct DivideResult {
  SuperMap phi_ts;
  DivisibilityVerdict verdict;
};

/// Phi_{t,s} = Phi_t Phi_s^{-1} with the CP verdict from the Choi spectrum
/// and the P verdict from the minimum output eigenvalue over a sphere of
/// pure inputs. Returns verdict.defined = false instead of extrapolating
/// when cond(Phi_s) exceeds cond_limit (qubit maps only).
DivideResult divide(const SuperMap& phi_t, const SuperMap& phi_s,
                    int sphere_directions = 62, double cond_limit = 1e12);

struct BLPResult {
  double n = 0.0;
  StatePair best_pair;
  std::vector<double> d_opt;   // ||Phi_t Delta|| for the optimizing pair
  std::vector<double> sigma;   // centered-difference derivative of d_opt
  bool nyquist_warning = false;
};

/// Evenly spread unit vectors (Fibonacci sphere).
std::vector<std::array<double, 3>> fibonacci_directions(int n);
/// Pure state (I + u.sigma)/2.
DensityMatrix bloch_state(const std::array<double, 3>& u);
/// Default BLP search set: p = 1/2 antipodal pure pairs on a Fibonacci
/// grid plus the coordinate axes.
std::vector<StatePair> antipodal_pair_grid(int directions = 62);
/// Exhaustive small-grid search set over (p, rho1, rho2) for verification.
std::vector<StatePair> exhaustive_pair_grid(int directions, int p_steps);

/// N = max over pairs of the summed positive increments of ||Phi_t Delta||.
BLPResult blp_measure(const std::vector<SuperMap>& maps,
                      const std::vector<StatePair>& pairs);

}  // namespace spinbath
