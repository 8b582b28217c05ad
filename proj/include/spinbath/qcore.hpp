#pragma once

#include <string>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

/// Default cap on dense multi-spin spaces (8192-dimensional).
inline constexpr int kDefaultDenseCap = 13;

/// Tensor-product structure of an n-site spin-1/2 register.
/// Site 0 is the leftmost factor: basis index bit (n_sites-1-site) holds
/// the state of `site` (big-endian site ordering throughout).
struct SpinSpace {
  int n_sites = 0;
  long dim = 0;
  std::vector<std::string> site_labels;
  int dense_cap = kDefaultDenseCap;

  static SpinSpace make(int n_sites, int dense_cap = kDefaultDenseCap);
  static SpinSpace make(std::vector<std::string> labels,
                        int dense_cap = kDefaultDenseCap);

  bool same_shape(const SpinSpace& other) const {
    return n_sites == other.n_sites && dim == other.dim;
  }
  /// 0/1 value of `site` within basis index `idx`.
  int bit(long idx, int site) const {
    return static_cast<int>((idx >> (n_sites - 1 - site)) & 1L);
  }
};

/// Dense operator on a SpinSpace.
struct Operator {
  SpinSpace space;
  Matrix entries;

  Operator() = default;
  Operator(SpinSpace s, Matrix m);
};

/// Trace-one positive Hermitian operator; validated on construction
/// via make() (Hermiticity 1e-10, trace 1e-10, min eigenvalue >= -1e-9).
struct DensityMatrix {
  SpinSpace space;
  Matrix entries;

  DensityMatrix() = default;
  static DensityMatrix make(SpinSpace s, Matrix m);
  /// Skips the eigenvalue check; used on evolution hot paths where
  /// positivity is guaranteed by construction or checked separately.
  static DensityMatrix make_unchecked(SpinSpace s, Matrix m);
  void validate(double herm_tol = 1e-10, double trace_tol = 1e-10,
                double eig_floor = -1e-9) const;
};

// Pauli matrices and the 2x2 identity.
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
const Matrix& identity2();

/// Kronecker product with a (b) as the slow (fast) index block.
Matrix kron(const Matrix& a, const Matrix& b);

/// a (x) b; site labels concatenate, result checked against the dense cap.
Operator tensor_product(const Operator& a, const Operator& b);

/// Embeds a single-site 2x2 operator at `site`, identity elsewhere.
Operator embed(const Matrix& single_site, int site, const SpinSpace& space);

/// Partial trace keeping `keep` (original site indices, any order; the
/// result is ordered by ascending site index).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);
Matrix partial_trace(const Matrix& m, const SpinSpace& space,
                     const std::vector<int>& keep);

/// U = exp(-i h t) via Hermitian eigendecomposition; unitary to round-off.
Matrix hermitian_expm(const Matrix& h, double t);
Operator hermitian_expm(const Operator& h, double t);

/// D(a,b) = (1/2) sum of singular values of a-b, in [0,1].
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Trace norm ||m||_1 = sum of singular values.
double trace_norm(const Matrix& m);

/// Largest singular value.
double operator_norm(const Matrix& m);
double operator_norm(const Operator& op) ;

}  // namespace spinbath
