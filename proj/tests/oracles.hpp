// Independent reference implementations used as test oracles. These stay
// deliberately separate from the library's computational paths: matrix
// exponentials go through the Pade scaling-and-squaring route, Lindblad
// references use a fixed-step RK4, and reduced states come from explicit
// index loops.

#pragma once

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinbath/qcore.hpp"

namespace oracle {

using spinbath::Complex;
using spinbath::Matrix;

/// exp(-i h t) via Pade scaling-and-squaring.
inline Matrix expm_pade(const Matrix& h, double t) {
  const Matrix a = Complex{0, -1} * h * t;
  return a.exp();
}

/// U rho0 U^dag at time t under Hamiltonian h.
inline Matrix evolve(const Matrix& h, const Matrix& rho0, double t) {
  const Matrix u = expm_pade(h, t);
  return u * rho0 * u.adjoint();
}

/// Partial trace by explicit index loops, big-endian site order.
inline Matrix reduce(const Matrix& rho, int n_sites, const std::vector<int>& keep) {
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  std::vector<int> traced;
  for (int s = 0; s < n_sites; ++s)
    if (std::find(kept.begin(), kept.end(), s) == kept.end()) traced.push_back(s);
  const int nk = static_cast<int>(kept.size());
  const int ne = static_cast<int>(traced.size());
  const long dk = 1L << nk, de = 1L << ne;
  auto full = [&](long k_idx, long e_idx) {
    long idx = 0;
    for (int i = 0; i < nk; ++i)
      idx |= ((k_idx >> (nk - 1 - i)) & 1L) << (n_sites - 1 - kept[i]);
    for (int i = 0; i < ne; ++i)
      idx |= ((e_idx >> (ne - 1 - i)) & 1L) << (n_sites - 1 - traced[i]);
    return idx;
  };
  Matrix out = Matrix::Zero(dk, dk);
  for (long a = 0; a < dk; ++a)
    for (long b = 0; b < dk; ++b)
      for (long e = 0; e < de; ++e) out(a, b) += rho(full(a, e), full(b, e));
  return out;
}

/// Fixed-step RK4 for drho/dt = f(t, rho).
inline Matrix rk4(const std::function<Matrix(double, const Matrix&)>& f,
                  Matrix rho, double t0, double t1, int steps) {
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int i = 0; i < steps; ++i) {
    const Matrix k1 = f(t, rho);
    const Matrix k2 = f(t + h / 2, rho + (h / 2) * k1);
    const Matrix k3 = f(t + h / 2, rho + (h / 2) * k2);
    const Matrix k4 = f(t + h, rho + h * k3);
    rho += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
  }
  return rho;
}

/// Lindblad right-hand side built directly from the definition.
inline std::function<Matrix(double, const Matrix&)> lindblad_rhs(
    const Matrix& h, const std::vector<Matrix>& ops,
    const std::vector<std::function<double(double)>>& rates) {
  return [&h, ops, rates](double t, const Matrix& rho) {
    Matrix out = Complex{0, -1} * (h * rho - rho * h);
    for (size_t i = 0; i < ops.size(); ++i) {
      const double g = rates[i](t);
      const Matrix& a = ops[i];
      out += g * (a * rho * a.adjoint() -
                  0.5 * (a.adjoint() * a * rho + rho * a.adjoint() * a));
    }
    return out;
  };
}

/// Telegraph dephasing kernel by direct integration of the two-component
/// ODE f' = -i(j/2) m, m' = -i(j/2) f - r m.
inline double telegraph_by_ode(double j, double rate, double t, int steps = 4000) {
  Matrix state(2, 1);
  state << 1.0, 0.0;
  auto f = [&](double, const Matrix& s) {
    Matrix d(2, 1);
    d(0, 0) = Complex{0, -j / 2} * s(1, 0);
    d(1, 0) = Complex{0, -j / 2} * s(0, 0) - rate * s(1, 0);
    return d;
  };
  state = rk4(f, state, 0.0, t, steps);
  return state(0, 0).real();
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0, 1)(gen);
  }
  double normal() { return std::normal_distribution<double>(0, 1)(gen); }
  Complex cnormal() { return {normal(), normal()}; }
};

inline Matrix random_matrix(Rng& rng, long dim) {
  Matrix m(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) m(i, j) = rng.cnormal();
  return m;
}

inline Matrix random_hermitian(Rng& rng, long dim) {
  const Matrix m = random_matrix(rng, dim);
  return 0.5 * (m + m.adjoint().eval());
}

inline Matrix random_density(Rng& rng, long dim) {
  const Matrix m = random_matrix(rng, dim);
  Matrix rho = m * m.adjoint();
  return rho / rho.trace();
}

inline Matrix random_unitary(Rng& rng, long dim) {
  const Matrix m = random_matrix(rng, dim);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace oracle
