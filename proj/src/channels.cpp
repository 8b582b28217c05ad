#include "spinbath/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace spinbath {

Vector vec(const Matrix& m) {
  Vector v(m.size());
  long idx = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v(idx++) = m(i, j);
  return v;
}

Matrix unvec(const Vector& v, long dim) {
  if (v.size() != dim * dim)
    fail(ErrorCode::invalid_argument, "unvec: size mismatch");
  Matrix m(dim, dim);
  long idx = 0;
  for (long j = 0; j < dim; ++j)
    for (long i = 0; i < dim; ++i) m(i, j) = v(idx++);
  return m;
}

Matrix SuperMap::apply(const Matrix& rho) const {
  if (rho.rows() != dim || rho.cols() != dim)
    fail(ErrorCode::invalid_argument, "SuperMap::apply: dimension mismatch");
  return unvec(m * vec(rho), dim);
}

SuperMap SuperMap::identity(long dim, double t) {
  return SuperMap{Matrix::Identity(dim * dim, dim * dim), t, dim};
}

SuperMap SuperMap::conjugation(const Matrix& u, double t) {
  const long dim = u.rows();
  return SuperMap{kron(u.conjugate(), u), t, dim};
}

SuperMap SuperMap::bloch_scaling(double fx, double fy, double fz, double t) {
  // rho = (I + r.sigma)/2  ->  (I + (fx rx, fy ry, fz rz).sigma)/2
  Matrix m = Matrix::Zero(4, 4);
  const std::array<const Matrix*, 4> basis = {&identity2(), &pauli_x(),
                                              &pauli_y(), &pauli_z()};
  const std::array<double, 4> scale = {1.0, fx, fy, fz};
  for (int b = 0; b < 4; ++b) {
    const Vector in = vec(*basis[static_cast<size_t>(b)]);
    const Vector out = scale[static_cast<size_t>(b)] * in;
    // Accumulate |out><in| / <in|in>.
    m += out * in.adjoint() / in.squaredNorm();
  }
  return SuperMap{std::move(m), t, 2};
}

bool SuperMap::trace_preserving(double tol) const {
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      Matrix e = Matrix::Zero(dim, dim);
      // Hermitian basis element.
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = e(j, i) = 0.5;
      }
      const Complex tr_in = e.trace();
      const Complex tr_out = apply(e).trace();
      if (std::abs(tr_out - tr_in) > tol) return false;
    }
  return true;
}

Matrix KrausChannel::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (const Matrix& k : kraus_ops) out += k * rho * k.adjoint();
  return out;
}

double KrausChannel::completeness_defect() const {
  Matrix acc = Matrix::Zero(dim, dim);
  for (const Matrix& k : kraus_ops) acc += k.adjoint() * k;
  return max_abs(acc - Matrix::Identity(dim, dim));
}

Matrix StatePair::delta() const {
  return p * rho1.entries - (1.0 - p) * rho2.entries;
}

StatePair make_state_pair(double p, DensityMatrix rho1, DensityMatrix rho2) {
  if (!(p >= 0.0 && p <= 1.0))
    fail(ErrorCode::invalid_argument, "StatePair weight must be in [0,1]");
  if (!rho1.space.same_shape(rho2.space))
    fail(ErrorCode::invalid_argument, "StatePair states must share a space");
  return StatePair{p, std::move(rho1), std::move(rho2)};
}

std::vector<SuperMap> tomograph(
    const std::vector<DensityMatrix>& inputs,
    const std::vector<std::vector<DensityMatrix>>& trajectories,
    const TimeGrid& grid) {
  if (inputs.empty() || trajectories.size() != inputs.size())
    fail(ErrorCode::invalid_argument, "tomograph: inputs/trajectories mismatch");
  const long dim = inputs[0].space.dim;
  const long d2 = dim * dim;
  if (static_cast<long>(inputs.size()) < d2)
    fail(ErrorCode::invalid_argument,
         "tomograph: need dim^2 spanning input states");
  for (const auto& traj : trajectories)
    if (static_cast<int>(traj.size()) != grid.points())
      fail(ErrorCode::invalid_argument, "tomograph: trajectory length mismatch");

  Matrix v_in(d2, static_cast<long>(inputs.size()));
  for (size_t i = 0; i < inputs.size(); ++i)
    v_in.col(static_cast<long>(i)) = vec(inputs[i].entries);
  Eigen::FullPivLU<Matrix> lu(v_in * v_in.adjoint());
  if (!lu.isInvertible())
    fail(ErrorCode::invalid_argument, "tomograph: rank-deficient input set");
  // Least-squares reconstruction, exact when inputs number exactly dim^2.
  const Matrix pinv = v_in.adjoint() * lu.inverse();

  std::vector<SuperMap> maps;
  maps.reserve(static_cast<size_t>(grid.points()));
  for (int k = 0; k < grid.points(); ++k) {
    Matrix v_out(d2, static_cast<long>(inputs.size()));
    for (size_t i = 0; i < inputs.size(); ++i)
      v_out.col(static_cast<long>(i)) =
          vec(trajectories[i][static_cast<size_t>(k)].entries);
    maps.push_back(SuperMap{v_out * pinv, grid.t(k), dim});
  }
  return maps;
}

Matrix choi_matrix(const SuperMap& map) {
  const long d = map.dim;
  Matrix c(d * d, d * d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      // Phi(|i><j|) = unvec of column (j*d + i).
      const Matrix block = unvec(map.m.col(j * d + i), d);
      c.block(i * d, j * d, d, d) = block;
    }
  return c;
}

KrausChannel to_kraus(const SuperMap& map, double cp_tol, double weight_cutoff) {
  Matrix c = choi_matrix(map);
  c = 0.5 * (c + c.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -cp_tol)
    throw NotCompletelyPositive(
        min_eig, "to_kraus: map is not completely positive (min Choi eigenvalue " +
                     std::to_string(min_eig) + ")");
  KrausChannel ch;
  ch.t = map.t;
  ch.dim = map.dim;
  for (long a = 0; a < es.eigenvalues().size(); ++a) {
    const double lam = es.eigenvalues()(a);
    if (lam <= weight_cutoff) continue;
    ch.kraus_ops.push_back(std::sqrt(lam) *
                           unvec(es.eigenvectors().col(a), map.dim));
  }
  return ch;
}

DivideResult divide(const SuperMap& phi_t, const SuperMap& phi_s,
                    int sphere_directions, double cond_limit) {
  if (phi_t.dim != phi_s.dim)
    fail(ErrorCode::invalid_argument, "divide: dimension mismatch");
  if (phi_t.dim != 2)
    fail(ErrorCode::invalid_argument, "divide: implemented for qubit maps");
  DivideResult out;
  out.verdict.s = phi_s.t;
  out.verdict.t = phi_t.t;

  Eigen::JacobiSVD<Matrix> svd(phi_s.m);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  out.verdict.condition_number =
      smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(out.verdict.condition_number < cond_limit)) {
    out.verdict.defined = false;
    out.phi_ts = SuperMap{Matrix::Zero(4, 4), phi_t.t, 2};
    return out;
  }

  out.phi_ts = SuperMap{phi_t.m * phi_s.m.inverse(), phi_t.t, 2};

  Matrix c = choi_matrix(out.phi_ts);
  c = 0.5 * (c + c.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  out.verdict.min_choi_eig = es.eigenvalues().minCoeff();
  out.verdict.cp_divisible = out.verdict.min_choi_eig >= -1e-9;

  double min_out = std::numeric_limits<double>::infinity();
  auto probe = [&](const std::array<double, 3>& u) {
    Matrix rho_out = out.phi_ts.apply(bloch_state(u).entries);
    rho_out = 0.5 * (rho_out + rho_out.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> o(rho_out, Eigen::EigenvaluesOnly);
    min_out = std::min(min_out, o.eigenvalues().minCoeff());
  };
  for (const auto& u : fibonacci_directions(sphere_directions)) probe(u);
  probe({1, 0, 0});
  probe({-1, 0, 0});
  probe({0, 1, 0});
  probe({0, -1, 0});
  probe({0, 0, 1});
  probe({0, 0, -1});
  out.verdict.min_output_eig = min_out;
  out.verdict.p_divisible = min_out >= -1e-9;
  return out;
}

std::vector<std::array<double, 3>> fibonacci_directions(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "need at least one direction");
  std::vector<std::array<double, 3>> out;
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    out.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

DensityMatrix bloch_state(const std::array<double, 3>& u) {
  Matrix m = 0.5 * (identity2() + u[0] * pauli_x() + u[1] * pauli_y() +
                    u[2] * pauli_z());
  return DensityMatrix::make_unchecked(SpinSpace::make(1), std::move(m));
}

std::vector<StatePair> antipodal_pair_grid(int directions) {
  std::vector<std::array<double, 3>> dirs = fibonacci_directions(directions);
  dirs.push_back({1, 0, 0});
  dirs.push_back({0, 1, 0});
  dirs.push_back({0, 0, 1});
  std::vector<StatePair> pairs;
  for (const auto& u : dirs)
    pairs.push_back(make_state_pair(0.5, bloch_state(u),
                                    bloch_state({-u[0], -u[1], -u[2]})));
  return pairs;
}

std::vector<StatePair> exhaustive_pair_grid(int directions, int p_steps) {
  const auto dirs = fibonacci_directions(directions);
  std::vector<StatePair> pairs;
  for (size_t a = 0; a < dirs.size(); ++a)
    for (size_t b = 0; b < dirs.size(); ++b) {
      if (a == b) continue;
      for (int q = 1; q < p_steps; ++q) {
        const double p = static_cast<double>(q) / p_steps;
        pairs.push_back(
            make_state_pair(p, bloch_state(dirs[a]), bloch_state(dirs[b])));
      }
    }
  return pairs;
}

BLPResult blp_measure(const std::vector<SuperMap>& maps,
                      const std::vector<StatePair>& pairs) {
  if (maps.size() < 2)
    fail(ErrorCode::invalid_argument, "blp_measure: need at least two maps");
  if (pairs.empty())
    fail(ErrorCode::invalid_argument, "blp_measure: empty search set");
  const int points = static_cast<int>(maps.size());
  // The trajectory must sit on a uniform grid for the finite differences.
  const double dt = maps[1].t - maps[0].t;
  for (int k = 1; k < points; ++k)
    if (std::abs((maps[static_cast<size_t>(k)].t -
                  maps[static_cast<size_t>(k - 1)].t) -
                 dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      fail(ErrorCode::invalid_argument, "blp_measure: non-uniform map grid");

  BLPResult best;
  best.n = -1.0;
  std::vector<double> d(static_cast<size_t>(points));
  for (const StatePair& pair : pairs) {
    const Matrix delta = pair.delta();
    for (int k = 0; k < points; ++k)
      d[static_cast<size_t>(k)] =
          trace_norm(maps[static_cast<size_t>(k)].apply(delta));
    double n = 0.0;
    for (int k = 1; k < points; ++k) {
      const double rise = d[static_cast<size_t>(k)] - d[static_cast<size_t>(k - 1)];
      if (rise > 0) n += rise;
    }
    if (n > best.n) {
      best.n = n;
      best.best_pair = pair;
      best.d_opt = d;
    }
  }

  best.sigma.assign(static_cast<size_t>(points), 0.0);
  for (int k = 0; k < points; ++k) {
    if (k == 0)
      best.sigma[0] = (best.d_opt[1] - best.d_opt[0]) / dt;
    else if (k == points - 1)
      best.sigma[static_cast<size_t>(k)] =
          (best.d_opt[static_cast<size_t>(k)] -
           best.d_opt[static_cast<size_t>(k - 1)]) /
          dt;
    else
      best.sigma[static_cast<size_t>(k)] =
          (best.d_opt[static_cast<size_t>(k + 1)] -
           best.d_opt[static_cast<size_t>(k - 1)]) /
          (2 * dt);
  }

  // Sign alternation of the increments at nearly every step means the
  // backflow episodes are unresolved by this grid.
  int alternations = 0, moves = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (int k = 1; k < points; ++k) {
    const double rise =
        best.d_opt[static_cast<size_t>(k)] - best.d_opt[static_cast<size_t>(k - 1)];
    if (std::abs(rise) < 1e-12) continue;
    if (have_prev) {
      ++moves;
      if (rise * prev < 0) ++alternations;
    }
    prev = rise;
    have_prev = true;
  }
  best.nyquist_warning = moves >= 8 && alternations > moves / 2;
  return best;
}

}  // namespace spinbath
