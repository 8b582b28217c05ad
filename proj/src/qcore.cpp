#include "spinbath/qcore.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace spinbath {

SpinSpace SpinSpace::make(int n_sites, int dense_cap) {
  std::vector<std::string> labels(static_cast<size_t>(std::max(n_sites, 0)));
  for (int i = 0; i < n_sites; ++i) labels[i] = "s" + std::to_string(i);
  SpinSpace s;
  s.site_labels = std::move(labels);
  s.n_sites = n_sites;
  s.dense_cap = dense_cap;
  if (n_sites < 1) fail(ErrorCode::invalid_argument, "SpinSpace needs >= 1 site");
  if (n_sites > dense_cap)
    fail(ErrorCode::capacity, "dense space of " + std::to_string(n_sites) +
                                  " sites exceeds cap " +
                                  std::to_string(dense_cap));
  s.dim = 1L << n_sites;
  return s;
}

SpinSpace SpinSpace::make(std::vector<std::string> labels, int dense_cap) {
  SpinSpace s = make(static_cast<int>(labels.size()), dense_cap);
  s.site_labels = std::move(labels);
  return s;
}

Operator::Operator(SpinSpace s, Matrix m) : space(std::move(s)), entries(std::move(m)) {
  if (entries.rows() != entries.cols() || entries.rows() != space.dim)
    fail(ErrorCode::invalid_argument, "operator entries do not match space dimension");
}

DensityMatrix DensityMatrix::make(SpinSpace s, Matrix m) {
  DensityMatrix rho;
  rho.space = std::move(s);
  rho.entries = std::move(m);
  if (rho.entries.rows() != rho.entries.cols() ||
      rho.entries.rows() != rho.space.dim)
    fail(ErrorCode::invalid_argument, "density matrix does not match space dimension");
  rho.validate();
  return rho;
}

DensityMatrix DensityMatrix::make_unchecked(SpinSpace s, Matrix m) {
  DensityMatrix rho;
  rho.space = std::move(s);
  rho.entries = std::move(m);
  if (rho.entries.rows() != rho.entries.cols() ||
      rho.entries.rows() != rho.space.dim)
    fail(ErrorCode::invalid_argument, "density matrix does not match space dimension");
  return rho;
}

void DensityMatrix::validate(double herm_tol, double trace_tol,
                             double eig_floor) const {
  if (!is_hermitian(entries, herm_tol))
    fail(ErrorCode::numeric, "density matrix is not Hermitian within tolerance");
  if (std::abs(entries.trace() - Complex{1.0, 0.0}) > trace_tol)
    fail(ErrorCode::numeric, "density matrix trace deviates from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < eig_floor)
    fail(ErrorCode::numeric,
         "density matrix has eigenvalue below tolerance: " +
             std::to_string(es.eigenvalues().minCoeff()));
}

const Matrix& pauli_x() {
  static const Matrix m = [] {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
  }();
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m = [] {
    Matrix y(2, 2);
    y << Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0};
    return y;
  }();
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = [] {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
  }();
  return m;
}

const Matrix& identity2() {
  static const Matrix m = Matrix::Identity(2, 2);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  std::vector<std::string> labels = a.space.site_labels;
  labels.insert(labels.end(), b.space.site_labels.begin(),
                b.space.site_labels.end());
  SpinSpace s = SpinSpace::make(std::move(labels),
                                std::max(a.space.dense_cap, b.space.dense_cap));
  return Operator(std::move(s), kron(a.entries, b.entries));
}

Operator embed(const Matrix& single_site, int site, const SpinSpace& space) {
  if (single_site.rows() != 2 || single_site.cols() != 2)
    fail(ErrorCode::invalid_argument, "embed expects a 2x2 operator");
  if (site < 0 || site >= space.n_sites)
    fail(ErrorCode::invalid_argument,
         "embed site " + std::to_string(site) + " out of range");
  const long left = 1L << site;
  const long right = 1L << (space.n_sites - 1 - site);
  Matrix m = Matrix::Zero(space.dim, space.dim);
  // Block structure of I_left (x) op (x) I_right, written out directly.
  for (long l = 0; l < left; ++l) {
    const long base = l * 2 * right;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (single_site(a, b) == Complex{0, 0}) continue;
        for (long r = 0; r < right; ++r)
          m(base + a * right + r, base + b * right + r) = single_site(a, b);
      }
  }
  return Operator(space, std::move(m));
}

Matrix partial_trace(const Matrix& m, const SpinSpace& space,
                     const std::vector<int>& keep) {
  if (keep.empty()) fail(ErrorCode::invalid_argument, "keep set is empty");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::unique(kept.begin(), kept.end()) != kept.end())
    fail(ErrorCode::invalid_argument, "keep set has duplicates");
  for (int s : kept)
    if (s < 0 || s >= space.n_sites)
      fail(ErrorCode::invalid_argument, "keep site out of range");

  const int nk = static_cast<int>(kept.size());
  const int ne = space.n_sites - nk;
  std::vector<int> traced;
  for (int s = 0; s < space.n_sites; ++s)
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);

  const long dk = 1L << nk;
  const long de = 1L << ne;
  // Full index from (kept bits, environment bits), both big-endian in their
  // own sub-orderings.
  auto full_index = [&](long k_idx, long e_idx) {
    long idx = 0;
    for (int i = 0; i < nk; ++i)
      idx |= static_cast<long>((k_idx >> (nk - 1 - i)) & 1L)
             << (space.n_sites - 1 - kept[static_cast<size_t>(i)]);
    for (int i = 0; i < ne; ++i)
      idx |= static_cast<long>((e_idx >> (ne - 1 - i)) & 1L)
             << (space.n_sites - 1 - traced[static_cast<size_t>(i)]);
    return idx;
  };

  Matrix out = Matrix::Zero(dk, dk);
  for (long a = 0; a < dk; ++a)
    for (long b = 0; b < dk; ++b) {
      Complex acc{0, 0};
      for (long e = 0; e < de; ++e) acc += m(full_index(a, e), full_index(b, e));
      out(a, b) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  Matrix out = partial_trace(rho.entries, rho.space, keep);
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  std::vector<std::string> labels;
  for (int s : kept) labels.push_back(rho.space.site_labels[static_cast<size_t>(s)]);
  return DensityMatrix::make_unchecked(
      SpinSpace::make(std::move(labels), rho.space.dense_cap), std::move(out));
}

Matrix hermitian_expm(const Matrix& h, double t) {
  if (!is_hermitian(h, 1e-10))
    fail(ErrorCode::invalid_argument, "hermitian_expm: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  Vector phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    phases(i) = std::exp(Complex{0, -vals(i) * t});
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Operator hermitian_expm(const Operator& h, double t) {
  return Operator(h.space, hermitian_expm(h.entries, t));
}

double trace_norm(const Matrix& m) {
  if (is_hermitian(m, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!a.space.same_shape(b.space))
    fail(ErrorCode::invalid_argument, "trace_distance: dimension mismatch");
  return 0.5 * trace_norm(a.entries - b.entries);
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const Operator& op) { return operator_norm(op.entries); }

}  // namespace spinbath
