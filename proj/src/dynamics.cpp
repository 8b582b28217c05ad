#include "spinbath/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace spinbath {

TimeGrid TimeGrid::make(double t0, double t1, int steps) {
  if (!(t1 > t0)) fail(ErrorCode::invalid_argument, "TimeGrid requires t1 > t0");
  if (steps < 1) fail(ErrorCode::invalid_argument, "TimeGrid requires steps >= 1");
  return TimeGrid{t0, t1, steps};
}

LindbladTerm LindbladTerm::fixed(Operator a, double gamma) {
  if (gamma < 0)
    fail(ErrorCode::invalid_argument,
         "fixed-rate Lindblad term requires gamma >= 0");
  LindbladTerm t;
  t.a = std::move(a);
  t.gamma = gamma;
  return t;
}

LindbladTerm LindbladTerm::time_dependent(
    Operator a, std::function<double(double)> gamma_t) {
  if (!gamma_t) fail(ErrorCode::invalid_argument, "missing rate function");
  LindbladTerm t;
  t.a = std::move(a);
  t.gamma_t = std::move(gamma_t);
  return t;
}

ResetModel ResetModel::none(int n_sites) {
  ResetModel r;
  r.rates.assign(static_cast<size_t>(n_sites), 0.0);
  r.p_up.assign(static_cast<size_t>(n_sites), 0.5);
  return r;
}

ResetModel ResetModel::from_molecule(const Molecule& m) {
  ResetModel r;
  for (int s : m.active_sites()) {
    r.rates.push_back(m.sites[static_cast<size_t>(s)].reset_rate);
    r.p_up.push_back(0.5);
  }
  return r;
}

void ResetModel::validate() const {
  if (rates.size() != p_up.size())
    fail(ErrorCode::invalid_argument, "ResetModel vectors disagree in size");
  for (double r : rates)
    if (!(r >= 0)) fail(ErrorCode::invalid_argument, "negative reset rate");
  for (double p : p_up)
    if (!(p >= 0.0 && p <= 1.0))
      fail(ErrorCode::invalid_argument, "reset target probability outside [0,1]");
}

namespace {

void check_dims(const DensityMatrix& rho, const Operator& h,
                const char* who) {
  if (rho.space.dim != h.space.dim)
    fail(ErrorCode::invalid_argument, std::string(who) + ": dimension mismatch");
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != Complex{0, 0}) return false;
  return true;
}

}  // namespace

void evolve_unitary(const DensityMatrix& rho0, const Operator& h,
                    const TimeGrid& grid, const StateObserver& observe) {
  check_dims(rho0, h, "evolve_unitary");
  if (!is_hermitian(h.entries, 1e-10))
    fail(ErrorCode::invalid_argument, "evolve_unitary: non-Hermitian Hamiltonian");
  const long dim = rho0.space.dim;

  if (is_diagonal(h.entries)) {
    RealVector e(dim);
    for (long i = 0; i < dim; ++i) e(i) = h.entries(i, i).real();
    for (int k = 0; k < grid.points(); ++k) {
      const double tau = grid.t(k) - grid.t0;
      Matrix rho(dim, dim);
      for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
          rho(i, j) = rho0.entries(i, j) *
                      std::exp(Complex{0, -(e(i) - e(j)) * tau});
      observe(k, grid.t(k), DensityMatrix::make_unchecked(rho0.space, std::move(rho)));
    }
    return;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries);
  const Matrix& v = es.eigenvectors();
  const RealVector lam = es.eigenvalues();
  const Matrix b = v.adjoint() * rho0.entries * v;
  for (int k = 0; k < grid.points(); ++k) {
    const double tau = grid.t(k) - grid.t0;
    Matrix bt(dim, dim);
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j)
        bt(i, j) = b(i, j) * std::exp(Complex{0, -(lam(i) - lam(j)) * tau});
    Matrix rho = v * bt * v.adjoint();
    observe(k, grid.t(k), DensityMatrix::make_unchecked(rho0.space, std::move(rho)));
  }
}

std::vector<DensityMatrix> evolve_unitary_reduced(const DensityMatrix& rho0,
                                                  const Operator& h,
                                                  const TimeGrid& grid,
                                                  const std::vector<int>& keep) {
  check_dims(rho0, h, "evolve_unitary_reduced");
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<size_t>(grid.points()));

  if (is_diagonal(h.entries) && is_hermitian(h.entries, 1e-10)) {
    // Phase evolution touches only the matrix elements that survive the
    // partial trace; collect them once with their Bohr frequencies.
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    const SpinSpace& space = rho0.space;
    const int nk = static_cast<int>(kept.size());
    const int ne = space.n_sites - nk;
    if (nk == 0) fail(ErrorCode::invalid_argument, "keep set is empty");
    std::vector<int> traced;
    for (int s = 0; s < space.n_sites; ++s)
      if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
    const long dk = 1L << nk;
    const long de = 1L << ne;
    auto full_index = [&](long k_idx, long e_idx) {
      long idx = 0;
      for (int i = 0; i < nk; ++i)
        idx |= ((k_idx >> (nk - 1 - i)) & 1L)
               << (space.n_sites - 1 - kept[static_cast<size_t>(i)]);
      for (int i = 0; i < ne; ++i)
        idx |= ((e_idx >> (ne - 1 - i)) & 1L)
               << (space.n_sites - 1 - traced[static_cast<size_t>(i)]);
      return idx;
    };
    struct Term {
      long a, b;
      Complex value;
      double bohr;
    };
    std::vector<Term> terms;
    for (long a = 0; a < dk; ++a)
      for (long b = 0; b < dk; ++b)
        for (long e = 0; e < de; ++e) {
          const long ia = full_index(a, e), ib = full_index(b, e);
          const Complex v0 = rho0.entries(ia, ib);
          if (v0 == Complex{0, 0}) continue;
          terms.push_back(
              {a, b, v0, h.entries(ia, ia).real() - h.entries(ib, ib).real()});
        }
    std::vector<std::string> labels;
    for (int s : kept) labels.push_back(space.site_labels[static_cast<size_t>(s)]);
    SpinSpace red = SpinSpace::make(labels, space.dense_cap);
    for (int k = 0; k < grid.points(); ++k) {
      const double tau = grid.t(k) - grid.t0;
      Matrix r = Matrix::Zero(dk, dk);
      for (const Term& tm : terms)
        r(tm.a, tm.b) += tm.value * std::exp(Complex{0, -tm.bohr * tau});
      out.push_back(DensityMatrix::make_unchecked(red, std::move(r)));
    }
    return out;
  }

  evolve_unitary(rho0, h, grid,
                 [&](int, double, const DensityMatrix& rho) {
                   out.push_back(partial_trace(rho, keep));
                 });
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kB5[7] = {35.0 / 384,    0.0,          500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84,   0.0};
constexpr double kB4[7] = {5179.0 / 57600, 0.0,         7571.0 / 16695,
                           393.0 / 640,    -92097.0 / 339200,
                           187.0 / 2100,   1.0 / 40};

struct LindbladRHS {
  const Matrix* h;
  struct Jump {
    const LindbladTerm* term;
    Matrix a_dag;
    Matrix a_dag_a;
  };
  std::vector<Jump> jumps;

  Matrix operator()(double t, const Matrix& rho) const {
    Matrix out = Complex{0, -1} * ((*h) * rho - rho * (*h));
    for (const auto& j : jumps) {
      const double g = j.term->rate(t);
      if (g == 0.0) continue;
      out += g * (j.term->a.entries * rho * j.a_dag -
                  0.5 * (j.a_dag_a * rho + rho * j.a_dag_a));
    }
    return out;
  }
};

}  // namespace

void evolve_lindblad(const DensityMatrix& rho0, const Operator& h,
                     const std::vector<LindbladTerm>& terms,
                     const TimeGrid& grid, const StateObserver& observe,
                     const LindbladOptions& opts, LindbladDiagnostics* diag) {
  check_dims(rho0, h, "evolve_lindblad");
  if (!is_hermitian(h.entries, 1e-10))
    fail(ErrorCode::invalid_argument, "evolve_lindblad: non-Hermitian Hamiltonian");
  for (const auto& t : terms) {
    if (t.a.space.dim != rho0.space.dim)
      fail(ErrorCode::invalid_argument, "evolve_lindblad: jump operator dimension");
    if (!t.gamma_t && t.gamma < 0)
      fail(ErrorCode::invalid_argument,
           "evolve_lindblad: fixed-rate branch requires gamma >= 0");
  }

  LindbladRHS rhs;
  rhs.h = &h.entries;
  for (const auto& t : terms) {
    Matrix a_dag = t.a.entries.adjoint();
    Matrix a_dag_a = a_dag * t.a.entries;
    rhs.jumps.push_back({&t, std::move(a_dag), std::move(a_dag_a)});
  }

  if (diag) {
    diag->gamma_sign_changes.assign(terms.size(), {});
    diag->accepted_steps = diag->rejected_steps = 0;
  }
  std::vector<double> gamma_prev(terms.size());
  for (size_t i = 0; i < terms.size(); ++i) gamma_prev[i] = terms[i].rate(grid.t0);

  const double span = grid.t1 - grid.t0;
  const double h_min = span * 1e-14;
  double t = grid.t0;
  double step = grid.dt();
  Matrix y = rho0.entries;

  auto check_positive = [&](const Matrix& m, double at) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min < opts.positivity_floor)
      fail(ErrorCode::numeric,
           "evolve_lindblad: positivity violation (" + std::to_string(lam_min) +
               ") at t = " + std::to_string(at) +
               "; grid too coarse or invalid gamma(t)");
  };

  observe(0, grid.t0, DensityMatrix::make_unchecked(rho0.space, y));
  check_positive(y, grid.t0);

  Matrix k[7];
  for (int gp = 1; gp < grid.points(); ++gp) {
    const double target = grid.t(gp);
    while (t < target - h_min) {
      step = std::min(step, target - t);
      if (step < h_min)
        fail(ErrorCode::numeric, "evolve_lindblad: step-size underflow");

      k[0] = rhs(t, y);
      for (int s = 1; s < 7; ++s) {
        Matrix ys = y;
        for (int q = 0; q < s; ++q)
          if (kA[s][q] != 0.0) ys += (step * kA[s][q]) * k[q];
        k[s] = rhs(t + kC[s] * step, ys);
      }
      Matrix y5 = y;
      Matrix err = Matrix::Zero(y.rows(), y.cols());
      for (int s = 0; s < 7; ++s) {
        if (kB5[s] != 0.0) y5 += (step * kB5[s]) * k[s];
        const double d = kB5[s] - kB4[s];
        if (d != 0.0) err += (step * d) * k[s];
      }
      const double err_norm = max_abs(err);
      const double trace_drift = std::abs((y5.trace() - y.trace()));
      if (err_norm <= opts.step_tol && trace_drift <= opts.trace_drift_tol) {
        t += step;
        y = 0.5 * (y5 + y5.adjoint().eval());
        if (diag) {
          ++diag->accepted_steps;
          for (size_t i = 0; i < terms.size(); ++i) {
            const double g = terms[i].rate(t);
            if (g * gamma_prev[i] < 0.0)
              diag->gamma_sign_changes[i].push_back(t);
            if (g != 0.0) gamma_prev[i] = g;
          }
        }
      } else if (diag) {
        ++diag->rejected_steps;
      }
      const double shrink =
          err_norm > 0 ? 0.9 * std::pow(opts.step_tol / err_norm, 0.2) : 5.0;
      step *= std::clamp(shrink, 0.2, 5.0);
      if (trace_drift > opts.trace_drift_tol) step *= 0.5;
    }
    t = target;
    check_positive(y, t);
    observe(gp, target, DensityMatrix::make_unchecked(rho0.space, y));
  }
}

std::vector<DensityMatrix> evolve_lindblad_reduced(
    const DensityMatrix& rho0, const Operator& h,
    const std::vector<LindbladTerm>& terms, const TimeGrid& grid,
    const std::vector<int>& keep, const LindbladOptions& opts) {
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<size_t>(grid.points()));
  evolve_lindblad(rho0, h, terms, grid,
                  [&](int, double, const DensityMatrix& rho) {
                    out.push_back(partial_trace(rho, keep));
                  },
                  opts);
  return out;
}

namespace {

struct ZZForm {
  double constant = 0.0;
  std::vector<double> omega;             // per site, coefficient of sz/2
  std::vector<std::vector<double>> j;    // symmetric, coefficient of sz sz / 4
};

// Projects a diagonal Hamiltonian onto constant + single-z + zz terms and
// rejects anything outside that span.
ZZForm extract_zz_form(const Operator& h) {
  if (!is_diagonal(h.entries))
    fail(ErrorCode::engine,
         "reset engine requires the diagonal sigma_z sigma_z Hamiltonian form");
  const SpinSpace& space = h.space;
  const int n = space.n_sites;
  const long dim = space.dim;
  RealVector e(dim);
  for (long i = 0; i < dim; ++i) {
    if (std::abs(h.entries(i, i).imag()) > 1e-12)
      fail(ErrorCode::invalid_argument, "diagonal Hamiltonian must be real");
    e(i) = h.entries(i, i).real();
  }
  auto z = [&](long idx, int site) { return space.bit(idx, site) == 0 ? 1.0 : -1.0; };

  ZZForm out;
  out.omega.assign(static_cast<size_t>(n), 0.0);
  out.j.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  out.constant = e.sum() / static_cast<double>(dim);
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (long i = 0; i < dim; ++i) acc += e(i) * z(i, s);
    out.omega[static_cast<size_t>(s)] = 2.0 * acc / static_cast<double>(dim);
  }
  for (int s = 0; s < n; ++s)
    for (int q = s + 1; q < n; ++q) {
      double acc = 0.0;
      for (long i = 0; i < dim; ++i) acc += e(i) * z(i, s) * z(i, q);
      const double jv = 4.0 * acc / static_cast<double>(dim);
      out.j[static_cast<size_t>(s)][static_cast<size_t>(q)] = jv;
      out.j[static_cast<size_t>(q)][static_cast<size_t>(s)] = jv;
    }

  const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
  for (long i = 0; i < dim; ++i) {
    double r = out.constant;
    for (int s = 0; s < n; ++s) r += 0.5 * out.omega[static_cast<size_t>(s)] * z(i, s);
    for (int s = 0; s < n; ++s)
      for (int q = s + 1; q < n; ++q)
        r += 0.25 * out.j[static_cast<size_t>(s)][static_cast<size_t>(q)] *
             z(i, s) * z(i, q);
    if (std::abs(r - e(i)) > 1e-9 * scale)
      fail(ErrorCode::engine,
           "reset engine requires a Hamiltonian of sigma_z sigma_z form");
  }
  return out;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<DensityMatrix> evolve_reset_mc(const DensityMatrix& rho0,
                                           const Operator& h_weak,
                                           int system_index,
                                           const ResetModel& reset,
                                           const TimeGrid& grid, long n_traj,
                                           std::uint64_t seed) {
  check_dims(rho0, h_weak, "evolve_reset_mc");
  reset.validate();
  const SpinSpace& space = rho0.space;
  const int n = space.n_sites;
  if (system_index < 0 || system_index >= n)
    fail(ErrorCode::invalid_argument, "evolve_reset_mc: system index out of range");
  if (static_cast<int>(reset.rates.size()) != n)
    fail(ErrorCode::invalid_argument, "evolve_reset_mc: reset model size mismatch");
  if (n_traj < 1) fail(ErrorCode::invalid_argument, "evolve_reset_mc: n_traj >= 1");

  const ZZForm form = extract_zz_form(h_weak);
  const double omega_s = form.omega[static_cast<size_t>(system_index)];

  struct Ancilla {
    int site;
    double j;       // coupling to the system
    double rate;
    double p_up;
    double p_init;  // probability of +z at t0, from the rho0 marginal
  };
  std::vector<Ancilla> ancillas;
  for (int s = 0; s < n; ++s) {
    if (s == system_index) continue;
    const double j = form.j[static_cast<size_t>(system_index)][static_cast<size_t>(s)];
    if (j == 0.0 && reset.rates[static_cast<size_t>(s)] == 0.0) continue;
    double p_init = 0.0;
    for (long i = 0; i < space.dim; ++i)
      if (space.bit(i, s) == 0) p_init += rho0.entries(i, i).real();
    ancillas.push_back({s, j, reset.rates[static_cast<size_t>(s)],
                        reset.p_up[static_cast<size_t>(s)], p_init});
  }

  const DensityMatrix rho_s0 = partial_trace(rho0, {system_index});
  const Complex c0 = rho_s0.entries(0, 1);
  const double p0 = rho_s0.entries(0, 0).real();
  const double p1 = rho_s0.entries(1, 1).real();

  const int points = grid.points();
  std::vector<Complex> acc(static_cast<size_t>(points), Complex{0, 0});
  std::vector<double> theta(static_cast<size_t>(points));

  for (long traj = 0; traj < n_traj; ++traj) {
    std::mt19937_64 rng(splitmix64(seed ^ static_cast<std::uint64_t>(traj)));
    std::fill(theta.begin(), theta.end(), 0.0);
    for (const Ancilla& a : ancillas) {
      double z = uniform01(rng) < a.p_init ? 1.0 : -1.0;
      double t_cur = grid.t0;
      double next_event = std::numeric_limits<double>::infinity();
      if (a.rate > 0)
        next_event = grid.t0 - std::log(1.0 - uniform01(rng)) / a.rate;
      double cum = 0.0;  // integral of z over [t0, t]
      for (int p = 1; p < points; ++p) {
        const double tp = grid.t(p);
        while (next_event < tp) {
          cum += z * (next_event - t_cur);
          t_cur = next_event;
          z = uniform01(rng) < a.p_up ? 1.0 : -1.0;
          next_event -= std::log(1.0 - uniform01(rng)) / a.rate;
        }
        cum += z * (tp - t_cur);
        t_cur = tp;
        theta[static_cast<size_t>(p)] += 0.5 * a.j * cum;
      }
    }
    for (int p = 0; p < points; ++p) {
      const double full = theta[static_cast<size_t>(p)] +
                          omega_s * (grid.t(p) - grid.t0);
      acc[static_cast<size_t>(p)] += std::exp(Complex{0, -full});
    }
  }

  std::vector<DensityMatrix> out;
  out.reserve(static_cast<size_t>(points));
  SpinSpace red = SpinSpace::make(
      {space.site_labels[static_cast<size_t>(system_index)]}, space.dense_cap);
  for (int p = 0; p < points; ++p) {
    const Complex c = c0 * acc[static_cast<size_t>(p)] / static_cast<double>(n_traj);
    Matrix m(2, 2);
    m << Complex{p0, 0}, c, std::conj(c), Complex{p1, 0};
    out.push_back(DensityMatrix::make_unchecked(red, std::move(m)));
  }
  return out;
}

double telegraph_kernel(double j, double rate, double t) {
  if (rate < 0) fail(ErrorCode::invalid_argument, "negative reset rate");
  const double nu = 0.5 * rate;
  const double a = 0.5 * j;
  if (rate == 0.0) return std::cos(a * t);
  const double disc = nu * nu - a * a;
  const double eps = 1e-12 * std::max({nu * nu, a * a, 1.0});
  if (std::abs(disc) < eps) {
    return std::exp(-nu * t) * (1.0 + nu * t);
  }
  if (disc > 0) {
    // Overdamped; written with decaying exponentials only.
    const double om = std::sqrt(disc);
    return 0.5 * ((1.0 + nu / om) * std::exp(-(nu - om) * t) +
                  (1.0 - nu / om) * std::exp(-(nu + om) * t));
  }
  const double om = std::sqrt(-disc);
  return std::exp(-nu * t) * (std::cos(om * t) + nu / om * std::sin(om * t));
}

FIDRecord evolve_factorized(const std::vector<double>& j_per_ancilla,
                            const ResetModel& reset, const TimeGrid& grid) {
  reset.validate();
  if (reset.rates.size() != j_per_ancilla.size())
    fail(ErrorCode::invalid_argument,
         "evolve_factorized: reset model must align with the ancilla list");
  for (double p : reset.p_up)
    if (p != 0.5)
      fail(ErrorCode::engine,
           "evolve_factorized: kernel assumes equal +-z reset targets");
  FIDRecord out;
  out.grid = grid;
  out.meta.engine = "factorized";
  out.s.resize(static_cast<size_t>(grid.points()));
  out.trace_dist.resize(static_cast<size_t>(grid.points()));
  for (int k = 0; k < grid.points(); ++k) {
    const double tau = grid.t(k) - grid.t0;
    double f = 1.0;
    for (size_t i = 0; i < j_per_ancilla.size(); ++i)
      f *= telegraph_kernel(j_per_ancilla[i], reset.rates[i], tau);
    out.s[static_cast<size_t>(k)] = Complex{f, 0};
    out.trace_dist[static_cast<size_t>(k)] = 0.5 * std::abs(f);
  }
  return out;
}

FIDRecord fid(const std::vector<DensityMatrix>& reduced, const TimeGrid& grid,
              FIDMeta meta) {
  if (static_cast<int>(reduced.size()) != grid.points())
    fail(ErrorCode::invalid_argument, "fid: trajectory length != grid points");
  FIDRecord out;
  out.grid = grid;
  out.meta = std::move(meta);
  SpinSpace one = SpinSpace::make(1);
  const DensityMatrix mixed =
      DensityMatrix::make_unchecked(one, 0.5 * Matrix::Identity(2, 2));
  for (const DensityMatrix& rho : reduced) {
    if (rho.space.n_sites != 1)
      fail(ErrorCode::invalid_argument, "fid: reduced states must be single-site");
    out.s.push_back(2.0 * rho.entries(1, 0));
    DensityMatrix r = DensityMatrix::make_unchecked(one, rho.entries);
    out.trace_dist.push_back(trace_distance(r, mixed));
  }
  return out;
}

std::vector<SpectrumRow> spectrum(const FIDRecord& f) {
  const int n = static_cast<int>(f.s.size());
  if (n < 2 || f.grid.points() != n)
    fail(ErrorCode::invalid_argument, "spectrum: bad FID record");
  const double dt = f.grid.dt();
  std::vector<SpectrumRow> rows(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    Complex acc{0, 0};
    const double w = -kTwoPi * m / n;
    for (int k = 0; k < n; ++k)
      acc += f.s[static_cast<size_t>(k)] *
             std::exp(Complex{0, w * k});
    const int m_signed = m <= (n - 1) / 2 ? m : m - n;
    rows[static_cast<size_t>(m)] = {m_signed / (n * dt), acc / static_cast<double>(n)};
  }
  std::sort(rows.begin(), rows.end(),
            [](const SpectrumRow& a, const SpectrumRow& b) {
              return a.freq_hz < b.freq_hz;
            });
  return rows;
}

OTOCResult otoc(const Operator& h, const Operator& w, const Operator& v,
                double tau, const DensityMatrix* state) {
  if (h.space.dim != w.space.dim || h.space.dim != v.space.dim)
    fail(ErrorCode::invalid_argument, "otoc: dimension mismatch");
  const long dim = h.space.dim;
  OTOCResult out;
  const auto unitary = [&](const Matrix& m) {
    return max_abs(m.adjoint() * m - Matrix::Identity(dim, dim)) < 1e-9;
  };
  if (!unitary(w.entries) || !unitary(v.entries)) {
    if (is_hermitian(w.entries, 1e-10) && is_hermitian(v.entries, 1e-10))
      out.non_unitary_warning = true;
    else
      fail(ErrorCode::invalid_argument,
           "otoc: W and V must be unitary (or at least Hermitian)");
  }
  const Matrix u = hermitian_expm(h.entries, tau);
  const Matrix wt = u.adjoint() * w.entries * u;
  Matrix rho;
  if (state) {
    if (state->space.dim != dim)
      fail(ErrorCode::invalid_argument, "otoc: state dimension mismatch");
    rho = state->entries;
  } else {
    rho = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  }
  out.f = (rho * wt.adjoint() * v.entries.adjoint() * wt * v.entries).trace();
  const Matrix o_f = w.entries * u * v.entries;
  const Matrix o_b = u * v.entries * u.adjoint() * w.entries * u;
  out.f_two_path = (rho * o_b.adjoint() * o_f).trace();
  out.comm_sq = 2.0 * (1.0 - out.f.real());
  return out;
}

namespace {

const Matrix& pauli_for(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::x: return pauli_x();
    case PauliAxis::y: return pauli_y();
    default: return pauli_z();
  }
}

}  // namespace

std::vector<ArrivalRow> lightcone(const Molecule& m, int source_site,
                                  PauliAxis source_axis, PauliAxis probe_axis,
                                  const std::vector<int>& probe_sites,
                                  const TimeGrid& grid, double eps,
                                  Frame frame) {
  const std::vector<int> act = m.active_sites();
  const int src = m.active_index(source_site);
  if (src < 0) fail(ErrorCode::invalid_argument, "lightcone: source not active");

  // Graph distances over the active coupling network.
  std::vector<int> dist(act.size(), -1);
  std::deque<int> queue{src};
  dist[static_cast<size_t>(src)] = 0;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (size_t other = 0; other < act.size(); ++other) {
      if (dist[other] >= 0) continue;
      if (m.couplings.get(act[static_cast<size_t>(cur)], act[other]) == 0.0)
        continue;
      dist[other] = dist[static_cast<size_t>(cur)] + 1;
      queue.push_back(static_cast<int>(other));
    }
  }

  const Operator h = frame == Frame::lab ? hamiltonian_lab(m) : hamiltonian_weak(m);
  const Matrix o1 = embed(pauli_for(source_axis), src, h.space).entries;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries);
  const Matrix& vv = es.eigenvectors();
  const RealVector lam = es.eigenvalues();
  const Matrix b = vv.adjoint() * o1 * vv;
  const long dim = h.space.dim;

  std::vector<ArrivalRow> rows;
  for (int probe : probe_sites) {
    const int pi = m.active_index(probe);
    if (pi < 0) fail(ErrorCode::invalid_argument, "lightcone: probe not active");
    if (dist[static_cast<size_t>(pi)] < 0)
      fail(ErrorCode::invalid_argument, "lightcone: disconnected probe");
    ArrivalRow row;
    row.site = probe;
    row.distance = dist[static_cast<size_t>(pi)];
    row.arrival_t = std::numeric_limits<double>::quiet_NaN();
    rows.push_back(std::move(row));
  }

  std::vector<Matrix> o2s;
  for (const ArrivalRow& row : rows)
    o2s.push_back(
        embed(pauli_for(probe_axis), m.active_index(row.site), h.space).entries);

  Matrix bt(dim, dim);
  for (int k = 0; k < grid.points(); ++k) {
    const double tau = grid.t(k) - grid.t0;
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j)
        bt(i, j) = b(i, j) * std::exp(Complex{0, (lam(i) - lam(j)) * tau});
    const Matrix o1_t = vv * bt * vv.adjoint();  // Heisenberg picture
    for (size_t r = 0; r < rows.size(); ++r) {
      const Matrix& o2 = o2s[r];
      const double norm = operator_norm(o1_t * o2 - o2 * o1_t);
      rows[r].norms.push_back(norm);
      if (std::isnan(rows[r].arrival_t) && norm > eps)
        rows[r].arrival_t = grid.t(k);
    }
  }
  return rows;
}

int count_revivals(const std::vector<Complex>& s, double rise, double floor) {
  int count = 0;
  bool armed = false;
  for (const Complex& v : s) {
    const double a = std::abs(v);
    if (a < floor) armed = true;
    if (armed && a > rise) {
      ++count;
      armed = false;
    }
  }
  return count;
}

double first_revival_amplitude(const std::vector<Complex>& s) {
  const size_t n = s.size();
  if (n < 3) return 0.0;
  size_t k = 1;
  while (k < n && std::abs(s[k]) <= std::abs(s[k - 1])) ++k;
  if (k >= n) return 0.0;
  while (k < n && std::abs(s[k]) >= std::abs(s[k - 1])) ++k;
  return std::abs(s[k - 1]);
}

}  // namespace spinbath
