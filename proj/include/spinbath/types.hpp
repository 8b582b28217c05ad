#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinbath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Error categories; the C API and the CLI map these onto status/exit codes.
enum class ErrorCode {
  invalid_argument,  // library misuse (dimension mismatch, bad index, ...)
  capacity,          // dense Hilbert-space cap exceeded
  config,            // unparsable or inconsistent configuration input
  engine,            // engine incompatible with the requested problem
  numeric,           // numerical failure (positivity loss, step underflow, ...)
  io,                // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix dag(const Matrix& m) { return m.adjoint(); }

inline bool is_hermitian(const Matrix& m, double tol) {
  return max_abs(m - m.adjoint()) <= tol;
}

}  // namespace spinbath
