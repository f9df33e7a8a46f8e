#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitope {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Error categories, also used as CLI exit codes.
enum class ErrorCode {
  Config = 2,
  Model = 3,
  Subspace = 4,
  NotHermitian = 5,
  NotPsd = 6,
  Singular = 7,
  Overflow = 8,
  Precondition = 9,
  Irreducible = 10,
  Solver = 11,
  Mesh = 12,
  Unclassified = 13,
  Indeterminate = 14,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& module, const std::string& message)
      : std::runtime_error(module + ": " + message), code_(code), module_(module), message_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string module_;
  std::string message_;
};

struct ToleranceProfile {
  double eig_cluster = 1e-9;
  double geom = 1e-8;
  double rank = 1e-9;

  void validate() const {
    if (eig_cluster <= 0 || geom <= 0 || rank <= 0)
      throw Error(ErrorCode::Config, "core", "tolerances must be strictly positive");
  }
};

// Nonzero complex vector modulo scale, stored unit-normalized.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const Vector& v) {
    double n = v.norm();
    if (!(n > 0) || !v.allFinite())
      throw Error(ErrorCode::Precondition, "core", "projective point needs a nonzero finite vector");
    v_ = v / n;
  }

  const Vector& vector() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

  // Phase-invariant equality: |<v,w>| close to 1 on unit vectors.
  bool sameAs(const ProjectivePoint& other, double geom_tol = 1e-8) const {
    if (other.dim() != dim()) return false;
    return std::abs(v_.dot(other.v_)) >= 1.0 - geom_tol;
  }

  double distanceTo(const ProjectivePoint& other) const {
    // Fubini-Study chordal distance, zero iff projectively equal.
    double c = std::min(1.0, std::abs(v_.dot(other.v_)));
    return std::sqrt(std::max(0.0, 1.0 - c * c));
  }

 private:
  Vector v_;
};

inline double hermitianDefect(const Matrix& a) {
  double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() / scale;
}

}  // namespace orbitope
