#pragma once

#include "orbitope/core.hpp"

namespace orbitope {

struct EigCluster {
  double value = 0.0;       // cluster mean eigenvalue
  Matrix basis;             // orthonormal columns spanning the eigenspace
};

// Clustered Hermitian eigendecomposition, eigenvalues strictly decreasing
// across clusters.
struct EigenDecomposition {
  std::vector<EigCluster> clusters;
  double tolerance = 0.0;

  Eigen::Index dim() const {
    Eigen::Index d = 0;
    for (const auto& c : clusters) d += c.basis.cols();
    return d;
  }

  Matrix projector(std::size_t i) const {
    return clusters[i].basis * clusters[i].basis.adjoint();
  }

  Matrix reconstruct() const {
    Eigen::Index d = dim();
    Matrix a = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < clusters.size(); ++i) a += clusters[i].value * projector(i);
    return a;
  }
};

EigenDecomposition hermEig(const Matrix& a, const ToleranceProfile& tol = {});

// Matrix exponential; Hermitian input goes through the spectral route,
// general input through scaling-and-squaring.
Matrix matExp(const Matrix& a);

// Square root of a PSD Hermitian matrix. Eigenvalues in [-rank_tol, 0) are
// clamped to zero; anything more negative is rejected.
Matrix psdSqrt(const Matrix& a, const ToleranceProfile& tol = {});

struct PolarDecomposition {
  Matrix rho;  // positive-definite Hermitian factor
  Matrix k;    // unitary factor, g = rho * k
};

PolarDecomposition polarDecompose(const Matrix& g, const ToleranceProfile& tol = {});

}  // namespace orbitope
