#include "orbitope/numeric.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace orbitope {

EigenDecomposition hermEig(const Matrix& a, const ToleranceProfile& tol) {
  tol.validate();
  if (a.rows() != a.cols())
    throw Error(ErrorCode::Precondition, "numeric", "hermEig needs a square matrix");
  double defect = hermitianDefect(a);
  if (defect > 1e-12)
    throw Error(ErrorCode::NotHermitian, "numeric",
                "symmetry violation: ||A - A*||/||A|| = " + std::to_string(defect));

  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::Solver, "numeric", "Hermitian eigensolver failed");
  const RealVector& ev = es.eigenvalues();  // ascending
  const Matrix& q = es.eigenvectors();
  Eigen::Index n = a.rows();
  double spectral = std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
  double gap = tol.eig_cluster * (spectral + 1.0);

  EigenDecomposition dec;
  dec.tolerance = gap;
  // Walk from the largest eigenvalue down, grouping values within the gap.
  Eigen::Index i = n - 1;
  while (i >= 0) {
    Eigen::Index j = i;
    while (j > 0 && ev(i) - ev(j - 1) < gap) --j;
    EigCluster c;
    c.basis = q.middleCols(j, i - j + 1);
    c.value = ev.segment(j, i - j + 1).mean();
    dec.clusters.push_back(std::move(c));
    i = j - 1;
  }
  return dec;
}

Matrix matExp(const Matrix& a) {
  if (a.rows() != a.cols() || !a.allFinite())
    throw Error(ErrorCode::Precondition, "numeric", "matExp needs a finite square matrix");
  if (a.norm() > 700.0)
    throw Error(ErrorCode::Overflow, "numeric", "matExp operand norm exceeds 700");
  if (hermitianDefect(a) < 1e-13) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
    return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
           es.eigenvectors().adjoint();
  }
  return a.exp();
}

Matrix psdSqrt(const Matrix& a, const ToleranceProfile& tol) {
  EigenDecomposition dec = hermEig(a, tol);
  double scale = std::abs(dec.clusters.front().value) + 1.0;
  Eigen::Index n = a.rows();
  Matrix b = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
    double lam = dec.clusters[i].value;
    if (lam < -tol.rank * scale)
      throw Error(ErrorCode::NotPsd, "numeric",
                  "eigenvalue " + std::to_string(lam) + " below -rank tolerance");
    lam = std::max(0.0, lam);
    b += std::sqrt(lam) * dec.projector(i);
  }
  return b;
}

PolarDecomposition polarDecompose(const Matrix& g, const ToleranceProfile& tol) {
  tol.validate();
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  double smin = svd.singularValues().minCoeff();
  if (smin <= tol.rank * (svd.singularValues().maxCoeff() + 1.0))
    throw Error(ErrorCode::Singular, "numeric", "polar decomposition of a singular matrix");
  PolarDecomposition pd;
  pd.rho = svd.matrixU() * svd.singularValues().asDiagonal() * svd.matrixU().adjoint();
  pd.k = svd.matrixU() * svd.matrixV().adjoint();
  return pd;
}

}  // namespace orbitope
