#include "orbitope/satake.hpp"

#include <algorithm>
#include <cmath>

namespace orbitope {

double subspaceAngle(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return M_PI / 2.0;
  Eigen::JacobiSVD<Matrix> svd(a.adjoint() * b);
  double smin = svd.singularValues().minCoeff();
  return std::acos(std::clamp(smin, 0.0, 1.0));
}

namespace {

Matrix rangeBasis(const Matrix& a, const ToleranceProfile& tol) {
  EigenDecomposition dec = hermEig(a, tol);
  double scale = std::abs(dec.clusters.front().value) + 1.0;
  std::vector<const Matrix*> parts;
  Eigen::Index cols = 0;
  for (const auto& c : dec.clusters)
    if (c.value > tol.rank * scale) {
      parts.push_back(&c.basis);
      cols += c.basis.cols();
    }
  Matrix basis(a.rows(), cols);
  Eigen::Index at = 0;
  for (const Matrix* p : parts) {
    basis.middleCols(at, p->cols()) = *p;
    at += p->cols();
  }
  return basis;
}

}  // namespace

SatakePoint makeSatakePoint(const Matrix& a, const ToleranceProfile& tol) {
  if (hermitianDefect(a) > 1e-10)
    throw Error(ErrorCode::NotHermitian, "satake-boundary", "Satake point must be Hermitian");
  double tr = a.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw Error(ErrorCode::Precondition, "satake-boundary", "Satake point must have trace one");
  SatakePoint sp;
  sp.a = (a + a.adjoint()) / 2.0;
  sp.component_w = rangeBasis(sp.a, tol);
  sp.is_interior = sp.component_w.cols() == a.rows();
  return sp;
}

SatakePoint satakeEmbed(const Representation& rep, const Matrix& g) {
  if (!rep.model().isGroupElement(g))
    throw Error(ErrorCode::Model, "satake-boundary", "not an element of " + rep.model().name);
  Matrix tg = rep.act(g);
  Matrix a = tg * tg.adjoint();
  return makeSatakePoint(a / a.trace().real(), rep.model().tol);
}

SatakePoint rayLimit(const Representation& rep, const Matrix& beta) {
  if (beta.norm() < rep.model().tol.rank) {
    // Degenerate ray: interior base point.
    Eigen::Index d = rep.dimV();
    return makeSatakePoint(Matrix::Identity(d, d) / double(d), rep.model().tol);
  }
  Matrix w = maxLocus(rep, beta);
  Matrix proj = w * w.adjoint();
  return makeSatakePoint(proj / double(w.cols()), rep.model().tol);
}

std::vector<BoundaryComponent> enumerateBoundaryComponents(const Representation& rep) {
  std::vector<BoundaryComponent> out;
  for (const auto& cs : rep.muTauConnectedSubsets()) {
    if (int(cs.subset.size()) == rep.model().rank()) continue;  // I = Pi is the interior
    BoundaryComponent bc;
    bc.subset_I = cs.subset;
    bc.v_i_basis = rep.subspaceVI(cs.subset);
    Matrix proj = bc.v_i_basis * bc.v_i_basis.adjoint();
    bc.base_point = makeSatakePoint(proj / double(bc.v_i_basis.cols()), rep.model().tol);
    out.push_back(std::move(bc));
  }
  return out;
}

namespace {

// Alignment of tau(k) V_I with a target subspace: best of random K seeds,
// then damped Gauss-Newton over the k-coordinates.
struct Alignment {
  Matrix k;
  double cost = std::numeric_limits<double>::infinity();
};

double alignmentCost(const Representation& rep, const Matrix& k, const Matrix& v_i,
                     const Matrix& target_proj_complement) {
  return (target_proj_complement * (rep.act(k) * v_i)).squaredNorm();
}

Alignment alignSubspace(const Representation& rep, const Matrix& v_i, const Matrix& target,
                        std::uint64_t seed) {
  const GroupModel& model = rep.model();
  Eigen::Index d = rep.dimV();
  Matrix complement = Matrix::Identity(d, d) - target * target.adjoint();

  std::mt19937_64 rng(seed);
  Alignment best;
  std::vector<Matrix> seeds{Matrix::Identity(model.N, model.N)};
  for (int i = 0; i < 50; ++i) seeds.push_back(sampleK(model, rng));
  for (const auto& k0 : seeds) {
    double c = alignmentCost(rep, k0, v_i, complement);
    if (c < best.cost) {
      best.cost = c;
      best.k = k0;
    }
  }

  int nk = int(model.k_basis.size());
  double damping = 1e-6;
  for (int iter = 0; iter < 120 && best.cost > 1e-20; ++iter) {
    Matrix r0 = complement * (rep.act(best.k) * v_i);
    Eigen::Index m = r0.size();
    RealMatrix jac(2 * m, nk);
    const double h = 1e-5;
    for (int j = 0; j < nk; ++j) {
      Matrix kp = best.k * matExp(h * model.k_basis[size_t(j)]);
      Matrix km = best.k * matExp(-h * model.k_basis[size_t(j)]);
      Matrix dr = (complement * (rep.act(kp) * v_i) - complement * (rep.act(km) * v_i)) / (2 * h);
      Eigen::Map<const Vector> drv(dr.data(), m);
      jac.col(j).head(m) = drv.real();
      jac.col(j).tail(m) = drv.imag();
    }
    Eigen::Map<const Vector> r0v(r0.data(), m);
    RealVector rhs(2 * m);
    rhs.head(m) = r0v.real();
    rhs.tail(m) = r0v.imag();
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      RealMatrix lhs = jac.transpose() * jac + damping * RealMatrix::Identity(nk, nk);
      RealVector step = lhs.ldlt().solve(jac.transpose() * rhs);
      Matrix delta = Matrix::Zero(model.N, model.N);
      for (int j = 0; j < nk; ++j) delta -= step(j) * model.k_basis[size_t(j)];
      Matrix k_try = best.k * matExp(delta);
      double c = alignmentCost(rep, k_try, v_i, complement);
      if (c < best.cost) {
        best.cost = c;
        best.k = k_try;
        damping = std::max(damping * 0.3, 1e-12);
        improved = true;
        break;
      }
      damping *= 10.0;
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace

LimitClassification classifyLimit(const Representation& rep, const SatakePoint& a,
                                  std::uint64_t seed) {
  const GroupModel& model = rep.model();
  LimitClassification lc;
  if (a.is_interior) {
    // Solve dtau(xi) = traceless part of log(A)/2, then g = exp(xi).
    EigenDecomposition dec = hermEig(a.a, model.tol);
    Eigen::Index d = rep.dimV();
    Matrix log_a = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < dec.clusters.size(); ++i)
      log_a += std::log(dec.clusters[i].value) * dec.projector(i);
    log_a -= (log_a.trace() / double(d)) * Matrix::Identity(d, d);
    log_a /= 2.0;
    const auto& ops = rep.dtauP();
    int np = int(ops.size());
    RealMatrix gram(np, np);
    RealVector rhs(np);
    for (int i = 0; i < np; ++i) {
      rhs(i) = (ops[size_t(i)].cwiseProduct(log_a.conjugate())).sum().real();
      for (int j = 0; j < np; ++j)
        gram(i, j) = (ops[size_t(i)].cwiseProduct(ops[size_t(j)].conjugate())).sum().real();
    }
    RealVector xi_coords = gram.ldlt().solve(rhs);
    Matrix xi = model.fromPCoords(xi_coords);
    Matrix residual = rep.dtauOfP(xi) - log_a;
    lc.residual = residual.norm();
    if (lc.residual > 1e-6)
      throw Error(ErrorCode::Unclassified, "satake-boundary",
                  "interior point is not in the embedded orbit");
    lc.interior = true;
    lc.g = matExp(xi);
    return lc;
  }

  Eigen::Index target_rank = a.component_w.cols();
  auto components = enumerateBoundaryComponents(rep);
  bool dim_matched = false;
  for (const auto& bc : components) {
    if (bc.v_i_basis.cols() != target_rank) continue;
    dim_matched = true;
    Alignment al = alignSubspace(rep, bc.v_i_basis, a.component_w, seed);
    Matrix tk = rep.act(al.k);
    double angle = subspaceAngle(tk * bc.v_i_basis, a.component_w);
    if (angle < 1e-6) {
      lc.interior = false;
      lc.k = al.k;
      lc.subset_I = bc.subset_I;
      lc.positive_part = bc.v_i_basis.adjoint() * tk.adjoint() * a.a * tk * bc.v_i_basis;
      lc.residual = angle;
      return lc;
    }
  }
  if (!dim_matched)
    throw Error(ErrorCode::Unclassified, "satake-boundary",
                "rank matches no boundary component: not a boundary point");
  throw Error(ErrorCode::Unclassified, "satake-boundary",
              "subspace alignment failed (residual above tolerance)");
}

RationalMapDescriptor rationalMapOf(const Representation& rep, const SatakePoint& p,
                                    const ToleranceProfile& tol) {
  (void)rep;
  RationalMapDescriptor desc;
  desc.w_basis = p.component_w;
  desc.rho = psdSqrt(p.a * double(p.a.rows()), tol);  // scale is projectively irrelevant
  return desc;
}

ProjectivePoint rationalEval(const RationalMapDescriptor& desc, const ProjectivePoint& x,
                             const ToleranceProfile& tol) {
  Vector projected = desc.w_basis * (desc.w_basis.adjoint() * x.vector());
  if (projected.norm() <= tol.rank)
    throw Error(ErrorCode::Indeterminate, "satake-boundary",
                "point lies in the indeterminacy locus P(W_perp)");
  return ProjectivePoint(desc.rho * projected);
}

}  // namespace orbitope
