#include "orbitope/group_model.hpp"

#include <algorithm>
#include <cmath>

namespace orbitope {

namespace {

double reTraceInner(const Matrix& x, const Matrix& y) {
  return (x.cwiseProduct(y.conjugate())).sum().real();
}

Matrix diagFromRealVector(const RealVector& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) m(i, i) = d(i);
  return m;
}

GroupModel buildSLR(int n, const ToleranceProfile& tol) {
  GroupModel m;
  m.name = "SL_R(" + std::to_string(n) + ")";
  m.family = GroupFamily::SL_R;
  m.n = n;
  m.N = n;
  m.tol = tol;

  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix k = Matrix::Zero(n, n);
      k(i, j) = s;
      k(j, i) = -s;
      m.k_basis.push_back(k);
      Matrix p = Matrix::Zero(n, n);
      p(i, j) = s;
      p(j, i) = s;
      m.p_basis.push_back(p);
    }
  // Orthonormal traceless diagonals: (1,...,1,-r,0,...)/sqrt(r(r+1)).
  std::vector<RealVector> diag_basis;
  for (int r = 1; r < n; ++r) {
    RealVector d = RealVector::Zero(n);
    for (int i = 0; i < r; ++i) d(i) = 1.0;
    d(r) = -r;
    d /= std::sqrt(double(r) * (r + 1));
    diag_basis.push_back(d);
    m.p_basis.push_back(diagFromRealVector(d));
    m.a_basis.push_back(diagFromRealVector(d));
  }

  auto diagACoords = [&](const RealVector& diag) {
    RealVector c(n - 1);
    for (int r = 0; r < n - 1; ++r) c(r) = diag.dot(diag_basis[size_t(r)]);
    return c;
  };

  for (int i = 0; i < n - 1; ++i) {
    RealVector d = RealVector::Zero(n);
    d(i) = 1.0;
    d(i + 1) = -1.0;
    m.simple_roots.push_back(diagACoords(d));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      RealVector d = RealVector::Zero(n);
      d(i) = 1.0;
      d(j) = -1.0;
      m.restricted_roots.emplace_back(diagACoords(d), 1);
    }
  // Adjacent transpositions on the diagonal, expressed on a_basis coordinates.
  RealMatrix d_mat(n, n - 1);
  for (int r = 0; r < n - 1; ++r) d_mat.col(r) = diag_basis[size_t(r)];
  for (int i = 0; i < n - 1; ++i) {
    RealMatrix perm = RealMatrix::Identity(n, n);
    perm(i, i) = perm(i + 1, i + 1) = 0.0;
    perm(i, i + 1) = perm(i + 1, i) = 1.0;
    m.weyl_generators.push_back(d_mat.transpose() * perm * d_mat);
  }
  return m;
}

GroupModel buildSLC2(const ToleranceProfile& tol) {
  GroupModel m;
  m.name = "SL_C(2)";
  m.family = GroupFamily::SL_C;
  m.n = 2;
  m.N = 2;
  m.tol = tol;

  const Complex I(0.0, 1.0);
  Matrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  const double s = 1.0 / std::sqrt(2.0);
  for (const Matrix& sig : {s1, s2, s3}) {
    m.k_basis.push_back(I * s * sig);
    m.p_basis.push_back(s * sig);
  }
  m.a_basis.push_back(s * s3);

  // alpha(t diag(1,-1)) = 2t, so the root vector is sqrt(2) in a-coordinates.
  RealVector alpha(1);
  alpha << std::sqrt(2.0);
  m.simple_roots.push_back(alpha);
  m.restricted_roots.emplace_back(alpha, 2);
  m.restricted_roots.emplace_back(-alpha, 2);

  RealMatrix w(1, 1);
  w << -1.0;
  m.weyl_generators.push_back(w);
  return m;
}

}  // namespace

RealVector GroupModel::pCoords(const Matrix& xi) const {
  RealVector c(p_basis.size());
  for (std::size_t j = 0; j < p_basis.size(); ++j) c(Eigen::Index(j)) = reTraceInner(xi, p_basis[j]);
  Matrix recon = fromPCoords(c);
  if ((xi - recon).norm() > tol.geom * (1.0 + xi.norm()))
    throw Error(ErrorCode::Subspace, "group-model", "element is not in span(p_basis)");
  return c;
}

Matrix GroupModel::fromPCoords(const RealVector& c) const {
  Matrix xi = Matrix::Zero(N, N);
  for (std::size_t j = 0; j < p_basis.size(); ++j) xi += c(Eigen::Index(j)) * p_basis[j];
  return xi;
}

RealVector GroupModel::aCoords(const Matrix& h) const {
  RealVector c(a_basis.size());
  for (std::size_t j = 0; j < a_basis.size(); ++j) c(Eigen::Index(j)) = reTraceInner(h, a_basis[j]);
  return c;
}

Matrix GroupModel::fromACoords(const RealVector& c) const {
  Matrix h = Matrix::Zero(N, N);
  for (std::size_t j = 0; j < a_basis.size(); ++j) h += c(Eigen::Index(j)) * a_basis[j];
  return h;
}

std::vector<RealMatrix> GroupModel::weylGroup() const {
  std::vector<RealMatrix> group{RealMatrix::Identity(rank(), rank())};
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < group.size(); ++i)
      for (const auto& gen : weyl_generators) {
        RealMatrix cand = gen * group[i];
        bool known = false;
        for (const auto& w : group)
          if ((w - cand).norm() < 1e-8) {
            known = true;
            break;
          }
        if (!known) {
          group.push_back(cand);
          grew = true;
        }
      }
  }
  return group;
}

bool GroupModel::isGroupElement(const Matrix& g, double tol_scale) const {
  if (g.rows() != N || g.cols() != N) return false;
  if (std::abs(g.determinant() - Complex(1.0, 0.0)) > tol_scale * (1.0 + g.norm())) return false;
  if (family == GroupFamily::SL_R && g.imag().norm() > tol_scale * (1.0 + g.norm())) return false;
  return true;
}

GroupModel buildModel(GroupFamily family, int n, const ToleranceProfile& tol) {
  tol.validate();
  if (family == GroupFamily::SL_R) {
    if (n < 2) throw Error(ErrorCode::Config, "group-model", "SL_R needs n >= 2");
    return buildSLR(n, tol);
  }
  if (n != 2) throw Error(ErrorCode::Config, "group-model", "SL_C is only built for n = 2");
  return buildSLC2(tol);
}

GroupModel buildModel(const std::string& family_name, int n, const ToleranceProfile& tol) {
  if (family_name == "SL_R") return buildModel(GroupFamily::SL_R, n, tol);
  if (family_name == "SL_C") return buildModel(GroupFamily::SL_C, n, tol);
  throw Error(ErrorCode::Config, "group-model", "unsupported family: " + family_name);
}

RealMatrix adjointMatrix(const GroupModel& model, const Matrix& beta) {
  std::vector<const Matrix*> basis;
  for (const auto& x : model.k_basis) basis.push_back(&x);
  for (const auto& x : model.p_basis) basis.push_back(&x);
  int d = int(basis.size());
  RealMatrix ad(d, d);
  for (int j = 0; j < d; ++j) {
    Matrix bx = beta * (*basis[size_t(j)]) - (*basis[size_t(j)]) * beta;
    for (int i = 0; i < d; ++i) ad(i, j) = reTraceInner(bx, *basis[size_t(i)]);
  }
  return ad;
}

ChamberProjection chamberProject(const GroupModel& model, const Matrix& xi) {
  model.pCoords(xi);  // subspace check
  Eigen::SelfAdjointEigenSolver<Matrix> es((xi + xi.adjoint()) / 2.0);
  Eigen::Index n = xi.rows();
  // Reorder eigenvectors so eigenvalues decrease.
  Matrix q(n, n);
  RealVector ev(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    q.col(i) = es.eigenvectors().col(n - 1 - i);
    ev(i) = es.eigenvalues()(n - 1 - i);
  }
  if (model.family == GroupFamily::SL_R) {
    RealMatrix qr = q.real();
    if (qr.determinant() < 0) qr.col(n - 1) *= -1.0;
    q = qr.cast<Complex>();
  } else {
    Complex det = q.determinant();
    q.col(0) *= std::conj(det);  // unit phase, makes det(q) = 1
  }
  ChamberProjection cp;
  cp.h = diagFromRealVector(ev);
  cp.h_coords = model.aCoords(cp.h);
  cp.k = q.adjoint();  // Ad(k) xi = k xi k^* = diag(ev)
  return cp;
}

ParabolicDatum parabolicFromBeta(const GroupModel& model, const Matrix& beta) {
  ParabolicDatum pd;
  pd.beta = beta;
  ChamberProjection cp = chamberProject(model, beta);
  pd.beta_chamber = cp.h;
  pd.beta_coords = cp.h_coords;
  double vanish_tol = model.tol.geom * (1.0 + beta.norm());
  for (std::size_t i = 0; i < model.simple_roots.size(); ++i)
    if (std::abs(model.simple_roots[i].dot(pd.beta_coords)) < vanish_tol)
      pd.vanishing_set.push_back(int(i));
  RealMatrix ad = adjointMatrix(model, beta);
  pd.ad_eigen = hermEig(ad.cast<Complex>(), model.tol);
  for (const auto& c : pd.ad_eigen.clusters)
    if (c.value > -vanish_tol) pd.dim_nonnegative += int(c.basis.cols());
  return pd;
}

namespace {

// Connected components of `subset` in the simple-root adjacency graph.
std::vector<std::vector<int>> components(const GroupModel& model, const std::vector<int>& subset) {
  int r = model.rank();
  std::vector<std::vector<bool>> adj(size_t(r), std::vector<bool>(size_t(r), false));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && std::abs(model.simple_roots[size_t(i)].dot(model.simple_roots[size_t(j)])) > 1e-10)
        adj[size_t(i)][size_t(j)] = true;
  std::vector<std::vector<int>> comps;
  std::vector<bool> seen(size_t(r), false);
  for (int start : subset) {
    if (seen[size_t(start)]) continue;
    std::vector<int> comp, stack{start};
    seen[size_t(start)] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int v : subset)
        if (!seen[size_t(v)] && adj[size_t(u)][size_t(v)]) {
          seen[size_t(v)] = true;
          stack.push_back(v);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  return comps;
}

}  // namespace

bool isXConnected(const GroupModel& model, const RealVector& x_coords,
                  const std::vector<int>& subset) {
  double vanish_tol = model.tol.geom * (1.0 + x_coords.norm());
  for (const auto& comp : components(model, subset)) {
    bool touches = false;
    for (int i : comp)
      if (std::abs(model.simple_roots[size_t(i)].dot(x_coords)) >= vanish_tol) touches = true;
    if (!touches) return false;
  }
  return true;
}

std::vector<std::vector<int>> xConnectedSubsets(const GroupModel& model,
                                                const RealVector& x_coords) {
  int r = model.rank();
  // x must lie in the closed positive chamber.
  for (const auto& alpha : model.simple_roots)
    if (alpha.dot(x_coords) < -model.tol.geom * (1.0 + x_coords.norm()))
      throw Error(ErrorCode::Precondition, "group-model", "x is not in the closed positive chamber");
  std::vector<std::vector<int>> result;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    if (isXConnected(model, x_coords, subset)) result.push_back(subset);
  }
  return result;
}

std::vector<int> saturate(const GroupModel& model, const RealVector& x_coords,
                          const std::vector<int>& subset) {
  if (!isXConnected(model, x_coords, subset))
    throw Error(ErrorCode::Precondition, "group-model", "saturate: subset is not x-connected");
  double vanish_tol = model.tol.geom * (1.0 + x_coords.norm());
  std::vector<int> j = subset;
  for (int a = 0; a < model.rank(); ++a) {
    if (std::find(subset.begin(), subset.end(), a) != subset.end()) continue;
    if (std::abs(model.simple_roots[size_t(a)].dot(x_coords)) >= vanish_tol) continue;
    bool orth = true;
    for (int i : subset)
      if (std::abs(model.simple_roots[size_t(a)].dot(model.simple_roots[size_t(i)])) > 1e-10)
        orth = false;
    if (orth) j.push_back(a);
  }
  std::sort(j.begin(), j.end());
  return j;
}

KAKDecomposition kakDecompose(const GroupModel& model, const Matrix& g) {
  if (!model.isGroupElement(g))
    throw Error(ErrorCode::Model, "group-model", "matrix is not an element of " + model.name);
  KAKDecomposition kak;
  Eigen::Index n = g.rows();
  if (model.family == GroupFamily::SL_R) {
    Eigen::JacobiSVD<RealMatrix> svd(g.real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealMatrix u = svd.matrixU(), v = svd.matrixV();
    if (u.determinant() < 0) {  // det u = det v here since det g = 1
      u.col(n - 1) *= -1.0;
      v.col(n - 1) *= -1.0;
    }
    kak.k1 = u.cast<Complex>();
    RealVector logs = svd.singularValues().array().log();
    kak.h = diagFromRealVector(logs);
    kak.k2 = v.transpose().cast<Complex>();
  } else {
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix u = svd.matrixU(), v = svd.matrixV();
    Complex du = u.determinant();
    // Phase correction keeping u S v^* fixed; det g = 1 forces det v = det u.
    u.col(0) /= du;
    v.col(0) /= du;
    kak.k1 = u;
    RealVector logs = svd.singularValues().array().log();
    kak.h = diagFromRealVector(logs);
    kak.k2 = v.adjoint();
  }
  return kak;
}

Matrix sampleK(const GroupModel& model, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (model.family == GroupFamily::SL_R) {
    int n = model.N;
    RealMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<RealMatrix> qr(g);
    RealMatrix q = qr.householderQ();
    RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
      if (r(i, i) < 0) q.col(i) *= -1.0;
    if (q.determinant() < 0) q.col(n - 1) *= -1.0;
    return q.cast<Complex>();
  }
  // SU(2) from a unit quaternion.
  double a = gauss(rng), b = gauss(rng), c = gauss(rng), d = gauss(rng);
  double norm = std::sqrt(a * a + b * b + c * c + d * d);
  a /= norm;
  b /= norm;
  c /= norm;
  d /= norm;
  Matrix k(2, 2);
  k << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
  return k;
}

}  // namespace orbitope
