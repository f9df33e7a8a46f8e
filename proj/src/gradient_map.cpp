#include "orbitope/gradient_map.hpp"

#include <cmath>

namespace orbitope {

GradientValue gradientMap(const Representation& rep, const ProjectivePoint& x) {
  const Vector& v = x.vector();
  const auto& ops = rep.dtauP();
  GradientValue gv;
  gv.coords = RealVector(ops.size());
  for (std::size_t j = 0; j < ops.size(); ++j)
    gv.coords(Eigen::Index(j)) = (v.adjoint() * ops[j] * v)(0).real();
  gv.as_matrix = rep.model().fromPCoords(gv.coords);
  return gv;
}

RealVector abelianGradient(const Representation& rep, const ProjectivePoint& x) {
  return rep.model().aCoords(gradientMap(rep, x).as_matrix);
}

double heightFunction(const Representation& rep, const ProjectivePoint& x, const Matrix& beta) {
  const Vector& v = x.vector();
  return (v.adjoint() * rep.dtauOfP(beta) * v)(0).real();
}

double normSquare(const Representation& rep, const ProjectivePoint& x) {
  return 0.5 * gradientMap(rep, x).coords.squaredNorm();
}

ProjectivePoint flow(const Representation& rep, const ProjectivePoint& x, const Matrix& beta,
                     double t) {
  EigenDecomposition dec = hermEig(rep.dtauOfP(beta), rep.model().tol);
  const Vector& v = x.vector();
  // Recentre exponents on the largest cluster actually met by v.
  double shift = 0.0;
  for (const auto& c : dec.clusters)
    if ((c.basis.adjoint() * v).norm() > rep.model().tol.rank) {
      shift = c.value;
      break;
    }
  double worst = 0.0;
  for (const auto& c : dec.clusters) worst = std::max(worst, std::abs(t * (c.value - shift)));
  if (worst > 700.0)
    throw Error(ErrorCode::Overflow, "gradient-map", "flow horizon overflows after recentring");
  Vector out = Vector::Zero(v.size());
  for (const auto& c : dec.clusters)
    out += std::exp(t * (c.value - shift)) * (c.basis * (c.basis.adjoint() * v));
  return ProjectivePoint(out);
}

ProjectivePoint flowLimit(const Representation& rep, const ProjectivePoint& x,
                          const Matrix& beta) {
  EigenDecomposition dec = hermEig(rep.dtauOfP(beta), rep.model().tol);
  const Vector& v = x.vector();
  for (const auto& c : dec.clusters) {
    Vector comp = c.basis * (c.basis.adjoint() * v);
    if (comp.norm() > rep.model().tol.rank) return ProjectivePoint(comp);
  }
  throw Error(ErrorCode::Solver, "gradient-map", "vector met no eigenspace cluster");
}

Matrix maxLocus(const Representation& rep, const Matrix& beta) {
  EigenDecomposition dec = hermEig(rep.dtauOfP(beta), rep.model().tol);
  return dec.clusters.front().basis;
}

OrbitSample sampleClosedOrbit(const Representation& rep, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::Precondition, "gradient-map", "sample count must be >= 1");
  OrbitSample os;
  os.seed = seed;
  std::mt19937_64 rng(seed);
  Vector v_tau = rep.weightTable().highest_vector;
  os.points.reserve(size_t(n));
  os.k_elements.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    Matrix k = sampleK(rep.model(), rng);
    os.points.emplace_back(rep.act(k) * v_tau);
    os.k_elements.push_back(std::move(k));
  }
  return os;
}

ProjectivePoint sampleProjective(const Representation& rep, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(rep.dimV());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return ProjectivePoint(v);
}

}  // namespace orbitope
