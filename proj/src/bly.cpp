#include "orbitope/bly.hpp"

#include <algorithm>
#include <cmath>

namespace orbitope {

void DiscreteMeasure::validate() const {
  if (atoms.empty() || weights.size() != Eigen::Index(atoms.size()))
    throw Error(ErrorCode::Precondition, "bly-furstenberg", "measure needs matching atoms and weights");
  if (weights.minCoeff() <= 0.0)
    throw Error(ErrorCode::Precondition, "bly-furstenberg", "weights must be positive");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    throw Error(ErrorCode::Precondition, "bly-furstenberg", "weights must sum to one");
}

DiscreteMeasure haarMeasure(const Representation& rep, int n, std::uint64_t seed) {
  OrbitSample os = sampleClosedOrbit(rep, n, seed);
  DiscreteMeasure m;
  m.atoms = std::move(os.points);
  m.weights = RealVector::Constant(n, 1.0 / double(n));
  return m;
}

namespace {

double massNearHyperplane(const DiscreteMeasure& gamma, const Vector& normal, double angle_tol) {
  double mass = 0.0;
  for (std::size_t i = 0; i < gamma.atoms.size(); ++i)
    if (std::abs(normal.dot(gamma.atoms[i].vector())) <= angle_tol)
      mass += gamma.weights(Eigen::Index(i));
  return mass;
}

Vector orthogonalTo(const Vector& v) {
  Eigen::Index d = v.size();
  Vector w = Vector::Zero(d);
  // A unit vector orthogonal to v: rotate the two largest coordinates.
  Eigen::Index a = 0, b = 1;
  if (d > 1 && std::abs(v(1)) > std::abs(v(0))) std::swap(a, b);
  for (Eigen::Index i = 2; i < d; ++i)
    if (std::abs(v(i)) > std::abs(v(a))) {
      b = a;
      a = i;
    } else if (std::abs(v(i)) > std::abs(v(b))) {
      b = i;
    }
  w(a) = -std::conj(v(b));
  w(b) = std::conj(v(a));
  if (w.norm() == 0.0) w(b) = 1.0;
  return w.normalized();
}

}  // namespace

AdmissibilityResult admissible(const Representation& rep, const DiscreteMeasure& gamma,
                               double weight_tol) {
  gamma.validate();
  AdmissibilityResult res;
  Eigen::Index d = rep.dimV();
  Eigen::Index n = Eigen::Index(gamma.atoms.size());
  const double angle_tol = 1e-8;

  // Any single heavy atom lies on a hyperplane.
  Eigen::Index heavy;
  if (gamma.weights.maxCoeff(&heavy) >= weight_tol) {
    res.witness = orthogonalTo(gamma.atoms[std::size_t(heavy)].vector());
    res.mass = massNearHyperplane(gamma, res.witness, angle_tol);
    return res;
  }

  // Weighted rank of the whole atom set: total mass inside a hyperplane.
  Matrix stacked(d, n);
  for (Eigen::Index i = 0; i < n; ++i)
    stacked.col(i) = std::sqrt(gamma.weights(i)) * gamma.atoms[std::size_t(i)].vector();
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullU);
  if (svd.singularValues()(d - 1) <= 1e-8 * svd.singularValues()(0)) {
    res.witness = svd.matrixU().col(d - 1);
    res.mass = massNearHyperplane(gamma, res.witness, angle_tol);
    return res;
  }

  // Dual search: hyperplanes spanned by d-1 atoms.
  std::mt19937_64 rng(0x6f72626974ULL);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  auto tryNormal = [&](const std::vector<Eigen::Index>& idx) -> bool {
    Matrix span(d, Eigen::Index(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j)
      span.col(Eigen::Index(j)) = gamma.atoms[std::size_t(idx[j])].vector();
    Eigen::JacobiSVD<Matrix> s(span, Eigen::ComputeFullU);
    Vector normal = s.matrixU().col(d - 1);
    double mass = massNearHyperplane(gamma, normal, angle_tol);
    if (mass >= weight_tol) {
      res.witness = normal;
      res.mass = mass;
      return true;
    }
    return false;
  };
  if (d >= 2) {
    std::size_t take = std::size_t(d - 1);
    double combos = 1.0;
    for (std::size_t j = 0; j < take; ++j) combos *= double(n - Eigen::Index(j)) / double(j + 1);
    if (combos <= 5000.0) {
      std::vector<Eigen::Index> idx(take);
      std::function<bool(std::size_t, Eigen::Index)> rec = [&](std::size_t at,
                                                               Eigen::Index start) -> bool {
        if (at == take) return tryNormal(idx);
        for (Eigen::Index i = start; i < n; ++i) {
          idx[at] = i;
          if (rec(at + 1, i + 1)) return true;
        }
        return false;
      };
      if (rec(0, 0)) return res;
    } else {
      std::vector<Eigen::Index> idx(take);
      for (int trial = 0; trial < 300; ++trial) {
        for (auto& i : idx) i = pick(rng);
        if (tryNormal(idx)) return res;
      }
    }
  }

  res.admissible = true;
  return res;
}

namespace {

MomentVector momentUnder(const Representation& rep, const DiscreteMeasure& gamma,
                         const Matrix* op) {
  MomentVector mv;
  mv.coords = RealVector::Zero(rep.model().dimP());
  for (std::size_t i = 0; i < gamma.atoms.size(); ++i) {
    ProjectivePoint x = op ? ProjectivePoint(*op * gamma.atoms[i].vector()) : gamma.atoms[i];
    mv.coords += gamma.weights(Eigen::Index(i)) * gradientMap(rep, x).coords;
  }
  mv.as_matrix = rep.model().fromPCoords(mv.coords);
  return mv;
}

}  // namespace

MomentVector momentVector(const Representation& rep, const DiscreteMeasure& gamma) {
  gamma.validate();
  return momentUnder(rep, gamma, nullptr);
}

PushforwardResult pushforward(const Representation& rep, const RationalMapDescriptor& desc,
                              const DiscreteMeasure& gamma, double weight_tol) {
  gamma.validate();
  PushforwardResult out;
  std::vector<ProjectivePoint> atoms;
  std::vector<double> weights;
  for (std::size_t i = 0; i < gamma.atoms.size(); ++i) {
    try {
      atoms.push_back(rationalEval(desc, gamma.atoms[i], rep.model().tol));
      weights.push_back(gamma.weights(Eigen::Index(i)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Indeterminate) throw;
      out.dropped_mass += gamma.weights(Eigen::Index(i));
    }
  }
  if (atoms.empty())
    throw Error(ErrorCode::Indeterminate, "bly-furstenberg",
                "all atom mass lies in the indeterminacy locus");
  if (out.dropped_mass > weight_tol)
    throw Error(ErrorCode::Precondition, "bly-furstenberg",
                "indeterminate atom mass " + std::to_string(out.dropped_mass) +
                    " exceeds the admissible threshold");
  out.measure.atoms = std::move(atoms);
  out.measure.weights =
      Eigen::Map<const RealVector>(weights.data(), Eigen::Index(weights.size())) /
      (1.0 - out.dropped_mass);
  return out;
}

MomentVector blyEvaluate(const Representation& rep, const DiscreteMeasure& gamma,
                         const SatakePoint& p, double weight_tol) {
  RationalMapDescriptor desc = rationalMapOf(rep, p, rep.model().tol);
  PushforwardResult pushed = pushforward(rep, desc, gamma, weight_tol);
  return momentUnder(rep, pushed.measure, nullptr);
}

DiscreteMeasure furstenbergMap(const Representation& rep, const SatakePoint& p,
                               const DiscreteMeasure& nu, double weight_tol) {
  RationalMapDescriptor desc = rationalMapOf(rep, p, rep.model().tol);
  return pushforward(rep, desc, nu, weight_tol).measure;
}

InverseResult blyInverse(const Representation& rep, const DiscreteMeasure& gamma,
                         const RealVector& target, const Polytope& polytope,
                         double residual_tol, int max_iter) {
  const GroupModel& model = rep.model();
  AdmissibilityResult adm = admissible(rep, gamma);
  if (!adm.admissible)
    throw Error(ErrorCode::Precondition, "bly-furstenberg",
                "measure fails the admissibility surrogate (hyperplane mass " +
                    std::to_string(adm.mass) + ")");
  Matrix target_matrix = model.fromPCoords(target);
  ChamberProjection cp = chamberProject(model, target_matrix);
  double slack = model.tol.geom * (1.0 + polytope.diameter());
  for (const auto& f : polytope.facets)
    if (f.normal.dot(cp.h_coords) > f.offset - slack)
      throw Error(ErrorCode::Precondition, "bly-furstenberg",
                  "target is not strictly interior to the orbitope");

  int np = model.dimP();
  RealVector xi = RealVector::Zero(np);
  auto evalAt = [&](const RealVector& c) -> RealVector {
    Matrix t = matExp(rep.dtauOfP(model.fromPCoords(c)));
    return momentUnder(rep, gamma, &t).coords - target;
  };

  InverseResult res;
  RealVector r = evalAt(xi);
  res.residual_trace.push_back(r.norm());
  double damping = 1e-4;
  for (res.iterations = 0; res.iterations < max_iter && r.norm() > residual_tol;
       ++res.iterations) {
    double h = 1e-5 * (xi.norm() + 1.0);
    RealMatrix jac(r.size(), np);
    for (int j = 0; j < np; ++j) {
      RealVector cp_ = xi, cm = xi;
      cp_(j) += h;
      cm(j) -= h;
      jac.col(j) = (evalAt(cp_) - evalAt(cm)) / (2.0 * h);
    }
    bool improved = false;
    for (int attempt = 0; attempt < 15; ++attempt) {
      RealMatrix lhs = jac.transpose() * jac + damping * RealMatrix::Identity(np, np);
      RealVector step = lhs.ldlt().solve(-jac.transpose() * r);
      RealVector xi_try = xi + step;
      RealVector r_try = evalAt(xi_try);
      if (r_try.norm() < r.norm()) {
        xi = xi_try;
        r = r_try;
        damping = std::max(damping * 0.25, 1e-14);
        improved = true;
        break;
      }
      damping *= 8.0;
    }
    res.residual_trace.push_back(r.norm());
    if (!improved) break;
  }
  res.residual = r.norm();
  res.xi_coords = xi;
  if (res.residual > residual_tol) {
    std::string trace;
    for (double v : res.residual_trace) trace += " " + std::to_string(v);
    throw Error(ErrorCode::Solver, "bly-furstenberg",
                "inverse solver stalled; residual trace:" + trace);
  }
  res.g = matExp(model.fromPCoords(xi));
  return res;
}

double weakDistance(const Representation& rep, const DiscreteMeasure& a,
                    const DiscreteMeasure& b, int degree) {
  if (degree < 1 || degree > 2)
    throw Error(ErrorCode::Config, "bly-furstenberg", "weakDistance degree must be 1 or 2");
  a.validate();
  b.validate();
  int np = rep.model().dimP();
  auto moments = [&](const DiscreteMeasure& m) -> RealVector {
    int extra = degree == 2 ? np * (np + 1) / 2 : 0;
    RealVector out = RealVector::Zero(np + extra);
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
      RealVector f = gradientMap(rep, m.atoms[i]).coords;
      double w = m.weights(Eigen::Index(i));
      out.head(np) += w * f;
      if (degree == 2) {
        int at = np;
        for (int j = 0; j < np; ++j)
          for (int k = j; k < np; ++k) out(at++) += w * f(j) * f(k);
      }
    }
    return out;
  };
  return (moments(a) - moments(b)).cwiseAbs().maxCoeff();
}

}  // namespace orbitope
