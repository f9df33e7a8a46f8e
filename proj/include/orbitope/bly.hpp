#pragma once

#include "orbitope/faces.hpp"
#include "orbitope/satake.hpp"

namespace orbitope {

// Weighted atoms on the closed orbit; weights positive, summing to one.
struct DiscreteMeasure {
  std::vector<ProjectivePoint> atoms;
  RealVector weights;

  void validate() const;
};

// Uniform weights on sampleClosedOrbit points.
DiscreteMeasure haarMeasure(const Representation& rep, int n, std::uint64_t seed);

// Atomic surrogate for tau-admissibility: no hyperplane carries atom mass
// >= weight_tol. Rank analysis on the full atom set plus a dual search over
// hyperplanes spanned by atom subsets.
struct AdmissibilityResult {
  bool admissible = false;
  Vector witness;      // hyperplane normal on failure
  double mass = 0.0;   // mass found on the witness hyperplane
};

AdmissibilityResult admissible(const Representation& rep, const DiscreteMeasure& gamma,
                               double weight_tol = 1e-3);

struct MomentVector {
  RealVector coords;  // over p_basis
  Matrix as_matrix;
};

MomentVector momentVector(const Representation& rep, const DiscreteMeasure& gamma);

// Psi_gamma at a compactification point: interior uses rho(g) directly,
// boundary composes with the rational map. Atom mass within rank tolerance of
// P(W_perp) is dropped and the rest renormalized; losing more than weight_tol
// of the mass is an error.
MomentVector blyEvaluate(const Representation& rep, const DiscreteMeasure& gamma,
                         const SatakePoint& p, double weight_tol = 1e-3);

struct PushforwardResult {
  DiscreteMeasure measure;
  double dropped_mass = 0.0;
};

PushforwardResult pushforward(const Representation& rep, const RationalMapDescriptor& desc,
                              const DiscreteMeasure& gamma, double weight_tol = 1e-3);

struct InverseResult {
  Matrix g;            // exp(xi), xi in p
  RealVector xi_coords;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_trace;
};

// Solves Psi_gamma(exp(xi)) = target over xi in p by damped Gauss-Newton with
// finite-difference Jacobian. target given in p_basis coordinates and must be
// strictly interior to the orbitope.
InverseResult blyInverse(const Representation& rep, const DiscreteMeasure& gamma,
                         const RealVector& target, const Polytope& polytope,
                         double residual_tol = 1e-6, int max_iter = 200);

// Gamma(p) = phat_* nu.
DiscreteMeasure furstenbergMap(const Representation& rep, const SatakePoint& p,
                               const DiscreteMeasure& nu, double weight_tol = 1e-3);

// Supremum of integral differences over mu_p-component monomials up to the
// given degree (1 or 2). A surrogate for the weak-* topology on the measures
// arising here, not a metric in general.
double weakDistance(const Representation& rep, const DiscreteMeasure& a,
                    const DiscreteMeasure& b, int degree = 2);

}  // namespace orbitope
