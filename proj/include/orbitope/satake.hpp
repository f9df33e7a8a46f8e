#pragma once

#include "orbitope/gradient_map.hpp"

namespace orbitope {

// Trace-one PSD Hermitian class with boundary-component metadata.
struct SatakePoint {
  Matrix a;            // PSD, trace one
  Matrix component_w;  // orthonormal basis of range(a)
  bool is_interior = false;
};

SatakePoint makeSatakePoint(const Matrix& a, const ToleranceProfile& tol);

// i_tau(gK) = [tau(g) tau(g)*], trace-normalized.
SatakePoint satakeEmbed(const Representation& rep, const Matrix& g);

// Limit of i_tau(exp(t beta)) as t -> infinity: the normalized projector onto
// the top eigenspace cluster of dtau(beta). beta = 0 returns the interior
// base point (degenerate ray).
SatakePoint rayLimit(const Representation& rep, const Matrix& beta);

struct BoundaryComponent {
  std::vector<int> subset_I;
  Matrix v_i_basis;
  SatakePoint base_point;
};

// One entry per proper mu_tau-connected subset I != Pi.
std::vector<BoundaryComponent> enumerateBoundaryComponents(const Representation& rep);

struct LimitClassification {
  bool interior = false;
  Matrix g;          // interior: group element with satakeEmbed(g) = a
  Matrix k;          // boundary: k V_I = range(a)
  std::vector<int> subset_I;
  Matrix positive_part;  // conjugated positive operator on V_I
  double residual = 0.0;
};

LimitClassification classifyLimit(const Representation& rep, const SatakePoint& a,
                                  std::uint64_t seed = 12345);

// R_{gW} = L_{rho} . pi_W as a concrete evaluator.
struct RationalMapDescriptor {
  Matrix w_basis;  // orthonormal basis of W
  Matrix rho;      // positive Hermitian, acts invariantly on W
};

RationalMapDescriptor rationalMapOf(const Representation& rep, const SatakePoint& p,
                                    const ToleranceProfile& tol);

ProjectivePoint rationalEval(const RationalMapDescriptor& desc, const ProjectivePoint& x,
                             const ToleranceProfile& tol = {});

// Largest principal angle between the column spans of two orthonormal bases.
double subspaceAngle(const Matrix& a, const Matrix& b);

}  // namespace orbitope
