#pragma once

#include "orbitope/core.hpp"
#include "orbitope/numeric.hpp"

#include <cstdint>
#include <random>

namespace orbitope {

enum class GroupFamily { SL_R, SL_C };

// Matrix realization of a real semisimple group with Cartan decomposition
// g = k + p, maximal abelian a in p, restricted roots and Weyl group.
// SL_R(n): K = SO(n), p = traceless real symmetric.
// SL_C(2): K = SU(2), p = traceless Hermitian, rank one.
struct GroupModel {
  std::string name;
  GroupFamily family = GroupFamily::SL_R;
  int n = 0;  // family parameter
  int N = 0;  // defining matrix dimension
  ToleranceProfile tol;

  std::vector<Matrix> k_basis;  // skew-Hermitian, orthonormal under Re tr(XY*)
  std::vector<Matrix> p_basis;  // Hermitian, orthonormal
  std::vector<Matrix> a_basis;  // orthonormal subset spanning a

  // Simple roots as vectors in a (via the trace inner product), expressed in
  // a_basis coordinates.
  std::vector<RealVector> simple_roots;
  // All restricted roots with multiplicities, same coordinates.
  std::vector<std::pair<RealVector, int>> restricted_roots;
  // Weyl generators as orthogonal maps on a_basis coordinates.
  std::vector<RealMatrix> weyl_generators;
  // Adjacency over simple roots: edge iff <a_i, a_j> != 0.
  std::vector<std::vector<bool>> root_graph;

  int rank() const { return static_cast<int>(a_basis.size()); }
  int dimP() const { return static_cast<int>(p_basis.size()); }
  int dimG() const { return static_cast<int>(k_basis.size() + p_basis.size()); }

  // Coordinates <xi, e_j> of an element of p over p_basis; rejects xi
  // outside span(p_basis).
  RealVector pCoords(const Matrix& xi) const;
  Matrix fromPCoords(const RealVector& c) const;

  RealVector aCoords(const Matrix& h) const;        // a-part only
  Matrix fromACoords(const RealVector& c) const;

  // alpha(H) for a root given in a_basis coordinates and H in a.
  static double rootValue(const RealVector& root, const RealVector& h_coords) {
    return root.dot(h_coords);
  }

  // Full Weyl group, generated from weyl_generators by closure.
  std::vector<RealMatrix> weylGroup() const;

  bool isGroupElement(const Matrix& g, double tol_scale = 1e-8) const;
};

GroupModel buildModel(GroupFamily family, int n, const ToleranceProfile& tol = {});
GroupModel buildModel(const std::string& family_name, int n, const ToleranceProfile& tol = {});

// ad(beta) as a real symmetric matrix over the basis k_basis + p_basis of g.
RealMatrix adjointMatrix(const GroupModel& model, const Matrix& beta);

struct ChamberProjection {
  Matrix h;       // chamber representative in a (as a matrix)
  RealVector h_coords;
  Matrix k;       // element of K with Ad(k) xi = h
};

// Conjugates xi in p into the closed positive chamber of a.
ChamberProjection chamberProject(const GroupModel& model, const Matrix& xi);

struct ParabolicDatum {
  Matrix beta;              // input beta
  Matrix beta_chamber;      // chamber representative
  RealVector beta_coords;   // chamber rep in a_basis coordinates
  std::vector<int> vanishing_set;  // I = {i : alpha_i(beta_chamber) = 0}
  EigenDecomposition ad_eigen;     // ad(beta) eigenspace data over g
  int dim_nonnegative = 0;         // dim g^{beta+}
};

ParabolicDatum parabolicFromBeta(const GroupModel& model, const Matrix& beta);

// Subsets I of the simple roots such that every connected component of I
// contains a root not vanishing on x. Includes the empty set.
std::vector<std::vector<int>> xConnectedSubsets(const GroupModel& model,
                                                const RealVector& x_coords);

bool isXConnected(const GroupModel& model, const RealVector& x_coords,
                  const std::vector<int>& subset);

// J = I together with the simple roots orthogonal to I and vanishing on x.
std::vector<int> saturate(const GroupModel& model, const RealVector& x_coords,
                          const std::vector<int>& subset);

struct KAKDecomposition {
  Matrix k1;
  Matrix h;  // element of a, chamber-ordered
  Matrix k2;
};

KAKDecomposition kakDecompose(const GroupModel& model, const Matrix& g);

// Haar-distributed element of K (Gaussian + orthonormalization, determinant
// corrected for SO(n); quaternionic normalization for SU(2)).
Matrix sampleK(const GroupModel& model, std::mt19937_64& rng);

}  // namespace orbitope
