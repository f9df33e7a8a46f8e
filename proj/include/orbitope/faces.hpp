#pragma once

#include "orbitope/gradient_map.hpp"

namespace orbitope {

struct Facet {
  RealVector normal;
  double offset = 0.0;  // <normal, y> <= offset on the polytope
};

struct Polytope {
  int ambient_dim = 0;
  std::vector<RealVector> vertices;
  std::vector<Facet> facets;

  double diameter() const;
  bool contains(const RealVector& y, double tol) const;
};

// Convex hull in a-coordinates by exhaustive hyperplane candidates; desk
// scale only (rank <= 4, a few dozen points).
Polytope convexHull(const std::vector<RealVector>& points, double geom_tol);

// P = conv(weights) = conv(Weyl orbit of the highest weight); both routes are
// computed and compared.
Polytope momentPolytope(const Representation& rep);

// Vertex indices of the argmax face of <., beta> over the vertices.
std::vector<int> exposedFace(const Polytope& p, const RealVector& beta, double geom_tol);

struct LatticeFace {
  std::vector<int> vertex_subset;  // sorted vertex indices
  int dim = 0;
  int weyl_orbit = -1;  // orbit id after grouping
};

struct FaceLattice {
  std::vector<LatticeFace> faces;  // includes the full polytope, excludes the empty face
  int weyl_orbit_count = 0;

  bool includes(std::size_t i, std::size_t j) const;  // face i subset of face j
};

FaceLattice faceLattice(const Polytope& p, const GroupModel& model);

struct FaceDescriptor {
  std::vector<int> subset_I;
  std::vector<int> saturation_J;
  RealVector defining_beta;  // a-coordinates
  std::vector<int> vertex_subset;
  Matrix w_basis;  // subspace W_I of V
  int dim_face = 0;
};

// The face <-> (I, J, beta_J, W_I) correspondence over mu_tau-connected
// subsets, with x = highest weight vector.
std::vector<FaceDescriptor> faceCorrespondence(const Representation& rep);

// Membership of xi in the orbitope E via the chamber reduction.
bool orbitopeMembership(const Representation& rep, const Matrix& xi, const Polytope& p);

// beta in the chamber with alpha(beta) = 0 exactly for alpha in J.
RealVector betaForVanishingSet(const GroupModel& model, const std::vector<int>& j_set);

// Number of Weyl-orbit classes of faces whose vertex set contains the given
// vertex.
int weylClassesOfFacesContaining(const Polytope& p, const FaceLattice& lattice,
                                 const RealVector& vertex, double geom_tol);

}  // namespace orbitope
