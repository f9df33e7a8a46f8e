#pragma once

#include "orbitope/bly.hpp"

#include <array>

namespace orbitope {

// Triangulated surface sitting on the closed orbit O = P^1(C) = S^2.
// Riemannian data enters only through edge lengths and areas; metrics are
// conformal factors e^{2u} sampled at vertices, u = 0 being the round sphere.
struct RiemannMesh {
  std::vector<Eigen::Vector3d> sphere_points;       // unit sphere coordinates
  std::vector<ProjectivePoint> points;              // images in P^1
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<double, 3>> base_lengths;  // geodesic, entry e opposite vertex e
  std::vector<double> base_areas;                   // round spherical areas
  RealVector conformal;                             // u at vertices
  RealVector vertex_weights;                        // lumped mass
  int level = 0;

  int vertexCount() const { return int(sphere_points.size()); }
  int eulerCharacteristic() const;
  double totalMass() const { return vertex_weights.sum(); }

  double edgeLength(std::size_t t, int e) const;  // conformally scaled
  double triangleArea(std::size_t t) const;

  void updateMass();
  void validate() const;
};

RiemannMesh meshSphere(int level);

void setConformalFactor(RiemannMesh& mesh, const RealVector& u);

// Mesh vertices as a discrete measure with lumped-mass weights.
DiscreteMeasure meshMeasure(const RiemannMesh& mesh);

// Group element a with the mesh measure's moment vector pushed to zero;
// computed by blyInverse with target 0.
InverseResult balance(const Representation& rep, const RiemannMesh& mesh,
                      double residual_tol = 1e-8);

struct RayleighReport {
  double bound = 0.0;
  double numerator = 0.0;    // sum_j of FEM Dirichlet energies of a*f_j
  double denominator = 0.0;  // lumped-mass integral of sum_j (a*f_j)^2
  double balancing_residual = 0.0;
  int mesh_size = 0;
};

// Rayleigh-quotient upper bound for lambda_1 from the balanced gradient-map
// components f_j = <mu_p, e_j>, P1 cotangent elements.
RayleighReport rayleighBound(const Representation& rep, const RiemannMesh& mesh, const Matrix& a);

// FEM Dirichlet energy of a vertex function on the mesh.
double dirichletEnergy(const RiemannMesh& mesh, const RealVector& f);

void writeOFF(const std::string& path, const RiemannMesh& mesh);
RiemannMesh readOFF(const std::string& path);

// The inverse-stereographic identification S^2 -> P^1 used by the mesh.
ProjectivePoint sphereToProjective(const Eigen::Vector3d& n);

}  // namespace orbitope
