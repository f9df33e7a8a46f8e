#pragma once

#include "orbitope/representation.hpp"

namespace orbitope {

struct GradientValue {
  RealVector coords;  // over p_basis
  Matrix as_matrix;   // Hermitian N x N reconstruction in p
};

// mu_p(x): coordinates (v* dtau(e_j) v)/(v* v) over the orthonormal p_basis.
GradientValue gradientMap(const Representation& rep, const ProjectivePoint& x);

// mu_a = orthogonal projection of mu_p onto a, in a_basis coordinates.
RealVector abelianGradient(const Representation& rep, const ProjectivePoint& x);

// mu_p^beta(x) = <mu_p(x), beta> for beta in p.
double heightFunction(const Representation& rep, const ProjectivePoint& x, const Matrix& beta);

// nu_p = ||mu_p||^2 / 2.
double normSquare(const Representation& rep, const ProjectivePoint& x);

// Gradient flow of mu_p^beta at time t: [x] -> [sum e^{t lambda_i} x_i].
ProjectivePoint flow(const Representation& rep, const ProjectivePoint& x, const Matrix& beta,
                     double t);

// phi_infinity: projection onto the highest dtau(beta)-eigenspace cluster
// meeting x.
ProjectivePoint flowLimit(const Representation& rep, const ProjectivePoint& x, const Matrix& beta);

// Top eigenspace cluster of dtau(beta): Max(beta) = P(W).
Matrix maxLocus(const Representation& rep, const Matrix& beta);

struct OrbitSample {
  std::vector<ProjectivePoint> points;
  std::vector<Matrix> k_elements;
  std::uint64_t seed = 0;
};

// Points k_i . [v_tau] with k_i Haar-distributed on K.
OrbitSample sampleClosedOrbit(const Representation& rep, int n, std::uint64_t seed);

// Uniform Fubini-Study point of P(V): normalized complex Gaussian.
ProjectivePoint sampleProjective(const Representation& rep, std::mt19937_64& rng);

}  // namespace orbitope
