#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitope/eigen_estimates.hpp"

#include <cstdio>

using namespace orbitope;

namespace {

Representation sphereRep() {
  static GroupModel m = buildModel("SL_C", 2);
  return buildRepresentation(m, "standard");
}

RealVector squashFactor(const RiemannMesh& mesh, double s) {
  RealVector u(mesh.vertexCount());
  for (int i = 0; i < mesh.vertexCount(); ++i) u(i) = s * mesh.sphere_points[std::size_t(i)].z();
  return u;
}

}  // namespace

TEST_CASE("icosahedral meshes") {
  RiemannMesh ico = meshSphere(0);
  CHECK(ico.vertexCount() == 12);
  CHECK(ico.triangles.size() == 20);
  CHECK(ico.eulerCharacteristic() == 2);

  RiemannMesh fine = meshSphere(4);
  CHECK(fine.vertexCount() == 2562);
  CHECK(fine.triangles.size() == 5120);
  CHECK(fine.eulerCharacteristic() == 2);
  CHECK(std::abs(fine.totalMass() - 4.0 * M_PI) < 1e-3);
  for (const auto& p : fine.sphere_points) CHECK(std::abs(p.norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(meshSphere(-1), Error);
}

TEST_CASE("conformal scaling of lengths and areas") {
  RiemannMesh mesh = meshSphere(2);
  double base_mass = mesh.totalMass();
  setConformalFactor(mesh, RealVector::Constant(mesh.vertexCount(), std::log(2.0)));
  CHECK(mesh.totalMass() == doctest::Approx(4.0 * base_mass));
  CHECK(mesh.edgeLength(0, 0) == doctest::Approx(2.0 * mesh.base_lengths[0][0]));
  CHECK_THROWS_AS(setConformalFactor(mesh, RealVector::Zero(3)), Error);
}

TEST_CASE("projective identification") {
  Eigen::Vector3d north(0, 0, 1), south(0, 0, -1), east(1, 0, 0);
  Vector e1 = Vector::Zero(2), e2 = Vector::Zero(2);
  e1(0) = 1;
  e2(1) = 1;
  CHECK(sphereToProjective(north).sameAs(ProjectivePoint(e1)));
  CHECK(sphereToProjective(south).sameAs(ProjectivePoint(e2)));
  Vector mid(2);
  mid << Complex(1), Complex(1);
  CHECK(sphereToProjective(east).sameAs(ProjectivePoint(mid)));
}

TEST_CASE("gradient-map components have constant square sum one half") {
  Representation rep = sphereRep();
  RiemannMesh mesh = meshSphere(3);
  for (const auto& x : mesh.points) {
    RealVector f = gradientMap(rep, x).coords;
    CHECK(std::abs(f.squaredNorm() - 0.5) < 1e-12);
  }
}

TEST_CASE("dirichlet energy of a coordinate function") {
  // int |grad z|^2 over S^2 is 8 pi / 3.
  RiemannMesh mesh = meshSphere(4);
  RealVector z(mesh.vertexCount());
  for (int i = 0; i < mesh.vertexCount(); ++i) z(i) = mesh.sphere_points[std::size_t(i)].z();
  CHECK(std::abs(dirichletEnergy(mesh, z) - 8.0 * M_PI / 3.0) < 2e-2);
  CHECK_THROWS_AS(dirichletEnergy(mesh, RealVector::Zero(3)), Error);
}

TEST_CASE("degenerate triangles are refused") {
  RiemannMesh mesh = meshSphere(1);
  RealVector u = RealVector::Zero(mesh.vertexCount());
  u(mesh.triangles[0][0]) = 12.0;
  u(mesh.triangles[0][1]) = 12.0;  // one edge blown up past the triangle inequality
  setConformalFactor(mesh, u);
  RealVector f = RealVector::LinSpaced(mesh.vertexCount(), 0.0, 1.0);
  CHECK_THROWS_AS(dirichletEnergy(mesh, f), Error);
  try {
    dirichletEnergy(mesh, f);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Mesh);
  }
}

TEST_CASE("coarse meshes fail the admissibility surrogate") {
  // At level 3 individual vertex weights exceed the hyperplane-mass
  // threshold, so balancing is refused up front.
  Representation rep = sphereRep();
  RiemannMesh mesh = meshSphere(3);
  CHECK_THROWS_AS(balance(rep, mesh), Error);
  try {
    balance(rep, mesh);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("balancing the round mesh is a no-op") {
  Representation rep = sphereRep();
  RiemannMesh mesh = meshSphere(4);
  InverseResult r = balance(rep, mesh);
  CHECK(r.residual < 1e-8);
  CHECK(r.xi_coords.norm() < 1e-6);
}

TEST_CASE("balancing a squashed mesh") {
  Representation rep = sphereRep();
  RiemannMesh mesh = meshSphere(4);
  setConformalFactor(mesh, squashFactor(mesh, 0.3));
  InverseResult r = balance(rep, mesh);
  CHECK(r.residual < 1e-8);
  CHECK(r.xi_coords.norm() > 1e-3);  // genuinely moved
  // The balanced measure has vanishing moment.
  DiscreteMeasure mu = meshMeasure(mesh);
  CHECK(blyEvaluate(rep, mu, satakeEmbed(rep, r.g)).coords.norm() < 1e-8);
}

TEST_CASE("rayleigh bound on the round sphere") {
  Representation rep = sphereRep();
  RiemannMesh mesh = meshSphere(4);
  RayleighReport rpt = rayleighBound(rep, mesh, Matrix::Identity(2, 2));
  CHECK(rpt.balancing_residual < 1e-8);
  CHECK(std::abs(rpt.bound - 2.0) < 5e-3);
  CHECK(rpt.denominator == doctest::Approx(2.0 * M_PI).epsilon(1e-3));
  CHECK(rpt.mesh_size == 2562);

  // Right K-invariance of the balancing element.
  std::mt19937_64 rng(3);
  Matrix k = sampleK(rep.model(), rng);
  RayleighReport rot = rayleighBound(rep, mesh, k);
  CHECK(std::abs(rot.bound - rpt.bound) < 1e-8);
}

TEST_CASE("unbalanced input is rejected") {
  Representation rep = sphereRep();
  RiemannMesh mesh = meshSphere(3);
  setConformalFactor(mesh, squashFactor(mesh, 0.6));
  CHECK_THROWS_AS(rayleighBound(rep, mesh, Matrix::Identity(2, 2)), Error);
  try {
    rayleighBound(rep, mesh, Matrix::Identity(2, 2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("bound is stable for a squashed metric") {
  Representation rep = sphereRep();
  double bounds[2] = {0.0, 0.0};
  for (int level = 4; level <= 5; ++level) {
    RiemannMesh mesh = meshSphere(level);
    setConformalFactor(mesh, squashFactor(mesh, 0.3));
    InverseResult bal = balance(rep, mesh);
    bounds[level - 4] = rayleighBound(rep, mesh, bal.g).bound;
  }
  CHECK(std::abs(bounds[0] - bounds[1]) / bounds[1] < 0.02);
}

TEST_CASE("hersch-type bound at level five") {
  Representation rep = sphereRep();
  RiemannMesh mesh = meshSphere(5);
  InverseResult bal = balance(rep, mesh);
  RayleighReport rpt = rayleighBound(rep, mesh, bal.g);
  CHECK(rpt.balancing_residual <= 1e-8);
  CHECK(std::abs(rpt.bound - 2.0) <= 5e-3);

  RayleighReport coarse = rayleighBound(rep, meshSphere(4), Matrix::Identity(2, 2));
  CHECK(std::abs(coarse.bound - rpt.bound) / rpt.bound < 0.01);
}

TEST_CASE("OFF round trip") {
  RiemannMesh mesh = meshSphere(2);
  std::string path = "test_mesh_roundtrip.off";
  writeOFF(path, mesh);
  RiemannMesh back = readOFF(path);
  REQUIRE(back.vertexCount() == mesh.vertexCount());
  REQUIRE(back.triangles.size() == mesh.triangles.size());
  for (int i = 0; i < mesh.vertexCount(); ++i)
    CHECK((back.sphere_points[std::size_t(i)] - mesh.sphere_points[std::size_t(i)]).norm() < 1e-12);
  CHECK(std::abs(back.totalMass() - mesh.totalMass()) < 1e-12);
  std::remove(path.c_str());
  CHECK_THROWS_AS(readOFF("does_not_exist.off"), Error);
}
