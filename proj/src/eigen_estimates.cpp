#include "orbitope/eigen_estimates.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace orbitope {

ProjectivePoint sphereToProjective(const Eigen::Vector3d& n) {
  Vector v(2);
  if (1.0 + n.z() < 1e-12) {
    v << Complex(0.0), Complex(1.0);
  } else {
    v << Complex(1.0 + n.z()), Complex(n.x(), n.y());
  }
  return ProjectivePoint(v);
}

int RiemannMesh::eulerCharacteristic() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      int a = t[std::size_t((e + 1) % 3)], b = t[std::size_t((e + 2) % 3)];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  return vertexCount() - int(edges.size()) + int(triangles.size());
}

double RiemannMesh::edgeLength(std::size_t t, int e) const {
  int a = triangles[t][std::size_t((e + 1) % 3)];
  int b = triangles[t][std::size_t((e + 2) % 3)];
  double scale = std::exp(0.5 * (conformal(a) + conformal(b)));
  return base_lengths[t][std::size_t(e)] * scale;
}

double RiemannMesh::triangleArea(std::size_t t) const {
  const auto& tri = triangles[t];
  double mean = (conformal(tri[0]) + conformal(tri[1]) + conformal(tri[2])) / 3.0;
  return base_areas[t] * std::exp(2.0 * mean);
}

void RiemannMesh::updateMass() {
  vertex_weights = RealVector::Zero(vertexCount());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    double third = triangleArea(t) / 3.0;
    for (int c = 0; c < 3; ++c) vertex_weights(triangles[t][std::size_t(c)]) += third;
  }
}

void RiemannMesh::validate() const {
  if (eulerCharacteristic() != 2)
    throw Error(ErrorCode::Mesh, "eigen-estimates", "mesh is not a topological sphere");
  if (!(totalMass() > 0.0))
    throw Error(ErrorCode::Mesh, "eigen-estimates", "mesh has nonpositive total mass");
}

namespace {

double geodesic(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
}

// Spherical excess from the three geodesic side lengths (L'Huilier).
double sphericalArea(double a, double b, double c) {
  double s = (a + b + c) / 2.0;
  double t = std::tan(s / 2.0) * std::tan((s - a) / 2.0) * std::tan((s - b) / 2.0) *
             std::tan((s - c) / 2.0);
  return 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
}

void finalizeGeometry(RiemannMesh& mesh) {
  mesh.points.clear();
  mesh.points.reserve(mesh.sphere_points.size());
  for (const auto& n : mesh.sphere_points) mesh.points.push_back(sphereToProjective(n));
  mesh.base_lengths.resize(mesh.triangles.size());
  mesh.base_areas.resize(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e)
      mesh.base_lengths[t][std::size_t(e)] =
          geodesic(mesh.sphere_points[std::size_t(tri[std::size_t((e + 1) % 3)])],
                   mesh.sphere_points[std::size_t(tri[std::size_t((e + 2) % 3)])]);
    mesh.base_areas[t] = sphericalArea(mesh.base_lengths[t][0], mesh.base_lengths[t][1],
                                       mesh.base_lengths[t][2]);
  }
  if (mesh.conformal.size() != mesh.vertexCount())
    mesh.conformal = RealVector::Zero(mesh.vertexCount());
  mesh.updateMass();
  mesh.validate();
}

}  // namespace

RiemannMesh meshSphere(int level) {
  if (level < 0)
    throw Error(ErrorCode::Precondition, "eigen-estimates", "subdivision level must be >= 0");
  RiemannMesh mesh;
  mesh.level = level;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> v = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (v[std::size_t(a)] + v[std::size_t(b)]).normalized();
      v.push_back(m);
      int id = int(v.size()) - 1;
      midpoint[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(f.size() * 4);
    for (const auto& t : f) {
      int a = mid(t[0], t[1]), b = mid(t[1], t[2]), c = mid(t[2], t[0]);
      next.push_back({t[0], a, c});
      next.push_back({t[1], b, a});
      next.push_back({t[2], c, b});
      next.push_back({a, b, c});
    }
    f = std::move(next);
  }
  mesh.sphere_points = std::move(v);
  mesh.triangles = std::move(f);
  finalizeGeometry(mesh);
  return mesh;
}

void setConformalFactor(RiemannMesh& mesh, const RealVector& u) {
  if (u.size() != mesh.vertexCount())
    throw Error(ErrorCode::Mesh, "eigen-estimates", "conformal factor size mismatch");
  mesh.conformal = u;
  mesh.updateMass();
}

DiscreteMeasure meshMeasure(const RiemannMesh& mesh) {
  DiscreteMeasure m;
  m.atoms = mesh.points;
  m.weights = mesh.vertex_weights / mesh.totalMass();
  return m;
}

InverseResult balance(const Representation& rep, const RiemannMesh& mesh, double residual_tol) {
  DiscreteMeasure measure = meshMeasure(mesh);
  Polytope p = momentPolytope(rep);
  RealVector target = RealVector::Zero(rep.model().dimP());
  return blyInverse(rep, measure, target, p, residual_tol, 400);
}

double dirichletEnergy(const RiemannMesh& mesh, const RealVector& f) {
  if (f.size() != mesh.vertexCount())
    throw Error(ErrorCode::Mesh, "eigen-estimates", "vertex function size mismatch");
  double energy = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    double l0 = mesh.edgeLength(t, 0), l1 = mesh.edgeLength(t, 1), l2 = mesh.edgeLength(t, 2);
    double s = (l0 + l1 + l2) / 2.0;
    double area = std::sqrt(std::max(0.0, s * (s - l0) * (s - l1) * (s - l2)));
    if (area < 1e-14)
      throw Error(ErrorCode::Mesh, "eigen-estimates", "degenerate triangle in FEM assembly");
    const auto& tri = mesh.triangles[t];
    double sq[3] = {l0 * l0, l1 * l1, l2 * l2};
    for (int e = 0; e < 3; ++e) {
      // cot of the angle opposite edge e, over the intrinsic flat triangle
      double cot = (sq[(e + 1) % 3] + sq[(e + 2) % 3] - sq[e]) / (4.0 * area);
      double df = f(tri[std::size_t((e + 1) % 3)]) - f(tri[std::size_t((e + 2) % 3)]);
      energy += 0.5 * cot * df * df;
    }
  }
  return energy;
}

RayleighReport rayleighBound(const Representation& rep, const RiemannMesh& mesh, const Matrix& a) {
  const GroupModel& model = rep.model();
  Matrix rho = polarDecompose(a, model.tol).rho;
  Matrix op = rep.act(rho);
  int nv = mesh.vertexCount();
  int np = model.dimP();
  RealMatrix f(nv, np);
  for (int i = 0; i < nv; ++i)
    f.row(i) = gradientMap(rep, ProjectivePoint(op * mesh.points[std::size_t(i)].vector()))
                   .coords.transpose();

  RayleighReport report;
  report.mesh_size = nv;
  RealVector mass = mesh.vertex_weights;
  RealVector moment = (f.transpose() * mass) / mass.sum();
  report.balancing_residual = moment.norm();
  if (report.balancing_residual > 1e-6)
    throw Error(ErrorCode::Precondition, "eigen-estimates",
                "balancing residual above 1e-6; balance the mesh first");
  for (int j = 0; j < np; ++j) report.numerator += dirichletEnergy(mesh, f.col(j));
  for (int i = 0; i < nv; ++i) report.denominator += mass(i) * f.row(i).squaredNorm();
  if (!(report.denominator > 0.0))
    throw Error(ErrorCode::Solver, "eigen-estimates", "vanishing Rayleigh denominator");
  report.bound = report.numerator / report.denominator;
  return report;
}

void writeOFF(const std::string& path, const RiemannMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Mesh, "eigen-estimates", "cannot open " + path);
  out << "OFF\n" << mesh.vertexCount() << " " << mesh.triangles.size() << " 0\n";
  char buf[128];
  for (const auto& p : mesh.sphere_points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    out << buf;
  }
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

RiemannMesh readOFF(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Mesh, "eigen-estimates", "cannot open " + path);
  std::string header;
  in >> header;
  if (header != "OFF") throw Error(ErrorCode::Mesh, "eigen-estimates", "not an OFF file");
  int nv = 0, nf = 0, ne = 0;
  in >> nv >> nf >> ne;
  if (!in || nv <= 0 || nf <= 0)
    throw Error(ErrorCode::Mesh, "eigen-estimates", "bad OFF counts");
  RiemannMesh mesh;
  mesh.level = -1;
  mesh.sphere_points.resize(std::size_t(nv));
  for (auto& p : mesh.sphere_points) {
    in >> p.x() >> p.y() >> p.z();
    p.normalize();
  }
  mesh.triangles.resize(std::size_t(nf));
  for (auto& t : mesh.triangles) {
    int k = 0;
    in >> k >> t[0] >> t[1] >> t[2];
    if (k != 3) throw Error(ErrorCode::Mesh, "eigen-estimates", "only triangle faces supported");
  }
  if (!in) throw Error(ErrorCode::Mesh, "eigen-estimates", "truncated OFF file");
  finalizeGeometry(mesh);
  return mesh;
}

}  // namespace orbitope
