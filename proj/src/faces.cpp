#include "orbitope/faces.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace orbitope {

double Polytope::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, (vertices[i] - vertices[j]).norm());
  return d;
}

bool Polytope::contains(const RealVector& y, double tol) const {
  for (const auto& f : facets)
    if (f.normal.dot(y) > f.offset + tol) return false;
  return true;
}

namespace {

std::vector<RealVector> dedupe(const std::vector<RealVector>& points, double tol) {
  std::vector<RealVector> out;
  for (const auto& p : points) {
    bool known = false;
    for (const auto& q : out)
      if ((p - q).norm() < tol) known = true;
    if (!known) out.push_back(p);
  }
  return out;
}

void subsetsOfSize(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

Polytope convexHull(const std::vector<RealVector>& raw_points, double geom_tol) {
  if (raw_points.empty())
    throw Error(ErrorCode::Precondition, "orbitope-faces", "hull of an empty point set");
  int r = int(raw_points[0].size());
  if (r > 4)
    throw Error(ErrorCode::Config, "orbitope-faces", "rank > 4 is unsupported");
  std::vector<RealVector> points = dedupe(raw_points, 1e-10);

  double spread = 0.0;
  for (const auto& p : points)
    for (const auto& q : points) spread = std::max(spread, (p - q).norm());
  double tol = geom_tol * (1.0 + spread);

  // Full dimensionality check.
  RealMatrix diffs(r, int(points.size()) - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.col(int(i) - 1) = points[i] - points[0];
  Eigen::FullPivLU<RealMatrix> lu(diffs);
  lu.setThreshold(1e-9);
  if (points.size() < std::size_t(r) + 1 || lu.rank() < r)
    throw Error(ErrorCode::Precondition, "orbitope-faces",
                "point set does not span the ambient space");

  Polytope poly;
  poly.ambient_dim = r;

  // Candidate hyperplanes through r affinely independent points.
  std::vector<Facet> facets;
  subsetsOfSize(points.size(), std::size_t(r), [&](const std::vector<std::size_t>& idx) {
    RealVector normal;
    if (r == 1) {
      normal = RealVector::Ones(1);
    } else {
      RealMatrix span(r, r - 1);
      for (int i = 1; i < r; ++i) span.col(i - 1) = points[idx[size_t(i)]] - points[idx[0]];
      Eigen::FullPivLU<RealMatrix> slu(span.transpose());
      slu.setThreshold(1e-9);
      if (slu.rank() < r - 1) return;  // degenerate subset
      normal = slu.kernel().col(0);
      normal.normalize();
    }
    double offset = normal.dot(points[idx[0]]);
    bool all_below = true, all_above = true;
    for (const auto& p : points) {
      double s = normal.dot(p) - offset;
      if (s > tol) all_below = false;
      if (s < -tol) all_above = false;
    }
    if (!all_below && !all_above) return;
    Facet f;
    f.normal = all_below ? normal : RealVector(-normal);
    f.offset = all_below ? offset : -offset;
    for (const auto& known : facets)
      if ((known.normal - f.normal).norm() < 1e-8 && std::abs(known.offset - f.offset) < tol)
        return;
    facets.push_back(std::move(f));
  });
  poly.facets = std::move(facets);

  // Vertices: points whose active facet normals span the space.
  for (const auto& p : points) {
    RealMatrix active(r, 0);
    for (const auto& f : poly.facets)
      if (std::abs(f.normal.dot(p) - f.offset) < tol) {
        active.conservativeResize(Eigen::NoChange, active.cols() + 1);
        active.col(active.cols() - 1) = f.normal;
      }
    if (active.cols() == 0) continue;
    Eigen::FullPivLU<RealMatrix> alu(active);
    alu.setThreshold(1e-9);
    if (alu.rank() == r) poly.vertices.push_back(p);
  }
  if (poly.vertices.empty())
    throw Error(ErrorCode::Solver, "orbitope-faces", "hull construction found no vertices");
  return poly;
}

Polytope momentPolytope(const Representation& rep) {
  const GroupModel& model = rep.model();
  if (model.rank() > 4)
    throw Error(ErrorCode::Config, "orbitope-faces", "rank > 4 is unsupported");
  std::vector<RealVector> weight_points;
  for (const auto& w : rep.weightTable().weights) weight_points.push_back(w.vector);
  Polytope from_weights = convexHull(weight_points, model.tol.geom);

  std::vector<RealVector> orbit;
  const RealVector& mu = rep.highestWeight().vector;
  for (const auto& w : model.weylGroup()) orbit.push_back(w * mu);
  Polytope from_orbit = convexHull(orbit, model.tol.geom);

  // The two constructions must agree (vertex sets match within tolerance).
  double tol = model.tol.geom * (1.0 + from_weights.diameter());
  auto matches = [&](const Polytope& a, const Polytope& b) {
    for (const auto& va : a.vertices) {
      bool found = false;
      for (const auto& vb : b.vertices)
        if ((va - vb).norm() < tol) found = true;
      if (!found) return false;
    }
    return true;
  };
  if (!matches(from_weights, from_orbit) || !matches(from_orbit, from_weights))
    throw Error(ErrorCode::Solver, "orbitope-faces",
                "weight hull and Weyl-orbit hull disagree");
  return from_weights;
}

std::vector<int> exposedFace(const Polytope& p, const RealVector& beta, double geom_tol) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) best = std::max(best, beta.dot(v));
  double tol = geom_tol * (1.0 + p.diameter()) * (1.0 + beta.norm());
  std::vector<int> subset;
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    if (beta.dot(p.vertices[i]) >= best - tol) subset.push_back(int(i));
  return subset;
}

namespace {

int faceDim(const Polytope& p, const std::vector<int>& subset) {
  if (subset.size() <= 1) return 0;
  RealMatrix diffs(p.ambient_dim, int(subset.size()) - 1);
  for (std::size_t i = 1; i < subset.size(); ++i)
    diffs.col(int(i) - 1) = p.vertices[size_t(subset[i])] - p.vertices[size_t(subset[0])];
  Eigen::FullPivLU<RealMatrix> lu(diffs);
  lu.setThreshold(1e-9);
  return int(lu.rank());
}

}  // namespace

bool FaceLattice::includes(std::size_t i, std::size_t j) const {
  const auto& a = faces[i].vertex_subset;
  const auto& b = faces[j].vertex_subset;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

FaceLattice faceLattice(const Polytope& p, const GroupModel& model) {
  double tol = model.tol.geom * (1.0 + p.diameter());
  std::set<std::vector<int>> seen;
  std::vector<int> all(p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i) all[i] = int(i);
  seen.insert(all);
  // Close the set of faces under intersection with facets.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> current(seen.begin(), seen.end());
    for (const auto& face : current)
      for (const auto& f : p.facets) {
        std::vector<int> cut;
        for (int vi : face)
          if (std::abs(f.normal.dot(p.vertices[size_t(vi)]) - f.offset) < tol) cut.push_back(vi);
        if (!cut.empty() && seen.insert(cut).second) grew = true;
      }
  }

  FaceLattice lattice;
  for (const auto& subset : seen) {
    LatticeFace lf;
    lf.vertex_subset = subset;
    lf.dim = faceDim(p, subset);
    lattice.faces.push_back(std::move(lf));
  }

  // Weyl grouping: canonical form is the lexicographically smallest image
  // vertex-index set over the full Weyl group.
  auto group = model.weylGroup();
  auto vertexIndex = [&](const RealVector& v) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
      if ((p.vertices[i] - v).norm() < tol) return int(i);
    return -1;
  };
  std::vector<std::vector<int>> canon(lattice.faces.size());
  for (std::size_t fi = 0; fi < lattice.faces.size(); ++fi) {
    std::vector<int> best;
    for (const auto& w : group) {
      std::vector<int> image;
      bool ok = true;
      for (int vi : lattice.faces[fi].vertex_subset) {
        int m = vertexIndex(w * p.vertices[size_t(vi)]);
        if (m < 0) ok = false;
        image.push_back(m);
      }
      if (!ok) continue;
      std::sort(image.begin(), image.end());
      if (best.empty() || image < best) best = image;
    }
    canon[fi] = best;
  }
  std::vector<std::vector<int>> orbit_reps;
  for (std::size_t fi = 0; fi < lattice.faces.size(); ++fi) {
    auto it = std::find(orbit_reps.begin(), orbit_reps.end(), canon[fi]);
    if (it == orbit_reps.end()) {
      lattice.faces[fi].weyl_orbit = int(orbit_reps.size());
      orbit_reps.push_back(canon[fi]);
    } else {
      lattice.faces[fi].weyl_orbit = int(it - orbit_reps.begin());
    }
  }
  lattice.weyl_orbit_count = int(orbit_reps.size());
  return lattice;
}

RealVector betaForVanishingSet(const GroupModel& model, const std::vector<int>& j_set) {
  int r = model.rank();
  RealMatrix sys(r, r);
  RealVector rhs(r);
  for (int i = 0; i < r; ++i) {
    sys.row(i) = model.simple_roots[size_t(i)].transpose();
    bool in_j = std::find(j_set.begin(), j_set.end(), i) != j_set.end();
    rhs(i) = in_j ? 0.0 : 1.0;
  }
  RealVector beta = sys.fullPivLu().solve(rhs);
  // Verify the vanishing pattern.
  for (int i = 0; i < r; ++i) {
    double val = model.simple_roots[size_t(i)].dot(beta);
    bool in_j = std::find(j_set.begin(), j_set.end(), i) != j_set.end();
    if (in_j ? std::abs(val) > 1e-9 : val < 0.5)
      throw Error(ErrorCode::Solver, "orbitope-faces",
                  "constructed beta violates the vanishing pattern at root " + std::to_string(i));
  }
  return beta;
}

std::vector<FaceDescriptor> faceCorrespondence(const Representation& rep) {
  const GroupModel& model = rep.model();
  Polytope p = momentPolytope(rep);
  auto subsets = rep.muTauConnectedSubsets();
  std::vector<FaceDescriptor> out;
  for (const auto& cs : subsets) {
    FaceDescriptor fd;
    fd.subset_I = cs.subset;
    fd.saturation_J = cs.saturation;
    fd.defining_beta = betaForVanishingSet(model, cs.saturation);
    fd.vertex_subset = exposedFace(p, fd.defining_beta, model.tol.geom);
    fd.w_basis = rep.subspaceVI(cs.subset);
    fd.dim_face = faceDim(p, fd.vertex_subset);
    out.push_back(std::move(fd));
  }
  // I -> F must be injective over the enumerated set.
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].vertex_subset == out[j].vertex_subset)
        throw Error(ErrorCode::Solver, "orbitope-faces",
                    "face correspondence is not injective over connected subsets");
  return out;
}

bool orbitopeMembership(const Representation& rep, const Matrix& xi, const Polytope& p) {
  ChamberProjection cp = chamberProject(rep.model(), xi);
  return p.contains(cp.h_coords, rep.model().tol.geom * (1.0 + p.diameter()));
}

int weylClassesOfFacesContaining(const Polytope& p, const FaceLattice& lattice,
                                 const RealVector& vertex, double geom_tol) {
  double tol = geom_tol * (1.0 + p.diameter());
  int vi = -1;
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    if ((p.vertices[i] - vertex).norm() < tol) vi = int(i);
  if (vi < 0)
    throw Error(ErrorCode::Precondition, "orbitope-faces", "given point is not a vertex");
  std::set<int> orbits;
  for (const auto& f : lattice.faces)
    if (std::binary_search(f.vertex_subset.begin(), f.vertex_subset.end(), vi))
      orbits.insert(f.weyl_orbit);
  return int(orbits.size());
}

}  // namespace orbitope
