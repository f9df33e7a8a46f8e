#include "orbitope/eigen_estimates.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace orbitope;

PYBIND11_MODULE(_orbitope, m) {
  m.doc() = "gradient-map laboratory on matrix groups";

  py::register_exception<Error>(m, "OrbitopeError");

  py::class_<ToleranceProfile>(m, "ToleranceProfile")
      .def(py::init<>())
      .def_readwrite("eig_cluster", &ToleranceProfile::eig_cluster)
      .def_readwrite("geom", &ToleranceProfile::geom)
      .def_readwrite("rank", &ToleranceProfile::rank);

  py::class_<ProjectivePoint>(m, "ProjectivePoint")
      .def(py::init<const Vector&>())
      .def_property_readonly("vector", &ProjectivePoint::vector)
      .def("same_as", &ProjectivePoint::sameAs, py::arg("other"), py::arg("geom_tol") = 1e-8)
      .def("distance_to", &ProjectivePoint::distanceTo);

  py::class_<GroupModel>(m, "GroupModel")
      .def_readonly("name", &GroupModel::name)
      .def_readonly("n", &GroupModel::n)
      .def_readonly("N", &GroupModel::N)
      .def_property_readonly("rank", &GroupModel::rank)
      .def_property_readonly("dim_p", &GroupModel::dimP)
      .def_readonly("p_basis", &GroupModel::p_basis)
      .def_readonly("a_basis", &GroupModel::a_basis)
      .def_readonly("simple_roots", &GroupModel::simple_roots)
      .def("a_coords", &GroupModel::aCoords)
      .def("from_a_coords", &GroupModel::fromACoords)
      .def("p_coords", &GroupModel::pCoords)
      .def("from_p_coords", &GroupModel::fromPCoords);

  m.def("build_model",
        [](const std::string& family, int n) { return buildModel(family, n); },
        py::arg("family"), py::arg("n"));

  py::class_<Representation>(m, "Representation")
      .def_property_readonly("model", &Representation::model,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("dim_v", &Representation::dimV)
      .def("act", &Representation::act)
      .def("dtau_of_p", &Representation::dtauOfP)
      .def("highest_weight_point", &Representation::highestWeightPoint);

  m.def("build_representation", &buildRepresentation, py::arg("model"), py::arg("expr"));

  m.def("gradient_map",
        [](const Representation& rep, const ProjectivePoint& x) {
          return gradientMap(rep, x).coords;
        });
  m.def("abelian_gradient", &abelianGradient);
  m.def("height_function", &heightFunction);
  m.def("flow", &flow);
  m.def("flow_limit", &flowLimit);
  m.def("max_locus", &maxLocus);

  py::class_<Facet>(m, "Facet")
      .def_readonly("normal", &Facet::normal)
      .def_readonly("offset", &Facet::offset);
  py::class_<Polytope>(m, "Polytope")
      .def_readonly("ambient_dim", &Polytope::ambient_dim)
      .def_readonly("vertices", &Polytope::vertices)
      .def_readonly("facets", &Polytope::facets)
      .def("diameter", &Polytope::diameter)
      .def("contains", &Polytope::contains);
  m.def("moment_polytope", &momentPolytope);

  py::class_<SatakePoint>(m, "SatakePoint")
      .def_readonly("a", &SatakePoint::a)
      .def_readonly("component_w", &SatakePoint::component_w)
      .def_readonly("is_interior", &SatakePoint::is_interior);
  m.def("satake_embed", &satakeEmbed);
  m.def("ray_limit", &rayLimit);
  m.def("boundary_component_count",
        [](const Representation& rep) { return enumerateBoundaryComponents(rep).size(); });

  py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
      .def_readonly("atoms", &DiscreteMeasure::atoms)
      .def_readonly("weights", &DiscreteMeasure::weights);
  m.def("haar_measure", &haarMeasure);
  m.def("moment_vector",
        [](const Representation& rep, const DiscreteMeasure& g) {
          return momentVector(rep, g).coords;
        });
  m.def("bly_evaluate",
        [](const Representation& rep, const DiscreteMeasure& g, const SatakePoint& p) {
          return blyEvaluate(rep, g, p).coords;
        });

  py::class_<InverseResult>(m, "InverseResult")
      .def_readonly("g", &InverseResult::g)
      .def_readonly("xi_coords", &InverseResult::xi_coords)
      .def_readonly("residual", &InverseResult::residual)
      .def_readonly("iterations", &InverseResult::iterations);
  m.def("bly_inverse",
        [](const Representation& rep, const DiscreteMeasure& g, const RealVector& target) {
          return blyInverse(rep, g, target, momentPolytope(rep));
        });

  py::class_<RiemannMesh>(m, "RiemannMesh")
      .def_property_readonly("vertex_count", &RiemannMesh::vertexCount)
      .def_readonly("triangles", &RiemannMesh::triangles)
      .def_readonly("vertex_weights", &RiemannMesh::vertex_weights)
      .def("euler_characteristic", &RiemannMesh::eulerCharacteristic)
      .def("total_mass", &RiemannMesh::totalMass);
  m.def("mesh_sphere", &meshSphere);
  py::class_<RayleighReport>(m, "RayleighReport")
      .def_readonly("bound", &RayleighReport::bound)
      .def_readonly("numerator", &RayleighReport::numerator)
      .def_readonly("denominator", &RayleighReport::denominator)
      .def_readonly("balancing_residual", &RayleighReport::balancing_residual)
      .def_readonly("mesh_size", &RayleighReport::mesh_size);
  m.def("balance", [](const Representation& rep, const RiemannMesh& mesh) {
    return balance(rep, mesh);
  });
  m.def("rayleigh_bound", &rayleighBound);
}
