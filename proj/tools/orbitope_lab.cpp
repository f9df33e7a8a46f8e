#include "orbitope/eigen_estimates.hpp"
#include "orbitope/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using orbitope::Json;

struct RunConfig {
  std::string family;
  int n = 0;
  std::string representation = "standard";
  std::string command;
  Json params = Json::object();
  std::uint64_t seed = 0;
  orbitope::ToleranceProfile tol;
  std::string output_dir = ".";
};

const std::vector<std::string> kCommands = {"polytope",   "faces",       "flow",
                                            "satake-ray", "boundary",    "bly",
                                            "bly-inverse", "furstenberg", "eigenbound"};

RunConfig parseConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw orbitope::Error(orbitope::ErrorCode::Config, "cli", "cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const std::exception& e) {
    throw orbitope::Error(orbitope::ErrorCode::Config, "cli",
                          std::string("config parse failure: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg.family = doc.at("group").at("family").get<std::string>();
    cfg.n = doc.at("group").at("n").get<int>();
    cfg.command = doc.at("command").get<std::string>();
    if (doc.contains("representation")) cfg.representation = doc["representation"].get<std::string>();
    if (doc.contains("params")) cfg.params = doc["params"];
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("tolerances")) {
      const Json& t = doc["tolerances"];
      if (t.contains("eig_cluster")) cfg.tol.eig_cluster = t["eig_cluster"].get<double>();
      if (t.contains("geom")) cfg.tol.geom = t["geom"].get<double>();
      if (t.contains("rank")) cfg.tol.rank = t["rank"].get<double>();
    }
  } catch (const Json::exception& e) {
    throw orbitope::Error(orbitope::ErrorCode::Config, "cli",
                          std::string("config field failure: ") + e.what());
  }
  cfg.tol.validate();
  if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end())
    throw orbitope::Error(orbitope::ErrorCode::Config, "cli",
                          "unknown command '" + cfg.command + "'");
  bool stochastic = cfg.command == "flow" || cfg.command == "bly" || cfg.command == "bly-inverse" ||
                    cfg.command == "furstenberg";
  if (stochastic && !doc.contains("seed"))
    throw orbitope::Error(orbitope::ErrorCode::Config, "cli",
                          "seed required for command '" + cfg.command + "'");
  return cfg;
}

orbitope::RealVector paramVector(const Json& params, const std::string& key, Eigen::Index dim) {
  if (!params.contains(key))
    throw orbitope::Error(orbitope::ErrorCode::Config, "cli", "missing param '" + key + "'");
  const Json& a = params[key];
  if (!a.is_array() || Eigen::Index(a.size()) != dim)
    throw orbitope::Error(orbitope::ErrorCode::Config, "cli",
                          "param '" + key + "' must be an array of length " + std::to_string(dim));
  orbitope::RealVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = a[std::size_t(i)].get<double>();
  return v;
}

void writeOutput(const RunConfig& cfg, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(cfg.output_dir);
  orbitope::writeTextFile((std::filesystem::path(cfg.output_dir) / name).string(), content);
}

int runCommand(const RunConfig& cfg) {
  using namespace orbitope;
  GroupModel model = buildModel(cfg.family, cfg.n, cfg.tol);
  Representation rep = buildRepresentation(model, cfg.representation);
  const Json& params = cfg.params;

  if (cfg.command == "polytope") {
    Polytope p = momentPolytope(rep);
    Json out;
    out["vertices"] = Json::array();
    for (const auto& v : p.vertices) out["vertices"].push_back(toJson(v));
    out["facets"] = Json::array();
    for (const auto& f : p.facets)
      out["facets"].push_back(Json{{"normal", toJson(f.normal)}, {"offset", f.offset}});
    writeOutput(cfg, "polytope.json", dumpFixed(out));
    writeOutput(cfg, "vertices.csv", verticesCSV(p));
  } else if (cfg.command == "faces") {
    Polytope p = momentPolytope(rep);
    FaceLattice lattice = faceLattice(p, model);
    auto correspondence = faceCorrespondence(rep);
    Json out;
    out["face_count"] = lattice.faces.size();
    out["weyl_orbit_count"] = lattice.weyl_orbit_count;
    out["faces"] = Json::array();
    for (const auto& f : lattice.faces)
      out["faces"].push_back(Json{{"vertices", f.vertex_subset},
                                  {"dim", f.dim},
                                  {"weyl_orbit", f.weyl_orbit}});
    out["correspondence"] = Json::array();
    for (const auto& d : correspondence)
      out["correspondence"].push_back(Json{{"subset_I", d.subset_I},
                                           {"saturation_J", d.saturation_J},
                                           {"beta", toJson(d.defining_beta)},
                                           {"vertices", d.vertex_subset},
                                           {"dim_face", d.dim_face}});
    writeOutput(cfg, "faces.json", dumpFixed(out));
  } else if (cfg.command == "flow") {
    RealVector beta_coords = paramVector(params, "beta", model.rank());
    Matrix beta = model.fromACoords(beta_coords);
    double t_max = params.value("t_max", 10.0);
    int steps = params.value("steps", 50);
    std::mt19937_64 rng(cfg.seed);
    ProjectivePoint x = sampleProjective(rep, rng);
    Json out;
    out["heights"] = Json::array();
    for (int i = 0; i <= steps; ++i) {
      double t = t_max * double(i) / double(steps);
      ProjectivePoint xt = flow(rep, x, beta, t);
      out["heights"].push_back(Json{{"t", t}, {"height", heightFunction(rep, xt, beta)}});
    }
    ProjectivePoint lim = flowLimit(rep, x, beta);
    out["limit"] = toJson(lim.vector());
    out["limit_height"] = heightFunction(rep, lim, beta);
    writeOutput(cfg, "flow.json", dumpFixed(out));
  } else if (cfg.command == "satake-ray") {
    RealVector beta_coords = paramVector(params, "beta", model.rank());
    Matrix beta = model.fromACoords(beta_coords);
    double t = params.value("t", 40.0);
    SatakePoint lim = rayLimit(rep, beta);
    SatakePoint at_t = satakeEmbed(rep, matExp(t * beta));
    Json out;
    out["limit"] = toJson(lim.a);
    out["at_t"] = toJson(at_t.a);
    out["difference"] = (lim.a - at_t.a).norm();
    out["is_interior"] = lim.is_interior;
    writeOutput(cfg, "satake_ray.json", dumpFixed(out));
  } else if (cfg.command == "boundary") {
    auto components = enumerateBoundaryComponents(rep);
    Json out;
    out["count"] = components.size();
    out["components"] = Json::array();
    for (const auto& bc : components)
      out["components"].push_back(Json{{"subset_I", bc.subset_I},
                                       {"dim_V_I", bc.v_i_basis.cols()},
                                       {"base_point", toJson(bc.base_point.a)}});
    writeOutput(cfg, "boundary.json", dumpFixed(out));
  } else if (cfg.command == "bly") {
    int atoms = params.value("atoms", 10000);
    DiscreteMeasure gamma = haarMeasure(rep, atoms, cfg.seed);
    SatakePoint p = params.contains("beta")
                        ? rayLimit(rep, model.fromACoords(paramVector(params, "beta", model.rank())))
                        : rayLimit(rep, Matrix::Zero(model.N, model.N));
    MomentVector mv = blyEvaluate(rep, gamma, p);
    Json out;
    out["atoms"] = atoms;
    out["moment"] = toJson(mv.coords);
    out["moment_norm"] = mv.coords.norm();
    writeOutput(cfg, "bly.json", dumpFixed(out));
  } else if (cfg.command == "bly-inverse") {
    int atoms = params.value("atoms", 10000);
    DiscreteMeasure gamma = haarMeasure(rep, atoms, cfg.seed);
    RealVector target = paramVector(params, "target", model.dimP());
    Polytope p = momentPolytope(rep);
    InverseResult res = blyInverse(rep, gamma, target, p);
    Json out;
    out["residual"] = res.residual;
    out["iterations"] = res.iterations;
    out["residual_trace"] = Json::array();
    for (double r : res.residual_trace) out["residual_trace"].push_back(r);
    out["xi"] = toJson(res.xi_coords);
    out["g"] = toJson(res.g);
    writeOutput(cfg, "bly_inverse.json", dumpFixed(out));
  } else if (cfg.command == "furstenberg") {
    int atoms = params.value("atoms", 10000);
    double t = params.value("t", 20.0);
    RealVector beta_coords = paramVector(params, "beta", model.rank());
    Matrix beta = model.fromACoords(beta_coords);
    DiscreteMeasure nu = haarMeasure(rep, atoms, cfg.seed);
    SatakePoint at_t = satakeEmbed(rep, matExp(t * beta));
    SatakePoint lim = rayLimit(rep, beta);
    DiscreteMeasure g_t = furstenbergMap(rep, at_t, nu);
    DiscreteMeasure g_lim = furstenbergMap(rep, lim, nu);
    Json out;
    out["weak_distance"] = weakDistance(rep, g_t, g_lim);
    out["moment_limit"] = toJson(momentVector(rep, g_lim).coords);
    out["moment_identity_gap"] =
        (momentVector(rep, g_lim).coords - blyEvaluate(rep, nu, lim).coords).norm();
    writeOutput(cfg, "furstenberg.json", dumpFixed(out));
    writeOutput(cfg, "pushforward.csv", measureCSV(g_lim));
  } else if (cfg.command == "eigenbound") {
    int level = params.value("level", 5);
    RiemannMesh mesh = meshSphere(level);
    if (params.contains("squash")) {
      double s = params["squash"].get<double>();
      RealVector u(mesh.vertexCount());
      for (int i = 0; i < mesh.vertexCount(); ++i)
        u(i) = s * mesh.sphere_points[std::size_t(i)].z();
      setConformalFactor(mesh, u);
    }
    InverseResult bal = balance(rep, mesh);
    RayleighReport report = rayleighBound(rep, mesh, bal.g);
    Json out;
    out["bound"] = report.bound;
    out["numerator"] = report.numerator;
    out["denominator"] = report.denominator;
    out["balancing_residual"] = report.balancing_residual;
    out["mesh_size"] = report.mesh_size;
    writeOutput(cfg, "eigenbound.json", dumpFixed(out));
  }
  return 0;
}

int reportError(const orbitope::Error& e, const std::string& context) {
  Json out{{"code", int(e.code())}, {"module", e.module()}, {"message", e.message()},
           {"context", context}};
  std::cout << orbitope::dumpFixed(out);
  return int(e.code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbitope-lab: gradient-map laboratory on matrix groups"};
  app.require_subcommand(1);
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "execute a config");
  run->add_option("config", config_path, "JSON config file")->required();
  CLI::App* validate = app.add_subcommand("validate", "check a config without running");
  validate->add_option("config", config_path, "JSON config file")->required();
  CLI11_PARSE(app, argc, argv);

  std::string context = app.got_subcommand(run) ? "run" : "validate";
  try {
    RunConfig cfg = parseConfig(config_path);
    orbitope::GroupModel model = orbitope::buildModel(cfg.family, cfg.n, cfg.tol);
    orbitope::buildRepresentation(model, cfg.representation);
    if (app.got_subcommand(validate)) {
      std::cout << orbitope::dumpFixed(Json{{"status", "ok"}, {"command", cfg.command}});
      return 0;
    }
    return runCommand(cfg);
  } catch (const orbitope::Error& e) {
    return reportError(e, context);
  } catch (const std::exception& e) {
    return reportError(
        orbitope::Error(orbitope::ErrorCode::Unclassified, "cli", e.what()), context);
  }
}
