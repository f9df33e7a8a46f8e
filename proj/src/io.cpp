#include "orbitope/io.hpp"

#include <cstdio>
#include <fstream>

namespace orbitope {

std::string formatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void dumpRec(const Json& j, int indent, int depth, std::string& out) {
  std::string pad(std::size_t(indent * (depth + 1)), ' ');
  std::string close_pad(std::size_t(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dumpRec(it.value(), indent, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dumpRec(v, indent, depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += formatNumber(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dumpFixed(const Json& j, int indent) {
  std::string out;
  dumpRec(j, indent, 0, out);
  out += "\n";
  return out;
}

void writeTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Config, "cli", "cannot write " + path);
  out << content;
}

Json toJson(const RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json toJson(const RealMatrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(std::move(row));
  }
  return a;
}

Json toJson(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back(Json::array({v(i).real(), v(i).imag()}));
  return a;
}

Json toJson(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    a.push_back(std::move(row));
  }
  return a;
}

std::string verticesCSV(const Polytope& p) {
  std::string out;
  for (int j = 0; j < p.ambient_dim; ++j) {
    if (j) out += ",";
    out += "a" + std::to_string(j);
  }
  out += "\n";
  for (const auto& v : p.vertices) {
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      if (j) out += ",";
      out += formatNumber(v(j));
    }
    out += "\n";
  }
  return out;
}

std::string measureCSV(const DiscreteMeasure& m) {
  std::string out;
  Eigen::Index d = m.atoms.empty() ? 0 : m.atoms.front().dim();
  for (Eigen::Index j = 0; j < d; ++j)
    out += "re" + std::to_string(j) + ",im" + std::to_string(j) + ",";
  out += "weight\n";
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const Vector& v = m.atoms[i].vector();
    for (Eigen::Index j = 0; j < d; ++j)
      out += formatNumber(v(j).real()) + "," + formatNumber(v(j).imag()) + ",";
    out += formatNumber(m.weights(Eigen::Index(i))) + "\n";
  }
  return out;
}

}  // namespace orbitope
