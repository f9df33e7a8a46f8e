#pragma once

#include "orbitope/group_model.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace orbitope {

// Constructor expressions: standard | dual | sym(k, E) | wedge(k, E) | tensor(E, E)
struct ReprExpr {
  enum class Kind { Standard, Dual, Sym, Wedge, Tensor };
  Kind kind = Kind::Standard;
  int power = 0;  // for Sym/Wedge
  std::shared_ptr<ReprExpr> left, right;

  std::string str() const;
};

std::shared_ptr<ReprExpr> parseReprExpr(const std::string& text);

struct Weight {
  RealVector vector;      // element of a, in a_basis coordinates
  Matrix space;           // orthonormal basis of the weight space
  RealVector coeffs;      // c_alpha in mu_tau - lambda = sum c_alpha alpha
  std::vector<int> support;  // {alpha : c_alpha > tol}
};

struct WeightTable {
  std::vector<Weight> weights;
  int highest = -1;
  Vector highest_vector;
  bool highest_space_multidimensional = false;
};

class Representation {
 public:
  Representation(const GroupModel& model, std::shared_ptr<ReprExpr> expr);

  const GroupModel& model() const { return model_; }
  const ReprExpr& expr() const { return *expr_; }
  Eigen::Index dimV() const { return dimV_; }

  const std::vector<Matrix>& dtauK() const { return dtau_k_; }
  const std::vector<Matrix>& dtauP() const { return dtau_p_; }

  // dtau on an element of p (coordinates resolved over p_basis).
  Matrix dtauOfP(const Matrix& xi) const;
  // Group action tau(g), computed functorially along the expression tree.
  Matrix act(const Matrix& g) const;

  const WeightTable& weightTable() const;
  const Weight& highestWeight() const;
  ProjectivePoint highestWeightPoint() const;

  // mu_tau-connected subsets of the simple roots, with their saturations.
  struct ConnectedSubset {
    std::vector<int> subset;
    std::vector<int> saturation;
  };
  std::vector<ConnectedSubset> muTauConnectedSubsets() const;

  // Orthonormal basis of V_I = sum of weight spaces with supp(lambda) in I.
  Matrix subspaceVI(const std::vector<int>& subset) const;

  std::optional<int> commutantDim() const { return commutant_dim_; }

 private:
  GroupModel model_;
  std::shared_ptr<ReprExpr> expr_;
  Eigen::Index dimV_ = 0;
  std::vector<Matrix> dtau_k_;
  std::vector<Matrix> dtau_p_;
  std::function<Matrix(const Matrix&)> act_;
  std::optional<int> commutant_dim_;
  mutable std::optional<WeightTable> table_;

  void computeWeightTable() const;
};

Representation buildRepresentation(const GroupModel& model, const std::string& expr_text);

}  // namespace orbitope
