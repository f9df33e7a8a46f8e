#include "orbitope/representation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace orbitope {

std::string ReprExpr::str() const {
  switch (kind) {
    case Kind::Standard:
      return "standard";
    case Kind::Dual:
      return "dual(" + left->str() + ")";
    case Kind::Sym:
      return "sym(" + std::to_string(power) + ", " + left->str() + ")";
    case Kind::Wedge:
      return "wedge(" + std::to_string(power) + ", " + left->str() + ")";
    case Kind::Tensor:
      return "tensor(" + left->str() + ", " + right->str() + ")";
  }
  return "?";
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skipSpace() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::Config, "representation",
                "parse error at position " + std::to_string(pos) + ": " + what);
  }

  void expect(char c) {
    skipSpace();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string ident() {
    skipSpace();
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected identifier");
    return text.substr(start, pos - start);
  }

  int integer() {
    skipSpace();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stoi(text.substr(start, pos - start));
  }

  std::shared_ptr<ReprExpr> expr() {
    std::string name = ident();
    auto node = std::make_shared<ReprExpr>();
    if (name == "standard") {
      node->kind = ReprExpr::Kind::Standard;
    } else if (name == "dual") {
      node->kind = ReprExpr::Kind::Dual;
      expect('(');
      node->left = expr();
      expect(')');
    } else if (name == "sym" || name == "wedge") {
      node->kind = name == "sym" ? ReprExpr::Kind::Sym : ReprExpr::Kind::Wedge;
      expect('(');
      node->power = integer();
      if (node->power < 1) fail("power must be >= 1");
      expect(',');
      node->left = expr();
      expect(')');
    } else if (name == "tensor") {
      node->kind = ReprExpr::Kind::Tensor;
      expect('(');
      node->left = expr();
      expect(',');
      node->right = expr();
      expect(')');
    } else {
      fail("unknown constructor '" + name + "'");
    }
    return node;
  }
};

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// A stage of the functorial construction: Lie-algebra images and group action.
struct Built {
  Eigen::Index dim = 0;
  std::vector<Matrix> dk, dp;
  std::function<Matrix(const Matrix&)> act;
};

// Orthonormal basis of the symmetric (or antisymmetric) subspace of V^{tensor k},
// returned as columns over the d^k-dimensional tensor space.
Matrix powerBasis(Eigen::Index d, int k, bool symmetric) {
  std::vector<int> idx(size_t(k), 0);
  std::vector<Vector> cols;
  auto tensorIndex = [&](const std::vector<int>& ix) {
    Eigen::Index t = 0;
    for (int v : ix) t = t * d + v;
    return t;
  };
  // Iterate over nondecreasing (sym) or increasing (wedge) index tuples.
  std::function<void(int, int)> gen = [&](int depth, int min_val) {
    if (depth == k) {
      Eigen::Index total = 1;
      for (int i = 0; i < k; ++i) total *= d;
      Vector col = Vector::Zero(total);
      std::vector<int> perm = idx;
      std::sort(perm.begin(), perm.end());
      do {
        double sign = 1.0;
        if (!symmetric) {
          // Parity of the permutation taking sorted order to perm.
          std::vector<int> p = perm;
          int inversions = 0;
          for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
              if (p[i] > p[j]) ++inversions;
          sign = inversions % 2 == 0 ? 1.0 : -1.0;
        }
        col(tensorIndex(perm)) += sign;
      } while (std::next_permutation(perm.begin(), perm.end()));
      cols.push_back(col / col.norm());
      return;
    }
    for (int v = min_val; v < d; ++v) {
      idx[size_t(depth)] = v;
      gen(depth + 1, symmetric ? v : v + 1);
    }
  };
  gen(0, 0);
  Matrix q(cols.empty() ? 0 : cols[0].size(), Eigen::Index(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) q.col(Eigen::Index(i)) = cols[i];
  return q;
}

Built build(const GroupModel& model, const ReprExpr& e) {
  Built out;
  switch (e.kind) {
    case ReprExpr::Kind::Standard: {
      out.dim = model.N;
      out.dk = model.k_basis;
      out.dp = model.p_basis;
      out.act = [](const Matrix& g) { return g; };
      break;
    }
    case ReprExpr::Kind::Dual: {
      Built sub = build(model, *e.left);
      out.dim = sub.dim;
      for (const auto& x : sub.dk) out.dk.push_back(-x.transpose());
      for (const auto& x : sub.dp) out.dp.push_back(-x.transpose());
      out.act = [sub](const Matrix& g) { return sub.act(g).inverse().transpose().eval(); };
      break;
    }
    case ReprExpr::Kind::Sym:
    case ReprExpr::Kind::Wedge: {
      Built sub = build(model, *e.left);
      int k = e.power;
      double tensor_dim = std::pow(double(sub.dim), k);
      if (tensor_dim > 65536)
        throw Error(ErrorCode::Config, "representation", "tensor power too large");
      bool symmetric = e.kind == ReprExpr::Kind::Sym;
      Matrix q = powerBasis(sub.dim, k, symmetric);
      if (q.cols() == 0)
        throw Error(ErrorCode::Config, "representation", "wedge power exceeds dimension");
      out.dim = q.cols();
      auto derive = [&](const Matrix& x) {
        Eigen::Index td = q.rows();
        Matrix total = Matrix::Zero(td, td);
        for (int slot = 0; slot < k; ++slot) {
          Matrix factor = Matrix::Identity(1, 1);
          for (int s = 0; s < k; ++s)
            factor = kron(factor, s == slot ? x : Matrix::Identity(sub.dim, sub.dim));
          total += factor;
        }
        return (q.adjoint() * total * q).eval();
      };
      for (const auto& x : sub.dk) out.dk.push_back(derive(x));
      for (const auto& x : sub.dp) out.dp.push_back(derive(x));
      out.act = [sub, k, q](const Matrix& g) {
        Matrix gs = sub.act(g);
        Matrix power = Matrix::Identity(1, 1);
        for (int s = 0; s < k; ++s) power = kron(power, gs);
        return (q.adjoint() * power * q).eval();
      };
      break;
    }
    case ReprExpr::Kind::Tensor: {
      Built a = build(model, *e.left);
      Built b = build(model, *e.right);
      out.dim = a.dim * b.dim;
      Matrix ia = Matrix::Identity(a.dim, a.dim), ib = Matrix::Identity(b.dim, b.dim);
      for (std::size_t i = 0; i < a.dk.size(); ++i)
        out.dk.push_back(kron(a.dk[i], ib) + kron(ia, b.dk[i]));
      for (std::size_t i = 0; i < a.dp.size(); ++i)
        out.dp.push_back(kron(a.dp[i], ib) + kron(ia, b.dp[i]));
      out.act = [a, b](const Matrix& g) { return kron(a.act(g), b.act(g)).eval(); };
      break;
    }
  }
  return out;
}

// Dimension of {M : [M, A_i] = 0 for all i} via the nullity of the stacked
// Sylvester system.
int commutantDimension(const std::vector<const Matrix*>& ops, Eigen::Index d) {
  Eigen::Index d2 = d * d;
  Matrix gram = Matrix::Zero(d2, d2);
  Matrix id = Matrix::Identity(d, d);
  for (const Matrix* a : ops) {
    Matrix c = kron(id, *a) - kron(a->transpose(), id);
    gram += c.adjoint() * c;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  double scale = es.eigenvalues().maxCoeff() + 1.0;
  int nullity = 0;
  for (Eigen::Index i = 0; i < d2; ++i)
    if (es.eigenvalues()(i) < 1e-10 * scale) ++nullity;
  return nullity;
}

}  // namespace

std::shared_ptr<ReprExpr> parseReprExpr(const std::string& text) {
  Parser p{text};
  auto e = p.expr();
  p.skipSpace();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

Representation::Representation(const GroupModel& model, std::shared_ptr<ReprExpr> expr)
    : model_(model), expr_(std::move(expr)) {
  Built b = build(model_, *expr_);
  if (b.dim > 2000)
    throw Error(ErrorCode::Config, "representation", "representation dimension exceeds 2000");
  dimV_ = b.dim;
  dtau_k_ = std::move(b.dk);
  dtau_p_ = std::move(b.dp);
  act_ = std::move(b.act);

  // Compatibility: p-images Hermitian, k-images skew-Hermitian.
  for (const auto& x : dtau_p_)
    if (hermitianDefect(x) > 1e-9)
      throw Error(ErrorCode::Config, "representation", "dtau(p) image is not Hermitian");
  for (const auto& x : dtau_k_)
    if ((x + x.adjoint()).norm() > 1e-9 * (1.0 + x.norm()))
      throw Error(ErrorCode::Config, "representation", "dtau(k) image is not skew-Hermitian");

  if (dimV_ <= 48) {
    std::vector<const Matrix*> ops;
    for (const auto& x : dtau_k_) ops.push_back(&x);
    for (const auto& x : dtau_p_) ops.push_back(&x);
    int cd = commutantDimension(ops, dimV_);
    commutant_dim_ = cd;
    if (cd != 1)
      throw Error(ErrorCode::Irreducible, "representation",
                  "representation is not irreducible (commutant dimension " +
                      std::to_string(cd) + ")");
  }
}

Matrix Representation::dtauOfP(const Matrix& xi) const {
  RealVector c = model_.pCoords(xi);
  Matrix out = Matrix::Zero(dimV_, dimV_);
  for (std::size_t j = 0; j < dtau_p_.size(); ++j) out += c(Eigen::Index(j)) * dtau_p_[j];
  return out;
}

Matrix Representation::act(const Matrix& g) const { return act_(g); }

void Representation::computeWeightTable() const {
  WeightTable wt;
  // Joint eigendecomposition of the commuting family dtau(a_basis).
  struct Block {
    Matrix basis;
    RealVector values;
  };
  std::vector<Block> blocks{{Matrix::Identity(dimV_, dimV_), RealVector(0)}};
  for (int hi = 0; hi < model_.rank(); ++hi) {
    Matrix dh = dtauOfP(model_.a_basis[size_t(hi)]);
    std::vector<Block> next;
    for (const auto& blk : blocks) {
      Matrix sub = blk.basis.adjoint() * dh * blk.basis;
      EigenDecomposition dec = hermEig((sub + sub.adjoint()) / 2.0, model_.tol);
      for (const auto& cl : dec.clusters) {
        Block nb;
        nb.basis = blk.basis * cl.basis;
        nb.values = RealVector(hi + 1);
        nb.values.head(hi) = blk.values;
        nb.values(hi) = cl.value;
        next.push_back(std::move(nb));
      }
    }
    blocks = std::move(next);
  }
  // Merge blocks with identical weight vectors (splitting by successive
  // operators cannot merge, so this is a no-op in practice).
  for (const auto& blk : blocks) {
    Weight w;
    w.vector = blk.values;
    w.space = blk.basis;
    wt.weights.push_back(std::move(w));
  }

  // Highest weight: unique maximum for the chamber order.
  int r = model_.rank();
  RealMatrix root_mat(r, r);
  for (int i = 0; i < r; ++i) root_mat.col(i) = model_.simple_roots[size_t(i)];
  Eigen::FullPivLU<RealMatrix> root_lu(root_mat);
  auto rootCoeffs = [&](const RealVector& v) { return RealVector(root_lu.solve(v)); };

  std::vector<int> candidates;
  for (std::size_t m = 0; m < wt.weights.size(); ++m) {
    bool dominates = true;
    for (std::size_t l = 0; l < wt.weights.size(); ++l) {
      if (l == m) continue;
      RealVector c = rootCoeffs(wt.weights[m].vector - wt.weights[l].vector);
      if (c.minCoeff() < -1e-7) dominates = false;
    }
    if (dominates) candidates.push_back(int(m));
  }
  if (candidates.size() != 1)
    throw Error(ErrorCode::Unclassified, "representation",
                "chamber-order maximum among weights is not unique");
  wt.highest = candidates[0];

  const RealVector& mu = wt.weights[size_t(wt.highest)].vector;
  for (const auto& alpha : model_.simple_roots)
    if (alpha.dot(mu) < -model_.tol.geom * (1.0 + mu.norm()))
      throw Error(ErrorCode::Unclassified, "representation",
                  "highest weight is outside the closed positive chamber");

  for (auto& w : wt.weights) {
    w.coeffs = rootCoeffs(mu - w.vector);
    RealVector check = root_mat * w.coeffs - (mu - w.vector);
    if (check.norm() > 1e-9 * (1.0 + mu.norm()))
      throw Error(ErrorCode::Solver, "representation", "support coefficients did not solve");
    for (int i = 0; i < r; ++i)
      if (w.coeffs(i) > 1e-7) w.support.push_back(i);
  }

  // Deterministic highest weight vector from the weight space projector.
  const Matrix& hs = wt.weights[size_t(wt.highest)].space;
  wt.highest_space_multidimensional = hs.cols() > 1;
  Matrix proj = hs * hs.adjoint();
  Vector v;
  for (Eigen::Index i = 0; i < dimV_; ++i) {
    Vector cand = proj.col(i);
    if (cand.norm() > 1e-6) {
      v = cand / cand.norm();
      break;
    }
  }
  for (Eigen::Index i = 0; i < dimV_; ++i)
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  wt.highest_vector = v;
  table_ = std::move(wt);
}

const WeightTable& Representation::weightTable() const {
  if (!table_) computeWeightTable();
  return *table_;
}

const Weight& Representation::highestWeight() const {
  const WeightTable& wt = weightTable();
  return wt.weights[size_t(wt.highest)];
}

ProjectivePoint Representation::highestWeightPoint() const {
  return ProjectivePoint(weightTable().highest_vector);
}

std::vector<Representation::ConnectedSubset> Representation::muTauConnectedSubsets() const {
  const RealVector& mu = highestWeight().vector;
  // Direct enumeration: every component of I must contain a root that is not
  // orthogonal to mu_tau. With the trace form, <alpha, mu_tau> != 0 is the
  // same test as alpha(x) != 0 for x the chamber vector of mu_tau.
  auto subsets = xConnectedSubsets(model_, mu);
  std::vector<ConnectedSubset> out;
  for (auto& s : subsets) {
    ConnectedSubset cs;
    cs.saturation = saturate(model_, mu, s);
    cs.subset = std::move(s);
    out.push_back(std::move(cs));
  }
  return out;
}

Matrix Representation::subspaceVI(const std::vector<int>& subset) const {
  if (!isXConnected(model_, highestWeight().vector, subset))
    throw Error(ErrorCode::Precondition, "representation", "subset is not mu_tau-connected");
  const WeightTable& wt = weightTable();
  std::vector<const Matrix*> parts;
  Eigen::Index cols = 0;
  for (const auto& w : wt.weights) {
    bool contained = std::all_of(w.support.begin(), w.support.end(), [&](int a) {
      return std::find(subset.begin(), subset.end(), a) != subset.end();
    });
    if (contained) {
      parts.push_back(&w.space);
      cols += w.space.cols();
    }
  }
  Matrix basis(dimV_, cols);
  Eigen::Index at = 0;
  for (const Matrix* p : parts) {
    basis.middleCols(at, p->cols()) = *p;
    at += p->cols();
  }
  return basis;
}

Representation buildRepresentation(const GroupModel& model, const std::string& expr_text) {
  return Representation(model, parseReprExpr(expr_text));
}

}  // namespace orbitope
