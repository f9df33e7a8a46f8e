#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitope/numeric.hpp"

#include <random>

using namespace orbitope;

namespace {

Matrix randomHermitian(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

Matrix randomComplex(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a;
}

// Characteristic polynomial coefficients by Faddeev-LeVerrier.
std::vector<Complex> charPoly(const Matrix& a) {
  Eigen::Index d = a.rows();
  std::vector<Complex> c(std::size_t(d) + 1);
  c[0] = 1.0;
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index k = 1; k <= d; ++k) {
    m = a * m + c[std::size_t(k - 1)] * Matrix::Identity(d, d);
    c[std::size_t(k)] = -(a * m).trace() / double(k);
  }
  return c;
}

// Real roots of a polynomial with (numerically) real coefficients, by grid
// bracketing and bisection. Oracle for Hermitian spectra.
std::vector<double> realRootsByBisection(const std::vector<Complex>& coeff, double lo, double hi) {
  auto eval = [&](double x) {
    double v = 0.0;
    for (const Complex& c : coeff) v = v * x + c.real();
    return v;
  };
  std::vector<double> roots;
  const int grid = 200000;
  double prev = eval(lo);
  for (int i = 1; i <= grid; ++i) {
    double x = lo + (hi - lo) * double(i) / grid;
    double cur = eval(x);
    if (prev == 0.0) roots.push_back(lo + (hi - lo) * double(i - 1) / grid);
    if (prev * cur < 0.0) {
      double a = lo + (hi - lo) * double(i - 1) / grid, b = x;
      for (int it = 0; it < 100; ++it) {
        double m = (a + b) / 2.0;
        if (eval(a) * eval(m) <= 0.0)
          b = m;
        else
          a = m;
      }
      roots.push_back((a + b) / 2.0);
    }
    prev = cur;
  }
  return roots;
}

}  // namespace

TEST_CASE("hermEig clusters the paper beta") {
  Matrix beta = Matrix::Zero(3, 3);
  beta(0, 0) = 1.0;
  beta(1, 1) = 1.0;
  beta(2, 2) = -2.0;
  EigenDecomposition dec = hermEig(beta);
  REQUIRE(dec.clusters.size() == 2);
  CHECK(dec.clusters[0].value == doctest::Approx(1.0));
  CHECK(dec.clusters[0].basis.cols() == 2);
  CHECK(dec.clusters[1].value == doctest::Approx(-2.0));
  CHECK(dec.clusters[1].basis.cols() == 1);
  // Top eigenspace is span{e1,e2}.
  Matrix proj = dec.projector(0);
  CHECK(std::abs(proj(0, 0).real() - 1.0) < 1e-12);
  CHECK(std::abs(proj(2, 2)) < 1e-12);
}

TEST_CASE("hermEig identity is one cluster") {
  EigenDecomposition dec = hermEig(Matrix::Identity(3, 3));
  REQUIRE(dec.clusters.size() == 1);
  CHECK(dec.clusters[0].value == doctest::Approx(1.0));
  CHECK(dec.clusters[0].basis.cols() == 3);
}

TEST_CASE("hermEig matches bisection on the characteristic polynomial") {
  std::mt19937_64 rng(101);
  Matrix a = randomHermitian(6, rng);
  EigenDecomposition dec = hermEig(a);
  std::vector<double> eig;
  for (const auto& c : dec.clusters)
    for (Eigen::Index i = 0; i < c.basis.cols(); ++i) eig.push_back(c.value);
  std::sort(eig.begin(), eig.end());
  double bound = a.norm() + 1.0;
  std::vector<double> roots = realRootsByBisection(charPoly(a), -bound, bound);
  REQUIRE(roots.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(eig[i] - roots[i]) < 1e-7);
}

TEST_CASE("hermEig rejects non-Hermitian input") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(hermEig(a), Error);
  try {
    hermEig(a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("hermEig projector algebra over seeded inputs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(2, 10);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::Index d = dim(rng);
    Matrix a = randomHermitian(d, rng);
    EigenDecomposition dec = hermEig(a);
    CHECK((dec.reconstruct() - a).norm() < 1e-10 * (a.norm() + 1.0));
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
      Matrix pi = dec.projector(i);
      sum += pi;
      CHECK((pi * pi - pi).norm() < 1e-10);
      for (std::size_t j = i + 1; j < dec.clusters.size(); ++j) {
        CHECK((pi * dec.projector(j)).norm() < 1e-10);
        CHECK(dec.clusters[i].value > dec.clusters[j].value);
      }
    }
    CHECK((sum - Matrix::Identity(d, d)).norm() < 1e-10);
  }
}

TEST_CASE("matExp basics") {
  CHECK((matExp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() < 1e-14);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  Matrix e = matExp(d);
  CHECK(std::abs(e(0, 0) - std::exp(1.0)) < 1e-12);
  CHECK(std::abs(e(1, 1) - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("matExp matches the Taylor oracle") {
  std::mt19937_64 rng(11);
  Matrix a = randomComplex(4, rng);
  a *= 3.0 / a.norm();
  Matrix taylor = Matrix::Identity(4, 4);
  Matrix term = Matrix::Identity(4, 4);
  for (int k = 1; k <= 40; ++k) {
    term = term * a / double(k);
    taylor += term;
  }
  CHECK((matExp(a) - taylor).norm() < 1e-9);
}

TEST_CASE("matExp overflow guard") {
  Matrix a = Matrix::Identity(2, 2) * 800.0;
  CHECK_THROWS_AS(matExp(a), Error);
}

TEST_CASE("psdSqrt examples") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 4.0;
  a(1, 1) = 1.0;
  Matrix b = psdSqrt(a);
  CHECK(std::abs(b(0, 0).real() - 2.0) < 1e-12);
  CHECK(std::abs(b(1, 1).real() - 1.0) < 1e-12);

  std::mt19937_64 rng(3);
  Vector v = Vector::Zero(3);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 3; ++i) v(i) = Complex(g(rng), g(rng));
  v.normalize();
  Matrix proj = v * v.adjoint();
  CHECK((psdSqrt(proj) - proj).norm() < 1e-10);

  Matrix m = randomComplex(3, rng).real().cast<Complex>();
  m /= std::pow(std::abs(m.determinant()), 1.0 / 3.0);
  Matrix gg = m * m.adjoint();
  Matrix s = psdSqrt(gg);
  CHECK((s * s - gg).norm() < 1e-9 * (gg.norm() + 1.0));
}

TEST_CASE("psdSqrt rejects indefinite input") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -0.5;
  CHECK_THROWS_AS(psdSqrt(a), Error);
}

TEST_CASE("psdSqrt fourth-root composition") {
  std::mt19937_64 rng(19);
  Matrix h = randomHermitian(4, rng);
  Matrix a = h * h.adjoint();  // PSD
  Matrix a4 = a * a * a * a;
  CHECK((psdSqrt(psdSqrt(a4)) - a).norm() < 1e-8 * (a.norm() + 1.0));
}

TEST_CASE("polarDecompose") {
  std::mt19937_64 rng(23);
  // Unitary input.
  Eigen::HouseholderQR<Matrix> qr(randomComplex(3, rng));
  Matrix u = qr.householderQ();
  PolarDecomposition pu = polarDecompose(u);
  CHECK((pu.rho - Matrix::Identity(3, 3)).norm() < 1e-9);
  CHECK((pu.k - u).norm() < 1e-9);
  // Positive input.
  Matrix h = randomHermitian(3, rng);
  Matrix pos = matExp(h);
  PolarDecomposition pp = polarDecompose(pos);
  CHECK((pp.rho - pos).norm() < 1e-8 * pos.norm());
  CHECK((pp.k - Matrix::Identity(3, 3)).norm() < 1e-8);
  // Random reconstruction + inverse consistency.
  Matrix g = randomComplex(3, rng);
  g /= std::pow(std::abs(g.determinant()), 1.0 / 3.0);
  PolarDecomposition pd = polarDecompose(g);
  CHECK((pd.rho * pd.k - g).norm() < 1e-9 * (g.norm() + 1.0));
  CHECK((pd.k * pd.k.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-9);
  PolarDecomposition pinv = polarDecompose(g.inverse());
  CHECK((pinv.rho - pd.k.adjoint() * pd.rho.inverse() * pd.k).norm() < 1e-8);
  // Singular input.
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  CHECK_THROWS_AS(polarDecompose(s), Error);
}

TEST_CASE("projective points") {
  Vector v(2);
  v << Complex(3.0, 0.0), Complex(0.0, 4.0);
  ProjectivePoint p(v);
  CHECK(p.vector().norm() == doctest::Approx(1.0));
  ProjectivePoint q(Complex(0.0, 2.0) * v);
  CHECK(p.sameAs(q));
  CHECK(p.distanceTo(q) < 1e-12);
  Vector w(2);
  w << Complex(1.0), Complex(0.0);
  CHECK(!p.sameAs(ProjectivePoint(w)));
  CHECK_THROWS_AS(ProjectivePoint(Vector::Zero(2)), Error);
}
