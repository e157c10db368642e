#include <Eigen/Dense>

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "fuchsian/parry.hpp"

using namespace fuchsian;

namespace {

double dense_spectral_radius(const Coding& c) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(c.size(), c.size());
  for (int j = 0; j < c.size(); ++j)
    for (int k : c.succ[j]) m(j, k) = 1;
  return Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("Perron-Frobenius root agrees with a dense eigensolver") {
  for (auto nm : {"free-f2-ideal-quad", "genus2-octagon", "triangle-special-case"}) {
    CAPTURE(nm);
    auto s = catalog_scheme(nm);
    auto c = build_coding(s);
    auto e = pf_eigendata(c);
    CHECK(e.lambda == doctest::Approx(dense_spectral_radius(c)).epsilon(1e-10));
    CHECK(*std::max_element(e.h.begin(), e.h.end()) == doctest::Approx(1.0));
    double dot = 0;
    for (int j = 0; j < c.size(); ++j) dot += e.alpha[j] * e.h[j];
    CHECK(dot == doctest::Approx(1.0).epsilon(1e-12));
  }
  auto oct_scheme = catalog_scheme("genus2-octagon");
  auto oct = pf_eigendata(build_coding(oct_scheme));
  CHECK(oct.lambda == doctest::Approx(6.979835779215572).epsilon(1e-11));
  auto free = catalog_scheme("free-f2-ideal-quad");
  CHECK(pf_eigendata(build_coding(free)).lambda == doctest::Approx(3.0));
}

TEST_CASE("one-state chain") {
  auto e = pf_eigendata(std::vector<std::vector<int>>{{0}});
  CHECK(e.lambda == doctest::Approx(1.0));
  auto d = parry_chain({{0}}, e);
  CHECK(d.p[0][0] == doctest::Approx(1.0));
  CHECK(d.stationary[0] == doctest::Approx(1.0));
}

TEST_CASE("Parry chain is stochastic and stationary") {
  for (auto nm : {"free-f2-ideal-quad", "genus2-octagon"}) {
    CAPTURE(nm);
    auto s = catalog_scheme(nm);
    auto c = build_coding(s);
    auto d = parry(c);
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
      CHECK(std::accumulate(d.p[i].begin(), d.p[i].end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
      for (int j = 0; j < n; ++j)
        if (!c.edge(i, j)) CHECK(d.p[i][j] == 0.0);
    }
    for (int j = 0; j < n; ++j) {
      double in = 0;
      for (int i = 0; i < n; ++i) in += d.stationary[i] * d.p[i][j];
      CHECK(in == doctest::Approx(d.stationary[j]).epsilon(1e-12));
      // reversibility makes the measure invariant under the involution
      CHECK(d.stationary[c.reversal[j]] == doctest::Approx(d.stationary[j]).epsilon(1e-10));
    }
  }
}

TEST_CASE("free group Parry measure is uniform") {
  auto s = catalog_scheme("free-f2-ideal-quad");
  auto c = build_coding(s);
  auto d = parry(c);
  for (int j = 0; j < 4; ++j) {
    CHECK(d.stationary[j] == doctest::Approx(0.25));
    for (int k : c.succ[j]) CHECK(d.p[j][k] == doctest::Approx(1.0 / 3));
  }
  CHECK(d.path_probability({0, c.succ[0][0]}) == doctest::Approx(0.25 / 3));
}

TEST_CASE("path probabilities depend only on the endpoints") {
  auto s = catalog_scheme("genus2-octagon");
  auto c = build_coding(s);
  auto d = parry(c);
  // mu[j0..jn] = alpha_j0 h_jn / lambda^n
  std::vector<int> path{0};
  for (int k = 0; k < 6; ++k) path.push_back(c.succ[path.back()][k % c.succ[path.back()].size()]);
  const double want = d.alpha[path.front()] * d.h[path.back()] / std::pow(d.lambda, 6);
  CHECK(d.path_probability(path) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("non-primitive matrices are refused") {
  auto s = catalog_scheme("genus2-octagon");
  auto c = build_coding(s);
  for (int k : std::vector<int>(c.succ[3])) c.set_edge(3, k, false);
  CHECK_THROWS_AS(pf_eigendata(c), ParryError);
}

TEST_CASE("eigendata CSV and matrix text") {
  auto s = catalog_scheme("free-f2-ideal-quad");
  auto c = build_coding(s);
  auto csv = eigendata_csv(c, parry(c));
  CHECK(csv.rfind("state,h,alpha,p\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  auto m = matrix_text(c);
  CHECK(std::count(m.begin(), m.end(), '\n') == 4);
  CHECK(std::count(m.begin(), m.end(), '1') == 12);
}
