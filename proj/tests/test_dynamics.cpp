#include <cmath>
#include <random>

#include "doctest.h"
#include "fuchsian/dynamics.hpp"
#include "fuchsian/oracle.hpp"

using namespace fuchsian;

namespace {

Eigen::VectorXd test_function(int points) {
  Eigen::VectorXd f(points);
  for (int x = 0; x < points; ++x) f[x] = std::sin(1.0 + 3 * x);
  return f;
}

// sum over the oracle sphere of f(T_g^-1 x), with T_g composed letter by letter
Eigen::VectorXd sphere_sum(const FiniteAction& a, Oracle& o, const Eigen::VectorXd& f, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.points);
  for (int id : o.sphere(n)) {
    const Word w = o.word_of(id);
    for (int x = 0; x < a.points; ++x) {
      int y = x;
      for (auto it = w.rbegin(); it != w.rend(); ++it) y = a.perm[*it][y];
      out[x] += f[y];
    }
  }
  return out;
}

struct Setup {
  Scheme s;
  Coding c;
  ParryData d;
  explicit Setup(const char* nm) : s(catalog_scheme(nm)), c(build_coding(s)), d(parry(c)) {}
  Dynamics with(const char* action) { return Dynamics(c, d, catalog_action(s, action)); }
};

}  // namespace

TEST_CASE("catalog actions are valid and broken ones are refused") {
  for (auto nm : {"free-f2-ideal-quad", "genus2-octagon", "triangle-special-case"}) {
    auto s = catalog_scheme(nm);
    for (const auto& an : action_names(s)) {
      CAPTURE(an);
      CHECK_NOTHROW(validate_action(s, catalog_action(s, an)));
    }
  }
  auto s = catalog_scheme("genus2-octagon");
  auto a = catalog_action(s, "s5-quotient");
  std::swap(a.perm[s.label("a")][0], a.perm[s.label("a")][1]);
  CHECK_THROWS_WITH_AS(validate_action(s, a), doctest::Contains("do not act as inverses"), ActionError);
  // keep generator and inverse consistent so the relator is what breaks
  a = catalog_action(s, "s5-quotient");
  const int L = s.label("a"), Li = s.label("a^-1");
  a.perm[L] = {1, 0, 2, 3, 4};
  a.perm[Li] = {1, 0, 2, 3, 4};
  CHECK_THROWS_WITH_AS(validate_action(s, a), doctest::Contains("does not act trivially"), ActionError);
  CHECK_THROWS_AS(catalog_action(s, "no-such-action"), ActionError);
}

TEST_CASE("action JSON loading") {
  auto s = catalog_scheme("free-f2-ideal-quad");
  auto a = load_action(s, R"j({"points": 3, "generators": {"a": "(0 1 2)", "b": [1, 0, 2]}})j");
  CHECK(a.perm[s.label("a^-1")] == std::vector<int>{2, 0, 1});
  CHECK(a.weights.size() == 3);
  auto b = load_action(s, action_to_json(s, a));
  CHECK(b.perm == a.perm);
  CHECK_THROWS_AS(load_action(s, R"j({"points": 2, "generators": {"a": "(0 5)", "b": ""}})j"), ActionError);
  CHECK_THROWS_AS(load_action(s, R"j({"points": 2, "generators": {"q": "", "b": ""}})j"), ActionError);
  CHECK_THROWS_AS(load_action(s, R"j({"points": 2, "generators": {"a": ""}})j"), ActionError);
  CHECK_THROWS_AS(load_action(s, "{"), ActionError);
}

TEST_CASE("word permutations compose right to left") {
  auto s = catalog_scheme("free-f2-ideal-quad");
  auto a = catalog_action(s, "five-point");
  const Word w = s.parse_word("a b");
  auto p = word_permutation(a, w);
  for (int x = 0; x < 5; ++x) CHECK(p[x] == a.perm[s.label("a")][a.perm[s.label("b")][x]]);
}

TEST_CASE("adjoint identities hold for the catalog actions") {
  for (auto [nm, an] : {std::pair{"genus2-octagon", "s5-quotient"}, std::pair{"genus2-octagon", "z5-shift"},
                        std::pair{"free-f2-ideal-quad", "five-point"}, std::pair{"triangle-special-case", "s3"}}) {
    CAPTURE(an);
    Setup st(nm);
    auto dy = st.with(an);
    auto rep = check_adjoint_identities(dy);
    CHECK(rep.u_involution);
    CHECK(rep.u_self_adjoint);
    CHECK(rep.pstar_formula <= 1e-12);
    CHECK(rep.pstar_upu <= 1e-12);
    CHECK(rep.qstar_uqu <= 1e-12);
    CHECK(rep.markov <= 1e-12);
    CHECK(rep.ok());
  }
}

TEST_CASE("a wrong involution breaks the adjoint identities") {
  Setup st("genus2-octagon");
  auto dy = st.with("z5-shift");
  std::swap(dy.reversal[0], dy.reversal[1]);
  auto rep = check_adjoint_identities(dy);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.text().empty());
}

TEST_CASE("operators against their definitions") {
  Setup st("free-f2-ideal-quad");
  auto dy = st.with("five-point");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  Field f(dy.dim()), g(dy.dim());
  for (int i = 0; i < dy.dim(); ++i) {
    f[i] = u(rng);
    g[i] = u(rng);
  }
  CHECK((dy.apply_U(dy.apply_U(f)) - f).cwiseAbs().maxCoeff() == 0.0);
  CHECK((dy.apply_P(f) - dy.sparse_P() * f).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((dy.apply_Pstar(f) - dy.sparse_Pstar() * f).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(dy.inner(dy.apply_P(f), g) == doctest::Approx(dy.inner(f, dy.apply_Pstar(g))).epsilon(1e-12));
  // constants are fixed by P
  Field one = Field::Ones(dy.dim());
  CHECK((dy.apply_P(one) - one).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(dy.weights().sum() == doctest::Approx(1.0));
}

TEST_CASE("coded spherical sums equal the sums over the oracle sphere") {
  SUBCASE("octagon") {
    Setup st("genus2-octagon");
    Oracle o(realize_group("genus2-octagon"), 4);
    for (auto an : {"s5-quotient", "parity"}) {
      auto dy = st.with(an);
      const auto f = test_function(dy.points());
      for (int n = 1; n <= 4; ++n) {
        auto want = sphere_sum(dy.action(), o, f, n);
        CHECK((dy.spherical_sum(f, n) - want).cwiseAbs().maxCoeff() < 1e-8 * want.cwiseAbs().maxCoeff() + 1e-9);
        CHECK((spherical_sum_bruteforce(dy.action(), o, f, n) - want).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  SUBCASE("free group") {
    Setup st("free-f2-ideal-quad");
    Oracle o(realize_group("free-f2-ideal-quad"), 7);
    auto dy = st.with("five-point");
    const auto f = test_function(5);
    for (int n = 1; n <= 7; ++n) {
      auto want = sphere_sum(dy.action(), o, f, n);
      CHECK((dy.spherical_sum(f, n) - want).cwiseAbs().maxCoeff() < 1e-8 * want.cwiseAbs().maxCoeff());
    }
  }
  SUBCASE("triangle differs only at radius 1") {
    Setup st("triangle-special-case");
    auto ts = catalog_scheme("triangle-special-case");
    Oracle o(realize_from_integer_matrices(ts, {IMat2{0, -1, 1, 0}, IMat2{1, 1, 0, 1}, IMat2{1, -1, 0, 1}}), 7);
    auto dy = st.with("s3");
    const auto f = test_function(3);
    auto one = sphere_sum(dy.action(), o, f, 1);
    CHECK((dy.spherical_sum(f, 1) - one).cwiseAbs().maxCoeff() > 1e-3);
    for (int n = 2; n <= 7; ++n) {
      auto want = sphere_sum(dy.action(), o, f, n);
      CHECK((dy.spherical_sum(f, n) - want).cwiseAbs().maxCoeff() < 1e-8 * want.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("conditional expectation on the parity action") {
  // words of even length act trivially, so the pair orbits are the points
  auto s = catalog_scheme("free-f2-ideal-quad");
  auto a = catalog_action(s, "parity");
  CHECK(pair_orbit_count(s, a) == 2);
  Eigen::VectorXd f(2);
  f << 1.0, 3.0;
  CHECK((conditional_expectation(s, a, f) - f).cwiseAbs().maxCoeff() < 1e-15);
  auto b = catalog_action(s, "five-point");
  CHECK(pair_orbit_count(s, b) == 1);
  auto e = conditional_expectation(s, b, test_function(5));
  CHECK((e.array() - test_function(5).mean()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("invariant fields and the spectral gap") {
  Setup st("genus2-octagon");
  auto dy = st.with("s5-quotient");
  const int orbits = pair_orbit_count(st.s, dy.action());
  CHECK(orbits == 1);
  CHECK(invariant_field_dimension(dy, FixedOp::Qn, 1) == orbits);
  CHECK(invariant_field_dimension(dy, FixedOp::QstarmQm, positivity_index(st.c)) == orbits);
  CHECK(second_eigenvalue_modulus(dy) == doctest::Approx(0.3978).epsilon(1e-3));

  auto par = st.with("parity");
  CHECK(pair_orbit_count(st.s, par.action()) == 2);
  CHECK(invariant_field_dimension(par, FixedOp::Qn, 2) == 2);
}

TEST_CASE("even spherical averages converge to the conditional expectation") {
  Setup st("genus2-octagon");
  auto dy = st.with("s5-quotient");
  Eigen::VectorXd f = test_function(5);
  f.array() -= f.mean();
  auto rows = convergence_experiment(dy, f, 6);
  REQUIRE(rows.size() == 6);
  CHECK(rows.front().n == 2);
  CHECK(rows.back().sup_error < 1e-2);
  CHECK(rows.back().sup_error < rows.front().sup_error);
  CHECK(rows[1].sphere_size == 2736);
  auto csv = convergence_csv(rows);
  CHECK(csv.rfind("n,sup_error,l1_error,sphere_size\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}
