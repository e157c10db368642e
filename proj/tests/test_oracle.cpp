#include <cmath>

#include "doctest.h"
#include "fuchsian/coding.hpp"
#include "fuchsian/oracle.hpp"

using namespace fuchsian;

namespace {

Realization modular() {
  auto s = catalog_scheme("triangle-special-case");
  return realize_from_integer_matrices(s, {IMat2{0, -1, 1, 0}, IMat2{1, 1, 0, 1}, IMat2{1, -1, 0, 1}});
}

}  // namespace

TEST_CASE("free group ball has 4 * 3^(n-1) elements on each sphere") {
  Oracle o(realize_group("free-f2-ideal-quad"), 8);
  auto sizes = o.sphere_sizes();
  REQUIRE(sizes.size() == 9);
  CHECK(sizes[0] == 1);
  std::uint64_t want = 4;
  for (int n = 1; n <= 8; ++n, want *= 3) CHECK(sizes[n] == want);
  CHECK(o.realization().exact);
}

TEST_CASE("octagon ball matches the known growth and is well separated") {
  auto r = realize_group("genus2-octagon");
  CHECK(relator_defect(r) < 1e-9);
  Oracle o(r, 5);
  auto sizes = o.sphere_sizes();
  const std::uint64_t want[] = {1, 8, 56, 392, 2736, 19096};
  for (int n = 0; n <= 5; ++n) CHECK(sizes[n] == want[n]);
  CHECK(o.min_gap() > 2 * r.identification_radius);

  auto s = o.scheme();
  CHECK(o.same_element(s.flower_relator(0), {}));
  CHECK(o.distance(s.parse_word("a b a^-1 b^-1")) == 4);
  // the relator of length 8 lets a half be replaced by the inverse of the other half
  CHECK(o.distance(s.parse_word("a d c^-1 d^-1 c")) == 3);
}

TEST_CASE("modular group ball through exact integer matrices") {
  Oracle o(modular(), 7);
  const std::uint64_t want[] = {1, 3, 6, 10, 16, 26, 42, 68};
  auto sizes = o.sphere_sizes();
  for (int n = 0; n <= 7; ++n) CHECK(sizes[n] == want[n]);
  const auto& s = o.scheme();
  CHECK(o.same_element(s.parse_word("g g"), {}));
  CHECK(o.same_element(s.parse_word("g x g x g x"), {}));
}

TEST_CASE("realization rejects a generator table of the wrong size") {
  auto s = catalog_scheme("triangle-special-case");
  CHECK_THROWS_AS(realize_from_integer_matrices(s, {IMat2{0, -1, 1, 0}}), OracleError);
  CHECK_THROWS_AS(realize_group("triangle-special-case"), OracleError);
}

TEST_CASE("geodesic cross sections step through adjacent domains") {
  auto r = realize_group("genus2-octagon");
  Oracle o(r, 1);
  const std::complex<double> a{0.1, 1.2}, b{3.0, 0.01};
  auto path = geodesic_cross_section(r, a, b);
  REQUIRE(path.size() >= 2);
  CHECK(inside_polygon(r, mobius(inverse(r.eval(path.front())), a), 1e-9));
  CHECK(inside_polygon(r, mobius(inverse(r.eval(path.back())), b), 1e-9));
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    bool adjacent = false;
    for (Label e = 0; e < r.scheme.size(); ++e) {
      Word w = path[k];
      w.push_back(e);
      adjacent = adjacent || o.same_element(w, path[k + 1]);
    }
    CHECK(adjacent);
  }
  CHECK_THROWS_AS(geodesic_cross_section(modular(), a, b), OracleError);
}

TEST_CASE("ball CSV lists every element once") {
  Oracle o(realize_group("free-f2-ideal-quad"), 2);
  auto csv = ball_csv(o);
  CHECK(csv.rfind("id,distance,word\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 1 + 4 + 12);
}

TEST_CASE("brute thickened path of a single step") {
  Oracle o(realize_group("genus2-octagon"), 3);
  const auto& s = o.scheme();
  auto t = brute_thickened(o, {}, s.parse_word("a"));
  REQUIRE(t.length() == 1);
  CHECK(t.levels[0].size() == 1);
  CHECK(t.levels[1].size() == 1);
  CHECK(shortest_paths(o, {}, s.parse_word("a b")).size() == 1);
}
