#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fuchsian/oracle.hpp"
#include "fuchsian/scheme.hpp"

using namespace fuchsian;

namespace {

const ValidationItem* failing(const ValidationReport& r, std::string_view clause) {
  for (const auto& i : r.items)
    if (i.clause == clause && !i.pass) return &i;
  return nullptr;
}

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

// geometric endpoints of polygon side e, in the order the polygon lists them
std::pair<HPoint, HPoint> endpoints(const Realization& r, Label e) {
  for (const auto& g : r.polygon)
    if (g.label == e) return {g.from, g.to};
  FAIL("side missing from polygon");
  return {};
}

bool same_point(const HPoint& a, const HPoint& b) {
  if (a.infinite || b.infinite) return a.infinite && b.infinite;
  return near(a.z, b.z);
}

}  // namespace

TEST_CASE("catalog schemes validate and mutants fail on the named clause") {
  for (auto nm : {"free-f2-ideal-quad", "genus2-octagon", "triangle-special-case"}) {
    CAPTURE(nm);
    CHECK(validate_scheme(catalog_scheme(nm)).ok());
  }
  auto broken = validate_scheme(catalog_scheme("mutant-octagon-broken-pairing"));
  CHECK_FALSE(broken.ok());
  CHECK(failing(broken, "even corners: flower walk closes after 2n(v) petals"));

  auto petals = validate_scheme(catalog_scheme("mutant-octagon-petal-mismatch"));
  CHECK(failing(petals, "pairing carries corners to corners of the same class"));

  auto quad = validate_scheme(catalog_scheme("mutant-compact-quad"));
  const auto* item = failing(quad, "number of sides");
  REQUIRE(item);
  CHECK(item->detail.find("opposite") != std::string::npos);
  CHECK(quad.text().find("FAIL") != std::string::npos);
}

TEST_CASE("parse errors are reported as SchemeError") {
  CHECK_THROWS_AS(parse_scheme("{"), SchemeError);
  CHECK_THROWS_AS(parse_scheme("[]"), SchemeError);
  CHECK_THROWS_WITH_AS(parse_scheme(R"({"sides": [], "corners": [], "extra": 1})"),
                       doctest::Contains("unknown field 'extra'"), SchemeError);
  CHECK_THROWS_WITH_AS(parse_scheme(R"({"sides": [{"label":"a","inverse":"a^-1"},{"label":"a^-1","inverse":"a"}],
                                        "corners": [null, null]})"),
                       doctest::Contains("at least 3"), SchemeError);
  CHECK_THROWS_WITH_AS(parse_scheme(R"({"sides": [{"label":"a","inverse":"b"},{"label":"b","inverse":"c"},
                                        {"label":"c","inverse":"a"}], "corners": [null, null, null]})"),
                       doctest::Contains("involution"), SchemeError);
  CHECK_THROWS_WITH_AS(parse_scheme(R"({"sides": [{"label":"a","inverse":"a"},{"label":"a","inverse":"a"},
                                        {"label":"c","inverse":"c"}], "corners": [null, null, null]})"),
                       doctest::Contains("duplicate"), SchemeError);
  CHECK_THROWS_WITH_AS(parse_scheme(R"({"sides": [{"label":"a","inverse":"a"},{"label":"b","inverse":"b"},
                                        {"label":"c","inverse":"c"}], "corners": [{"vertex":"q"}, null, null]})"),
                       doctest::Contains("unknown vertex class"), SchemeError);
  CHECK_THROWS_AS(catalog_scheme("no-such-scheme"), SchemeError);
}

TEST_CASE("JSON round trip preserves the scheme") {
  for (const auto& nm : catalog_names()) {
    CAPTURE(nm);
    auto s = catalog_scheme(nm);
    auto t = parse_scheme(scheme_to_json(s));
    CHECK(t.name == s.name);
    REQUIRE(t.size() == s.size());
    for (int i = 0; i < s.size(); ++i) {
      CHECK(t.sides[i].label == s.sides[i].label);
      CHECK(t.inv(i) == s.inv(i));
      CHECK(t.corners[i].has_value() == s.corners[i].has_value());
      if (s.corners[i]) CHECK(t.petals_at(i) == s.petals_at(i));
    }
  }
}

TEST_CASE("corner conventions") {
  auto s = catalog_scheme("genus2-octagon");
  for (int e = 0; e < s.size(); ++e) {
    CHECK(*s.v_left(e) == (e + 7) % 8);
    CHECK(*s.v_right(e) == e);
  }
  auto t = catalog_scheme("triangle-special-case");
  CHECK(*t.v_right(0) == 0);
  CHECK_FALSE(t.v_right(1));
  CHECK_FALSE(t.v_left(2));
  CHECK(*t.v_left(0) == 2);
  auto f = catalog_scheme("free-f2-ideal-quad");
  for (int e = 0; e < 4; ++e) {
    CHECK_FALSE(f.rot_l(e));
    CHECK_FALSE(f.rot_r(e));
  }
}

TEST_CASE("rotation table satisfies v_R(l(e)^-1) = v_L(e) and matches the pinned octagon table") {
  auto s = catalog_scheme("genus2-octagon");
  // derived from the defining identity: the unique f with v_R(f^-1) = v_L(e)
  for (int e = 0; e < s.size(); ++e) {
    int found = -1;
    for (int f = 0; f < s.size(); ++f)
      if (s.v_right(s.inv(f)) == s.v_left(e)) found = f;
    CHECK(*s.rot_l(e) == found);
    int found_r = -1;
    for (int f = 0; f < s.size(); ++f)
      if (s.v_left(s.inv(f)) == s.v_right(e)) found_r = f;
    CHECK(*s.rot_r(e) == found_r);
    CHECK(*s.rot_r(s.inv(*s.rot_l(e))) == s.inv(e));
  }
  const char* table[][2] = {{"a", "d"},     {"b", "a^-1"}, {"a^-1", "b^-1"}, {"b^-1", "a"},
                            {"c", "b"},     {"d", "c^-1"}, {"c^-1", "d^-1"}, {"d^-1", "c"}};
  for (auto [e, l] : table) CHECK(s.name_of(*s.rot_l(s.label(e))) == l);

  // the l-orbit of a label has length 2n(v)
  Label e = 0;
  int len = 0;
  do {
    e = *s.rot_l(e);
    ++len;
  } while (e != 0);
  CHECK(len == 2 * s.petals_at(0));
}

TEST_CASE("flower relators") {
  auto s = catalog_scheme("genus2-octagon");
  CHECK(s.word_string(s.flower_relator(2)) == "a d c^-1 d^-1 c b a^-1 b^-1");
  for (int c = 0; c < 8; ++c) CHECK(s.flower(c).size() == 8);
  auto t = catalog_scheme("triangle-special-case");
  CHECK(t.word_string(t.flower_relator(0)) == "g x g x g x");
}

TEST_CASE("adjacency agrees with polygon incidence") {
  // sides inv(a) and inv(b) of R share a finite endpoint exactly when a, b are adjacent
  for (auto nm : {"genus2-octagon", "free-f2-ideal-quad"}) {
    CAPTURE(nm);
    auto r = realize_group(nm);
    const Scheme& s = r.scheme;
    REQUIRE(!r.polygon.empty());
    for (int a = 0; a < s.size(); ++a)
      for (int b = 0; b < s.size(); ++b) {
        if (a == b) {
          CHECK(s.adjacent(a, b));
          continue;
        }
        auto [p0, p1] = endpoints(r, s.inv(a));
        auto [q0, q1] = endpoints(r, s.inv(b));
        bool share = false;
        for (const auto& p : {p0, p1})
          for (const auto& q : {q0, q1})
            share = share || (!p.infinite && !q.infinite && same_point(p, q) && p.z.imag() > 1e-9);
        CAPTURE(s.name_of(a));
        CAPTURE(s.name_of(b));
        CHECK(s.adjacent(a, b) == share);
      }
  }
}

TEST_CASE("n_pair") {
  auto s = catalog_scheme("genus2-octagon");
  CHECK(s.n_pair(0, 1) == 4);
  auto t = catalog_scheme("triangle-special-case");
  CHECK_THROWS_AS(t.n_pair(1, 2), SchemeError);
  auto m = catalog_scheme("mutant-octagon-petal-mismatch");
  CHECK_THROWS_WITH_AS(m.n_pair(0, 2), doctest::Contains("differ"), SchemeError);
}

TEST_CASE("word operations") {
  auto s = catalog_scheme("genus2-octagon");
  Word w = s.parse_word("a b a^-1");
  CHECK(s.word_string(s.inverse(w)) == "a b^-1 a^-1");
  CHECK(s.reduce(s.parse_word("a b b^-1 c c^-1 a^-1 d")) == s.parse_word("d"));
  CHECK(s.parse_word("  ").empty());
  CHECK_THROWS_AS(s.parse_word("a q"), SchemeError);
}

TEST_CASE("special label") {
  auto t = catalog_scheme("triangle-special-case");
  REQUIRE(t.special_label());
  CHECK(t.name_of(*t.special_label()) == "g");
  CHECK(validate_scheme(t).special_case);
  CHECK_FALSE(catalog_scheme("genus2-octagon").special_label());
  CHECK_FALSE(catalog_scheme("free-f2-ideal-quad").special_label());
}
