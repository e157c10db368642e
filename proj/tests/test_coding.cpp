#include <map>
#include <set>

#include "doctest.h"
#include "fuchsian/coding.hpp"
#include "fuchsian/oracle.hpp"
#include "json.hpp"

using namespace fuchsian;

namespace {

bool same(const HPoint& a, const HPoint& b) {
  return !a.infinite && !b.infinite && std::abs(a.z - b.z) < 1e-9 && a.z.imag() > 1e-9;
}

// Kind counts from the polygon picture alone: a label e names the side of R it
// is the interior label of, with endpoints start(e) -> end(e) in CCW order.
std::map<std::string, int> geometric_kind_counts(const Realization& r) {
  const Scheme& s = r.scheme;
  const int N = s.size();
  std::vector<HPoint> from(N), to(N);
  for (const auto& g : r.polygon) {
    from[g.label] = g.from;
    to[g.label] = g.to;
  }
  auto finite = [](const HPoint& p) { return !p.infinite && p.z.imag() > 1e-9; };
  auto petals_at_point = [&](const HPoint& p) {
    for (int c = 0; c < N; ++c)
      if (same(to[c], p)) return s.petals_at(c);
    return 1;
  };
  std::map<std::string, int> out;
  for (Label e = 0; e < N; ++e) {
    const int nl = finite(from[e]) ? petals_at_point(from[e]) : 1;
    const int nr = finite(to[e]) ? petals_at_point(to[e]) : 1;
    out["A0"] += 1;
    for (int i = 1; i <= nl; ++i)
      for (int j = 1; j <= nl; ++j) out["AL"] += (i + j >= 3 && i + j <= nl);
    for (int i = 1; i <= nr; ++i)
      for (int j = 1; j <= nr; ++j) out["AR"] += (i + j >= 3 && i + j <= nr);
    out["ALR"] += std::max(0, nl - 2) * std::max(0, nr - 2);
    out["ARL"] += std::max(0, nr - 2) * std::max(0, nl - 2);
    if (finite(to[e])) out["C"] += nr - 2;
  }
  for (Label a = 0; a < N; ++a)
    for (Label b = 0; b < N; ++b) {
      out["B"] += same(from[s.inv(a)], to[s.inv(b)]);
      out["D"] += same(to[a], from[b]);
      for (Label m = 0; m < N; ++m) {
        out["EL"] += same(from[s.inv(a)], to[s.inv(m)]) && same(to[m], from[b]);
        out["ER"] += same(to[a], from[m]) && same(from[s.inv(m)], to[s.inv(b)]);
      }
    }
  for (auto it = out.begin(); it != out.end();) it = it->second ? std::next(it) : out.erase(it);
  return out;
}

int positivity_by_powers(const Coding& c) {
  const int n = c.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n));
  for (int j = 0; j < n; ++j)
    for (int k : c.succ[j]) m[j][k] = true;
  auto cur = m;
  for (int p = 1; p <= 64; ++p) {
    bool all = true;
    for (int j = 0; j < n && all; ++j)
      for (int k = 0; k < n && all; ++k) all = cur[j][k];
    if (all) return p;
    std::vector<std::vector<bool>> nxt(n, std::vector<bool>(n));
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        if (cur[j][l])
          for (int k : c.succ[l]) nxt[j][k] = true;
    cur = std::move(nxt);
  }
  return -1;
}

}  // namespace

TEST_CASE("octagon state counts agree with the polygon geometry") {
  auto r = realize_group("genus2-octagon");
  auto c = build_coding(r.scheme);
  CHECK(c.size() == 200);
  auto geo = geometric_kind_counts(r);
  CHECK(count_by_kind(c) == geo);
  const std::map<std::string, int> pinned = {{"A0", 8},  {"AL", 40}, {"ALR", 32}, {"AR", 40}, {"ARL", 32},
                                             {"B", 8},   {"C", 16},  {"D", 8},    {"EL", 8},  {"ER", 8}};
  CHECK(count_by_kind(c) == pinned);
  int starts = 0, finals = 0;
  for (int j = 0; j < c.size(); ++j) {
    starts += c.start[j];
    finals += c.final[j];
  }
  CHECK(starts == 48);
  CHECK(finals == 48);
}

TEST_CASE("coded path counts equal sphere sizes") {
  SUBCASE("octagon against the oracle ball") {
    auto r = realize_group("genus2-octagon");
    Oracle o(r, 5);
    auto c = build_coding(r.scheme);
    auto counts = path_counts(c, 5);
    auto sizes = o.sphere_sizes();
    for (int n = 1; n <= 5; ++n) CHECK(counts[n - 1] == sizes[n]);
    CHECK(path_counts(c, 7)[6] == 930328);
  }
  SUBCASE("free group") {
    auto s = catalog_scheme("free-f2-ideal-quad");
  auto c = build_coding(s);
    CHECK(c.size() == 4);
    std::uint64_t want = 4;
    for (auto k : path_counts(c, 10)) {
      CHECK(k == want);
      want *= 3;
    }
    // A0(e) may be followed by anything except A0 of the label that undoes it
    for (int j = 0; j < 4; ++j) {
      CHECK(c.succ[j].size() == 3);
      CHECK_FALSE(c.edge(j, c.reversal[j]));
    }
  }
  SUBCASE("triangle: the double-counted generator at n = 1") {
    auto ts = catalog_scheme("triangle-special-case");
    Oracle o(realize_from_integer_matrices(ts, {IMat2{0, -1, 1, 0}, IMat2{1, 1, 0, 1}, IMat2{1, -1, 0, 1}}), 7);
    auto c = build_coding(ts);
    auto counts = path_counts(c, 7);
    auto sizes = o.sphere_sizes();
    CHECK(counts[0] == 4);
    CHECK(sizes[1] == 3);
    for (int n = 2; n <= 7; ++n) CHECK(counts[n - 1] == sizes[n]);
  }
}

TEST_CASE("involution examples") {
  auto s = catalog_scheme("genus2-octagon");
  auto L = [&](const char* x) { return s.label(x); };
  CHECK(involution(s, make_a(Kind::A0, 1, 1, L("a"))) == make_a(Kind::A0, 1, 1, L("a^-1")));
  CHECK(involution(s, make_a(Kind::AL, 1, 2, L("b"))) == make_a(Kind::AR, 2, 1, L("b^-1")));
  CHECK(involution(s, make_a(Kind::ALR, 2, 3, L("c"))) == make_a(Kind::ALR, 3, 2, L("c^-1")));
  CHECK(involution(s, make_pair(Kind::B, L("a"), L("d"))) == make_pair(Kind::D, L("d^-1"), L("a^-1")));
  CHECK(involution(s, make_c(1, L("a"), L("b"))) == make_c(2, L("b^-1"), L("a^-1")));
  CHECK(involution(s, make_a(Kind::ALR, 2, 3, L("c")), Variant::literal) == make_a(Kind::ARL, 3, 2, L("c^-1")));
  auto c = build_coding(s);
  for (int j = 0; j < c.size(); ++j) {
    REQUIRE(c.reversal[j] >= 0);
    CHECK(c.reversal[c.reversal[j]] == j);
    CHECK(c.start[j] == c.final[c.reversal[j]]);
  }
}

TEST_CASE("reversibility, connectivity and positivity") {
  for (auto nm : {"free-f2-ideal-quad", "genus2-octagon", "triangle-special-case"}) {
    CAPTURE(nm);
    auto s = catalog_scheme(nm);
    auto c = build_coding(s);
    CHECK(check_reversibility(c));
    CHECK(strongly_connected(c));
    CHECK(period(c) == 1);
    CHECK(aperiodic(c));
    CHECK(positivity_index(c) == positivity_by_powers(c));
  }
  auto oct = catalog_scheme("genus2-octagon");
  CHECK(positivity_index(build_coding(oct)) == 8);
}

TEST_CASE("literal table fails reversibility and the sphere count") {
  auto s = catalog_scheme("genus2-octagon");
  auto lit = build_coding(s, Variant::literal);
  CHECK_FALSE(check_reversibility(lit));
  CHECK(path_counts(lit, 5)[4] == 19080);
  CHECK(path_counts(build_coding(s), 5)[4] == 19096);
}

TEST_CASE("mutated transition matrices are caught") {
  auto s = catalog_scheme("genus2-octagon");
  auto c = build_coding(s);
  SUBCASE("one flipped transition breaks reversibility") {
    int j = 0, k = c.succ[0].front();
    c.set_edge(j, k, false);
    CHECK_FALSE(check_reversibility(c));
  }
  SUBCASE("an isolated state breaks connectivity") {
    const int j = 5;
    for (int k : std::vector<int>(c.succ[j])) c.set_edge(j, k, false);
    for (int i = 0; i < c.size(); ++i)
      if (c.edge(i, j)) c.set_edge(i, j, false);
    CHECK_FALSE(strongly_connected(c));
  }
}

TEST_CASE("coding JSON export") {
  auto s = catalog_scheme("genus2-octagon");
  auto c = build_coding(s);
  auto doc = nlohmann::json::parse(coding_to_json(c));
  CHECK(doc["scheme"] == "genus2-octagon");
  CHECK(doc["states"].size() == 200);
  std::size_t edges = 0;
  for (const auto& row : c.succ) edges += row.size();
  CHECK(doc["transitions"].size() == edges);
  CHECK(doc["start"].size() == 48);
  CHECK(doc["involution"].size() == 200);
  CHECK(doc["states"][0].contains("type"));
}
