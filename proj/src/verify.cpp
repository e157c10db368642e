#include "fuchsian/verify.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>

#include "fuchsian/coding.hpp"
#include "fuchsian/dynamics.hpp"
#include "fuchsian/oracle.hpp"
#include "fuchsian/parry.hpp"
#include "fuchsian/walker.hpp"

namespace fuchsian {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

CheckResult timed(std::string name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  CheckResult r;
  r.name = std::move(name);
  try {
    Outcome o = body();
    r.pass = o.pass;
    r.detail = std::move(o.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

const char* kSchemes[] = {"free-f2-ideal-quad", "genus2-octagon", "triangle-special-case"};

bool has_oracle(const Scheme& s) {
  if (s.name != "free-f2-ideal-quad" && s.name != "genus2-octagon") return false;
  return scheme_to_json(s) == scheme_to_json(catalog_scheme(s.name));
}

bool free_scheme(const Scheme& s) {
  for (const auto& c : s.corners)
    if (c) return false;
  return true;
}

// group element equality through the oracle, or free reduction without relators
struct Equality {
  std::unique_ptr<Oracle> oracle;
  const Scheme* scheme;
  bool operator()(const Word& a, const Word& b) {
    if (oracle) return oracle->same_element(a, b);
    return scheme->reduce(a) == scheme->reduce(b);
  }
};

Outcome future_word_identities(const Coding& c, Equality& eq) {
  const Scheme& s = *c.scheme;
  int checked = 0;
  for (int k = 0; k < c.size(); ++k) {
    const Word wk = right_future_word(s, c.states[k]);
    if (!eq(right_future_word(s, c.states[c.reversal[k]]), s.inverse(wk)))
      return {false, fmt::format("right future word of the image of {} is not the inverse", state_string(s, c.states[k]))};
    ++checked;
    for (int j : c.succ[k]) {
      Word rhs = s.inverse(right_future_word(s, c.states[j]));
      for (Label e : s.inverse(left_future_word(s, c.states[c.reversal[j]]))) rhs.push_back(e);
      for (Label e : wk) rhs.push_back(e);
      if (!eq(left_future_word(s, c.states[k]), rhs))
        return {false, fmt::format("left future word identity fails on {} -> {}", state_string(s, c.states[k]),
                                   state_string(s, c.states[j]))};
      ++checked;
    }
  }
  return {true, fmt::format("{} identities", checked)};
}

std::vector<int> random_path(const Coding& c, std::mt19937_64& rng, int length) {
  std::vector<int> p{std::uniform_int_distribution<int>(0, c.size() - 1)(rng)};
  while (static_cast<int>(p.size()) < length) {
    const auto& next = c.succ[p.back()];
    p.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
  }
  return p;
}

Outcome parry_identities(const Coding& c, const ParryData& d, std::mt19937_64& rng, int paths) {
  double worst_path = 0, worst_pair = 0, worst_inv = 0;
  // equal endpoints and length: compare against the first path seen for each key
  std::map<std::tuple<int, int, int>, double> seen;
  for (int t = 0; t < paths; ++t) {
    const int len = std::uniform_int_distribution<int>(1, 12)(rng);
    const auto p = random_path(c, rng, len);
    double prod = 1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) prod *= d.p[p[i]][p[i + 1]];
    const double want = d.h[p.back()] / (std::pow(d.lambda, len - 1) * d.h[p.front()]);
    worst_path = std::max(worst_path, std::abs(prod - want) / want);
    auto [it, fresh] = seen.emplace(std::tuple(p.front(), p.back(), len), prod);
    if (!fresh) worst_pair = std::max(worst_pair, std::abs(prod - it->second) / it->second);
  }
  const auto& ps = d.stationary;
  for (int j = 0; j < c.size(); ++j) {
    worst_inv = std::max(worst_inv, std::abs(ps[c.reversal[j]] - ps[j]));
    for (int k = 0; k < c.size(); ++k)
      worst_inv = std::max(worst_inv, std::abs(d.p[c.reversal[j]][c.reversal[k]] - ps[k] * d.p[k][j] / ps[j]));
  }
  const bool pass = worst_path <= 1e-12 && worst_pair <= 1e-12 && worst_inv <= 1e-12;
  return {pass, fmt::format("path formula {:.2e}, equal-endpoint pairs {:.2e}, involution {:.2e}", worst_path,
                            worst_pair, worst_inv)};
}

Eigen::VectorXd test_function(int points, std::mt19937_64& rng) {
  Eigen::VectorXd f(points);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int x = 0; x < points; ++x) f[x] = u(rng);
  return f;
}

Outcome spherical_sums(const Coding& c, const ParryData& d, Oracle& o, std::string_view action, int n_max,
                       std::mt19937_64& rng) {
  const Scheme& s = *c.scheme;
  Dynamics dy(c, d, catalog_action(s, action));
  const Eigen::VectorXd f = test_function(dy.points(), rng);
  double worst = 0;
  for (int n = 1; n <= n_max; ++n) {
    const Eigen::VectorXd coded = dy.spherical_sum(f, n);
    const Eigen::VectorXd brute = spherical_sum_bruteforce(dy.action(), o, f, n);
    worst = std::max(worst, (coded - brute).cwiseAbs().maxCoeff() / std::max(1.0, brute.cwiseAbs().maxCoeff()));
  }
  return {worst <= 1e-8, fmt::format("{} n<={} relative {:.2e}", action, n_max, worst)};
}

// -------------------------------------------------------------- suites

Outcome suite_free() {
  const Scheme s = catalog_scheme("free-f2-ideal-quad");
  const Coding c = build_coding(s);
  const auto counts = path_counts(c, 12);
  Oracle o(realize_group(s.name), 12);
  const auto sizes = o.sphere_sizes();
  std::uint64_t expect = 4;
  for (int n = 1; n <= 12; ++n, expect *= 3) {
    if (counts[n - 1] != expect) return {false, fmt::format("coded count {} at n={}", counts[n - 1], n)};
    if (sizes[n] != expect) return {false, fmt::format("oracle count {} at n={}", sizes[n], n)};
  }
  const double lambda = pf_eigendata(c).lambda;
  const bool pass = c.size() == 4 && std::abs(lambda - 3) <= 1e-12;
  return {pass, fmt::format("4 states, counts 4*3^(n-1) = oracle for n<=12, lambda-3 = {:.1e}", lambda - 3)};
}

Outcome suite_octagon_spheres() {
  const Scheme s = catalog_scheme("genus2-octagon");
  const Coding c = build_coding(s);
  Oracle o(realize_group(s.name), 5);
  const auto counts = path_counts(c, 5);
  const auto sizes = o.sphere_sizes();
  for (int n = 1; n <= 5; ++n)
    if (counts[n - 1] != sizes[n]) return {false, fmt::format("n={}: coded {} vs oracle {}", n, counts[n - 1], sizes[n])};
  std::size_t images = 0;
  for (int n = 1; n <= 4; ++n) {
    std::set<int> seen;
    std::string bad;
    for_each_path(c, n, [&](const std::vector<int>& p) {
      const int id = o.id(path_word(c, p));
      if (!seen.insert(id).second && bad.empty()) bad = fmt::format("two paths share an image at n={}", n);
      if (o.depth(id) != n && bad.empty()) bad = fmt::format("image at distance {} for n={}", o.depth(id), n);
    });
    if (!bad.empty()) return {false, bad};
    images += seen.size();
  }
  return {true, fmt::format("counts equal for n<=5 ({}), {} injective images for n<=4", sizes[5], images)};
}

Outcome suite_reversibility() {
  std::string detail;
  for (const char* nm : kSchemes) {
    const Scheme s = catalog_scheme(nm);
    const Coding c = build_coding(s);
    if (!check_reversibility(c)) return {false, fmt::format("{}: not reversible", nm)};
    for (int j = 0; j < c.size(); ++j)
      if (c.start[j] != c.final[c.reversal[j]]) return {false, fmt::format("{}: start/final sets not exchanged", nm)};
    detail += fmt::format("{}{} ({} states)", detail.empty() ? "" : ", ", nm, c.size());
  }
  return {true, detail};
}

Outcome suite_connectivity() {
  std::string detail;
  for (const char* nm : kSchemes) {
    const Scheme s = catalog_scheme(nm);
    const Coding c = build_coding(s);
    if (!strongly_connected(c)) return {false, fmt::format("{}: not strongly connected", nm)};
    if (period(c) != 1) return {false, fmt::format("{}: period {}", nm, period(c))};
    detail += fmt::format("{}{} N={}", detail.empty() ? "" : ", ", nm, positivity_index(c));
  }
  return {true, "period 1, positivity index " + detail};
}

Outcome suite_parry(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string detail;
  bool pass = true;
  for (const char* nm : kSchemes) {
    const Scheme s = catalog_scheme(nm);
    const Coding c = build_coding(s);
    const Outcome o = parry_identities(c, parry(c), rng, 1000);
    pass = pass && o.pass;
    detail += fmt::format("{}{}: {}", detail.empty() ? "" : "; ", nm, o.detail);
  }
  return {pass, detail};
}

Outcome suite_future_words() {
  std::string detail;
  for (const char* nm : {"genus2-octagon", "free-f2-ideal-quad"}) {
    const Scheme s = catalog_scheme(nm);
    const Coding c = build_coding(s);
    Equality eq{nullptr, &s};
    if (s.name == "genus2-octagon") eq.oracle = std::make_unique<Oracle>(realize_group(nm), 4);
    const Outcome o = future_word_identities(c, eq);
    if (!o.pass) return {false, fmt::format("{}: {}", nm, o.detail)};
    detail += fmt::format("{}{}: {}", detail.empty() ? "" : ", ", nm, o.detail);
  }
  return {true, detail};
}

Outcome suite_operators() {
  std::string detail;
  bool pass = true;
  for (const char* nm : kSchemes) {
    const Scheme s = catalog_scheme(nm);
    const Coding c = build_coding(s);
    const ParryData d = parry(c);
    int actions = 0;
    for (const auto& an : action_names(s)) {
      if (an == "trivial") continue;
      const AdjointReport r = check_adjoint_identities(Dynamics(c, d, catalog_action(s, an)));
      if (!r.ok(1e-12)) {
        pass = false;
        detail += fmt::format("{}/{} fails: {} ", nm, an, r.text());
      }
      ++actions;
    }
    if (actions < 2) pass = false;
    detail += fmt::format("{}{}: {} actions", detail.empty() ? "" : ", ", nm, actions);
  }
  return {pass, detail};
}

Outcome suite_spherical_sums(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Scheme oct = catalog_scheme("genus2-octagon");
  const Coding co = build_coding(oct);
  const ParryData po = parry(co);
  Oracle oo(realize_group(oct.name), 5);
  const Scheme fr = catalog_scheme("free-f2-ideal-quad");
  const Coding cf = build_coding(fr);
  const ParryData pf = parry(cf);
  Oracle of(realize_group(fr.name), 8);
  std::vector<Outcome> parts{spherical_sums(co, po, oo, "s5-quotient", 5, rng),
                             spherical_sums(co, po, oo, "z5-shift", 5, rng),
                             spherical_sums(cf, pf, of, "five-point", 8, rng)};
  bool pass = true;
  std::string detail;
  for (const auto& p : parts) {
    pass = pass && p.pass;
    detail += (detail.empty() ? "" : ", ") + p.detail;
  }
  return {pass, detail};
}

Outcome suite_convexification(std::uint64_t seed) {
  const Scheme s = catalog_scheme("genus2-octagon");
  Oracle o(realize_group(s.name), 4);
  std::mt19937_64 rng(seed);
  int pairs = 0, paths = 0;
  for (int r = 0; r <= 4; ++r)
    for (int id : o.sphere(r)) {
      const Word end = o.word_of(id);
      const auto want = level_ids(brute_thickened(o, {}, end), o);
      const auto all = shortest_paths(o, {}, end);
      std::set<std::vector<int>> oracle_paths(all.begin(), all.end());
      const auto& pick = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
      std::vector<Domain> path;
      for (int x : pick) path.push_back(o.word_of(x));
      const ThickPath t = convexify(s, path, o);
      if (level_ids(t, o) != want) return {false, fmt::format("convexification differs for {}", s.word_string(end))};
      std::set<std::vector<int>> got;
      for_each_shortest_path(s, t, o, [&](const std::vector<Domain>& p) {
        std::vector<int> ids;
        for (const auto& w : p) ids.push_back(o.id(w));
        got.insert(ids);
      });
      if (got != oracle_paths) return {false, fmt::format("shortest paths differ for {}", s.word_string(end))};
      ++pairs;
      paths += static_cast<int>(all.size());
    }
  return {true, fmt::format("{} target domains (pairs up to translation), {} shortest paths", pairs, paths)};
}

Outcome suite_convergence(std::uint64_t seed) {
  const Scheme s = catalog_scheme("genus2-octagon");
  const Coding c = build_coding(s);
  const ParryData d = parry(c);
  const Dynamics dy(c, d, catalog_action(s, "s5-quotient"));
  std::mt19937_64 rng(seed);
  Eigen::VectorXd f = test_function(dy.points(), rng);
  f.array() -= f.mean();
  const int orbits = pair_orbit_count(s, dy.action());
  const double l2 = second_eigenvalue_modulus(dy);
  const auto rows = convergence_experiment(dy, f, 12);
  const double e1 = rows.front().sup_error;
  const int n_pred = e1 < 1e-2 ? 1 : 1 + static_cast<int>(std::ceil(std::log(1e-2 / e1) / std::log(l2)));
  if (n_pred > static_cast<int>(rows.size())) return {false, fmt::format("predicted n={} beyond the table", n_pred)};
  for (std::size_t i = n_pred - 1; i < rows.size(); ++i)
    if (rows[i].sup_error >= 1e-2 || rows[i].l1_error >= 1e-2)
      return {false, fmt::format("error {:.2e} at radius {} after predicted n={}", rows[i].sup_error, rows[i].n, n_pred)};
  std::vector<int> dims;
  for (int n = 1; n <= 3; ++n) dims.push_back(invariant_field_dimension(dy, FixedOp::Qn, n));
  const int m = positivity_index(c);
  dims.push_back(invariant_field_dimension(dy, FixedOp::QstarmQm, m));
  for (int dim : dims)
    if (dim != orbits) return {false, fmt::format("invariant dimension {} vs {} orbits", dim, orbits)};
  return {true, fmt::format("|lambda2(Q)| = {:.4f}, sup error {:.2e} at radius {} (predicted n={}), fixed dims {} "
                            "for Q^1..3 and (Q*)^{}Q^{}",
                            l2, rows[n_pred - 1].sup_error, rows[n_pred - 1].n, n_pred, orbits, m, m)};
}

struct Suite {
  const char* name;
  std::function<Outcome(std::uint64_t)> run;
  double budget;  // seconds, 0 for none
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"free-end-to-end", [](std::uint64_t) { return suite_free(); }, 1.0},
      {"octagon-sphere-bijection", [](std::uint64_t) { return suite_octagon_spheres(); }, 60.0},
      {"reversibility", [](std::uint64_t) { return suite_reversibility(); }, 0},
      {"connectivity", [](std::uint64_t) { return suite_connectivity(); }, 0},
      {"parry-identities", suite_parry, 0},
      {"future-word-identities", [](std::uint64_t) { return suite_future_words(); }, 0},
      {"operator-identities", [](std::uint64_t) { return suite_operators(); }, 0},
      {"spherical-sums", suite_spherical_sums, 0},
      {"convexification", suite_convexification, 0},
      {"convergence", suite_convergence, 0},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.name);
  return out;
}

CheckResult run_suite(std::string_view name, std::uint64_t seed) {
  for (const auto& s : suites()) {
    if (name != s.name) continue;
    CheckResult r = timed(s.name, [&] { return s.run(seed); });
    if (r.pass && s.budget > 0 && r.seconds > s.budget) {
      r.pass = false;
      r.detail += fmt::format("; over the {:.0f} s budget", s.budget);
    }
    return r;
  }
  throw std::invalid_argument(fmt::format("unknown suite '{}'", name));
}

std::vector<CheckResult> verify_scheme(const Scheme& s, std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  out.push_back(timed("scheme conditions", [&] {
    const auto rep = validate_scheme(s);
    return Outcome{rep.ok(), rep.ok() ? "all conditions hold" : rep.text()};
  }));
  if (!out.back().pass) return out;
  const Coding c = build_coding(s);
  out.push_back(timed("reversibility", [&] {
    bool ok = check_reversibility(c);
    for (int j = 0; j < c.size() && ok; ++j) ok = c.start[j] == c.final[c.reversal[j]];
    return Outcome{ok, fmt::format("{} states", c.size())};
  }));
  out.push_back(timed("connectivity", [&] {
    const bool ok = strongly_connected(c) && period(c) == 1;
    return Outcome{ok, ok ? fmt::format("positivity index {}", positivity_index(c)) : "not primitive"};
  }));
  if (!out.back().pass) return out;
  const ParryData d = parry(c);
  out.push_back(timed("parry identities", [&] { return parry_identities(c, d, rng, 1000); }));
  std::unique_ptr<Oracle> o;
  if (has_oracle(s)) o = std::make_unique<Oracle>(realize_group(s.name), free_scheme(s) ? 8 : 4);
  out.push_back(timed("future word identities", [&] {
    if (o) {
      Equality eq{std::make_unique<Oracle>(o->realization(), 4), &s};
      return future_word_identities(c, eq);
    }
    if (free_scheme(s)) {
      Equality eq{nullptr, &s};
      return future_word_identities(c, eq);
    }
    return Outcome{true, "skipped: no oracle for this scheme"};
  }));
  if (o) {
    out.push_back(timed("sphere counts", [&] {
      const auto counts = path_counts(c, o->radius());
      const auto sizes = o->sphere_sizes();
      for (int n = 1; n <= o->radius(); ++n)
        if (counts[n - 1] != sizes[n]) return Outcome{false, fmt::format("n={}: {} vs {}", n, counts[n - 1], sizes[n])};
      return Outcome{true, fmt::format("equal for n<={}", o->radius())};
    }));
  }
  for (const auto& an : action_names(s)) {
    out.push_back(timed("operators/" + an, [&] {
      const AdjointReport r = check_adjoint_identities(Dynamics(c, d, catalog_action(s, an)));
      return Outcome{r.ok(1e-12), r.ok(1e-12) ? "U^2 = I, P* = UPU, Q* = WV" : r.text()};
    }));
    if (o) {
      out.push_back(timed("spherical sums/" + an, [&] { return spherical_sums(c, d, *o, an, o->radius(), rng); }));
    }
  }
  return out;
}

std::string result_line(const CheckResult& r) {
  return fmt::format("{} {:<26} {:7.2f}s  {}", r.pass ? "PASS" : "FAIL", r.name, r.seconds, r.detail);
}

}  // namespace fuchsian
