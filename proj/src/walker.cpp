#include "fuchsian/walker.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <random>

#include "json.hpp"

namespace fuchsian {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// l(f), l^2(f), ..., l^m(f)
Word left_orbit(const Scheme& s, Label f, int m) {
  Word w;
  for (int i = 0; i < m; ++i) {
    auto next = s.rot_l(f);
    if (!next) throw WalkError("left rotation leaves the flower");
    f = *next;
    w.push_back(f);
  }
  return w;
}

}  // namespace

bool two_pasts(Kind k) { return k == Kind::C || k == Kind::D || k == Kind::EL || k == Kind::ER; }
bool two_futures(Kind k) { return k == Kind::B || k == Kind::C || k == Kind::EL || k == Kind::ER; }

Word left_future_word(const Scheme& s, const State& st) { return {s.inv(st.e1)}; }

Word right_future_word(const Scheme& s, const State& st) {
  switch (st.kind) {
    case Kind::B: return {s.inv(st.e2)};
    case Kind::C: return s.inverse(left_orbit(s, s.inv(st.e1), 2 * st.k + 1));
    case Kind::EL: return {s.inv(st.e2)};
    case Kind::ER: return {s.inv(st.e3), st.e2, s.inv(st.e1)};
    default: return {s.inv(st.e1)};
  }
}

Word right_past(const Scheme& s, const State& st) {
  switch (st.kind) {
    case Kind::C: return left_orbit(s, s.inv(st.e1), 2 * st.k);
    case Kind::D: return {st.e1, s.inv(st.e2)};
    case Kind::EL: return {st.e2, s.inv(st.e3)};
    case Kind::ER: return {st.e1, s.inv(st.e2)};
    default: return {};
  }
}

namespace {

void check_admissible(const Coding& c, const std::vector<int>& path) {
  if (path.empty()) throw WalkError("empty state sequence");
  for (int j : path)
    if (j < 0 || j >= c.size()) throw WalkError("state index out of range");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!c.edge(path[i], path[i + 1]))
      throw WalkError(fmt::format("inadmissible transition {} -> {}", state_string(*c.scheme, c.states[path[i]]),
                                  state_string(*c.scheme, c.states[path[i + 1]])));
}

}  // namespace

Word path_word(const Coding& c, const std::vector<int>& path) {
  check_admissible(c, path);
  if (!c.start[path.front()]) throw WalkError("path does not begin in a start state");
  if (!c.final[path.back()]) throw WalkError("path does not end in a final state");
  const Scheme& s = *c.scheme;
  Word w = right_future_word(s, c.states[path.back()]);
  for (int i = static_cast<int>(path.size()) - 2; i >= 0; --i) w = concat(w, left_future_word(s, c.states[path[i]]));
  return s.reduce(w);
}

ThickPath realize(const Coding& c, const std::vector<int>& path, const Domain& base) {
  check_admissible(c, path);
  const Scheme& s = *c.scheme;
  ThickPath t;
  t.levels.push_back({s.reduce(base)});
  for (int j : path) {
    const State& st = c.states[j];
    const auto& past = t.levels.back();
    if (past.size() != (two_pasts(st.kind) ? 2u : 1u))
      throw WalkError(fmt::format("state {} does not fit a level of {} domains", state_string(s, st), past.size()));
    const Domain& left = past.front();
    std::vector<Domain> next{s.reduce(concat(left, s.inverse(left_future_word(s, st))))};
    if (two_futures(st.kind)) next.push_back(s.reduce(concat(left, s.inverse(right_future_word(s, st)))));
    t.levels.push_back(std::move(next));
  }
  return t;
}

// ---------------------------------------------------------------- vertices

std::vector<std::pair<int, int>> VertexIndex::petals(int id, int corner) {
  std::vector<std::pair<int, int>> out;
  int cur = id, c = corner;
  const int n = s_.petals_at(corner);
  for (int k = 0; k < 2 * n; ++k) {
    out.emplace_back(cur, c);
    Label f = s_.crossing_label(c);
    cur = ids_.step(cur, f);
    c = mod(f - 1, s_.size());
  }
  return out;
}

std::int64_t VertexIndex::vertex(int id, int corner) {
  auto it = cache_.find({id, corner});
  if (it != cache_.end()) return it->second;
  auto ps = petals(id, corner);
  std::int64_t best = -1;
  for (auto [d, c] : ps) {
    std::int64_t key = static_cast<std::int64_t>(d) * s_.size() + c;
    if (best < 0 || key < best) best = key;
  }
  for (auto p : ps) cache_[p] = best;
  return best;
}

std::optional<Label> VertexIndex::label_between(int u, int w) {
  for (Label e = 0; e < s_.size(); ++e)
    if (ids_.step(u, e) == w) return e;
  return std::nullopt;
}

// ---------------------------------------------------------------- states_of

namespace {

State classify_a(Label e, int iml, int imr, int ipl, int ipr) {
  if (iml == 1 && imr == 1 && ipl == 1 && ipr == 1) return make_a(Kind::A0, 1, 1, e);
  if (imr == 1 && ipr == 1) return make_a(Kind::AL, iml, ipl, e);
  if (iml == 1 && ipl == 1) return make_a(Kind::AR, imr, ipr, e);
  if (imr == 1 && ipl == 1) return make_a(Kind::ALR, iml, ipr, e);
  if (iml == 1 && ipr == 1) return make_a(Kind::ARL, imr, ipl, e);
  throw WalkError(fmt::format("impossible corner occupancy ({},{},{},{})", iml, imr, ipl, ipr));
}

}  // namespace

std::vector<int> states_of(const Coding& c, const ThickPath& t, DomainIds& ids) {
  const Scheme& s = *c.scheme;
  if (t.levels.size() < 2) throw WalkError("thickened path needs at least two levels");
  for (const auto& l : t.levels)
    if (l.empty() || l.size() > 2) throw WalkError(fmt::format("level with {} domains", l.size()));
  if (t.levels.front().size() != 1 || t.levels.back().size() != 1)
    throw WalkError("first and last levels must be single domains");

  VertexIndex vx(s, ids);
  std::vector<std::vector<int>> lv;
  for (const auto& l : t.levels) {
    std::vector<int> row;
    for (const auto& d : l) row.push_back(ids.id(d));
    lv.push_back(row);
  }
  auto label = [&](int u, int w) -> Label {
    auto e = vx.label_between(u, w);
    if (!e) throw WalkError("consecutive levels contain domains without a common side");
    return *e;
  };
  auto adjacent = [&](int u, int w) { return vx.label_between(u, w).has_value(); };

  const int N = static_cast<int>(lv.size()) - 1;
  std::vector<State> out;
  std::vector<int> past = lv[0];
  std::vector<int> a_future(N, -1);  // future domain of A-type pairs
  for (int k = 0; k < N; ++k) {
    const auto& fut = lv[k + 1];
    std::vector<int> next;
    State st;
    if (past.size() == 1 && fut.size() == 1) {
      st = make_a(Kind::A0, 1, 1, label(past[0], fut[0]));
      a_future[k] = fut[0];
      next = fut;
    } else if (past.size() == 1) {
      const Label x = label(past[0], fut[0]), y = label(past[0], fut[1]);
      if (c.find(make_pair(Kind::B, x, y)) >= 0) {
        st = make_pair(Kind::B, x, y);
        next = {fut[0], fut[1]};
      } else {
        st = make_pair(Kind::B, y, x);
        next = {fut[1], fut[0]};
      }
    } else if (fut.size() == 1) {
      st = make_pair(Kind::D, label(past[0], fut[0]), label(past[1], fut[0]));
      next = fut;
    } else {
      const int pl = past[0], pr = past[1];
      const bool r0 = adjacent(pr, fut[0]), r1 = adjacent(pr, fut[1]);
      int fl, fr;
      if (r0 != r1) {
        fr = r0 ? fut[0] : fut[1];
        fl = r0 ? fut[1] : fut[0];
      } else {
        const bool l0 = adjacent(pl, fut[0]);
        fl = l0 ? fut[0] : fut[1];
        fr = l0 ? fut[1] : fut[0];
      }
      const Label eL = label(pl, fl);
      if (adjacent(pl, fr)) {
        st = make_e(Kind::EL, eL, label(pl, fr), label(pr, fr));
      } else if (adjacent(pr, fl)) {
        st = make_e(Kind::ER, eL, label(pr, fl), label(pr, fr));
      } else {
        const Label eR = label(pr, fr);
        auto x = s.v_right(eL);
        if (!x) throw WalkError("crossing configuration at a boundary end");
        int found = -1;
        for (int kk = 1; kk <= s.petals_at(*x) - 2 && found < 0; ++kk) {
          Word w = left_orbit(s, s.inv(eL), 2 * kk);
          int cur = pl;
          for (Label e : w) cur = ids.step(cur, e);
          if (cur == pr) found = kk;
        }
        if (found < 0) throw WalkError("two-row level pair matches no crossing state");
        st = make_c(found, eL, eR);
      }
      next = {fl, fr};
    }
    out.push_back(st);
    past = next;
  }

  // corner occupancy of A-type pairs
  std::vector<std::set<std::int64_t>> level_vertices(N + 1);
  for (int m = 0; m <= N; ++m)
    for (int d : lv[m])
      for (int corner = 0; corner < s.size(); ++corner)
        if (s.corners[corner]) level_vertices[m].insert(vx.vertex(d, corner));
  auto occupancy = [&](int k, std::optional<int> corner, int fut) {
    std::pair<int, int> r{1, 1};
    if (!corner) return r;
    const std::int64_t v = vx.vertex(fut, *corner);
    r = {0, 0};
    for (int m = 0; m <= N; ++m)
      if (level_vertices[m].count(v)) (m <= k ? r.first : r.second) += 1;
    return r;
  };
  const auto g = s.special_label();
  for (int k = 0; k < N; ++k) {
    if (!is_a_type(out[k].kind)) continue;
    const Label e = out[k].e1;
    auto [iml, ipl] = occupancy(k, s.v_left(e), a_future[k]);
    auto [imr, ipr] = occupancy(k, s.v_right(e), a_future[k]);
    if (g && e == *g) {
      // virtual domains before the start and after the end
      if (k == 0) {
        if (ipl >= 2)
          imr = 2;
        else
          iml = 2;
      }
      if (k == N - 1) {
        if (iml >= 2)
          ipr = 2;
        else
          ipl = 2;
      }
    }
    out[k] = classify_a(e, iml, imr, ipl, ipr);
  }

  std::vector<int> path;
  for (const auto& st : out) {
    int j = c.find(st);
    if (j < 0) throw WalkError(fmt::format("level pair reads as {}, which is not a state", state_string(s, st)));
    path.push_back(j);
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!c.edge(path[i], path[i + 1]))
      throw WalkError(fmt::format("level pairs read as the inadmissible transition {} -> {}",
                                  state_string(s, out[i]), state_string(s, out[i + 1])));
  return path;
}

// ---------------------------------------------------------------- boundary curve

namespace {

struct Sides {
  std::vector<int> entry, exit;  // side indices in each domain's own frame
};

Sides path_sides(VertexIndex& vx, const std::vector<int>& path) {
  const Scheme& s = vx.scheme();
  const int L = static_cast<int>(path.size());
  Sides sd{std::vector<int>(L, -1), std::vector<int>(L, -1)};
  for (int i = 0; i + 1 < L; ++i) {
    auto e = vx.label_between(path[i], path[i + 1]);
    if (!e) throw WalkError(fmt::format("domains {} and {} of the path share no side", i, i + 1));
    sd.exit[i] = s.inv(*e);
    sd.entry[i + 1] = *e;  // back across: exterior label e^-1, interior label e
  }
  return sd;
}

}  // namespace

std::vector<BoundaryVertex> boundary_curve(VertexIndex& vx, const std::vector<int>& path) {
  const Scheme& s = vx.scheme();
  const int N = s.size();
  const int L = static_cast<int>(path.size());
  Sides sd = path_sides(vx, path);
  std::vector<std::pair<int, int>> seq;  // (position, corner)
  auto run = [&](int pos, int from, int count) {
    for (int t = 0; t < count; ++t) seq.emplace_back(pos, mod(from + t, N));
  };
  if (L == 1) {
    run(0, 0, N);
  } else {
    run(0, sd.exit[0], N);
    for (int i = 1; i < L - 1; ++i) run(i, sd.entry[i], mod(sd.exit[i] - sd.entry[i], N));
    run(L - 1, sd.entry[L - 1], N);
    for (int i = L - 2; i >= 1; --i) run(i, sd.exit[i], mod(sd.entry[i] - sd.exit[i], N));
  }
  std::vector<std::int64_t> key(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto [pos, corner] = seq[i];
    key[i] = s.corners[corner] ? vx.vertex(path[pos], corner) : -1;
  }
  // rotate so that the sequence starts at a group boundary
  const std::size_t M = seq.size();
  std::size_t start = 0;
  if (M > 1) {
    while (start < M && key[start] >= 0 && key[start] == key[(start + M - 1) % M]) ++start;
    if (start == M) start = 0;
  }
  std::vector<BoundaryVertex> out;
  for (std::size_t t = 0; t < M; ++t) {
    const std::size_t i = (start + t) % M;
    auto [pos, corner] = seq[i];
    if (key[i] >= 0 && !out.empty() && out.back().vertex == key[i] && t > 0) {
      out.back().inside += 1;
      continue;
    }
    BoundaryVertex b;
    b.vertex = key[i];
    b.petals = key[i] >= 0 ? s.petals_at(corner) : 0;
    b.inside = 1;
    b.position = pos;
    b.corner = corner;
    out.push_back(b);
  }
  return out;
}

namespace {

enum class Angle { boundary, convex, min_convex, straight, right, worse };

Angle angle_of(const BoundaryVertex& b) {
  if (b.vertex < 0) return Angle::boundary;
  if (b.inside > b.petals + 1) return Angle::worse;
  if (b.inside == b.petals + 1) return Angle::right;
  if (b.inside == b.petals) return Angle::straight;
  if (b.inside == b.petals - 1) return Angle::min_convex;
  return Angle::convex;
}

// indices of the curve split into maximal pieces free of boundary ends;
// the flag tells whether the piece closes up
std::vector<std::pair<std::vector<int>, bool>> pieces(const std::vector<BoundaryVertex>& curve) {
  const int M = static_cast<int>(curve.size());
  int first_gap = -1;
  for (int i = 0; i < M; ++i)
    if (curve[i].vertex < 0) {
      first_gap = i;
      break;
    }
  std::vector<std::pair<std::vector<int>, bool>> out;
  if (first_gap < 0) {
    std::vector<int> all(M);
    for (int i = 0; i < M; ++i) all[i] = i;
    out.emplace_back(all, true);
    return out;
  }
  std::vector<int> cur;
  for (int t = 1; t <= M; ++t) {
    const int i = (first_gap + t) % M;
    if (curve[i].vertex < 0) {
      if (!cur.empty()) out.emplace_back(cur, false);
      cur.clear();
    } else {
      cur.push_back(i);
    }
  }
  return out;
}

std::vector<int> domain_ids(const std::vector<Domain>& path, DomainIds& ids) {
  std::vector<int> out;
  for (const auto& d : path) out.push_back(ids.id(d));
  return out;
}

}  // namespace

LocalCertificate is_locally_shortest(const Scheme& s, const std::vector<Domain>& path, DomainIds& ids) {
  VertexIndex vx(s, ids);
  const auto pid = domain_ids(path, ids);
  LocalCertificate cert;
  for (std::size_t i = 0; i + 2 < pid.size(); ++i) {
    if (pid[i] == pid[i + 2]) {
      cert = {false, fmt::format("path returns to domain {} at position {}", i, i + 2), static_cast<int>(i), -1, 0};
      return cert;
    }
  }
  const auto curve = boundary_curve(vx, pid);
  for (const auto& b : curve) {
    if (angle_of(b) == Angle::worse) {
      return {false,
              fmt::format("concavity beyond minimal: {} petals inside at a vertex with n = {}", b.inside, b.petals),
              b.position, b.corner, b.inside};
    }
  }
  for (const auto& [piece, closed] : pieces(curve)) {
    std::vector<int> marked;
    for (int i : piece)
      if (angle_of(curve[i]) != Angle::straight) marked.push_back(i);
    const int m = static_cast<int>(marked.size());
    const int pairs = closed ? (m > 1 ? m : 0) : m - 1;
    for (int t = 0; t < pairs; ++t) {
      const auto& a = curve[marked[t]];
      const auto& b = curve[marked[(t + 1) % m]];
      if (angle_of(a) == Angle::right && angle_of(b) == Angle::right) {
        return {false, "two minimal concavities with no convex vertex between them", b.position, b.corner,
                b.inside};
      }
    }
  }
  return cert;
}

std::set<std::int64_t> convexification_set(const Scheme& s, const std::vector<Domain>& path, DomainIds& ids) {
  VertexIndex vx(s, ids);
  const auto curve = boundary_curve(vx, domain_ids(path, ids));
  std::set<std::int64_t> out;
  for (const auto& [piece, closed] : pieces(curve)) {
    const int m = static_cast<int>(piece.size());
    auto at = [&](int t) -> const BoundaryVertex& { return curve[piece[((t % m) + m) % m]]; };
    // walk through straight vertices to the next non-straight one
    auto reach = [&](int t, int dir) -> std::optional<int> {
      for (int u = 1; u < m; ++u) {
        const int q = t + dir * u;
        if (!closed && (q < 0 || q >= m)) return std::nullopt;
        if (angle_of(at(q)) != Angle::straight) return q;
      }
      return std::nullopt;
    };
    for (int t = 0; t < m; ++t) {
      const Angle a = angle_of(at(t));
      if (a == Angle::right) {
        out.insert(at(t).vertex);
        continue;
      }
      auto back = reach(t, -1), fwd = reach(t, +1);
      const bool right_back = back && angle_of(at(*back)) == Angle::right;
      const bool right_fwd = fwd && angle_of(at(*fwd)) == Angle::right;
      if (a == Angle::straight && (right_back || right_fwd)) out.insert(at(t).vertex);
      if (a == Angle::min_convex) {
        // adjacent right-turn segments on both sides
        auto prev = at(t - 1), next = at(t + 1);
        bool ok_back = (t > 0 || closed) && back && right_back;
        bool ok_fwd = (t < m - 1 || closed) && fwd && right_fwd;
        (void)prev;
        (void)next;
        if (ok_back && ok_fwd) out.insert(at(t).vertex);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- convexification

ThickPath convexify(const Scheme& s, const std::vector<Domain>& path, DomainIds& ids, std::uint64_t seed,
                    ConvexifyTrace* trace) {
  auto cert = is_locally_shortest(s, path, ids);
  if (!cert.ok) throw WalkError("convexify: path is not locally shortest: " + cert.reason);
  VertexIndex vx(s, ids);
  std::map<int, int> index;
  std::map<int, Domain> word;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int d = ids.id(path[i]);
    index.emplace(d, static_cast<int>(i));
    word.emplace(d, s.reduce(path[i]));
  }
  std::mt19937_64 rng(seed);
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw WalkError("convexification did not terminate");
    struct Eligible {
      int order;
      std::int64_t vertex;
      std::vector<std::pair<int, int>> petals;
      int run_start;
    };
    std::vector<Eligible> eligible;
    std::set<std::int64_t> seen;
    for (const auto& [d, idx] : index) {
      for (int corner = 0; corner < s.size(); ++corner) {
        if (!s.corners[corner]) continue;
        const std::int64_t v = vx.vertex(d, corner);
        if (!seen.insert(v).second) continue;
        auto ps = vx.petals(d, corner);
        const int n2 = static_cast<int>(ps.size()), n = n2 / 2;
        std::vector<int> in(n2);
        int count = 0;
        for (int k = 0; k < n2; ++k) count += in[k] = index.count(ps[k].first) ? 1 : 0;
        if (count != n + 1) continue;
        int start = -1;
        for (int k = 0; k < n2; ++k)
          if (in[k] && !in[(k + n2 - 1) % n2]) start = start < 0 ? k : -2;
        if (start < 0) continue;  // not a single contiguous run
        int order = 1 << 30;
        for (int k = 0; k < n2; ++k)
          if (in[k]) order = std::min(order, index.at(ps[k].first));
        eligible.push_back({order, v, std::move(ps), start});
      }
    }
    if (eligible.empty()) break;
    std::size_t pick = 0;
    if (seed == 0) {
      for (std::size_t i = 1; i < eligible.size(); ++i)
        if (std::tie(eligible[i].order, eligible[i].vertex) < std::tie(eligible[pick].order, eligible[pick].vertex))
          pick = i;
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng);
    }
    const auto& el = eligible[pick];
    const int n2 = static_cast<int>(el.petals.size()), n = n2 / 2;
    auto petal = [&](int k) { return el.petals[((k % n2) + n2) % n2].first; };
    const int ia = index.at(petal(el.run_start)), ib = index.at(petal(el.run_start + n));
    if (std::abs(ia - ib) != n)
      throw WalkError(fmt::format("convexification step at a vertex with end indices {} and {}", ia, ib));
    // fill the gap starting next to the lower-index end
    const int from = ia < ib ? el.run_start - 1 : el.run_start + n + 1;
    const int dir = ia < ib ? -1 : +1;
    const int anchor = ia < ib ? petal(el.run_start) : petal(el.run_start + n);
    const int base = std::min(ia, ib);
    Domain w = word.at(anchor);
    for (int t = 0; t < n - 1; ++t) {
      const int k = from + dir * t;
      const int d = petal(k);
      // word of the new petal: step from its neighbour already in the set
      const int prev = petal(k - dir);
      auto e = vx.label_between(prev, d);
      w = s.reduce(concat(word.at(prev), {*e}));
      index.emplace(d, base + 1 + t);
      word.emplace(d, w);
    }
    if (trace) trace->processed.push_back(el.vertex);
  }
  const int top = std::max_element(index.begin(), index.end(), [](auto& a, auto& b) { return a.second < b.second; })
                      ->second;
  ThickPath t;
  t.sided = false;
  t.levels.resize(top + 1);
  for (const auto& [d, idx] : index) t.levels[idx].push_back(word.at(d));
  return t;
}

// ---------------------------------------------------------------- enumeration

std::vector<std::vector<int>> level_ids(const ThickPath& t, DomainIds& ids) {
  std::vector<std::vector<int>> out;
  for (const auto& l : t.levels) {
    std::vector<int> row;
    for (const auto& d : l) row.push_back(ids.id(d));
    std::sort(row.begin(), row.end());
    out.push_back(row);
  }
  return out;
}

void for_each_shortest_path(const Scheme& s, const ThickPath& t, DomainIds& ids,
                            const std::function<void(const std::vector<Domain>&)>& visit) {
  VertexIndex vx(s, ids);
  std::vector<std::vector<int>> lv;
  for (const auto& l : t.levels) {
    std::vector<int> row;
    for (const auto& d : l) row.push_back(ids.id(d));
    lv.push_back(row);
  }
  std::vector<Domain> cur;
  std::function<void(int, int)> rec = [&](int k, int i) {
    cur.push_back(t.levels[k][i]);
    if (k + 1 == static_cast<int>(lv.size())) {
      visit(cur);
    } else {
      for (std::size_t j = 0; j < lv[k + 1].size(); ++j)
        if (vx.label_between(lv[k][i], lv[k + 1][j])) rec(k + 1, static_cast<int>(j));
    }
    cur.pop_back();
  };
  if (lv.empty()) return;
  for (std::size_t i = 0; i < lv[0].size(); ++i) rec(0, static_cast<int>(i));
}

std::vector<std::vector<Domain>> shortest_paths_in(const Scheme& s, const ThickPath& t, DomainIds& ids) {
  std::vector<std::vector<Domain>> out;
  for_each_shortest_path(s, t, ids, [&](const std::vector<Domain>& p) { out.push_back(p); });
  return out;
}

// ---------------------------------------------------------------- export

std::string thickpath_json(const Scheme& s, const ThickPath& t) {
  nlohmann::ordered_json doc;
  doc["sided"] = t.sided;
  doc["levels"] = nlohmann::ordered_json::array();
  for (const auto& l : t.levels) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& d : l) row.push_back(s.word_string(d));
    doc["levels"].push_back(row);
  }
  return doc.dump();
}

std::string thickpath_svg(const Scheme& s, const ThickPath& t, DomainIds& ids) {
  VertexIndex vx(s, ids);
  const int dx = 90, dy = 70, r = 16;
  const int width = dx * static_cast<int>(t.levels.size()) + 40, height = dy * 2 + 80;
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"10\">\n",
      width, height);
  auto pos = [&](int k, int i, int size) {
    const int x = 40 + dx * k;
    const int y = size == 1 ? 40 + dy / 2 : 40 + dy * i;
    return std::pair{x, y};
  };
  std::vector<std::vector<int>> lv = level_ids(t, ids);
  // level_ids sorts; keep the drawing order of t instead
  lv.clear();
  for (const auto& l : t.levels) {
    std::vector<int> row;
    for (const auto& d : l) row.push_back(ids.id(d));
    lv.push_back(row);
  }
  for (std::size_t k = 0; k + 1 < lv.size(); ++k)
    for (std::size_t i = 0; i < lv[k].size(); ++i)
      for (std::size_t j = 0; j < lv[k + 1].size(); ++j)
        if (vx.label_between(lv[k][i], lv[k + 1][j])) {
          auto [x1, y1] = pos(static_cast<int>(k), static_cast<int>(i), static_cast<int>(lv[k].size()));
          auto [x2, y2] = pos(static_cast<int>(k + 1), static_cast<int>(j), static_cast<int>(lv[k + 1].size()));
          out += fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", x1, y1, x2, y2);
        }
  for (std::size_t k = 0; k < lv.size(); ++k) {
    if (lv[k].size() == 2 && vx.label_between(lv[k][0], lv[k][1])) {
      auto [x1, y1] = pos(static_cast<int>(k), 0, 2);
      auto [x2, y2] = pos(static_cast<int>(k), 1, 2);
      out += fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" stroke-dasharray=\"3\"/>\n",
                         x1, y1, x2, y2);
    }
    for (std::size_t i = 0; i < lv[k].size(); ++i) {
      auto [x, y] = pos(static_cast<int>(k), static_cast<int>(i), static_cast<int>(lv[k].size()));
      const std::string w = t.levels[k][i].empty() ? "R" : s.word_string(t.levels[k][i]);
      out += fmt::format("  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"white\" stroke=\"black\"/>\n", x, y, r);
      out += fmt::format("  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", x, y + r + 12, w);
    }
    auto [x, y] = pos(static_cast<int>(k), 0, 1);
    out += fmt::format("  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"gray\">{}</text>\n", x, 20, k);
    (void)y;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace fuchsian
