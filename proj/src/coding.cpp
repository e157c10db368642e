#include "fuchsian/coding.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <queue>

#include "json.hpp"

namespace fuchsian {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::A0: return "A0";
    case Kind::AL: return "AL";
    case Kind::AR: return "AR";
    case Kind::ALR: return "ALR";
    case Kind::ARL: return "ARL";
    case Kind::B: return "B";
    case Kind::C: return "C";
    case Kind::D: return "D";
    case Kind::EL: return "EL";
    case Kind::ER: return "ER";
  }
  return "?";
}

bool is_a_type(Kind k) { return k <= Kind::ARL; }

State make_a(Kind kind, int i_minus, int i_plus, Label e) {
  State st;
  st.kind = kind;
  st.i_minus = i_minus;
  st.i_plus = i_plus;
  st.e1 = e;
  return st;
}

State make_pair(Kind kind, Label eL, Label eR) {
  State st;
  st.kind = kind;
  st.e1 = eL;
  st.e2 = eR;
  return st;
}

State make_c(int k, Label eL, Label eR) {
  State st = make_pair(Kind::C, eL, eR);
  st.k = k;
  return st;
}

State make_e(Kind kind, Label eL, Label eM, Label eR) {
  State st;
  st.kind = kind;
  st.e1 = eL;
  st.e2 = eM;
  st.e3 = eR;
  return st;
}

std::string state_string(const Scheme& s, const State& st) {
  auto nm = [&](Label e) { return s.name_of(e); };
  switch (st.kind) {
    case Kind::A0: return fmt::format("A0({})", nm(st.e1));
    case Kind::AL:
    case Kind::AR:
    case Kind::ALR:
    case Kind::ARL: return fmt::format("{}[{},{}]({})", kind_name(st.kind), st.i_minus, st.i_plus, nm(st.e1));
    case Kind::B:
    case Kind::D: return fmt::format("{}({},{})", kind_name(st.kind), nm(st.e1), nm(st.e2));
    case Kind::C: return fmt::format("C{}({},{})", st.k, nm(st.e1), nm(st.e2));
    case Kind::EL:
    case Kind::ER: return fmt::format("{}({},{},{})", kind_name(st.kind), nm(st.e1), nm(st.e2), nm(st.e3));
  }
  return "?";
}

namespace {

int n_left(const Scheme& s, Label e) {
  auto c = s.v_left(e);
  return c ? s.petals_at(*c) : 1;
}

int n_right(const Scheme& s, Label e) {
  auto c = s.v_right(e);
  return c ? s.petals_at(*c) : 1;
}

bool same_corner(std::optional<int> a, std::optional<int> b) { return a && b && *a == *b; }

// (i-L, i-R, i+L, i+R) of an A-state
std::array<int, 4> a_indices(const State& st) {
  switch (st.kind) {
    case Kind::A0: return {1, 1, 1, 1};
    case Kind::AL: return {st.i_minus, 1, st.i_plus, 1};
    case Kind::AR: return {1, st.i_minus, 1, st.i_plus};
    case Kind::ALR: return {st.i_minus, 1, 1, st.i_plus};
    case Kind::ARL: return {1, st.i_minus, st.i_plus, 1};
    default: return {0, 0, 0, 0};
  }
}

bool special_excluded(const Scheme& s, const State& st) {
  auto g = s.special_label();
  if (!g || st.e1 != *g) return false;
  auto ix = a_indices(st);
  return (ix[0] == 1 && ix[1] == 1) || (ix[2] == 1 && ix[3] == 1);
}

}  // namespace

std::vector<State> build_states(const Scheme& s) {
  const int N = s.size();
  std::vector<State> out;
  auto push_a = [&](const State& st) {
    if (!special_excluded(s, st)) out.push_back(st);
  };
  for (Label e = 0; e < N; ++e) {
    push_a(make_a(Kind::A0, 1, 1, e));
    const int nl = n_left(s, e), nr = n_right(s, e);
    for (int im = 1; im <= nl; ++im)
      for (int ip = 1; ip <= nl; ++ip)
        if (im + ip >= 3 && im + ip <= nl) push_a(make_a(Kind::AL, im, ip, e));
    for (int im = 1; im <= nr; ++im)
      for (int ip = 1; ip <= nr; ++ip)
        if (im + ip >= 3 && im + ip <= nr) push_a(make_a(Kind::AR, im, ip, e));
    for (int im = 2; im < nl; ++im)
      for (int ip = 2; ip < nr; ++ip) push_a(make_a(Kind::ALR, im, ip, e));
    for (int im = 2; im < nr; ++im)
      for (int ip = 2; ip < nl; ++ip) push_a(make_a(Kind::ARL, im, ip, e));
  }
  for (Label a = 0; a < N; ++a) {
    for (Label b = 0; b < N; ++b) {
      if (same_corner(s.v_left(s.inv(a)), s.v_right(s.inv(b)))) out.push_back(make_pair(Kind::B, a, b));
      if (same_corner(s.v_right(a), s.v_left(b))) out.push_back(make_pair(Kind::D, a, b));
      auto x = s.v_right(a), y = s.v_left(b);
      if (x && y && s.class_at(*x) == s.class_at(*y)) {
        const int n = s.petals_at(*x);
        for (int k = 1; k <= n - 2; ++k) {
          std::optional<Label> f = s.inv(a);
          for (int t = 0; t < 2 * k + 1 && f; ++t) f = s.rot_l(*f);
          if (f && *f == b) out.push_back(make_c(k, a, b));
        }
      }
      for (Label m = 0; m < N; ++m) {
        if (same_corner(s.v_left(s.inv(a)), s.v_right(s.inv(m))) && same_corner(s.v_right(m), s.v_left(b)))
          out.push_back(make_e(Kind::EL, a, m, b));
        if (same_corner(s.v_right(a), s.v_left(m)) && same_corner(s.v_left(s.inv(m)), s.v_right(s.inv(b))))
          out.push_back(make_e(Kind::ER, a, m, b));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_start(const Scheme& s, const State& st) {
  auto g = s.special_label();
  if (g && st.e1 == *g && (st.kind == Kind::ALR || st.kind == Kind::ARL)) return st.i_minus == 2;
  return st.kind == Kind::A0 || ((st.kind == Kind::AL || st.kind == Kind::AR) && st.i_minus == 1) ||
         st.kind == Kind::B;
}

bool in_final(const Scheme& s, const State& st) {
  auto g = s.special_label();
  if (g && st.e1 == *g && (st.kind == Kind::ALR || st.kind == Kind::ARL)) return st.i_plus == 2;
  return st.kind == Kind::A0 || ((st.kind == Kind::AL || st.kind == Kind::AR) && st.i_plus == 1) ||
         st.kind == Kind::D;
}

std::vector<State> successors(const Scheme& s, const std::vector<State>& states, const State& st, Variant v) {
  std::vector<State> out;

  // targets of A0(e) and D: fresh starts away from the given past labels
  auto fresh = [&](const std::vector<Label>& past, bool proviso) {
    for (const auto& t : states) {
      if (t.kind == Kind::A0 || ((t.kind == Kind::AL || t.kind == Kind::AR) && t.i_minus == 1)) {
        if (std::none_of(past.begin(), past.end(), [&](Label x) { return s.adjacent(t.e1, x); })) out.push_back(t);
      } else if (t.kind == Kind::B) {
        bool ok = true;
        for (Label y : {t.e1, t.e2}) {
          for (Label x : past) {
            if (y == x) {
              ok = false;
            } else if (s.adjacent(y, x)) {
              if (!proviso) ok = false;
              for (int c : s.shared_corners(y, x))
                if (s.petals_at(c) <= 2) ok = false;
            }
          }
        }
        if (ok) out.push_back(t);
      }
    }
  };
  auto fan_out = [&](Label a, Label b) {
    auto ra = s.rot_r(a), lb = s.rot_l(b);
    if (!ra || !lb) return;
    out.push_back(make_pair(Kind::D, *ra, *lb));
    if (auto x = s.rot_r(s.inv(*ra))) out.push_back(make_e(Kind::EL, *x, *ra, *lb));
    if (auto x = s.rot_l(s.inv(*lb))) out.push_back(make_e(Kind::ER, *ra, *lb, *x));
  };
  auto b_like = [&](Label a, Label b) {
    auto c = s.v_left(s.inv(a));
    if (s.petals_at(*c) >= 3) {
      auto ra = s.rot_r(a), lb = s.rot_l(b);
      if (ra && lb) out.push_back(make_c(1, *ra, *lb));
    } else {
      fan_out(a, b);
    }
  };
  auto all_a = [&](Kind kind, int im, Label e) {
    for (const auto& t : states)
      if (t.kind == kind && t.i_minus == im && t.e1 == e) out.push_back(t);
  };

  switch (st.kind) {
    case Kind::A0: fresh({s.inv(st.e1)}, false); break;
    case Kind::AL:
    case Kind::AR:
    case Kind::ALR:
    case Kind::ARL: {
      Kind kind = st.kind;
      int im = st.i_minus;
      const int ip = st.i_plus;
      const Label e = st.e1;
      if (kind == Kind::ARL) kind = Kind::AL, im = 1;
      if (kind == Kind::ALR) kind = Kind::AR, im = 1;
      if (ip == 1) {
        fresh({s.inv(e)}, false);
        break;
      }
      if (kind == Kind::AL) {
        const Label le = *s.rot_l(e);
        out.push_back(make_a(Kind::AL, im + 1, ip - 1, le));
        if (ip == 2) {
          all_a(Kind::ALR, im + 1, le);
          if (v == Variant::corrected) {
            if (auto x = s.rot_l(s.inv(le))) out.push_back(make_pair(Kind::B, le, *x));
          } else if (auto x = s.rot_r(le)) {
            out.push_back(make_pair(Kind::B, le, s.inv(*x)));
          }
        }
      } else {
        const Label re = *s.rot_r(e);
        out.push_back(make_a(Kind::AR, im + 1, ip - 1, re));
        if (ip == 2) {
          all_a(Kind::ARL, im + 1, re);
          if (v == Variant::corrected) {
            if (auto x = s.rot_r(s.inv(re))) out.push_back(make_pair(Kind::B, *x, re));
          } else if (auto x = s.rot_l(re)) {
            out.push_back(make_pair(Kind::B, s.inv(*x), re));
          }
        }
      }
      break;
    }
    case Kind::B: b_like(st.e1, st.e2); break;
    case Kind::C: {
      const int n = s.petals_at(*s.v_right(st.e1));
      if (st.k < n - 2)
        out.push_back(make_c(st.k + 1, *s.rot_r(st.e1), *s.rot_l(st.e2)));
      else
        fan_out(st.e1, st.e2);
      break;
    }
    case Kind::D: {
      fresh({s.inv(st.e1), s.inv(st.e2)}, true);
      auto la = s.rot_l(st.e1);
      auto rb = s.rot_r(st.e2);
      if (la) all_a(Kind::AL, 2, *la);
      if (rb) all_a(Kind::AR, 2, *rb);
      if (v == Variant::corrected) {
        if (la) all_a(Kind::ALR, 2, *la);
        if (rb) all_a(Kind::ARL, 2, *rb);
      }
      break;
    }
    case Kind::EL: b_like(st.e1, st.e2); break;
    case Kind::ER: b_like(st.e2, st.e3); break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::vector<State> kept;
  for (const auto& t : out)
    if (std::binary_search(states.begin(), states.end(), t)) kept.push_back(t);
  return kept;
}

State involution(const Scheme& s, const State& st, Variant v) {
  auto I = [&](Label e) { return s.inv(e); };
  switch (st.kind) {
    case Kind::A0: return make_a(Kind::A0, 1, 1, I(st.e1));
    case Kind::AL: return make_a(Kind::AR, st.i_plus, st.i_minus, I(st.e1));
    case Kind::AR: return make_a(Kind::AL, st.i_plus, st.i_minus, I(st.e1));
    case Kind::ALR:
      return make_a(v == Variant::corrected ? Kind::ALR : Kind::ARL, st.i_plus, st.i_minus, I(st.e1));
    case Kind::ARL:
      return make_a(v == Variant::corrected ? Kind::ARL : Kind::ALR, st.i_plus, st.i_minus, I(st.e1));
    case Kind::B: return make_pair(Kind::D, I(st.e2), I(st.e1));
    case Kind::D: return make_pair(Kind::B, I(st.e2), I(st.e1));
    case Kind::C: {
      const int n = s.petals_at(*s.v_right(st.e1));
      return make_c(n - st.k - 1, I(st.e2), I(st.e1));
    }
    case Kind::EL:
    case Kind::ER: return make_e(st.kind, I(st.e3), I(st.e2), I(st.e1));
  }
  return st;
}

int Coding::find(const State& st) const {
  auto it = index.find(st);
  return it == index.end() ? -1 : it->second;
}

int Coding::n_of(const State& st) const {
  switch (st.kind) {
    case Kind::B: return scheme->petals_at(*scheme->v_left(scheme->inv(st.e1)));
    case Kind::C:
    case Kind::D: return scheme->petals_at(*scheme->v_right(st.e1));
    default: return 0;
  }
}

void Coding::set_edge(int j, int k, bool on) {
  dense[static_cast<std::size_t>(j) * states.size() + k] = on ? 1 : 0;
  auto& sj = succ[j];
  auto& pk = pred[k];
  sj.erase(std::remove(sj.begin(), sj.end(), k), sj.end());
  pk.erase(std::remove(pk.begin(), pk.end(), j), pk.end());
  if (on) {
    sj.insert(std::lower_bound(sj.begin(), sj.end(), k), k);
    pk.insert(std::lower_bound(pk.begin(), pk.end(), j), j);
  }
}

Coding build_transitions(const Scheme& s, const std::vector<State>& states, Variant v) {
  Coding c;
  c.scheme = &s;
  c.states = states;
  c.variant = v;
  const int n = c.size();
  for (int i = 0; i < n; ++i) c.index.emplace(states[i], i);
  c.succ.assign(n, {});
  c.pred.assign(n, {});
  c.dense.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) {
    for (const auto& t : successors(s, states, states[j], v)) {
      int k = c.index.at(t);
      c.dense[static_cast<std::size_t>(j) * n + k] = 1;
      c.succ[j].push_back(k);
    }
    std::sort(c.succ[j].begin(), c.succ[j].end());
  }
  for (int j = 0; j < n; ++j)
    for (int k : c.succ[j]) c.pred[k].push_back(j);
  c.start.resize(n);
  c.final.resize(n);
  c.reversal.resize(n);
  for (int j = 0; j < n; ++j) {
    c.start[j] = in_start(s, states[j]);
    c.final[j] = in_final(s, states[j]);
    c.reversal[j] = c.find(involution(s, states[j], v));
  }
  return c;
}

Coding build_coding(const Scheme& s, Variant v) { return build_transitions(s, build_states(s), v); }

bool check_reversibility(const Coding& c) {
  const int n = c.size();
  for (int j = 0; j < n; ++j)
    if (c.reversal[j] < 0 || c.reversal[c.reversal[j]] != j) return false;
  for (int j = 0; j < n; ++j) {
    if (c.start[j] != c.final[c.reversal[j]]) return false;
    for (int k = 0; k < n; ++k)
      if (c.edge(c.reversal[j], c.reversal[k]) != c.edge(k, j)) return false;
  }
  return true;
}

namespace {

std::vector<int> reach(const std::vector<std::vector<int>>& adj, int from) {
  std::vector<int> seen(adj.size(), 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u])
      if (!seen[w]) seen[w] = 1, stack.push_back(w);
  }
  return seen;
}

}  // namespace

bool strongly_connected(const Coding& c) {
  if (c.size() == 0) return false;
  auto f = reach(c.succ, 0), b = reach(c.pred, 0);
  return std::all_of(f.begin(), f.end(), [](int x) { return x; }) &&
         std::all_of(b.begin(), b.end(), [](int x) { return x; });
}

int period(const Coding& c) {
  const int n = c.size();
  std::vector<int> level(n, -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(0);
  int g = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : c.succ[u]) {
      if (level[w] < 0) {
        level[w] = level[u] + 1;
        q.push(w);
      } else {
        g = std::gcd(g, std::abs(level[u] + 1 - level[w]));
      }
    }
  }
  return g;
}

bool aperiodic(const Coding& c) { return period(c) == 1; }

int positivity_index(const Coding& c, int cap) {
  const int n = c.size();
  std::vector<std::uint8_t> pw = c.dense, next(pw.size());
  for (int k = 1; k <= cap; ++k) {
    if (std::all_of(pw.begin(), pw.end(), [](std::uint8_t x) { return x != 0; })) return k;
    std::fill(next.begin(), next.end(), 0);
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m)
        if (pw[static_cast<std::size_t>(i) * n + m])
          for (int j : c.succ[m]) next[static_cast<std::size_t>(i) * n + j] = 1;
    pw.swap(next);
  }
  throw std::runtime_error(fmt::format("positivity index exceeds cap {}", cap));
}

std::vector<std::uint64_t> path_counts(const Coding& c, int n_max) {
  const int n = c.size();
  std::vector<std::uint64_t> v(n), w(n), out;
  for (int i = 0; i < n; ++i) v[i] = c.start[i] ? 1 : 0;
  for (int len = 1; len <= n_max; ++len) {
    std::uint64_t total = 0;
    for (int i = 0; i < n; ++i)
      if (c.final[i]) total += v[i];
    out.push_back(total);
    std::fill(w.begin(), w.end(), 0);
    for (int i = 0; i < n; ++i)
      if (v[i])
        for (int j : c.succ[i]) w[j] += v[i];
    v.swap(w);
  }
  return out;
}

void for_each_path(const Coding& c, int n, const std::function<void(const std::vector<int>&)>& visit) {
  if (n < 1) return;
  std::vector<int> path;
  std::function<void(int)> rec = [&](int j) {
    path.push_back(j);
    if (static_cast<int>(path.size()) == n) {
      if (c.final[j]) visit(path);
    } else {
      for (int k : c.succ[j]) rec(k);
    }
    path.pop_back();
  };
  for (int j = 0; j < c.size(); ++j)
    if (c.start[j]) rec(j);
}

std::map<std::string, int> count_by_kind(const Coding& c) {
  std::map<std::string, int> out;
  for (const auto& st : c.states) ++out[kind_name(st.kind)];
  return out;
}

std::string coding_to_json(const Coding& c) {
  using nlohmann::ordered_json;
  const Scheme& s = *c.scheme;
  ordered_json doc;
  doc["scheme"] = s.name;
  doc["states"] = ordered_json::array();
  for (const auto& st : c.states) {
    ordered_json r;
    r["type"] = kind_name(st.kind);
    if (is_a_type(st.kind)) {
      if (st.kind != Kind::A0) {
        r["i_minus"] = st.i_minus;
        r["i_plus"] = st.i_plus;
      }
      r["e"] = s.name_of(st.e1);
    } else {
      if (st.kind == Kind::C) r["k"] = st.k;
      r["eL"] = s.name_of(st.e1);
      if (st.kind == Kind::EL || st.kind == Kind::ER) {
        r["eM"] = s.name_of(st.e2);
        r["eR"] = s.name_of(st.e3);
      } else {
        r["eR"] = s.name_of(st.e2);
      }
    }
    doc["states"].push_back(r);
  }
  doc["transitions"] = ordered_json::array();
  for (int j = 0; j < c.size(); ++j)
    for (int k : c.succ[j]) doc["transitions"].push_back({j, k});
  doc["start"] = ordered_json::array();
  doc["final"] = ordered_json::array();
  for (int j = 0; j < c.size(); ++j) {
    if (c.start[j]) doc["start"].push_back(j);
    if (c.final[j]) doc["final"].push_back(j);
  }
  doc["involution"] = c.reversal;
  return doc.dump(1);
}

}  // namespace fuchsian
