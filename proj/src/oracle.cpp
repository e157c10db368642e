#include "fuchsian/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <unordered_map>

namespace fuchsian {

using cd = std::complex<double>;

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

IMat2 mul(const IMat2& x, const IMat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

Mat2 inverse(const Mat2& m) {
  const double det = m[0] * m[3] - m[1] * m[2];
  return {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
}

cd mobius(const Mat2& m, cd z) { return (m[0] * z + m[1]) / (m[2] * z + m[3]); }

Mat2 Realization::eval(const Word& w) const {
  Mat2 m{1, 0, 0, 1};
  for (Label e : w) m = mul(m, gens[e]);
  return m;
}

namespace {

using CMat = std::array<cd, 4>;

CMat cmul(const CMat& x, const CMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

CMat cinv(const CMat& m) {
  const cd det = m[0] * m[3] - m[1] * m[2];
  return {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
}

// disk -> upper half-plane, z -> (z + i) / (i z + 1)
const CMat kCayley = [] {
  const double s = 1.0 / std::sqrt(2.0);
  return CMat{cd(s, 0), cd(0, s), cd(0, s), cd(s, 0)};
}();

Mat2 to_real(const CMat& disk) {
  CMat m = cmul(cmul(kCayley, disk), cinv(kCayley));
  for (const auto& x : m)
    if (std::abs(x.imag()) > 1e-9) throw OracleError("disk isometry does not conjugate to a real matrix");
  return {m[0].real(), m[1].real(), m[2].real(), m[3].real()};
}

HPoint disk_to_half_plane(cd z) {
  cd w = (z + cd(0, 1)) / (cd(0, 1) * z + 1.0);
  return {w, false};
}

Realization octagon_realization() {
  Scheme s = catalog_scheme("genus2-octagon");
  const int N = s.size();
  const double pi = std::acos(-1.0);
  const double interior = 2 * pi / 8;  // eight petals around the single vertex
  const double d_mid = std::acosh(std::cos(interior / 2) / std::sin(pi / N));
  const double r_mid = std::tanh(d_mid / 2);
  const double d_vertex = std::acosh(1.0 / (std::tan(pi / N) * std::tan(interior / 2)));
  const double r_vertex = std::tanh(d_vertex / 2);
  auto theta = [&](int k) { return 2 * pi * k / N; };
  auto rot = [](double t) { return CMat{std::polar(1.0, t / 2), 0.0, 0.0, std::polar(1.0, -t / 2)}; };
  auto halfturn = [](cd p) {
    const double n = std::sqrt(1.0 - std::norm(p));
    CMat t{1.0 / n, p / n, std::conj(p) / n, 1.0 / n};
    return cmul(cmul(t, CMat{cd(0, 1), 0.0, 0.0, cd(0, -1)}), cinv(t));
  };
  std::vector<Mat2> gens(N);
  for (Label e = 0; e < N; ++e) {
    const int j = s.inv(e);
    gens[e] = to_real(cmul(halfturn(std::polar(r_mid, theta(j))), rot(theta(j) - theta(e))));
  }
  std::vector<GeoSide> polygon;
  for (int k = 0; k < N; ++k) {
    polygon.push_back({k, disk_to_half_plane(std::polar(r_vertex, theta(k) - pi / N)),
                       disk_to_half_plane(std::polar(r_vertex, theta(k) + pi / N))});
  }
  Realization r = realize_from_matrices(s, std::move(gens), std::move(polygon));
  r.name = "genus2-octagon";
  return r;
}

Realization free_realization() {
  Scheme s = catalog_scheme("free-f2-ideal-quad");
  std::vector<IMat2> g(4);
  g[s.label("a")] = {1, 2, 0, 1};
  g[s.label("a^-1")] = {1, -2, 0, 1};
  g[s.label("b")] = {1, 0, 2, 1};
  g[s.label("b^-1")] = {1, 0, -2, 1};
  // geometric counterclockwise order of the ideal quadrilateral -1, 0, 1, oo
  std::vector<GeoSide> polygon = {
      {s.label("b"), {-1.0, false}, {0.0, false}},
      {s.label("b^-1"), {0.0, false}, {1.0, false}},
      {s.label("a^-1"), {1.0, false}, {0.0, true}},
      {s.label("a"), {0.0, true}, {-1.0, false}},
  };
  Realization r = realize_from_integer_matrices(s, std::move(g), std::move(polygon));
  r.name = "free-f2-ideal-quad";
  return r;
}

}  // namespace

Realization realize_from_matrices(const Scheme& s, std::vector<Mat2> gens, std::vector<GeoSide> polygon) {
  if (static_cast<int>(gens.size()) != s.size()) throw OracleError("one matrix per label is required");
  Realization r;
  r.name = s.name;
  r.scheme = s;
  r.gens = std::move(gens);
  r.polygon = std::move(polygon);
  for (Label e = 0; e < s.size(); ++e) {
    Mat2 p = mul(r.gens[e], r.gens[s.inv(e)]);
    double dev = std::min(std::max({std::abs(p[0] - 1), std::abs(p[1]), std::abs(p[2]), std::abs(p[3] - 1)}),
                          std::max({std::abs(p[0] + 1), std::abs(p[1]), std::abs(p[2]), std::abs(p[3] + 1)}));
    if (dev > 1e-9) throw OracleError(fmt::format("matrix of {} is not inverse to its pair", s.name_of(e)));
  }
  return r;
}

Realization realize_from_integer_matrices(const Scheme& s, std::vector<IMat2> gens, std::vector<GeoSide> polygon) {
  std::vector<Mat2> real;
  for (const auto& g : gens)
    real.push_back({static_cast<double>(g[0]), static_cast<double>(g[1]), static_cast<double>(g[2]),
                    static_cast<double>(g[3])});
  Realization r = realize_from_matrices(s, std::move(real), std::move(polygon));
  r.exact = true;
  r.igens = std::move(gens);
  return r;
}

Realization realize_group(std::string_view name) {
  if (name == "free-f2-ideal-quad") return free_realization();
  if (name == "genus2-octagon") return octagon_realization();
  if (name == "triangle-special-case")
    throw OracleError("triangle-special-case: combinatorial only, no geometric realization");
  throw OracleError(fmt::format("unknown group '{}'", name));
}

double relator_defect(const Realization& r) {
  const Scheme& s = r.scheme;
  double worst = 0;
  for (int c = 0; c < s.size(); ++c) {
    if (!s.corners[c]) continue;
    Mat2 m = r.eval(s.flower_relator(c));
    double plus = std::max({std::abs(m[0] - 1), std::abs(m[1]), std::abs(m[2]), std::abs(m[3] - 1)});
    double minus = std::max({std::abs(m[0] + 1), std::abs(m[1]), std::abs(m[2]), std::abs(m[3] + 1)});
    worst = std::max(worst, std::min(plus, minus));
  }
  return worst;
}

// ---------------------------------------------------------------- element index

namespace {

IMat2 normalize(IMat2 m) {
  for (auto x : m) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : m) y = -y;
    break;
  }
  return m;
}

// base point orbit on the hyperboloid: m m^T, invariant under m -> -m
std::array<double, 3> orbit_point(const Mat2& m) {
  return {m[0] * m[0] + m[1] * m[1], m[0] * m[2] + m[1] * m[3], m[2] * m[2] + m[3] * m[3]};
}

}  // namespace

Oracle::Key Oracle::exact_key(const IMat2& im) const {
  IMat2 n = normalize(im);
  return {n[0], n[1], n[2], n[3]};
}

std::optional<int> Oracle::probe(const Mat2& m, const IMat2& im, double* gap) const {
  if (real_.exact) {
    auto it = exact_table_.find(exact_key(im));
    if (it == exact_table_.end()) return std::nullopt;
    return it->second;
  }
  const auto p = orbit_point(m);
  const double h = cell_size_;
  std::array<std::int64_t, 3> base{}, other{};
  for (int a = 0; a < 3; ++a) {
    const double q = p[a] / h;
    base[a] = static_cast<std::int64_t>(std::floor(q));
    other[a] = (q - std::floor(q) < 0.5) ? base[a] - 1 : base[a] + 1;
  }
  std::optional<int> found;
  for (int mask = 0; mask < 8; ++mask) {
    Key k{(mask & 1) ? other[0] : base[0], (mask & 2) ? other[1] : base[1], (mask & 4) ? other[2] : base[2], 0};
    auto it = table_.find(k);
    if (it == table_.end()) continue;
    for (int id : it->second) {
      const auto q = orbit_point(mats_[id]);
      const double d = std::max({std::abs(p[0] - q[0]), std::abs(p[1] - q[1]), std::abs(p[2] - q[2])});
      if (d < real_.identification_radius) {
        found = id;
      } else if (gap) {
        *gap = std::min(*gap, d);
      }
    }
  }
  return found;
}

int Oracle::insert(const Mat2& m, const IMat2& im, int parent, Label e, int depth) {
  const int id = static_cast<int>(depth_.size());
  if (!real_.exact) {
    double gap = std::numeric_limits<double>::infinity();
    probe(m, im, &gap);
    min_gap_ = std::min(min_gap_, gap);
    if (gap < 2 * real_.identification_radius)
      throw OracleError(fmt::format("separation audit failure: gap {:.3g} below twice the identification radius", gap));
  }
  if (real_.exact)
    imats_.push_back(im);
  else
    mats_.push_back(m);
  parent_.push_back(parent);
  last_.push_back(e);
  depth_.push_back(depth);
  nbr_.resize(nbr_.size() + gens_, -1);
  if (real_.exact) {
    exact_table_.emplace(exact_key(im), id);
  } else {
    const auto p = orbit_point(m);
    Key k{static_cast<std::int64_t>(std::floor(p[0] / cell_size_)),
          static_cast<std::int64_t>(std::floor(p[1] / cell_size_)),
          static_cast<std::int64_t>(std::floor(p[2] / cell_size_)), 0};
    table_[k].push_back(id);
  }
  return id;
}

Oracle::Oracle(Realization r, int radius)
    : real_(std::move(r)), radius_(radius), gens_(real_.scheme.size()), cell_size_(4 * real_.identification_radius) {
  if (radius < 0) throw OracleError("negative radius");
  if (!real_.exact && radius > 6) throw OracleError("floating realizations are audited up to radius 6");
  if (real_.exact) {
    // free-group ball size bounds every quotient
    double estimate = 1, layer = gens_;
    for (int d = 0; d < radius && estimate < 4e6; ++d, layer *= gens_ - 1) estimate += layer;
    const auto n = static_cast<std::size_t>(std::min(estimate + 16, 5e6));
    exact_table_.reserve(n);
    imats_.reserve(n);
    parent_.reserve(n);
    last_.reserve(n);
    depth_.reserve(n);
    nbr_.reserve(n * gens_);
  }
  insert({1, 0, 0, 1}, {1, 0, 0, 1}, -1, -1, 0);
  std::size_t begin = 0, end = 1;
  for (int d = 0; d < radius; ++d) {
    for (std::size_t u = begin; u < end; ++u) {
      for (Label e = 0; e < gens_; ++e) {
        if (u > 0 && e == real_.scheme.inv(last_[u])) {
          nbr_[u * gens_ + e] = parent_[u];
          continue;
        }
        const Mat2 m = real_.exact ? Mat2{} : mul(mats_[u], real_.gens[e]);
        const IMat2 im = real_.exact ? mul(imats_[u], real_.igens[e]) : IMat2{};
        auto hit = probe(m, im, nullptr);
        int v = hit ? *hit : insert(m, im, static_cast<int>(u), e, d + 1);
        nbr_[u * gens_ + e] = v;
      }
    }
    begin = end;
    end = depth_.size();
  }
  ball_size_ = static_cast<int>(depth_.size());
}

std::vector<int> Oracle::sphere(int n) const {
  if (n < 0 || n > radius_) throw OracleError(fmt::format("sphere {} outside the ball of radius {}", n, radius_));
  std::vector<int> out;
  for (int i = 0; i < ball_size_; ++i)
    if (depth_[i] == n) out.push_back(i);
  return out;
}

std::vector<std::uint64_t> Oracle::sphere_sizes() const {
  std::vector<std::uint64_t> out(radius_ + 1, 0);
  for (int i = 0; i < ball_size_; ++i) ++out[depth_[i]];
  return out;
}

int Oracle::step(int id, Label e) {
  int& slot = nbr_[static_cast<std::size_t>(id) * gens_ + e];
  if (slot >= 0) return slot;
  const Mat2 m = real_.exact ? Mat2{} : mul(mats_[id], real_.gens[e]);
  const IMat2 im = real_.exact ? mul(imats_[id], real_.igens[e]) : IMat2{};
  auto hit = probe(m, im, nullptr);
  int v = hit ? *hit : insert(m, im, id, e, -1);
  nbr_[static_cast<std::size_t>(id) * gens_ + e] = v;
  nbr_[static_cast<std::size_t>(v) * gens_ + real_.scheme.inv(e)] = id;
  return v;
}

int Oracle::id(const Word& w) {
  int cur = 0;
  for (Label e : w) cur = step(cur, e);
  return cur;
}

std::optional<int> Oracle::find(const Word& w) const {
  Mat2 m = real_.eval(w);
  IMat2 im{1, 0, 0, 1};
  if (real_.exact)
    for (Label e : w) im = mul(im, real_.igens[e]);
  return probe(m, im, nullptr);
}

Word Oracle::word_of(int id) const {
  Word w;
  for (int cur = id; parent_[cur] >= 0; cur = parent_[cur]) w.push_back(last_[cur]);
  std::reverse(w.begin(), w.end());
  return w;
}

int Oracle::distance(const Word& w) {
  int d = depth_[id(w)];
  if (d < 0) throw OracleError("word endpoint outside the audited ball");
  return d;
}

bool Oracle::same_element(const Word& a, const Word& b) { return id(a) == id(b); }

// ---------------------------------------------------------------- thickened paths

namespace {

std::unordered_map<int, int> bfs_from(Oracle& o, int from, int target, int* reach_depth, int cap) {
  std::unordered_map<int, int> dist{{from, 0}};
  std::vector<int> frontier{from};
  int found = from == target ? 0 : -1;
  for (int d = 0; found < 0 && !frontier.empty(); ++d) {
    if (d >= cap) throw OracleError(fmt::format("domains farther apart than {}", cap));
    std::vector<int> next;
    for (int u : frontier) {
      for (Label e = 0; e < o.scheme().size(); ++e) {
        int v = o.step(u, e);
        if (dist.emplace(v, d + 1).second) next.push_back(v);
        if (v == target) found = d + 1;
      }
    }
    frontier.swap(next);
  }
  *reach_depth = found;
  return dist;
}

std::vector<std::vector<int>> thick_levels(Oracle& o, const Domain& a, const Domain& b) {
  const int ia = o.id(a), ib = o.id(b);
  int D = 0;
  auto da = bfs_from(o, ia, ib, &D, std::max(o.radius(), 1) * 2);
  // walk back from B through neighbours one step closer to A
  std::vector<std::vector<int>> levels(D + 1);
  levels[D] = {ib};
  for (int d = D; d > 0; --d) {
    std::set<int> prev;
    for (int x : levels[d])
      for (Label e = 0; e < o.scheme().size(); ++e) {
        const int y = o.step(x, e);
        auto it = da.find(y);
        if (it != da.end() && it->second == d - 1) prev.insert(y);
      }
    levels[d - 1].assign(prev.begin(), prev.end());
  }
  return levels;
}

}  // namespace

ThickPath brute_thickened(Oracle& o, const Domain& a, const Domain& b) {
  auto levels = thick_levels(o, a, b);
  ThickPath t;
  t.sided = false;
  for (const auto& l : levels) {
    std::vector<Domain> row;
    for (int x : l) row.push_back(o.word_of(x));
    t.levels.push_back(std::move(row));
  }
  return t;
}

std::vector<std::vector<int>> shortest_paths(Oracle& o, const Domain& a, const Domain& b) {
  auto levels = thick_levels(o, a, b);
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::function<void(int, int)> rec = [&](int k, int x) {
    path.push_back(x);
    if (k + 1 == static_cast<int>(levels.size())) {
      out.push_back(path);
    } else {
      for (int y : levels[k + 1]) {
        bool adj = false;
        for (Label e = 0; e < o.scheme().size() && !adj; ++e) adj = o.step(x, e) == y;
        if (adj) rec(k + 1, y);
      }
    }
    path.pop_back();
  };
  rec(0, levels[0].front());
  return out;
}

// ---------------------------------------------------------------- geodesics

namespace {

struct Geo {
  bool vertical = false;
  double c = 0;  // foot of a vertical line, or centre of a circle
  double r = 0;
};

Geo through(const HPoint& p, const HPoint& q) {
  if (p.infinite) return {true, q.z.real(), 0};
  if (q.infinite) return {true, p.z.real(), 0};
  const double dx = q.z.real() - p.z.real();
  if (std::abs(dx) < 1e-14 * (1 + std::abs(p.z) + std::abs(q.z))) return {true, p.z.real(), 0};
  const double c = (std::norm(q.z) - std::norm(p.z)) / (2 * dx);
  return {false, c, std::abs(p.z - c)};
}

double param(const Geo& g, const HPoint& p) {
  if (g.vertical) return p.infinite ? 1e300 : std::log(std::max(p.z.imag(), 1e-300));
  return std::atan2(std::max(p.z.imag(), 0.0), p.z.real() - g.c);
}

// positive on the left of the oriented side
double side_value(const GeoSide& s, cd z) {
  Geo g = through(s.from, s.to);
  if (g.vertical) {
    bool up = s.to.infinite || (!s.from.infinite && s.to.z.imag() > s.from.z.imag());
    return up ? g.c - z.real() : z.real() - g.c;
  }
  const double d = std::norm(z - g.c) - g.r * g.r;
  const bool clockwise = s.to.z.real() > s.from.z.real();
  return (clockwise ? d : -d) / g.r;
}

std::optional<cd> intersect(const Geo& a, const Geo& b) {
  if (a.vertical && b.vertical) return std::nullopt;
  if (a.vertical || b.vertical) {
    const Geo& v = a.vertical ? a : b;
    const Geo& c = a.vertical ? b : a;
    const double y2 = c.r * c.r - (v.c - c.c) * (v.c - c.c);
    if (y2 <= 0) return std::nullopt;
    return cd(v.c, std::sqrt(y2));
  }
  if (std::abs(a.c - b.c) < 1e-15) return std::nullopt;
  const double x = (a.r * a.r - b.r * b.r + b.c * b.c - a.c * a.c) / (2 * (b.c - a.c));
  const double y2 = a.r * a.r - (x - a.c) * (x - a.c);
  if (y2 <= 0) return std::nullopt;
  return cd(x, std::sqrt(y2));
}

double hdist(cd z, cd w) { return std::acosh(1 + std::norm(z - w) / (2 * z.imag() * w.imag())); }

bool between(const Geo& g, const HPoint& p, const HPoint& q, cd x, double slack) {
  const double a = param(g, p), b = param(g, q), t = param(g, {x, false});
  return t >= std::min(a, b) - slack && t <= std::max(a, b) + slack;
}

std::vector<Domain> cross_once(const Realization& r, cd a, cd b) {
  const Scheme& s = r.scheme;
  Word u;
  Mat2 g{1, 0, 0, 1};
  // locate a: cross any side whose line separates a from R
  for (int guard = 0;; ++guard) {
    if (guard > 10000) throw OracleError("point location did not terminate");
    const cd p = mobius(inverse(g), a);
    const GeoSide* out = nullptr;
    for (const auto& side : r.polygon)
      if (side_value(side, p) < 0) out = &side;
    if (!out) break;
    const Label f = s.inv(out->label);
    u.push_back(f);
    g = mul(g, r.gens[f]);
  }
  std::vector<Domain> path{u};
  const double total = hdist(a, b);
  double t_cur = 0;
  int entry = -1;
  for (int guard = 0;; ++guard) {
    if (guard > 100000) throw OracleError("geodesic walk did not terminate");
    const Mat2 gi = inverse(g);
    const cd pa = mobius(gi, a), pb = mobius(gi, b);
    const Geo seg = through({pa, false}, {pb, false});
    double best = total;
    int best_side = -1;
    cd best_x;
    for (int k = 0; k < static_cast<int>(r.polygon.size()); ++k) {
      if (r.polygon[k].label == entry) continue;
      const GeoSide& side = r.polygon[k];
      const Geo sg = through(side.from, side.to);
      auto x = intersect(seg, sg);
      if (!x) continue;
      if (!between(seg, {pa, false}, {pb, false}, *x, 1e-12) || !between(sg, side.from, side.to, *x, 1e-12)) continue;
      const double t = hdist(pa, *x);
      if (t > t_cur - 1e-9 && t < best) {
        best = t;
        best_side = k;
        best_x = *x;
      }
    }
    if (best_side < 0) break;
    for (const auto& side : r.polygon)
      for (const HPoint& v : {side.from, side.to})
        if (!v.infinite && v.z.imag() > 0 && hdist(v.z, best_x) < 1e-7) throw VertexHit("geodesic meets a vertex");
    const Label f = s.inv(r.polygon[best_side].label);
    u.push_back(f);
    g = mul(g, r.gens[f]);
    path.push_back(u);
    t_cur = best;
    entry = f;
  }
  return path;
}

}  // namespace

bool inside_polygon(const Realization& r, cd z, double slack) {
  return std::all_of(r.polygon.begin(), r.polygon.end(),
                     [&](const GeoSide& s) { return side_value(s, z) >= -slack; });
}

std::vector<Domain> geodesic_cross_section(const Realization& r, cd a, cd b, std::uint64_t seed) {
  if (r.polygon.empty()) throw OracleError("realization carries no polygon geometry");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-1e-6, 1e-6);
  for (int attempt = 0; attempt <= 8; ++attempt) {
    try {
      return cross_once(r, a, b);
    } catch (const VertexHit&) {
      a += cd(jitter(rng), jitter(rng)) * a.imag();
      b += cd(jitter(rng), jitter(rng)) * b.imag();
    }
  }
  throw VertexHit("geodesic segment meets a vertex after 8 retries");
}

std::string ball_csv(const Oracle& o) {
  std::string out = "id,distance,word\n";
  for (int i = 0; i < o.ball_size(); ++i)
    out += fmt::format("{},{},{}\n", i, o.depth(i), o.scheme().word_string(o.word_of(i)));
  return out;
}

int FreeReduction::id(const Word& w) {
  Word r = scheme_.reduce(w);
  auto [it, fresh] = ids_.emplace(r, static_cast<int>(ids_.size()));
  if (fresh) words_.push_back(std::move(r));
  return it->second;
}

int FreeReduction::step(int id, Label e) {
  Word w = words_[id];
  w.push_back(e);
  return this->id(w);
}

}  // namespace fuchsian
