#include "fuchsian/dynamics.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "fuchsian/oracle.hpp"
#include "fuchsian/walker.hpp"
#include "json.hpp"

namespace fuchsian {

std::vector<int> word_permutation(const FiniteAction& a, const Word& w) {
  std::vector<int> r(a.points);
  std::iota(r.begin(), r.end(), 0);
  for (Label e : w) {
    std::vector<int> next(a.points);
    for (int x = 0; x < a.points; ++x) next[x] = r[a.perm[e][x]];
    r.swap(next);
  }
  return r;
}

// ---------------------------------------------------------------- actions

void validate_action(const Scheme& s, const FiniteAction& a) {
  if (a.points < 1) throw ActionError("action needs at least one point");
  if (static_cast<int>(a.perm.size()) != s.size())
    throw ActionError(fmt::format("action gives {} permutations for {} labels", a.perm.size(), s.size()));
  for (Label e = 0; e < s.size(); ++e) {
    const auto& p = a.perm[e];
    if (static_cast<int>(p.size()) != a.points)
      throw ActionError(fmt::format("permutation of {} has the wrong length", s.name_of(e)));
    std::vector<bool> hit(a.points, false);
    for (int y : p) {
      if (y < 0 || y >= a.points || hit[y])
        throw ActionError(fmt::format("table of {} is not a bijection", s.name_of(e)));
      hit[y] = true;
    }
  }
  for (Label e = 0; e < s.size(); ++e) {
    const auto& p = a.perm[e];
    const auto& q = a.perm[s.inv(e)];
    for (int x = 0; x < a.points; ++x)
      if (q[p[x]] != x) {
        if (s.inv(e) == e) throw ActionError(fmt::format("self-paired {} does not act as an involution", s.name_of(e)));
        throw ActionError(fmt::format("{} and {} do not act as inverses", s.name_of(e), s.name_of(s.inv(e))));
      }
  }
  for (int c = 0; c < s.size(); ++c) {
    if (!s.corners[c]) continue;
    const Word rel = s.flower_relator(c);
    const auto p = word_permutation(a, rel);
    for (int x = 0; x < a.points; ++x)
      if (p[x] != x) throw ActionError(fmt::format("relator {} does not act trivially", s.word_string(rel)));
  }
  if (static_cast<int>(a.weights.size()) != a.points) throw ActionError("one weight per point expected");
  double total = 0;
  for (double w : a.weights) {
    if (!(w > 0)) throw ActionError("weights must be positive");
    total += w;
  }
  if (std::abs(total - 1) > 1e-12) throw ActionError(fmt::format("weights sum to {}, not 1", total));
  for (Label e = 0; e < s.size(); ++e)
    for (int x = 0; x < a.points; ++x)
      if (std::abs(a.weights[a.perm[e][x]] - a.weights[x]) > 1e-15)
        throw ActionError(fmt::format("{} does not preserve the weights", s.name_of(e)));
}

FiniteAction make_action(const Scheme& s, std::string name, std::vector<std::vector<int>> perm,
                         std::vector<double> weights) {
  FiniteAction a;
  a.name = std::move(name);
  a.points = perm.empty() ? 1 : static_cast<int>(perm.front().size());
  if (weights.empty()) weights.assign(a.points, 1.0 / a.points);
  a.weights = std::move(weights);
  a.perm = std::move(perm);
  validate_action(s, a);
  return a;
}

namespace {

std::vector<int> parse_cycles(const std::string& text, int points) {
  std::vector<int> p(points);
  std::iota(p.begin(), p.end(), 0);
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw ActionError("cycle notation expects '('");
    const std::size_t close = text.find(')', i);
    if (close == std::string::npos) throw ActionError("unclosed cycle");
    std::vector<int> cyc;
    std::string body = text.substr(i + 1, close - i - 1);
    std::size_t pos = 0;
    while (pos < body.size()) {
      if (std::isspace(static_cast<unsigned char>(body[pos])) || body[pos] == ',') {
        ++pos;
        continue;
      }
      std::size_t used = 0;
      int v;
      try {
        v = std::stoi(body.substr(pos), &used);
      } catch (const std::exception&) {
        throw ActionError("bad point in cycle notation");
      }
      if (v < 0 || v >= points) throw ActionError(fmt::format("point {} out of range", v));
      cyc.push_back(v);
      pos += used;
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) p[cyc[k]] = cyc[(k + 1) % cyc.size()];
    i = close + 1;
  }
  return p;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) q[p[x]] = static_cast<int>(x);
  return q;
}

}  // namespace

FiniteAction load_action(const Scheme& s, std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ActionError(std::string("malformed action document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc.contains("generators"))
    throw ActionError("action document needs points and generators");
  FiniteAction a;
  a.name = doc.value("name", "action");
  a.points = doc.at("points").get<int>();
  if (a.points < 1) throw ActionError("action needs at least one point");
  if (doc.contains("weights"))
    a.weights = doc.at("weights").get<std::vector<double>>();
  else
    a.weights.assign(a.points, 1.0 / a.points);
  std::vector<std::optional<std::vector<int>>> given(s.size());
  for (const auto& [key, val] : doc.at("generators").items()) {
    Label e;
    try {
      e = s.label(key);
    } catch (const SchemeError&) {
      throw ActionError(fmt::format("unknown label {}", key));
    }
    if (val.is_string())
      given[e] = parse_cycles(val.get<std::string>(), a.points);
    else
      given[e] = val.get<std::vector<int>>();
  }
  a.perm.resize(s.size());
  for (Label e = 0; e < s.size(); ++e) {
    if (given[e]) {
      a.perm[e] = *given[e];
    } else if (given[s.inv(e)]) {
      if (static_cast<int>(given[s.inv(e)]->size()) != a.points)
        throw ActionError(fmt::format("permutation of {} has the wrong length", s.name_of(s.inv(e))));
      a.perm[e] = inverse_perm(*given[s.inv(e)]);
    } else {
      throw ActionError(fmt::format("no permutation for {}", s.name_of(e)));
    }
  }
  validate_action(s, a);
  return a;
}

std::string action_to_json(const Scheme& s, const FiniteAction& a) {
  nlohmann::ordered_json doc;
  doc["name"] = a.name;
  doc["points"] = a.points;
  doc["weights"] = a.weights;
  nlohmann::ordered_json gens = nlohmann::ordered_json::object();
  for (Label e = 0; e < s.size(); ++e) gens[s.name_of(e)] = a.perm[e];
  doc["generators"] = gens;
  return doc.dump(1);
}

namespace {

struct CatalogAction {
  const char* scheme;
  const char* name;
  const char* json;
};

const CatalogAction kActions[] = {
    {"free-f2-ideal-quad", "parity", R"j({"points": 2, "generators": {"a": "(0 1)", "b": "(0 1)"}})j"},
    {"free-f2-ideal-quad", "five-point", R"j({"points": 5, "generators": {"a": "(0 1 2 3 4)", "b": "(0 1)"}})j"},
    {"genus2-octagon", "z5-shift",
     R"j({"points": 5, "generators": {"a": "(0 1 2 3 4)", "b": "(0 1 2 3 4)", "c": "(0 1 2 3 4)", "d": "(0 1 2 3 4)"}})j"},
    {"genus2-octagon", "parity",
     R"j({"points": 2, "generators": {"a": "(0 1)", "b": "(0 1)", "c": "(0 1)", "d": "(0 1)"}})j"},
    {"genus2-octagon", "s5-quotient",
     R"j({"points": 5, "generators": {"a": "(3 4)", "b": "(0 4 2 1 3)", "c": "(0 4)(2 3)", "d": "(3 4)"}})j"},
    {"triangle-special-case", "s3", R"j({"points": 3, "generators": {"g": "(0 1)", "x": "(1 2)"}})j"},
    {"triangle-special-case", "z3-rotation", R"j({"points": 3, "generators": {"g": "", "x": "(0 1 2)"}})j"},
};

}  // namespace

std::vector<std::string> action_names(const Scheme& s) {
  std::vector<std::string> out{"trivial"};
  for (const auto& c : kActions)
    if (s.name == c.scheme) out.emplace_back(c.name);
  return out;
}

FiniteAction catalog_action(const Scheme& s, std::string_view name) {
  if (name == "trivial") return make_action(s, "trivial", std::vector<std::vector<int>>(s.size(), {0}));
  for (const auto& c : kActions)
    if (s.name == c.scheme && name == c.name) {
      auto a = load_action(s, c.json);
      a.name = c.name;
      return a;
    }
  throw ActionError(fmt::format("no action {} for {}", name, s.name));
}

// ---------------------------------------------------------------- operators

Dynamics::Dynamics(const Coding& c, ParryData d, FiniteAction a) : c_(c), d_(std::move(d)), a_(std::move(a)) {
  validate_action(*c.scheme, a_);
  reversal = c.reversal;
  for (int j : reversal)
    if (j < 0) throw ActionError("involution is not defined on every state");
  const Scheme& s = *c.scheme;
  for (int i = 0; i < c.size(); ++i) {
    left_perm_.push_back(word_permutation(a_, left_future_word(s, c.states[i])));
    right_perm_.push_back(word_permutation(a_, right_future_word(s, c.states[i])));
    left_inv_perm_.push_back(inverse_perm(left_perm_.back()));
  }
}

Field Dynamics::apply_P(const Field& f) const {
  const int X = a_.points;
  Field out = Field::Zero(dim());
  for (int i = 0; i < c_.size(); ++i)
    for (int j : c_.succ[i]) {
      const double p = d_.p[i][j];
      for (int x = 0; x < X; ++x) out[i * X + x] += p * f[j * X + left_perm_[i][x]];
    }
  return out;
}

Field Dynamics::apply_U(const Field& f) const {
  const int X = a_.points;
  Field out(dim());
  for (int j = 0; j < c_.size(); ++j)
    for (int x = 0; x < X; ++x) out[j * X + x] = f[reversal[j] * X + right_perm_[j][x]];
  return out;
}

Field Dynamics::apply_Pstar(const Field& f) const {
  const int X = a_.points;
  const auto& ps = d_.stationary;
  Field out = Field::Zero(dim());
  for (int k = 0; k < c_.size(); ++k)
    for (int j : c_.succ[k]) {
      const double w = ps[k] * d_.p[k][j] / ps[j];
      for (int x = 0; x < X; ++x) out[j * X + x] += w * f[k * X + left_inv_perm_[k][x]];
    }
  return out;
}

Eigen::VectorXd Dynamics::weights() const {
  const int X = a_.points;
  Eigen::VectorXd w(dim());
  for (int i = 0; i < c_.size(); ++i)
    for (int x = 0; x < X; ++x) w[i * X + x] = d_.stationary[i] * a_.weights[x];
  return w;
}

double Dynamics::inner(const Field& f, const Field& g) const { return (weights().array() * f.array() * g.array()).sum(); }

void Dynamics::check_dense() const {
  if (dim() > max_dense_dim)
    throw ActionError(fmt::format("dense operators limited to dimension {}, got {}", max_dense_dim, dim()));
}

SparseOp Dynamics::sparse_P() const {
  const int X = a_.points;
  std::vector<Eigen::Triplet<double>> tr;
  for (int i = 0; i < c_.size(); ++i)
    for (int j : c_.succ[i])
      for (int x = 0; x < X; ++x) tr.emplace_back(i * X + x, j * X + left_perm_[i][x], d_.p[i][j]);
  SparseOp m(dim(), dim());
  m.setFromTriplets(tr.begin(), tr.end());
  return m;
}

SparseOp Dynamics::sparse_U() const {
  const int X = a_.points;
  std::vector<Eigen::Triplet<double>> tr;
  for (int j = 0; j < c_.size(); ++j)
    for (int x = 0; x < X; ++x) tr.emplace_back(j * X + x, reversal[j] * X + right_perm_[j][x], 1.0);
  SparseOp m(dim(), dim());
  m.setFromTriplets(tr.begin(), tr.end());
  return m;
}

SparseOp Dynamics::sparse_Pstar() const {
  const int X = a_.points;
  const auto& ps = d_.stationary;
  std::vector<Eigen::Triplet<double>> tr;
  for (int k = 0; k < c_.size(); ++k)
    for (int j : c_.succ[k])
      for (int x = 0; x < X; ++x) tr.emplace_back(j * X + x, k * X + left_inv_perm_[k][x], ps[k] * d_.p[k][j] / ps[j]);
  SparseOp m(dim(), dim());
  m.setFromTriplets(tr.begin(), tr.end());
  return m;
}

Eigen::MatrixXd Dynamics::dense_P() const {
  check_dense();
  return Eigen::MatrixXd(sparse_P());
}

Eigen::MatrixXd Dynamics::dense_U() const {
  check_dense();
  return Eigen::MatrixXd(sparse_U());
}

Eigen::MatrixXd Dynamics::dense_Pstar() const {
  check_dense();
  return Eigen::MatrixXd(sparse_Pstar());
}

Eigen::MatrixXd Dynamics::adjoint(const Eigen::MatrixXd& m) const {
  const Eigen::VectorXd w = weights();
  return w.cwiseInverse().asDiagonal() * m.transpose() * w.asDiagonal();
}

Eigen::VectorXd Dynamics::spherical_sum(const Eigen::VectorXd& f, int n) const {
  if (n < 1) throw ActionError("spherical sums start at radius 1");
  const int X = a_.points;
  Field seed = Field::Zero(dim());
  for (int j = 0; j < c_.size(); ++j)
    if (c_.start[j]) seed.segment(j * X, X) = f / d_.h[reversal[j]];
  Field v = apply_U(seed);
  for (int k = 1; k < n; ++k) v = apply_P(v);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(X);
  for (int j = 0; j < c_.size(); ++j)
    if (c_.start[j]) out += d_.h[j] * v.segment(j * X, X);
  return out * std::pow(d_.lambda, n - 1);
}

std::string AdjointReport::text() const {
  return fmt::format(
      "U U = I: {}\nU^T = U: {}\n|P* - adj(P)| = {:.3g}\n|P* - U P U| = {:.3g}\n|adj(Q) - U Q U| = {:.3g}\n"
      "row sums: {:.3g}\n",
      u_involution ? "yes" : "no", u_self_adjoint ? "yes" : "no", pstar_formula, pstar_upu, qstar_uqu, markov);
}

AdjointReport check_adjoint_identities(const Dynamics& dy) {
  AdjointReport r;
  const SparseOp P = dy.sparse_P(), U = dy.sparse_U(), Ps = dy.sparse_Pstar();
  const Eigen::MatrixXd Ud(U);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dy.dim(), dy.dim());
  r.u_involution = Eigen::MatrixXd(U * U) == I;
  r.u_self_adjoint = Eigen::MatrixXd(SparseOp(U.transpose())) == Ud;
  const Eigen::MatrixXd Pd = dy.dense_P(), Psd(Ps);
  r.pstar_formula = (Psd - dy.adjoint(Pd)).cwiseAbs().maxCoeff();
  r.pstar_upu = (Psd - Eigen::MatrixXd(U * P * U)).cwiseAbs().maxCoeff();
  const SparseOp V = P * U, W = U * P, Q = P * P;
  r.qstar_uqu = (dy.adjoint(Eigen::MatrixXd(Q)) - Eigen::MatrixXd(U * Q * U)).cwiseAbs().maxCoeff();
  double m = 0;
  for (const SparseOp* op : {&P, &U, &Ps, &V, &W, &Q}) {
    const Eigen::VectorXd rows = *op * Eigen::VectorXd::Ones(dy.dim());
    m = std::max(m, (rows.array() - 1).abs().maxCoeff());
  }
  r.markov = m;
  return r;
}

Eigen::VectorXd spherical_sum_bruteforce(const FiniteAction& a, Oracle& o, const Eigen::VectorXd& f, int n) {
  if (n > o.radius()) throw ActionError(fmt::format("radius {} beyond the oracle ball {}", n, o.radius()));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(a.points);
  for (int id : o.sphere(n)) {
    const auto p = word_permutation(a, o.word_of(id));
    for (int x = 0; x < a.points; ++x) out[x] += f[p[x]];
  }
  return out;
}

namespace {

std::vector<int> pair_orbits(const Scheme& s, const FiniteAction& a) {
  std::vector<int> parent(a.points);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (Label e1 = 0; e1 < s.size(); ++e1)
    for (Label e2 = 0; e2 < s.size(); ++e2) {
      const auto p = word_permutation(a, {e1, e2});
      for (int x = 0; x < a.points; ++x) parent[find(x)] = find(p[x]);
    }
  std::vector<int> root(a.points);
  for (int x = 0; x < a.points; ++x) root[x] = find(x);
  return root;
}

}  // namespace

Eigen::VectorXd conditional_expectation(const Scheme& s, const FiniteAction& a, const Eigen::VectorXd& f) {
  const auto root = pair_orbits(s, a);
  std::vector<double> mass(a.points, 0.0), sum(a.points, 0.0);
  for (int x = 0; x < a.points; ++x) {
    mass[root[x]] += a.weights[x];
    sum[root[x]] += a.weights[x] * f[x];
  }
  Eigen::VectorXd out(a.points);
  for (int x = 0; x < a.points; ++x) out[x] = sum[root[x]] / mass[root[x]];
  return out;
}

int pair_orbit_count(const Scheme& s, const FiniteAction& a) {
  const auto root = pair_orbits(s, a);
  int n = 0;
  for (int x = 0; x < a.points; ++x) n += root[x] == x;
  return n;
}

int invariant_field_dimension(const Dynamics& dy, FixedOp op, int n, double tol) {
  const SparseOp P = dy.sparse_P();
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(dy.dim(), dy.dim());
  for (int k = 0; k < 2 * n; ++k) M = P * M;
  if (op == FixedOp::QstarmQm) {
    const SparseOp Ps = dy.sparse_Pstar();
    for (int k = 0; k < 2 * n; ++k) M = Ps * M;
  }
  // similarity to the unweighted inner product
  const Eigen::VectorXd s = dy.weights().cwiseSqrt();
  Eigen::MatrixXd B = s.asDiagonal() * M * s.cwiseInverse().asDiagonal();
  if (op == FixedOp::QstarmQm) {
    B = (B + B.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
    return static_cast<int>(((es.eigenvalues().array() - 1).abs() < tol).count());
  }
  B -= Eigen::MatrixXd::Identity(dy.dim(), dy.dim());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
  qr.setThreshold(tol);
  return static_cast<int>(qr.dimensionOfKernel());
}

double second_eigenvalue_modulus(const Dynamics& dy) {
  const SparseOp P = dy.sparse_P();
  const Eigen::MatrixXd Q(P * P);
  Eigen::EigenSolver<Eigen::MatrixXd> es(Q, false);
  std::vector<double> mods;
  for (const auto& z : es.eigenvalues()) mods.push_back(std::abs(z));
  std::sort(mods.rbegin(), mods.rend());
  return mods.size() > 1 ? mods[1] : 0.0;
}

std::vector<ConvergenceRow> convergence_experiment(const Dynamics& dy, const Eigen::VectorXd& f, int n_max) {
  const Scheme& s = *dy.coding().scheme;
  const auto counts = path_counts(dy.coding(), 2 * n_max);
  const Eigen::VectorXd target = conditional_expectation(s, dy.action(), f);
  const auto& mu = dy.action().weights;
  std::vector<ConvergenceRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const std::uint64_t size = counts[2 * n - 1];
    const Eigen::VectorXd avg = dy.spherical_sum(f, 2 * n) / static_cast<double>(size);
    ConvergenceRow r;
    r.n = 2 * n;
    r.sphere_size = size;
    for (int x = 0; x < dy.points(); ++x) {
      const double e = std::abs(avg[x] - target[x]);
      r.sup_error = std::max(r.sup_error, e);
      r.l1_error += mu[x] * e;
    }
    rows.push_back(r);
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,sup_error,l1_error,sphere_size\n";
  for (const auto& r : rows) out += fmt::format("{},{:.6e},{:.6e},{}\n", r.n, r.sup_error, r.l1_error, r.sphere_size);
  return out;
}

}  // namespace fuchsian
