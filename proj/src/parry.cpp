#include "fuchsian/parry.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fuchsian {

namespace {

// one step of v -> M v (right) or v -> v M (left), normalised to max entry 1
double step(const std::vector<std::vector<int>>& succ, const std::vector<double>& v, std::vector<double>& out,
            bool left) {
  std::fill(out.begin(), out.end(), 0.0);
  const int n = static_cast<int>(succ.size());
  for (int i = 0; i < n; ++i)
    for (int j : succ[i]) {
      if (left)
        out[j] += v[i];
      else
        out[i] += v[j];
    }
  double m = *std::max_element(out.begin(), out.end());
  if (!(m > 0)) throw ParryError("matrix annihilates the iterate");
  for (double& x : out) x /= m;
  return m;
}

struct Power {
  double lambda;
  std::vector<double> v;
  int iterations;
};

Power power(const std::vector<std::vector<int>>& succ, bool left, double tol, int max_iter) {
  const std::size_t n = succ.size();
  std::vector<double> v(n, 1.0), w(n);
  for (int it = 1; it <= max_iter; ++it) {
    const double m = step(succ, v, w, left);
    // w is the normalised image of v, so |w - v| / v is the relative eigen-residual of v
    double res = 0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(w[i] - v[i]) / v[i]);
    v.swap(w);
    if (res <= tol) return {m, v, it};
  }
  throw ParryError(fmt::format("power iteration did not converge in {} steps", max_iter));
}

}  // namespace

Eigendata pf_eigendata(const std::vector<std::vector<int>>& succ, double tol, int max_iter) {
  if (succ.empty()) throw ParryError("empty matrix");
  Power r = power(succ, false, tol, max_iter);
  Power l = power(succ, true, tol, max_iter);
  // recompute lambda from the converged vector
  std::vector<double> mh(succ.size(), 0.0);
  for (std::size_t i = 0; i < succ.size(); ++i)
    for (int j : succ[i]) mh[i] += r.v[j];
  double num = 0, den = 0;
  for (std::size_t i = 0; i < succ.size(); ++i) {
    num += mh[i] * r.v[i];
    den += r.v[i] * r.v[i];
  }
  Eigendata e;
  e.lambda = num / den;
  e.h = r.v;
  for (double x : e.h)
    if (!(x > 0)) throw ParryError("right eigenvector has a nonpositive entry");
  double dot = 0;
  for (std::size_t i = 0; i < succ.size(); ++i) dot += l.v[i] * e.h[i];
  e.alpha = l.v;
  for (double& x : e.alpha) {
    x /= dot;
    if (!(x > 0)) throw ParryError("left eigenvector has a nonpositive entry");
  }
  e.iterations = std::max(r.iterations, l.iterations);
  return e;
}

Eigendata pf_eigendata(const Coding& c, double tol) {
  if (!strongly_connected(c) || !aperiodic(c)) throw ParryError("transition matrix is not primitive");
  return pf_eigendata(c.succ, tol);
}

ParryData parry_chain(const std::vector<std::vector<int>>& succ, const Eigendata& e) {
  const std::size_t n = succ.size();
  ParryData d;
  d.lambda = e.lambda;
  d.h = e.h;
  d.alpha = e.alpha;
  d.p.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (int j : succ[i]) d.p[i][j] = e.h[j] / (e.lambda * e.h[i]);
  d.stationary.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.stationary[i] = e.alpha[i] * e.h[i];
  return d;
}

ParryData parry(const Coding& c) { return parry_chain(c.succ, pf_eigendata(c)); }

double ParryData::path_probability(const std::vector<int>& path) const {
  double q = stationary.at(path.front());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) q *= p[path[i]][path[i + 1]];
  return q;
}

std::string eigendata_csv(const Coding& c, const ParryData& d) {
  std::string out = "state,h,alpha,p\n";
  for (int i = 0; i < c.size(); ++i)
    out += fmt::format("\"{}\",{:.17g},{:.17g},{:.17g}\n", state_string(*c.scheme, c.states[i]), d.h[i], d.alpha[i],
                       d.stationary[i]);
  return out;
}

std::string matrix_text(const Coding& c) {
  std::string out;
  for (int i = 0; i < c.size(); ++i) {
    for (int j = 0; j < c.size(); ++j) {
      if (j) out += ' ';
      out += c.edge(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

}  // namespace fuchsian
