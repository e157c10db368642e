#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fuchsian/coding.hpp"

namespace fuchsian {

struct ParryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Eigendata {
  double lambda = 0;
  std::vector<double> h;      // right eigenvector, max entry 1
  std::vector<double> alpha;  // left eigenvector, alpha . h = 1
  int iterations = 0;
};

struct ParryData {
  double lambda = 0;
  std::vector<double> h, alpha;
  std::vector<std::vector<double>> p;  // transition probabilities, dense
  std::vector<double> stationary;

  double prob(int i, int j) const { return p[i][j]; }
  // probability of an admissible state sequence started from stationarity
  double path_probability(const std::vector<int>& path) const;
};

// Power iteration from the all-ones vector on a 0/1 matrix given by successor lists.
Eigendata pf_eigendata(const std::vector<std::vector<int>>& succ, double tol = 1e-12, int max_iter = 200000);
Eigendata pf_eigendata(const Coding& c, double tol = 1e-12);
ParryData parry_chain(const std::vector<std::vector<int>>& succ, const Eigendata& e);
ParryData parry(const Coding& c);

// state, h, alpha, stationary
std::string eigendata_csv(const Coding& c, const ParryData& d);
// 0/1 matrix as whitespace-separated rows
std::string matrix_text(const Coding& c);

}  // namespace fuchsian
