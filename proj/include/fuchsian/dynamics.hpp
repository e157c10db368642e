#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fuchsian/coding.hpp"
#include "fuchsian/parry.hpp"

namespace fuchsian {

class Oracle;

struct ActionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Measure-preserving action of the group on a finite set. perm[e][x] is the
// image of x under the generator with label e.
struct FiniteAction {
  std::string name;
  int points = 1;
  std::vector<double> weights;
  std::vector<std::vector<int>> perm;
};

// T_w x for w = e1 ... ek, i.e. T_e1(T_e2(... T_ek(x)))
std::vector<int> word_permutation(const FiniteAction& a, const Word& w);

// Throws ActionError naming the first violated condition.
void validate_action(const Scheme& s, const FiniteAction& a);
FiniteAction make_action(const Scheme& s, std::string name, std::vector<std::vector<int>> perm,
                         std::vector<double> weights = {});
// {"points": n, "weights": [...], "generators": {"a": [images] or "(0 1)(2 3)"}}
FiniteAction load_action(const Scheme& s, std::string_view json);
std::string action_to_json(const Scheme& s, const FiniteAction& a);

std::vector<std::string> action_names(const Scheme& s);
FiniteAction catalog_action(const Scheme& s, std::string_view name);

using Field = Eigen::VectorXd;  // indexed by state * points + point
using SparseOp = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Operators of the Markov chain twisted by the action, on functions of (state, point).
class Dynamics {
 public:
  Dynamics(const Coding& c, ParryData d, FiniteAction a);

  const Coding& coding() const { return c_; }
  const ParryData& parry() const { return d_; }
  const FiniteAction& action() const { return a_; }
  int points() const { return a_.points; }
  int dim() const { return c_.size() * a_.points; }

  Field apply_P(const Field& f) const;
  Field apply_U(const Field& f) const;
  Field apply_Pstar(const Field& f) const;
  Field apply_Q(const Field& f) const { return apply_P(apply_P(f)); }
  double inner(const Field& f, const Field& g) const;

  SparseOp sparse_P() const;
  SparseOp sparse_U() const;
  SparseOp sparse_Pstar() const;
  // dense matrices, refused above max_dense_dim
  Eigen::MatrixXd dense_P() const;
  Eigen::MatrixXd dense_U() const;
  Eigen::MatrixXd dense_Pstar() const;
  // adjoint with respect to the weighted inner product
  Eigen::MatrixXd adjoint(const Eigen::MatrixXd& m) const;
  Eigen::VectorXd weights() const;

  // sum of f o T_g over the sphere of radius n, through the coding
  Eigen::VectorXd spherical_sum(const Eigen::VectorXd& f, int n) const;

  // replaced by tests to probe the adjoint check
  std::vector<int> reversal;

  static constexpr int max_dense_dim = 20000;

 private:
  void check_dense() const;

  const Coding& c_;
  ParryData d_;
  FiniteAction a_;
  std::vector<std::vector<int>> left_perm_, right_perm_, left_inv_perm_;
};

struct AdjointReport {
  bool u_involution = false;   // U U = I, exactly
  bool u_self_adjoint = false;  // U^T = U, exactly
  double pstar_formula = 0;     // |P* (formula) - adjoint(P)|
  double pstar_upu = 0;         // |P* - U P U|
  double qstar_uqu = 0;          // |adjoint(Q) - U Q U|
  double markov = 0;            // largest deviation of row sums from 1
  bool ok(double tol = 1e-12) const {
    return u_involution && u_self_adjoint && pstar_formula <= tol && pstar_upu <= tol && qstar_uqu <= tol &&
           markov <= tol;
  }
  std::string text() const;
};

AdjointReport check_adjoint_identities(const Dynamics& dy);

Eigen::VectorXd spherical_sum_bruteforce(const FiniteAction& a, Oracle& o, const Eigen::VectorXd& f, int n);

// orbit averages for the group generated by products of two generators
Eigen::VectorXd conditional_expectation(const Scheme& s, const FiniteAction& a, const Eigen::VectorXd& f);
int pair_orbit_count(const Scheme& s, const FiniteAction& a);

enum class FixedOp { Qn, QstarmQm };
int invariant_field_dimension(const Dynamics& dy, FixedOp op, int n, double tol = 1e-9);
// second largest eigenvalue modulus of Q
double second_eigenvalue_modulus(const Dynamics& dy);

struct ConvergenceRow {
  int n = 0;  // radius 2n
  double sup_error = 0;
  double l1_error = 0;
  std::uint64_t sphere_size = 0;
};
std::vector<ConvergenceRow> convergence_experiment(const Dynamics& dy, const Eigen::VectorXd& f, int n_max);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace fuchsian
