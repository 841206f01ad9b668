// Picard iteration machinery: A_n recursion, contraction solve, diagnostics.
#pragma once

#include <functional>
#include <optional>

#include "dlab/grid.hpp"

namespace dlab {

// Fixed-point problem u = L(f) + N_k(u, ..., u) with chosen diagnostic norms.
struct IterationProblem {
  int k = 2;
  std::function<Field(const Profile&)> L;
  std::function<Field(const std::vector<const Field*>&)> Nk;
  std::function<double(const Profile&)> normD;
  std::function<double(const Field&)> normS;
};

// evolution operators with H^{-1} data norm and C0_t H^{-1} on [0,1]
IterationProblem default_problem(double aliasing_budget = 1e-8);

// Memoized iterates A_1 = L(f), A_n = sum over ordered k-compositions of n.
class IterateTable {
 public:
  IterateTable(const IterationProblem& p, const Profile& f);
  const Field& A(int n);

 private:
  const IterationProblem& p_;
  Profile f_;
  std::vector<std::optional<Field>> memo_;
};

Field iterate_A(const IterationProblem& p, const Profile& f, int n);

struct HomogeneityResult {
  double defect = 0;
  bool absolute = false;  // true when the reference iterate vanished
};

HomogeneityResult homogeneity_defect(const IterationProblem& p, const Profile& f, double lambda,
                                     int n);

struct ContractionConfig {
  double C0 = 2;
  double eps0 = 0.01;
  int max_iter = 32;
  double tol = 1e-10;
  int Kmax = 8;  // partial sums u_K compared against the fixed point
};

struct ContractionResult {
  Field u;
  bool diverged = false;
  double residual = 0;
  std::vector<double> diff_norms;         // successive-difference norms per step
  std::vector<double> partial_sum_gaps;   // ||u_K - u||_S for K = 1..Kmax
  std::vector<double> partial_sum_norms;  // ||u_K||_S
};

ContractionResult contraction_solve(const IterationProblem& p, const Profile& f,
                                    const ContractionConfig& cfg);

// empirical constant ||A_n(f) - A_n(g)|| / (||f-g|| (||f|| + ||g||)^{n-1})
double lipschitz_probe(const IterationProblem& p, const Profile& f, const Profile& g, int n);

}  // namespace dlab
