#include "dlab/picard.hpp"

#include <cmath>

#include "dlab/evolution.hpp"
#include "dlab/norms.hpp"

namespace dlab {

IterationProblem default_problem(double aliasing_budget) {
  IterationProblem p;
  p.k = 2;
  p.L = [](const Profile& f) { return apply_L(f); };
  p.Nk = [aliasing_budget](const std::vector<const Field*>& args) {
    return apply_N2(*args[0], *args[1], aliasing_budget);
  };
  p.normD = [](const Profile& f) { return hs_norm(f, -1); };
  p.normS = [](const Field& u) { return cth_norm(u, -1, 0, 1); };
  return p;
}

IterateTable::IterateTable(const IterationProblem& p, const Profile& f) : p_(p), f_(f) {}

const Field& IterateTable::A(int n) {
  if (n < 1) throw UsageError("iterate_A: n must be >= 1");
  if (int(memo_.size()) < n) memo_.resize(n);
  if (memo_[n - 1]) return *memo_[n - 1];
  if (n == 1) {
    memo_[0] = p_.L(f_);
    return *memo_[0];
  }
  for (int m = 1; m < n; ++m) A(m);  // fill lower iterates first

  // sum N_k over ordered compositions n = n_1 + ... + n_k with n_i >= 1
  std::optional<Field> acc;
  std::vector<int> parts(p_.k, 1);
  std::function<void(int, int)> walk = [&](int slot, int remaining) {
    if (slot == p_.k - 1) {
      parts[slot] = remaining;
      std::vector<const Field*> args(p_.k);
      for (int i = 0; i < p_.k; ++i) args[i] = &*memo_[parts[i] - 1];
      Field term = p_.Nk(args);
      if (acc)
        *acc += term;
      else
        acc = std::move(term);
      return;
    }
    int slots_left = p_.k - 1 - slot;
    for (int v = 1; v <= remaining - slots_left; ++v) {
      parts[slot] = v;
      walk(slot + 1, remaining - v);
    }
  };
  if (n >= p_.k) walk(0, n);

  if (!acc) {
    // no compositions (n < k): the iterate is identically zero
    Field zero(memo_[0]->grid(), memo_[0]->rep());
    acc = std::move(zero);
  }
  memo_[n - 1] = std::move(*acc);
  return *memo_[n - 1];
}

Field iterate_A(const IterationProblem& p, const Profile& f, int n) {
  IterateTable table(p, f);
  return table.A(n);
}

HomogeneityResult homogeneity_defect(const IterationProblem& p, const Profile& f, double lambda,
                                     int n) {
  Profile lf = f;
  for (cplx& z : lf.v) z *= lambda;
  Field an_lf = iterate_A(p, lf, n);
  Field ref = iterate_A(p, f, n) * cplx(std::pow(lambda, n));
  double denom = p.normS(ref);
  double diff = p.normS(an_lf - ref);
  HomogeneityResult hr;
  if (denom == 0) {
    hr.defect = diff;
    hr.absolute = true;
  } else {
    hr.defect = diff / denom;
  }
  return hr;
}

ContractionResult contraction_solve(const IterationProblem& p, const Profile& f,
                                    const ContractionConfig& cfg) {
  if (p.normD(f) >= cfg.eps0)
    throw UsageError("contraction_solve: data norm outside the contraction ball");
  ContractionResult res;
  Field lf = p.L(f);
  Field u(lf.grid(), lf.rep());  // start from zero
  int rising = 0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    std::vector<const Field*> args(p.k, &u);
    Field next = lf + p.Nk(args);
    double diff = p.normS(next - u);
    if (!res.diff_norms.empty() && diff > res.diff_norms.back()) {
      if (++rising >= 3) {
        res.diverged = true;
        res.diff_norms.push_back(diff);
        return res;
      }
    } else {
      rising = 0;
    }
    res.diff_norms.push_back(diff);
    u = std::move(next);
    res.residual = diff;
    if (diff <= cfg.tol) break;
  }
  res.u = u;

  IterateTable table(p, f);
  Field partial(lf.grid(), lf.rep());
  for (int K = 1; K <= cfg.Kmax; ++K) {
    partial += table.A(K);
    res.partial_sum_norms.push_back(p.normS(partial));
    res.partial_sum_gaps.push_back(p.normS(partial - u));
  }
  return res;
}

double lipschitz_probe(const IterationProblem& p, const Profile& f, const Profile& g, int n) {
  Profile diff = f;
  for (int k = -f.grid->nx() / 2; k < f.grid->nx() / 2; ++k) diff.at(k) -= g.at(k);
  double dd = p.normD(diff);
  if (dd == 0) return 0;
  double denom = dd * std::pow(p.normD(f) + p.normD(g), n - 1);
  Field an = iterate_A(p, f, n) - iterate_A(p, g, n);
  return p.normS(an) / denom;
}

}  // namespace dlab
