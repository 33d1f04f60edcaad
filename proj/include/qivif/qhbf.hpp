#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "qivif/qmatrix.hpp"

namespace qivif {

/// Hierarchical Bayesian fusion tunables.
///
/// The printed posterior expectation grows with |s| while the inverse
/// Gaussian posterior mean shrinks with it; both readings are kept behind
/// estep_variant. update_eps exists so the EM objective can be studied with
/// the scale parameters frozen.
struct QhbfParams {
  enum class EStepVariant { Paper, Reciprocal };

  double w1 = 0.5;
  double w2 = 0.5;
  double eps_s = 0.1;
  double eps_q = 0.1;
  int em_iters = 4;
  double inner_tol = 1e-6;
  int inner_max_iter = 100;
  EStepVariant estep_variant = EStepVariant::Paper;
  bool update_eps = true;

  void validate() const;
};

struct QhbfIterStats {
  int iter = 0;
  double objective = 0.0;      // quadratic M-step objective after the solve
  double inner_residual = 0.0; // relative normal-equation residual at exit
  int inner_iterations = 0;
  double eps_s = 0.0;
  double eps_q = 0.0;
};

struct QhbfResult {
  QMatrix fused;
  std::vector<QhbfIterStats> trace;
};

/// Per-pixel posterior expectations of the reciprocal mixing variables.
/// Paper variant: sqrt(2|s|^2/eps); reciprocal variant: sqrt(2/(eps|s|^2)).
/// Entries are floored at 1e-8 and capped at 1e8.
std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> e_step(
    const QMatrix &s, const QMatrix &q, double eps_s, double eps_q,
    QhbfParams::EStepVariant variant);

/// Minimizes 0.5||M.*S||_F^2 + 0.5||N.*(T-S)||_F^2 + 0.5*w1*||grad S||_F^2
/// + 0.5*w2*||grad (T-S)||_F^2, i.e. solves
///   (M^2 + N^2 + (w1+w2) grad^T grad) S = N^2.*T + w2 grad^T grad T.
/// w1 = w2 = 0 is the exact per-pixel closed form; otherwise an auxiliary
/// splitting alternates a per-pixel diagonal step with a per-frequency FFT
/// step until the relative residual drops below tol.
QMatrix m_step(const QMatrix &t, const Eigen::ArrayXXd &m,
               const Eigen::ArrayXXd &n, double w1, double w2, double tol,
               int max_iter, QhbfIterStats *stats = nullptr);

/// Quadratic objective the M-step minimizes; exposed for convergence
/// monitoring and tests.
double m_step_objective(const QMatrix &s, const QMatrix &t,
                        const Eigen::ArrayXXd &m, const Eigen::ArrayXXd &n,
                        double w1, double w2);

/// EM fusion of the enhanced visible and suppressed infrared layers;
/// returns F = S + I_v.
QhbfResult run_qhbf(const QMatrix &i_v, const QMatrix &i_f,
                    const QhbfParams &params);

}  // namespace qivif
